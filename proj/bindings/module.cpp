#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfflow/ansatz.hpp"
#include "mfflow/borel.hpp"
#include "mfflow/combinatorics.hpp"
#include "mfflow/config.hpp"
#include "mfflow/flow.hpp"
#include "mfflow/perturbation.hpp"
#include "mfflow/pipelines.hpp"
#include "mfflow/report.hpp"

namespace py = pybind11;
using namespace mfflow;

namespace {

Rational rat(const std::string& s) { return rat_from_string(s); }

py::dict solve_fixed_point(const std::string& mu_max, const std::string& g40,
                           const std::string& c, const std::string& tol, int q_max,
                           int max_iter) {
    RenormalizationTarget t;
    t.mu_max = rat(mu_max);
    t.g40 = rat(g40);
    t.c = rat(c);
    auto res = picard_fixed_point(t, rat(tol), max_iter, q_max);
    auto f2 = f2_jet(res.final.coeffs, t.mu_max, 0);
    py::dict out;
    out["b1_star"] = rat_to_string(res.b1_star);
    out["residual"] = Rational(res.residual).get_d();
    out["iterations"] = res.iterations;
    out["f2_top"] = Rational(f2.jet.value()).get_d();
    out["tail_bound"] = Rational(res.final.tail_bound).get_d();
    out["tail_certified"] = res.final.tail_certified;
    py::list deltas;
    for (const auto& d : res.deltas) deltas.append(Rational(d).get_d());
    out["deltas"] = deltas;
    return out;
}

py::dict taylor_data(const std::string& b1, const std::string& g40, int n_max, int k_max) {
    auto ts = taylor_system(rat(b1), rat(g40), n_max, k_max);
    py::dict out;
    py::list f2;
    for (int k = 0; k <= k_max && k < static_cast<int>(ts.f2.size()); ++k)
        f2.append(rat_to_string(ts.f2[k]));
    out["f2"] = f2;
    py::dict g;
    for (int n = 4; n <= n_max; n += 2) {
        py::list row;
        for (int k = 0; k <= k_max; ++k) row.append(rat_to_string(ts.g_at(n, k)));
        g[py::int_(n)] = row;
    }
    out["g"] = g;
    return out;
}

std::vector<std::string> basis_weights(const std::string& b1, const std::string& g40, int q_max) {
    auto coeffs = ansatz_pipeline(rat(b1), rat(g40), q_max);
    std::vector<std::string> out;
    for (long q = 1; q <= coeffs.q_max(); ++q) out.push_back(rat_to_string(coeffs.at(q)));
    return out;
}

std::vector<std::string> weights_to_taylor(const std::vector<std::string>& b, int k_max) {
    AnsatzCoefficients c;
    c.b.assign(b.size() + 1, Rational(0));
    for (size_t q = 0; q < b.size(); ++q) c.b[q + 1] = rat(b[q]);
    auto ser = taylor_from_b(c, k_max);
    std::vector<std::string> out;
    for (int k = 0; k <= k_max; ++k) out.push_back(rat_to_string(ser[k]));
    return out;
}

std::vector<std::string> taylor_to_weights(const std::vector<std::string>& f2k) {
    std::vector<Rational> c;
    for (const auto& s : f2k) c.push_back(rat(s));
    auto w = b_from_taylor(PowerSeries(std::move(c)));
    std::vector<std::string> out;
    for (long q = 1; q <= w.q_max(); ++q) out.push_back(rat_to_string(w.at(q)));
    return out;
}

py::list amplitude_terms(int n, int j, int j_max, const std::string& mu_max, bool vanishing_2pt) {
    RenormConstants rc = RenormConstants::bphz(j_max);
    if (!vanishing_2pt) throw std::invalid_argument("only the vanishing-two-point constants are exposed");
    auto amps = alpha_flow(j_max, rc, rat(mu_max));
    py::list out;
    for (const auto& [key, coef] : amps.at(n, j).terms()) {
        py::dict term;
        term["alpha_power"] = key.first;
        term["log_power"] = key.second;
        py::list poly;
        for (size_t i = 0; i < coef.c.size(); ++i) {
            py::dict mono;
            mono["a0_power"] = coef.low + static_cast<long>(i);
            mono["coefficient"] = rat_to_string(coef.c[i]);
            poly.append(mono);
        }
        term["coefficient"] = poly;
        out.append(term);
    }
    return out;
}

std::vector<std::string> expansion_coefficients(const std::string& b1, const std::string& g40,
                                                const std::string& mu_max, int q_max, int m_max) {
    auto coeffs = ansatz_pipeline(rat(b1), rat(g40), q_max);
    auto ge = gtilde_coefficients(coeffs, rat(mu_max), m_max);
    std::vector<std::string> out;
    for (int m = 1; m <= m_max; ++m) out.push_back(rat_to_string(ge.c[m]));
    return out;
}

double borel_resum(const std::vector<std::string>& coeffs, const std::string& z, bool pade) {
    FormalSeries F;
    for (const auto& s : coeffs) F.a.push_back(rat(s));
    BorelSumOptions opt;
    opt.continuation = pade ? Continuation::pade : Continuation::truncated_polynomial;
    auto res = borel_sum(borel_transform(F), Real(rat(z)), opt);
    return res.value.to_double();
}

std::string run_json(const std::string& command, const py::dict& overrides) {
    std::vector<std::string> flags;
    for (const auto& item : overrides) {
        flags.push_back("--" + py::cast<std::string>(item.first));
        flags.push_back(py::cast<std::string>(py::str(item.second)));
    }
    auto cfg = parse_config("", flags);
    auto rep = run_command(command, cfg);
    return report_to_json(rep);
}

std::string fuss_catalan_str(unsigned long s, unsigned long n) {
    return fuss_catalan(s, n).get_str();
}
std::string stirling2_str(unsigned long m, unsigned long k) { return stirling2(m, k).get_str(); }
std::string ordered_bell_str(unsigned long n) { return ordered_bell(n).get_str(); }

}  // namespace

PYBIND11_MODULE(_mfflow, m) {
    m.doc() = "exact mean-field flow pipelines: fixed point, expansion, resummation";
    m.def("solve_fixed_point", &solve_fixed_point, py::arg("mu_max") = "8",
          py::arg("g40") = "1/300", py::arg("c") = "1/4", py::arg("tol") = "1/10000000000",
          py::arg("q_max") = 30, py::arg("max_iter") = 200);
    m.def("taylor_data", &taylor_data, py::arg("b1"), py::arg("g40"), py::arg("n_max") = 8,
          py::arg("k_max") = 8);
    m.def("basis_weights", &basis_weights, py::arg("b1"), py::arg("g40"), py::arg("q_max") = 30);
    m.def("weights_to_taylor", &weights_to_taylor, py::arg("weights"), py::arg("k_max"));
    m.def("taylor_to_weights", &taylor_to_weights, py::arg("f2_coefficients"));
    m.def("amplitude_terms", &amplitude_terms, py::arg("n"), py::arg("j"), py::arg("j_max") = 4,
          py::arg("mu_max") = "8", py::arg("vanishing_2pt") = true);
    m.def("expansion_coefficients", &expansion_coefficients, py::arg("b1"), py::arg("g40"),
          py::arg("mu_max") = "8", py::arg("q_max") = 30, py::arg("m_max") = 10);
    m.def("borel_resum", &borel_resum, py::arg("coefficients"), py::arg("z"),
          py::arg("pade") = true);
    m.def("run_json", &run_json, py::arg("command"), py::arg("overrides") = py::dict());
    m.def("fuss_catalan", &fuss_catalan_str, py::arg("s"), py::arg("n"));
    m.def("stirling2", &stirling2_str, py::arg("m"), py::arg("k"));
    m.def("ordered_bell", &ordered_bell_str, py::arg("n"));
    m.attr("__version__") = "0.1.0";
}
