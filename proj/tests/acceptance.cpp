// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expensive solves are shared across criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "mfflow/ansatz.hpp"
#include "mfflow/borel.hpp"
#include "mfflow/combinatorics.hpp"
#include "mfflow/flow.hpp"
#include "mfflow/perturbation.hpp"
#include "mfflow/quadrature.hpp"

using namespace mfflow;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void start() { g_t0 = std::chrono::steady_clock::now(); }

void report(int criterion, bool pass, const std::string& what) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - g_t0)
                  .count();
    std::printf("[%s] criterion %2d: %s  (%lld ms)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), static_cast<long long>(ms));
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::mt19937 rng(20250809);

Rational random_rational(int num_range = 25, int den_range = 11) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return make_rational(num(rng), den(rng));
}

struct SolvedPoint {
    RenormalizationTarget target;
    PicardResult picard;
};

SolvedPoint solve(const Rational& c, const Rational& mu_max, const Rational& tol, int q_max) {
    SolvedPoint sp;
    sp.target.c = c;
    sp.target.mu_max = mu_max;
    sp.target.g40 = make_rational(1, 300);
    sp.picard = picard_fixed_point(sp.target, tol, 100, q_max);
    return sp;
}

}  // namespace

int main() {
    Real::set_default_bits(256);
    const Rational TOL21 = rat_pow(Rational(10), -21);

    // ---- criterion 1: closed-form seeds equal the recursion ----
    start();
    {
        bool ok = true;
        std::vector<std::pair<Rational, Rational>> cases = {
            {make_rational(1, 40), make_rational(1, 300)},
            {make_rational(-3, 50), make_rational(1, 77)},
        };
        for (const auto& [b1, g40] : cases) {
            auto ts = taylor_system(b1, g40, 40, 1);
            for (int n = 4; n <= 40; n += 2) {
                auto [g0, g1] = closed_form_seeds(n, g40, b1);
                if (ts.g_at(n, 0) != g0 || ts.g_at(n, 1) != g1) ok = false;
            }
        }
        report(1, ok, "closed-form seeds match the recursion for even n <= 40");
    }

    // ---- criterion 2: coefficient/weight maps are mutually inverse ----
    start();
    {
        bool ok = true;
        for (int rep = 0; rep < 100 && ok; ++rep) {
            AnsatzCoefficients b;
            b.b.assign(31, Rational(0));
            for (long q = 1; q <= 30; ++q) b.b[q] = random_rational();
            auto round = b_from_taylor(taylor_from_b(b, 29));
            for (long q = 1; q <= 30; ++q)
                if (round.at(q) != b.at(q)) ok = false;
            std::vector<Rational> coeffs(30);
            for (auto& x : coeffs) x = random_rational();
            PowerSeries ser(coeffs);
            auto back = taylor_from_b(b_from_taylor(ser), 29);
            for (int k = 0; k <= 29; ++k)
                if (back[k] != ser[k]) ok = false;
        }
        report(2, ok, "ansatz roundtrip exact for 100 random sequences of length 30");
    }

    // ---- criterion 3: exact combinatorial identities and inequalities ----
    start();
    {
        bool ok = true;
        for (unsigned long s = 1; s <= 3 && ok; ++s)
            for (unsigned long m = 0; m <= 30; ++m)
                try {
                    fuss_convolution(s, m);
                } catch (...) {
                    ok = false;
                }
        for (long n = 6; n <= 80 && ok; n += 2) {
            Rational lhs(0);
            for (long n1 = 4; n1 + 4 <= n + 2; n1 += 2) {
                long n2 = n + 2 - n1;
                lhs += Rational(n2) * Rational(fuss_catalan(2, n1 / 2 - 1)) *
                       Rational(fuss_catalan(2, n2 / 2 - 1));
            }
            if (lhs !=
                make_rational((n - 4) * (n + 2), 2 * n) * Rational(fuss_catalan(2, n / 2 - 1)))
                ok = false;
        }
        std::uniform_int_distribution<int> ab(0, 40);
        for (int rep = 0; rep < 60 && ok; ++rep) {
            unsigned long a = ab(rng), b = ab(rng);
            std::uniform_int_distribution<int> nd(0, static_cast<int>(a + b));
            unsigned long nu = nd(rng);
            Int acc = 0;
            for (unsigned long np = 0; np <= nu; ++np)
                acc += binomial(a, np) * binomial(b, nu - np);
            if (acc != binomial(a + b, nu)) ok = false;
        }
        Rational e_lo = rat_from_string("271828182845/100000000000");
        for (unsigned long n = 0; n <= 20 && ok; ++n)
            if (!(Rational(ordered_bell(n)) <= rat_pow(e_lo, n) * Rational(factorial(n))))
                ok = false;
        // pair-split inequalities over their stated ranges
        for (int n = 12; n <= 200 && ok; n += 2) {
            Rational lhs(0);
            for (int n1 = 4; n1 + 4 <= n + 2; n1 += 2)
                lhs += make_rational(1, n1 * n1) * make_rational(1, (n + 2 - n1) * (n + 2 - n1));
            if (!(lhs * make_rational(n, n - 2) <= make_rational(1, n * n))) ok = false;
        }
        for (int l = 0; l <= 200 && ok; ++l) {
            Rational s_all(0), s_pos(0);
            for (int l1 = 0; l1 <= l; ++l1) {
                int l2 = l - l1;
                Rational t = make_rational(1, (l1 + 1) * (l1 + 1)) *
                             make_rational(1, (l2 + 1) * (l2 + 1));
                s_all += t;
                if (l1 >= 1 && l2 >= 1) s_pos += t;
            }
            if (!(s_all <= make_rational(5, (l + 1) * (l + 1)))) ok = false;
            if (!(s_pos <= make_rational(3, (l + 1) * (l + 1)))) ok = false;
        }
        for (int n = 1; n <= 200 && ok; ++n) {
            Rational s(0);
            for (int n1 = 1; n1 <= n; ++n1)
                s += Rational(1) / Rational(Int(n1) * n1 * n1 * Int(n + 1 - n1) * (n + 1 - n1) *
                                            (n + 1 - n1));
            if (!(s <= Rational(4) / Rational(Int(n) * n * n))) ok = false;
        }
        report(3, ok, "combinatorial identities and inequality suites exact on stated ranges");
    }

    // ---- criterion 4: first-order amplitudes in closed form ----
    start();
    {
        auto amps = alpha_flow(1, RenormConstants::bphz(1), Rational(8));
        bool ok = amps.at(4, 1) == LogLaurentPoly::constant(Rational(1));
        LogLaurentPoly expect =
            LogLaurentPoly::constant(Rational(3)) + LogLaurentPoly::term(-1, 0, Rational(-3));
        ok = ok && amps.at(2, 1) == expect;
        report(4, ok, "order-one amplitudes reproduced exactly");
    }

    // ---- criterion 5: symbolic residual of the amplitude flow ----
    start();
    {
        int j_max = 6;
        auto rc = RenormConstants::bphz(j_max);
        auto amps = alpha_flow(j_max, rc, Rational(8));
        bool ok = true;
        for (int j = 1; j <= j_max; ++j)
            for (int n = 2; n <= std::min(2 * j + 2, 10); n += 2)
                if (!amps.flow_residual(n, j, rc).is_zero()) ok = false;
        report(5, ok, "amplitude flow residual is the zero ring element (n <= 10, j <= 6)");
    }

    // ---- criterion 6: fixed points at the standard data ----
    start();
    SolvedPoint sp14 = solve(make_rational(1, 4), Rational(8), TOL21, 60);
    SolvedPoint sp0 = solve(Rational(0), Rational(8), TOL21, 60);
    {
        bool ok = true;
        std::string detail;
        for (const SolvedPoint* sp : {&sp14, &sp0}) {
            const auto& pr = sp->picard;
            if (pr.iterations > 100) ok = false;
            if (!(pr.residual < rat_pow(Rational(10), -20))) ok = false;
            for (size_t i = 1; i < pr.deltas.size(); ++i)
                if (!(rat_abs(pr.deltas[i]) < rat_abs(pr.deltas[i - 1]))) ok = false;
            auto cert = contraction_certificate(pr.b1_star, sp->target, 40);
            if (!(cert.bound < Real(1l))) ok = false;
            auto f2 = f2_jet(pr.final.coeffs, sp->target.mu_max, 0);
            Rational gap = rat_abs(f2.jet.value() - sp->target.c / sp->target.mu_max);
            if (!(gap < rat_pow(Rational(10), -18))) ok = false;
            // the identity ties the gap to the residual exactly
            if (gap * map_gain(sp->target.mu_max) != pr.residual) ok = false;
        }
        report(6, ok,
               "fixed points converge (c = 1/4 and c = 0): residual < 1e-20, contracting, "
               "renormalization condition met to 1e-18");
    }

    // ---- criterion 7: decay rates across the scale scan ----
    start();
    std::vector<SolvedPoint> scan;
    scan.push_back(sp14);
    for (long mm : {16, 32, 64})
        scan.push_back(solve(make_rational(1, 4), Rational(mm), TOL21, 60));
    {
        std::vector<Real> lx, l4, l6;
        std::vector<Real> f4c;  // |f4 + f2/3| * mu^2
        for (const auto& sp : scan) {
            auto sol = propagate_jets(sp.picard.final.coeffs, sp.target.mu_max, 6, 3);
            lx.push_back(log(Real(sp.target.mu_max)));
            l4.push_back(log(abs(Real(sol.f.at(4).value()))));
            l6.push_back(log(abs(Real(sol.f.at(6).value()))));
            Rational combo = rat_abs(sol.f.at(4).value() + sol.f.at(2).value() / 3) *
                             sp.target.mu_max * sp.target.mu_max;
            f4c.push_back(Real(combo));
        }
        auto slope = [&](const std::vector<Real>& ly) {
            Real n(static_cast<long>(lx.size())), sx(0l), sy(0l), sxy(0l), sxx(0l);
            for (size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
                sxy += lx[i] * ly[i];
                sxx += lx[i] * lx[i];
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        double s4 = slope(l4).to_double();
        double s6 = slope(l6).to_double();
        bool ok = s4 >= -1.3 && s4 <= -0.7 && s6 <= -1.5;
        for (size_t i = 0; i + 1 < f4c.size(); ++i) {
            double ratio = (f4c[i + 1] / f4c[i]).to_double();
            if (!(ratio < 2.0 && ratio > 0.5)) ok = false;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "decay rates: slope(f4) = %.3f in [-1.3, -0.7], slope(f6) = %.3f <= -1.5, "
                      "|f4 + f2/3| mu^2 stable",
                      s4, s6);
        report(7, ok, buf);
    }

    // ---- criterion 8: envelope lemmas under the proof hypotheses ----
    start();
    {
        const Rational K = make_rational(1, 30);
        const Rational b1h = make_rational(1, 40);
        const Rational g40h = make_rational(1, 900);
        bool ok = true;
        auto ts = taylor_system(b1h, g40h, 20, 20);
        for (int n = 4; n <= 20; n += 2)
            for (int k = 0; k <= 20; ++k)
                if (!(rat_abs(ts.g_at(n, k)) <= rat_pow(make_rational(3, 2), k - 2) *
                                                    rat_pow(K, n / 2 - 1) *
                                                    Rational(factorial((n - 4) / 2 + k))))
                    ok = false;
        for (int k = 0; k <= 20; ++k)
            if (!(rat_abs(ts.f2[k]) <= rat_pow(make_rational(3, 2), k) * K *
                                           Rational(factorial(k >= 1 ? k - 1 : 1))))
                ok = false;
        auto coeffs = ansatz_pipeline(b1h, g40h, 40);
        for (long q = 1; q <= 40; ++q)
            if (!(rat_abs(coeffs.at(q)) <=
                  make_rational(5, 2) * rat_pow(make_rational(7, 10), q - 1) * K))
                ok = false;
        auto ps = polynomial_taylor_system(g40h, 16, 12, 30);
        for (int n = 4; n <= 16; n += 2)
            for (int k = 0; k <= 12; ++k)
                for (long nu = 0; nu <= k; ++nu)
                    if (!(rat_abs(ps.g.at(n).at(k).coeff(nu)) <=
                          make_rational(1, 4) * rat_pow(K, n / 2 - 1) *
                              Rational(factorial((n - 4) / 2 + k)) * Rational(binomial(k, nu))))
                        ok = false;
        for (int k = 0; k <= 12; ++k)
            for (long nu = 0; nu <= k + 1; ++nu)
                if (!(rat_abs(ps.f2.at(k).coeff(nu)) <=
                      Rational(factorial(k >= 1 ? k - 1 : 1)) * Rational(binomial(k + 1, nu))))
                    ok = false;
        for (long q = 1; q <= 30; ++q)
            for (long nu = 0; nu <= q; ++nu)
                if (!(rat_abs(ps.b.at(q).coeff(nu)) <=
                      make_rational(1, q) * rat_pow(make_rational(3, 4), q - 2) *
                          Rational(binomial(q, nu))))
                    ok = false;
        report(8, ok, "coefficient, weight, and polynomial envelopes hold exactly");
    }

    // ---- criterion 9: remainder routes agree; telescoping exact ----
    start();
    {
        const auto& sp = sp14;
        Rational gt = Rational(1) / sp.target.mu_max;
        auto ge = gtilde_coefficients(sp.picard.final.coeffs, sp.target.mu_max, 12);
        auto fam = gtilde_family(ge, 8, 10);
        auto sol = propagate_jets(sp.picard.final.coeffs, sp.target.mu_max, 8, 10);
        auto rem = remainder_flow(sol, fam, 8, 8, gt);
        bool ok = true;
        Rational tol15 = rat_pow(Rational(10), -15);
        for (int n : {4, 6})
            for (int J = 1; J <= 7; ++J) {
                auto direct = remainder_by_subtraction(sol, fam, n, J - 1, gt);
                if (!(rat_abs(direct.derivs[0] - rem.at(n).at(J).derivs[0]) < tol15)) ok = false;
            }
        Rational tol20 = rat_pow(Rational(10), -20);
        for (int n : {2, 4, 6})
            for (int J = 1; J <= 6; ++J) {
                auto dK = remainder_by_subtraction(sol, fam, n, J - 1, gt);
                auto dK1 = remainder_by_subtraction(sol, fam, n, J, gt);
                auto fj = fam.jet(n, J, sp.target.mu_max, 0);
                Rational lhs =
                    rat_pow(gt, J) * dK.derivs[0] - rat_pow(gt, J + 1) * dK1.derivs[0];
                if (!(rat_abs(lhs - rat_pow(gt, J) * fj.derivs[0]) < tol20)) ok = false;
            }
        report(9, ok, "subtraction and hierarchy remainders agree; telescoping identity exact");
    }

    // ---- criterion 10: asymptoticity of the expansion ----
    start();
    {
        std::vector<ExpansionSample> samples;
        for (const auto& sp : scan) {
            ExpansionSample s;
            s.gtilde = Rational(1) / sp.target.mu_max;
            auto ge = gtilde_coefficients(sp.picard.final.coeffs, sp.target.mu_max, 8);
            s.c.assign(9, Rational(0));
            for (int m = 1; m <= 8; ++m) s.c[m] = ge.c[m];
            auto f2 = f2_jet(sp.picard.final.coeffs, sp.target.mu_max, 0);
            s.f2_value = f2.jet.value();
            samples.push_back(s);
        }
        auto rep10 = asymptoticity_check(samples, {1, 2, 3});
        bool ok = true;
        std::string detail = "slopes:";
        for (int K : {1, 2, 3}) {
            double s = rep10.slope.at(K).to_double();
            detail += " K=" + std::to_string(K) + ": " + std::to_string(s);
            if (std::abs(s - (K + 1)) > 0.2) ok = false;
        }
        // normalized remainder ratios bounded across the table
        const auto& sp = sp14;
        Rational gt = Rational(1) / sp.target.mu_max;
        auto ge = gtilde_coefficients(sp.picard.final.coeffs, sp.target.mu_max, 12);
        auto fam = gtilde_family(ge, 6, 11);
        auto sol = propagate_jets(sp.picard.final.coeffs, sp.target.mu_max, 6, 10);
        auto rem = remainder_flow(sol, fam, 6, 9, gt);
        std::vector<double> ratios;
        for (const auto& [n, row] : rem)
            for (const auto& [J, jet] : row) {
                int K = J - 1;
                if (K > 8) continue;
                Real norm = Real(Rational(factorial(n + K)) / Rational(factorial(n - 1)));
                Real r = pow(abs(Real(jet.derivs[0])) / norm,
                             Real(Rational(1, K + n)));
                ratios.push_back(r.to_double());
            }
        std::sort(ratios.begin(), ratios.end());
        double median = ratios[ratios.size() / 2];
        double maxr = ratios.back();
        if (!(maxr <= 3 * median)) ok = false;
        char buf[64];
        std::snprintf(buf, sizeof buf, "; ratio max/median = %.3f", maxr / median);
        report(10, ok, "partial-sum errors scale with the order (" + detail + buf + ")");
    }

    // ---- criterion 11: resummation machinery ----
    start();
    {
        bool ok = true;
        // alternating factorial series against the closed-form oracle
        FormalSeries euler;
        for (long n = 0; n <= 24; ++n) {
            Rational t(factorial(n));
            euler.a.push_back(n % 2 == 0 ? t : -t);
        }
        auto eb = borel_sum(borel_transform(euler), Real(make_rational(1, 10)));
        Real oracle = tanh_sinh(
            [](const Real& u) { return exp(-u) / (Real(1l) + u / Real(10l)); }, Real(0l),
            Real(120l), pow(Real(10l), -30));
        if (!(abs(eb.value - oracle).to_double() < 1e-6)) ok = false;

        // the expansion of the two-point function resums to its own value
        const auto& sp = sp14;
        auto ge = gtilde_coefficients(sp.picard.final.coeffs, sp.target.mu_max, 30);
        FormalSeries series;
        series.a.assign(31, Rational(0));
        for (int m = 1; m <= 30; ++m) series.a[m] = ge.c[m];
        BorelSumOptions opt;
        opt.continuation = Continuation::truncated_polynomial;
        Rational gt = make_rational(1, 8);
        auto bs = borel_sum(borel_transform(series), Real(gt), opt);
        Rational direct = series.partial_sum(gt, 31);
        if (!(abs(bs.value - Real(direct)).to_double() < 1e-10)) ok = false;

        // summability certificate on real samples, plus the negative control
        auto remainder = [&series](const Complex& z, int N) {
            Complex val{Real(0l), Real(0l)};
            for (int m = 30; m >= std::min(N, 31); --m) {
                val = val * z;
                val.re += Real(series.a[m]);
            }
            for (int m = std::min(N, 31) - 1; m >= 1; --m) val = val * z;
            return val;
        };
        std::vector<Complex> zs;
        for (long d : {8, 10, 12}) zs.push_back(Complex(Real(make_rational(1, d)), Real(0l)));
        auto cert = sokal_certificate(remainder, Real(make_rational(1, 6)), 8, zs);
        if (!cert.consistent) ok = false;

        auto bad = [](const Complex& z, int N) {
            Rational f(factorial(N));
            Complex zn{Real(1l), Real(0l)};
            for (int i = 0; i < N; ++i) zn = zn * z;
            return zn * Real(f * f);
        };
        auto cert_bad = sokal_certificate(bad, Real(make_rational(1, 6)), 8, zs);
        if (cert_bad.consistent) ok = false;
        report(11, ok,
               "resummation: oracle match 1e-6, convergent-series match 1e-10, certificate "
               "consistent, negative control inconclusive");
    }

    // ---- criterion 12: independent integration of the truncated hierarchy ----
    start();
    {
        // Implemented exactly as stated: integrate the truncated hierarchy
        // forward from the bare data and compare the four-point value at the
        // top scale against the jet pipeline for growing n_max.
        //
        // This criterion cannot pass: the forward initial-value flow does not
        // select the decaying solution. The integrator is verified against
        // the exact Taylor data (agreement ~1e-11 near the origin), but the
        // two objects differ by exponentially flat terms that the unstable
        // two-point direction amplifies downstream, so the difference
        // saturates at an n_max-independent floor instead of decreasing.
        // See the repository-external decisions ledger for the analysis.
        auto coeffs = ansatz_pipeline(sp0.picard.b1_star, sp0.target.g40, 100);
        auto sol = propagate_jets(coeffs, sp0.target.mu_max, 4, 2);
        Real jets_f4 = Real(sol.f.at(4).value());
        bool ok = true;
        Real prev(0l);
        std::string detail = "|oracle - jets| at n_max 6,8,10,12:";
        for (int n_max : {6, 8, 10, 12}) {
            auto vals = truncated_ode_oracle(sp0.picard.b1_star, sp0.target.g40, n_max,
                                             sp0.target.mu_max);
            Real diff = abs(vals.at(4) - jets_f4);
            char buf[40];
            std::snprintf(buf, sizeof buf, " %.3e", diff.to_double());
            detail += buf;
            if (n_max > 6 && !(diff < prev)) ok = false;
            prev = diff;
        }
        report(12, ok,
               "truncated forward integration cannot track the decaying branch (" + detail +
               "); known-blocked criterion, see ledger");
    }

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
