#include "mfflow/flow.hpp"

#include <stdexcept>

#include "mfflow/combinatorics.hpp"

namespace mfflow {

namespace {

void validate_rect(int n_max, int k_max) {
    if (n_max < 4 || n_max % 2 != 0)
        throw std::invalid_argument("taylor_system: n_max must be even and >= 4");
    if (k_max < 0) throw std::invalid_argument("taylor_system: k_max must be >= 0");
}

// One recursion for both the numeric system (S = Rational) and the
// b1-polynomial system (S = RatPoly).
template <typename S>
struct SystemData {
    std::map<int, std::vector<S>> g;
    std::vector<S> f2;
};

template <typename S>
SystemData<S> build_system(const S& b1, const Rational& g40, int n_max, int k_max) {
    validate_rect(n_max, k_max);
    const int cone = n_max + k_max;  // g_{n,k} present for n + k <= cone
    const int f2_top = cone - 3;
    SystemData<S> sys;
    sys.f2.assign(f2_top + 1, S());
    sys.f2[0] = b1;
    for (int n = 4; n <= cone; n += 2) sys.g[n].assign(cone - n + 1, S());

    for (int level = 4; level <= 2 * cone - 4; level += 2) {
        int n_start = std::min(level, cone);
        if (n_start % 2 != 0) --n_start;
        for (int n = n_start; n >= 4; n -= 2) {
            int k = (level - n) / 2;
            if (k < 0 || n + k > cone) continue;
            auto& row = sys.g[n];
            if (k == 0) {
                if (n == 4) {
                    row[0] = S(Rational(g40));
                } else {
                    S acc{};
                    for (int n1 = 4; n1 + 4 <= n + 2; n1 += 2)
                        acc = acc + sys.g[n1][0] * sys.g[n + 2 - n1][0];
                    row[0] = acc * make_rational(-n, n - 4);
                }
            } else if (k == 1) {
                S acc{};
                for (int n1 = 4; n1 + 4 <= n + 2; n1 += 2) {
                    acc = acc + sys.g[n1][0] * sys.g[n + 2 - n1][1];
                    acc = acc + sys.g[n1][1] * sys.g[n + 2 - n1][0];
                }
                acc = acc + row[0] * (b1 * Rational(2) + S(make_rational(n - 4, n)));
                row[1] = acc * make_rational(-n, n - 2);
            } else {
                // recursion for g_{n,k}, k >= 2
                S acc = row[k - 1] * Rational(-(n - 4));
                S conv{};
                for (int nu = 0; nu <= k - 1; ++nu) conv = conv + row[nu] * sys.f2[k - 1 - nu];
                acc = acc + conv * Rational(-2 * n);
                S pair{};
                for (int n1 = 4; n1 + 4 <= n + 2; n1 += 2) {
                    const auto& r1 = sys.g[n1];
                    const auto& r2 = sys.g[n + 2 - n1];
                    for (int nu = 0; nu <= k; ++nu) pair = pair + r1[nu] * r2[k - nu];
                }
                acc = acc + pair * Rational(-n);
                if (n + 2 + (k - 2) <= cone) acc = acc + sys.g[n + 2][k - 2] * Rational(n * (n + 1));
                Rational inv_den = make_rational(1, n + 2 * k - 4);
                row[k] = acc * inv_den;
            }
        }
        int kf = (level - 2) / 2;
        if (kf >= 1 && kf <= f2_top) {
            // f_{2,kf} from the two-point recursion
            int k = kf - 1;
            S acc = sys.g[4][k] * Rational(3) + sys.f2[k];
            S conv{};
            for (int nu = 0; nu <= k; ++nu) conv = conv + sys.f2[nu] * sys.f2[k - nu];
            acc = acc - conv;
            sys.f2[kf] = acc * make_rational(1, kf);
        }
    }
    return sys;
}

// inversion of the Taylor map onto the basis weights, generic in the scalar
template <typename S>
std::vector<S> weights_from_f2(const std::vector<S>& f2, int q_max) {
    if (q_max < 1) throw std::invalid_argument("weights_from_f2: q_max >= 1");
    if (static_cast<int>(f2.size()) < q_max)
        throw std::out_of_range("weights_from_f2: need f2 coefficients through k = q_max - 1");
    std::vector<S> b(q_max + 1, S());
    b[1] = f2[0];
    for (int n = 1; n + 1 <= q_max; ++n) {
        S acc = f2[n] * Rational(Rational(1) / rat_pow(Rational(n + 1), n));
        for (int rho = 2; rho <= n + 1; ++rho) {
            if ((n + 1) % rho != 0) continue;
            int idx = (n + 1) / rho;
            Rational sign = (rho % 2 == 0) ? Rational(-1) : Rational(1);
            acc = acc - b[idx] * Rational(sign / rat_pow(Rational(rho), n));
        }
        b[n + 1] = acc;
    }
    return b;
}

}  // namespace

const Rational& TaylorSystem::g_at(int n, int k) const {
    auto it = g.find(n);
    if (it == g.end() || k >= static_cast<int>(it->second.size()))
        throw std::out_of_range("TaylorSystem: coefficient outside computed range");
    return it->second[k];
}

PowerSeries TaylorSystem::f2_series(int k_top) const {
    if (k_top >= static_cast<int>(f2.size()))
        throw std::out_of_range("TaylorSystem: f2 truncation beyond computed depth");
    return PowerSeries(std::vector<Rational>(f2.begin(), f2.begin() + k_top + 1));
}

PowerSeries TaylorSystem::g_series(int n, int k_top) const {
    auto it = g.find(n);
    if (it == g.end() || k_top >= static_cast<int>(it->second.size()))
        throw std::out_of_range("TaylorSystem: g truncation beyond computed depth");
    return PowerSeries(std::vector<Rational>(it->second.begin(), it->second.begin() + k_top + 1));
}

TaylorSystem taylor_system(const Rational& b1, const Rational& g40, int n_max, int k_max) {
    auto sys = build_system<Rational>(b1, g40, n_max, k_max);
    TaylorSystem ts;
    ts.b1 = b1;
    ts.g40 = g40;
    ts.n_max = n_max;
    ts.k_max = k_max;
    ts.g = std::move(sys.g);
    ts.f2 = std::move(sys.f2);
    return ts;
}

std::pair<Rational, Rational> closed_form_seeds(int n, const Rational& g40, const Rational& b1) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("closed_form_seeds: n even >= 4");
    int half = n / 2;
    Rational sign = (half % 2 == 0) ? Rational(1) : Rational(-1);
    Rational base = sign * rat_pow(g40, half - 1) * Rational(fuss_catalan(2, half - 1));
    Rational g0 = base;
    Rational g1 = -base * (make_rational(3 * n - 4, 2) * b1 + make_rational(n - 4, 4));
    return {g0, g1};
}

TaylorSystem PolynomialTaylorSystem::evaluate(const Rational& b1) const {
    TaylorSystem ts;
    ts.b1 = b1;
    ts.g40 = g40;
    ts.n_max = n_max;
    ts.k_max = k_max;
    for (const auto& [n, row] : g) {
        auto& out = ts.g[n];
        out.reserve(row.size());
        for (const auto& p : row) out.push_back(p.eval(b1));
    }
    ts.f2.reserve(f2.size());
    for (const auto& p : f2) ts.f2.push_back(p.eval(b1));
    return ts;
}

AnsatzCoefficients PolynomialTaylorSystem::evaluate_b(const Rational& b1) const {
    AnsatzCoefficients out;
    out.b.resize(b.size());
    for (size_t q = 1; q < b.size(); ++q) out.b[q] = b[q].eval(b1);
    return out;
}

Rational PolynomialTaylorSystem::b_derivative(long q, const Rational& b1) const {
    return rat_poly_derivative(b.at(q)).eval(b1);
}

PolynomialTaylorSystem polynomial_taylor_system(const Rational& g40, int n_max, int k_max,
                                                int b_q_max) {
    // the weight polynomials through q need f2 through k = q - 1
    if (b_q_max > 0) k_max = std::max(k_max, b_q_max + 2 - n_max);
    RatPoly b1_var = RatPoly::monomial(Rational(1), 1);
    auto sys = build_system<RatPoly>(b1_var, g40, n_max, k_max);
    PolynomialTaylorSystem ps;
    ps.g40 = g40;
    ps.n_max = n_max;
    ps.k_max = k_max;
    ps.g = std::move(sys.g);
    ps.f2 = std::move(sys.f2);
    if (b_q_max == 0) b_q_max = static_cast<int>(ps.f2.size());
    ps.b_q_max = b_q_max;
    ps.b = weights_from_f2<RatPoly>(ps.f2, b_q_max);
    return ps;
}

Jet<Rational> hierarchy_step(const std::map<int, Jet<Rational>>& f, int n) {
    const auto& fn = f.at(n);
    Jet<Rational> acc = jet_scale(jet_derivative(fn), make_rational(2, n * (n + 1)));
    acc = jet_add(acc, jet_scale(jet_truncate(fn, acc.order()), make_rational(n - 4, n * (n + 1))));
    for (int n1 = 2; n1 <= n; n1 += 2) {
        int n2 = n + 2 - n1;
        auto prod = jet_mul(f.at(n1), f.at(n2));
        acc = jet_add(acc, jet_scale(jet_truncate(prod, acc.order()), make_rational(1, n + 1)));
    }
    return acc;
}

FlowSolution propagate_jets(const AnsatzCoefficients& coeffs, const Rational& mu, int n_max,
                            int top_order) {
    if (n_max < 4 || n_max % 2 != 0)
        throw std::invalid_argument("propagate_jets: n_max even >= 4");
    if (top_order < n_max / 2)
        throw std::invalid_argument(
            "propagate_jets: order budget too small (need top_order >= n_max/2)");
    auto f2t = f2_jet(coeffs, mu, top_order);
    FlowSolution sol;
    sol.mu = mu;
    sol.f2_tail = f2t.tail;
    sol.certified = f2t.certified;
    sol.f[2] = f2t.jet;
    for (int n = 2; n + 2 <= n_max; n += 2) sol.f[n + 2] = hierarchy_step(sol.f, n);
    return sol;
}

Jet<Rational> flow_residual(const FlowSolution& sol, int n) {
    auto acc = hierarchy_step(sol.f, n);
    return jet_sub(jet_truncate(sol.f.at(n + 2), acc.order()), acc);
}

std::map<int, Real> truncated_ode_oracle(const Rational& b1, const Rational& g40, int n_max,
                                         const Rational& mu_end, const OdeControl& ctl) {
    if (n_max < 2 || n_max % 2 != 0)
        throw std::invalid_argument("truncated_ode_oracle: n_max even >= 2");
    unsigned bits = ctl.bits ? ctl.bits : Real::default_bits();
    Rational local_tol = ctl.local_tol;
    if (local_tol == 0) local_tol = rat_pow(Rational(10), -24);
    const int P = ctl.taylor_order;

    // state values by moment index
    std::map<int, Real> f;
    f[2] = Real(b1, bits);
    if (n_max >= 4) f[4] = Real(g40, bits);
    for (int n = 6; n <= n_max; n += 2) f[n] = Real(0l, bits);

    Real mu(0l, bits);
    const Real mu_target(mu_end, bits);
    Real h(ctl.step, bits);
    Real tol(local_tol, bits);

    while (mu < mu_target) {
        if (mu + h > mu_target) h = mu_target - mu;
        // Taylor coefficients of every component at the current point:
        // c[n][k+1] = ( (n(n+1)/2) c[n+2][k] - (n/2) sum_{n1+n2=n+2} (c_{n1}*c_{n2})_k
        //               - ((n-4)/2) c[n][k] ) / (k+1),   c[n_max+2] = 0.
        std::map<int, std::vector<Real>> c;
        for (int n = 2; n <= n_max; n += 2) {
            c[n].assign(P + 1, Real(0l, bits));
            c[n][0] = f[n];
        }
        for (int k = 0; k + 1 <= P; ++k) {
            for (int n = 2; n <= n_max; n += 2) {
                Real rhs(0l, bits);
                if (n + 2 <= n_max)
                    rhs += Real(Rational(n) * (n + 1) / 2, bits) * c[n + 2][k];
                Real conv(0l, bits);
                for (int n1 = 2; n1 <= n; n1 += 2) {
                    int n2 = n + 2 - n1;
                    for (int j = 0; j <= k; ++j) conv += c[n1][j] * c[n2][k - j];
                }
                rhs -= Real(make_rational(n, 2), bits) * conv;
                rhs -= Real(make_rational(n - 4, 2), bits) * c[n][k];
                c[n][k + 1] = rhs / Real(static_cast<long>(k + 1), bits);
            }
        }
        // error estimate from the last two retained orders
        Real hp = pow(h, P);
        Real est(0l, bits);
        for (int n = 2; n <= n_max; n += 2)
            est += abs(c[n][P]) * hp + abs(c[n][P - 1]) * hp / h;
        if (est > tol) {
            if (h.to_double() < 1e-7)
                throw std::runtime_error("truncated_ode_oracle: step size underflow (stiffness)");
            h = h / Real(2l, bits);
            continue;
        }
        for (int n = 2; n <= n_max; n += 2) {
            Real acc(0l, bits);
            for (int k = P; k >= 0; --k) acc = acc * h + c[n][k];
            f[n] = acc;
        }
        mu += h;
        Real next_h(ctl.step, bits);
        h = next_h;
    }
    return f;
}

ScanResult triviality_scan(const Rational& g40, const Rational& c,
                           const std::vector<Rational>& mu_max_list, const Rational& tol,
                           int q_max, int max_iter) {
    ScanResult out;
    std::vector<Real> lx, ly2, ly4, ly6;
    for (const auto& mm : mu_max_list) {
        RenormalizationTarget target;
        target.c = c;
        target.mu_max = mm;
        target.g40 = g40;
        target.validate();
        auto fixed = picard_fixed_point(target, tol, max_iter, q_max);
        auto sol = propagate_jets(fixed.final.coeffs, mm, 6, 3);
        ScanRow row;
        row.mu_max = mm;
        row.b1_star = fixed.b1_star;
        row.residual = fixed.residual;
        row.f2_exact = sol.f[2].value();
        row.f4_exact = sol.f[4].value();
        row.f6_exact = sol.f[6].value();
        row.f2 = Real(row.f2_exact);
        row.f4 = Real(row.f4_exact);
        row.f6 = Real(row.f6_exact);
        row.tail_certified = fixed.final.tail_certified;
        row.tail_bound = fixed.final.tail_bound;
        out.rows.push_back(row);
        lx.push_back(log(Real(mm)));
        ly2.push_back(log(abs(Real(row.f2_exact))));
        ly4.push_back(log(abs(Real(row.f4_exact))));
        ly6.push_back(log(abs(Real(row.f6_exact))));
    }
    auto slope = [&](const std::vector<Real>& ly) {
        Real n(static_cast<long>(lx.size()));
        Real sx(0l), sy(0l), sxy(0l), sxx(0l);
        for (size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxy += lx[i] * ly[i];
            sxx += lx[i] * lx[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    out.slope2 = slope(ly2);
    out.slope4 = slope(ly4);
    out.slope6 = slope(ly6);
    return out;
}

}  // namespace mfflow
