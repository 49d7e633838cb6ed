#include "mfflow/perturbation.hpp"

#include <stdexcept>

#include "mfflow/combinatorics.hpp"

namespace mfflow {

const LogLaurentPoly PerturbativeAmplitudes::zero_{};

RenormConstants RenormConstants::bphz(int j_max) {
    RenormConstants rc;
    rc.A.assign(j_max + 1, Rational(0));
    rc.B.assign(j_max + 1, Rational(0));
    if (j_max >= 1) rc.B[1] = Rational(1);
    return rc;
}

const LogLaurentPoly& PerturbativeAmplitudes::at(int n, int j) const {
    auto it = table_.find({n, j});
    return it == table_.end() ? zero_ : it->second;
}

void PerturbativeAmplitudes::set(int n, int j, LogLaurentPoly poly) {
    table_[{n, j}] = std::move(poly);
}

// right side of the amplitude flow at (n, j): the linear lift from n+2 plus
// the quadratic mixing of lower orders
LogLaurentPoly PerturbativeAmplitudes::rhs(int n, int j) const {
    LogLaurentPoly lin = at(n + 2, j).scaled(make_rational(n * (n + 1), 2));
    LogLaurentPoly lifted;
    for (const auto& [k, c] : lin.terms()) lifted.add_term(k.first - 2, k.second, c);
    LogLaurentPoly quad;
    for (int n1 = 2; n1 <= n; n1 += 2) {
        int n2 = n + 2 - n1;
        for (int j1 = 1; j1 <= j - 1; ++j1) {
            int j2 = j - j1;
            if (n1 > 2 * j1 + 2 || n2 > 2 * j2 + 2) continue;
            quad = quad + at(n1, j1) * at(n2, j2);
        }
    }
    return lifted - quad.scaled(make_rational(n, 2));
}

LogLaurentPoly PerturbativeAmplitudes::flow_residual(int n, int j, const RenormConstants&) const {
    return at(n, j).alpha_derivative() - rhs(n, j);
}

Real PerturbativeAmplitudes::eval(int n, int j, const Rational& mu) const {
    Rational ln_alpha = mu - mu_max_;
    Real alpha = exp(Real(ln_alpha));
    Real a0 = exp(Real(-mu_max_));
    return at(n, j).eval(alpha, Real(ln_alpha), a0);
}

PerturbativeAmplitudes alpha_flow(int j_max, const RenormConstants& rc, const Rational& mu_max) {
    if (j_max < 1) throw std::invalid_argument("alpha_flow: j_max >= 1");
    if (static_cast<int>(rc.A.size()) <= j_max || static_cast<int>(rc.B.size()) <= j_max)
        throw std::invalid_argument("alpha_flow: not enough boundary constants");
    PerturbativeAmplitudes amps(j_max, mu_max);
    const Rational ln_a0 = -mu_max;
    for (int j = 1; j <= j_max; ++j) {
        for (int n = 2 * j + 2; n >= 2; n -= 2) {
            LogLaurentPoly rhs = amps.rhs(n, j);
            LogLaurentPoly F = rhs.antiderivative();
            if (n >= 6) {
                // vanishing data at the bare scale: integrate upward
                amps.set(n, j, F - F.at_lower_scale(ln_a0));
            } else {
                // fixed data at the top scale: integrate downward from alpha = 1
                LogLaurentPoly at_unit;
                for (const auto& [k, c] : F.terms())
                    if (k.second == 0) at_unit.add_term(0, 0, c);
                const Rational& bc = (n == 2) ? rc.A[j] : rc.B[j];
                amps.set(n, j, LogLaurentPoly::constant(bc) + F - at_unit);
            }
        }
    }
    return amps;
}

Jet<Real> to_mu(const PerturbativeAmplitudes& amps, int n, int j, const Rational& mu, int order) {
    unsigned bits = Real::default_bits();
    Rational ln_alpha = mu - amps.mu_max();
    Real alpha = exp(Real(ln_alpha, bits));
    Real a0 = exp(Real(-amps.mu_max(), bits));
    Real lnr(ln_alpha, bits);

    // outer jet: alpha-derivative tower of the amplitude at alpha
    std::vector<Real> outer_d;
    LogLaurentPoly cur = amps.at(n, j);
    for (int l = 0; l <= order; ++l) {
        outer_d.push_back(cur.eval(alpha, lnr, a0));
        cur = cur.alpha_derivative();
    }
    Jet<Real> outer(alpha, std::move(outer_d));

    // inner jet: alpha(mu) has every derivative equal to alpha
    Jet<Real> inner(Real(Rational(mu), bits), std::vector<Real>(order + 1, alpha));
    auto comp = faa_di_bruno_jet(outer, inner);

    // prefactor alpha^{2-n/2}: derivative tower (2-n/2)^l alpha^{2-n/2}
    long e = 2 - n / 2;
    Real pref = pow(alpha, e);
    std::vector<Real> pd(order + 1);
    for (int l = 0; l <= order; ++l) pd[l] = pow(Real(e, bits), static_cast<long>(l)) * pref;
    Jet<Real> prefactor(Real(Rational(mu), bits), std::move(pd));
    return jet_mul(prefactor, comp);
}

Rational GTildeExpansion::a_value(int m, const Rational& mu) const {
    return a.at(m).eval(mu_max - mu);
}

GTildeExpansion gtilde_coefficients(const AnsatzCoefficients& coeffs, const Rational& mu_max,
                                    int m_max) {
    if (m_max < 1) throw std::invalid_argument("gtilde_coefficients: m_max >= 1");
    if (coeffs.q_max() < m_max - 1)
        throw std::out_of_range("gtilde_coefficients: weights through q = m_max - 1 required");
    GTildeExpansion ge;
    ge.mu_max = mu_max;
    ge.m_max = m_max;
    ge.c.assign(m_max + 1, Rational(0));
    for (long q = 1; q <= coeffs.q_max(); ++q) ge.c[1] += coeffs.at(q) / Rational(q);
    if (coeffs.tail) {
        ge.c1_tail = coeffs.tail->env_tail(coeffs.q_max()) / Rational(coeffs.q_max() + 1);
        ge.certified = coeffs.tail->certified();
    }
    // expanding each basis term geometrically: the z^m coefficient collects
    // (q, k) with q k = m - 1, k >= 1, giving a finite divisor sum
    for (int m = 2; m <= m_max; ++m) {
        Rational acc(0);
        for (long q = 1; q <= m - 1; ++q) {
            if ((m - 1) % q != 0) continue;
            long k = (m - 1) / q;
            Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
            acc += sign * coeffs.at(q) / rat_pow(Rational(q), m);
        }
        ge.c[m] = acc;
    }
    ge.a.assign(m_max + 1, RatPoly());
    for (int m = 1; m <= m_max; ++m) {
        RatPoly poly;
        poly.c.assign(m, Rational(0));
        for (int al = 1; al <= m; ++al)
            poly.c[m - al] = ge.c[al] * Rational(binomial(m - 1, al - 1));
        poly.trim();
        ge.a[m] = poly;
    }
    return ge;
}

Jet<Rational> GTildeFamily::jet(int n, int j, const Rational& mu, int order) const {
    const auto& poly = fnj.at(n).at(j);
    Rational eps = mu_max - mu;
    std::vector<Rational> d(order + 1);
    RatPoly cur = poly;
    Rational sign(1);
    for (int l = 0; l <= order; ++l) {
        d[l] = sign * cur.eval(eps);
        cur = rat_poly_derivative(cur);
        sign = -sign;  // d/dmu = -d/deps
    }
    return Jet<Rational>(mu, std::move(d));
}

GTildeFamily gtilde_family(const GTildeExpansion& ge, int n_max, int j_max) {
    if (j_max > ge.m_max) throw std::out_of_range("gtilde_family: expansion too short");
    GTildeFamily fam;
    fam.mu_max = ge.mu_max;
    fam.n_max = n_max;
    fam.j_max = j_max;
    auto& f2row = fam.fnj[2];
    f2row.assign(j_max + 1, RatPoly());
    for (int j = 1; j <= j_max; ++j) f2row[j] = ge.a[j];
    for (int n = 2; n + 2 <= n_max; n += 2) {
        auto& next = fam.fnj[n + 2];
        next.assign(j_max + 1, RatPoly());
        for (int j = 1; j <= j_max; ++j) {
            RatPoly acc;
            for (int n1 = 2; n1 <= n; n1 += 2) {
                int n2 = n + 2 - n1;
                for (int j1 = 1; j1 <= j - 1; ++j1)
                    acc = acc + fam.fnj[n1][j1] * fam.fnj[n2][j - j1];
            }
            acc = acc * make_rational(1, n + 1);
            acc = acc + fam.fnj[n][j] * make_rational(n - 4, n * (n + 1));
            // d/dmu = -d/deps
            acc = acc - rat_poly_derivative(fam.fnj[n][j]) * make_rational(2, n * (n + 1));
            next[j] = acc;
        }
    }
    return fam;
}

Jet<Rational> remainder_by_subtraction(const FlowSolution& sol, const GTildeFamily& fam, int n,
                                       int K, const Rational& gtilde) {
    if (!(gtilde > 0)) throw std::domain_error("remainder_by_subtraction: gtilde > 0");
    auto acc = sol.f.at(n);
    Rational gj(1);
    for (int j = 1; j <= K; ++j) {
        gj *= gtilde;
        acc = jet_sub(acc, jet_scale(fam.jet(n, j, sol.mu, acc.order()), gj));
    }
    Rational scale = Rational(1) / (gj * gtilde);
    return jet_scale(acc, scale);
}

std::map<int, std::map<int, Jet<Rational>>> remainder_flow(const FlowSolution& sol,
                                                           const GTildeFamily& fam, int n_top,
                                                           int J_top, const Rational& gtilde) {
    std::map<int, std::map<int, Jet<Rational>>> rem;
    for (int J = 1; J <= J_top; ++J)
        rem[2][J] = remainder_by_subtraction(sol, fam, 2, J - 1, gtilde);
    for (int n = 2; n + 2 <= n_top; n += 2) {
        for (int J = 1; J <= J_top; ++J) {
            const auto& dn = rem[n][J];
            Jet<Rational> acc = jet_scale(jet_derivative(dn), make_rational(2, n * (n + 1)));
            acc = jet_add(acc,
                          jet_scale(jet_truncate(dn, acc.order()), make_rational(n - 4, n * (n + 1))));
            for (int n1 = 2; n1 <= n; n1 += 2) {
                int n2 = n + 2 - n1;
                Jet<Rational> mix = Jet<Rational>::constant(Rational(0), sol.mu, acc.order());
                for (int j = 1; j <= J - 1; ++j)
                    mix = jet_add(mix, jet_mul(fam.jet(n2, J - j, sol.mu, acc.order()),
                                               jet_truncate(rem[n1][j], acc.order())));
                mix = jet_add(mix, jet_mul(jet_truncate(sol.f.at(n1), acc.order()),
                                           jet_truncate(rem[n2][J], acc.order())));
                acc = jet_add(acc, jet_scale(mix, make_rational(1, n + 1)));
            }
            rem[n + 2][J] = acc;
        }
    }
    return rem;
}

namespace {

Real nth_root(const Real& x, long n) { return pow(x, Real(Rational(1)) / Real(n)); }

}  // namespace

std::vector<BoundFit> bound_certificates(const PerturbativeAmplitudes& amps,
                                         const std::map<int, std::map<int, Jet<Rational>>>& rem,
                                         const GTildeFamily& fam, const Rational& mu_lo,
                                         const Rational& mu_hi) {
    std::vector<BoundFit> fits;
    const int grid_points = 9;
    std::vector<Rational> grid;
    for (int i = 0; i < grid_points; ++i)
        grid.push_back(mu_lo + (mu_hi - mu_lo) * Rational(i) / Rational(grid_points - 1));

    // amplitude envelope at the top window: |A_{n,j}| <= alpha^{n/2-2}
    // C^{j-n/4} j! / ((n/2)^2 (n/2)!); fitted C from rows with positive
    // exponent j - n/4
    {
        BoundFit fit;
        fit.name = "amplitude_envelope";
        Real cmax(0l);
        Real last(0l);
        for (int j = 1; j <= amps.j_max(); ++j) {
            for (int n = 2; n <= 2 * j + 2; n += 2) {
                Rational expo = Rational(j) - make_rational(n, 4);
                if (!(expo > 0)) continue;
                for (const auto& mu : grid) {
                    Real val = abs(amps.eval(n, j, mu));
                    Real alpha = exp(Real(mu - amps.mu_max()));
                    Real norm = pow(alpha, Real(Rational(n) / 2 - 2)) *
                                Real(Rational(factorial(j)) /
                                     (make_rational(n * n, 4) * Rational(factorial(n / 2))));
                    if (norm.is_zero()) continue;
                    Real ratio = val / norm;
                    if (ratio > Real(0l)) {
                        Real c = pow(ratio, Real(Rational(1)) / Real(expo));
                        if (c > cmax) cmax = c;
                        if (j == amps.j_max()) last = c > last ? c : last;
                    }
                }
            }
        }
        fit.constant = cmax;
        fit.edge_ratio = cmax > Real(0l) ? last / cmax : Real(0l);
        fit.growing_at_edge = fit.edge_ratio == Real(1l);
        fits.push_back(fit);
    }

    // remainder envelope: (|rem_n^J| (n-1)!/(n+J-1+l)!)^{1/(J+n+l-1)} across
    // the table; bounded when the factorial normalization is right
    {
        BoundFit fit;
        fit.name = "remainder_envelope";
        Real cmax(0l);
        Real last(0l);
        int n_top = rem.rbegin()->first;
        for (const auto& [n, row] : rem) {
            for (const auto& [J, jet] : row) {
                for (int l = 0; l <= jet.order(); ++l) {
                    // K = J - 1; bound shape C^{K+n+l-1} (n+K+l)!/(n-1)!
                    Rational norm = Rational(factorial(n - 1 + J - 1 + l)) /
                                    Rational(factorial(n - 1));
                    long expo = (J - 1) + n + l - 1;
                    if (expo <= 0) continue;
                    Real ratio = abs(Real(jet.derivs[l])) / Real(norm);
                    if (ratio.is_zero()) continue;
                    Real c = nth_root(ratio, expo);
                    if (c > cmax) cmax = c;
                    if (n == n_top) last = c > last ? c : last;
                }
            }
        }
        fit.constant = cmax;
        fit.edge_ratio = cmax > Real(0l) ? last / cmax : Real(0l);
        fit.growing_at_edge = fit.edge_ratio == Real(1l);
        fits.push_back(fit);
    }

    // window bound on the family: |d^m f_{n,j}| <= C'^{j+n/2+m} (j+m+1)! /
    // ((n/2)^2 (n/2)!)
    {
        BoundFit fit;
        fit.name = "family_window_envelope";
        Real cmax(0l);
        Real last(0l);
        for (const auto& [n, row] : fam.fnj) {
            for (int j = 1; j < static_cast<int>(row.size()); ++j) {
                for (const auto& mu : grid) {
                    auto jet = fam.jet(n, j, mu, 3);
                    for (int m = 0; m <= jet.order(); ++m) {
                        Rational norm = Rational(factorial(j + m + 1)) /
                                        (make_rational(n * n, 4) * Rational(factorial(n / 2)));
                        long expo = j + n / 2 + m;
                        Real ratio = abs(Real(jet.derivs[m])) / Real(norm);
                        if (ratio.is_zero()) continue;
                        Real c = nth_root(ratio, expo);
                        if (c > cmax) cmax = c;
                        if (j + 1 == static_cast<int>(row.size())) last = c > last ? c : last;
                    }
                }
            }
        }
        fit.constant = cmax;
        fit.edge_ratio = cmax > Real(0l) ? last / cmax : Real(0l);
        fit.growing_at_edge = fit.edge_ratio == Real(1l);
        fits.push_back(fit);
    }
    return fits;
}

}  // namespace mfflow
