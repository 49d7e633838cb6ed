#include "mfflow/ansatz.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "mfflow/flow.hpp"

namespace mfflow {

namespace {

// p_q(mu) <= 1/(q mu) everywhere (and <= 1 on [0,1])
Rational basis_sup(long q_from, const Rational& mu) {
    if (mu > 1) return Rational(1) / (Rational(q_from) * mu);
    return Rational(1);
}

}  // namespace

Rational TailCertificate::bound(long q) const {
    switch (kind) {
        case Kind::small_coupling:
            return make_rational(5, 2) * K * rat_pow(make_rational(7, 10), q - 1);
        case Kind::polynomial_envelope:
            return make_rational(1, q) * rat_pow(make_rational(3, 4), q - 2) *
                   rat_pow(Rational(1) + K, q);
        case Kind::empirical:
            return K * rat_pow(ratio, q);
    }
    return Rational(0);
}

// closed geometric form of sum_{q > q_from} bound(q)
Rational TailCertificate::env_tail(long q_from) const {
    switch (kind) {
        case Kind::small_coupling:
            return make_rational(5, 2) * K * rat_pow(ratio, q_from) / (Rational(1) - ratio);
        case Kind::polynomial_envelope:
            return make_rational(16, 9) * rat_pow(ratio, q_from + 1) / (Rational(1) - ratio) /
                   Rational(q_from + 1);
        case Kind::empirical:
            return K * rat_pow(ratio, q_from + 1) / (Rational(1) - ratio);
    }
    return Rational(0);
}

Rational TailCertificate::tail_sum(long q_from, const Rational& mu) const {
    return env_tail(q_from) * basis_sup(q_from + 1, mu);
}

Rational TailCertificate::tail_sum_deriv(long q_from, const Rational& mu0, int l) const {
    if (l == 0) return tail_sum(q_from, mu0);
    if (mu0 <= 1)
        throw std::domain_error("tail_sum_deriv: derivative tails need mu > 1");
    // Cauchy estimate on the disk of radius rho = (mu0-1)/2 around mu0:
    // |d^l p_q(mu0)| <= l! (27/26) * 2/(q (mu0+1)) * rho^{-l}
    Rational rho = (mu0 - 1) / 2;
    Rational cauchy = Rational(factorial(l)) * make_rational(27, 26) * Rational(2) /
                      (Rational(q_from + 1) * (mu0 + 1)) / rat_pow(rho, l);
    return env_tail(q_from) * cauchy;
}

TailCertificate classify_tail(const Rational& b1, const Rational& g40,
                              const std::vector<Rational>& b) {
    TailCertificate cert;
    Rational ab1 = rat_abs(b1);
    // the proofs of the envelope lemmas need g40 <= K/30 (not the printed K/10)
    Rational K34 = ab1 > Rational(30) * g40 ? ab1 : Rational(30) * g40;
    if (g40 > 0 && K34 <= make_rational(1, 30)) {
        cert.kind = TailCertificate::Kind::small_coupling;
        cert.K = K34;
        cert.ratio = make_rational(7, 10);
    } else if (g40 > 0 && g40 <= make_rational(1, 900) && ab1 < make_rational(1, 3)) {
        cert.kind = TailCertificate::Kind::polynomial_envelope;
        cert.K = ab1;
        cert.ratio = make_rational(3, 4) * (Rational(1) + ab1);
    } else {
        // weights outside the proven regimes decay erratically; fit the
        // envelope rate through q-th roots instead of consecutive ratios
        cert.kind = TailCertificate::Kind::empirical;
        Real log_r_max(-1000l, 64);
        for (size_t q = 2; q < b.size(); ++q) {
            if (b[q] == 0) continue;
            Real lr = log(abs(Real(b[q], 64))) / Real(static_cast<long>(q), 64);
            if (lr > log_r_max) log_r_max = lr;
        }
        Rational rmax = exp(log_r_max).to_rational() * make_rational(101, 100);
        if (rmax <= 0 || rmax >= 1) rmax = make_rational(99, 100);
        cert.ratio = rmax;
        Rational A(0);
        for (size_t q = 1; q < b.size(); ++q) {
            Rational cand = rat_abs(b[q]) / rat_pow(rmax, static_cast<long>(q));
            if (cand > A) A = cand;
        }
        cert.K = A;
        return cert;
    }
    // proven envelopes must hold on the computed range; a violation is a bug
    for (size_t q = 1; q < b.size(); ++q) {
        if (rat_abs(b[q]) > cert.bound(static_cast<long>(q)))
            throw std::logic_error("classify_tail: certified envelope violated by computed weight");
    }
    return cert;
}

Rational basis_value(long q, const Rational& mu) {
    if (q < 1) throw std::domain_error("basis_value: q >= 1");
    if (mu < 0) throw std::domain_error("basis_value: mu >= 0");
    Rational x = Rational(q) * mu;
    return rat_pow(x, q - 1) / (Rational(1) + rat_pow(x, q));
}

Jet<Rational> basis_jet(long q, const Rational& mu, int order) {
    if (q < 1) throw std::domain_error("basis_jet: q >= 1");
    if (mu < 0) throw std::domain_error("basis_jet: mu >= 0");
    auto x = jet_scale(Jet<Rational>::variable(mu, order), Rational(q));
    auto num = Jet<Rational>::constant(Rational(1), mu, order);
    for (long i = 0; i < q - 1; ++i) num = jet_mul(num, x);
    auto den = jet_add(Jet<Rational>::constant(Rational(1), mu, order), jet_mul(num, x));
    return jet_quotient(num, den);
}

JetWithTail f2_jet(const AnsatzCoefficients& coeffs, const Rational& mu, int order) {
    if (mu < 0) throw std::domain_error("f2_jet: mu >= 0");
    JetWithTail out;
    out.jet = Jet<Rational>::constant(Rational(0), mu, order);
    for (long q = 1; q <= coeffs.q_max(); ++q) {
        if (coeffs.at(q) == 0) continue;
        out.jet = jet_add(out.jet, jet_scale(basis_jet(q, mu, order), coeffs.at(q)));
    }
    out.tail.assign(order + 1, Rational(0));
    if (coeffs.tail) {
        const auto& cert = *coeffs.tail;
        out.certified = cert.certified();
        out.tail[0] = cert.tail_sum(coeffs.q_max(), mu);
        for (int l = 1; l <= order; ++l) {
            if (mu > 1) {
                out.tail[l] = cert.tail_sum_deriv(coeffs.q_max(), mu, l);
            } else {
                out.certified = false;
            }
        }
    } else {
        out.certified = false;
    }
    return out;
}

PowerSeries taylor_from_b(const AnsatzCoefficients& coeffs, int k_max) {
    if (k_max + 1 > coeffs.q_max())
        throw std::out_of_range("taylor_from_b: needs weights through q = k_max + 1");
    PowerSeries out = PowerSeries::zero(k_max);
    for (int k = 0; k <= k_max; ++k) {
        Rational acc(0);
        for (int rho = 1; rho <= k + 1; ++rho) {
            if ((k + 1) % rho != 0) continue;
            Rational sign = (rho % 2 == 0) ? Rational(-1) : Rational(1);
            acc += coeffs.at((k + 1) / rho) * sign / rat_pow(Rational(rho), k);
        }
        out[k] = rat_pow(Rational(k + 1), k) * acc;
    }
    return out;
}

AnsatzCoefficients b_from_taylor(const PowerSeries& f2k) {
    int q_max = f2k.truncation_order() + 1;
    AnsatzCoefficients out;
    out.b.assign(q_max + 1, Rational(0));
    out.b[1] = f2k[0];
    for (int n = 1; n + 1 <= q_max; ++n) {
        Rational acc = f2k[n] / rat_pow(Rational(n + 1), n);
        for (int rho = 2; rho <= n + 1; ++rho) {
            if ((n + 1) % rho != 0) continue;
            Rational sign = (rho % 2 == 0) ? Rational(-1) : Rational(1);
            acc -= out.b[(n + 1) / rho] * sign / rat_pow(Rational(rho), n);
        }
        out.b[n + 1] = acc;
    }
    return out;
}

void RenormalizationTarget::validate() const {
    if (!(mu_max > 6))
        throw std::invalid_argument("mu_max must be > 6 (got " + rat_to_string(mu_max) + ")");
    if (rat_abs(c) > make_rational(1, 3))
        throw std::invalid_argument("|c| must be <= 1/3 (got " + rat_to_string(c) + ")");
    if (!(g40 > 0)) throw std::invalid_argument("g40 must be > 0");
    if (!(a > 0) || a > make_rational(1, 30))
        throw std::invalid_argument("contraction domain a must lie in (0, 1/30]");
}

bool RenormalizationTarget::strict_hypotheses() const {
    return g40 * 30 <= a && a <= make_rational(1, 30) && a > 0;
}

Rational map_gain(const Rational& x) {
    return (Rational(1) + x) * (Rational(1) + 4 * x * x) /
           (Rational(1) + 2 * x + 6 * x * x);
}

AnsatzCoefficients ansatz_pipeline(const Rational& b1, const Rational& g40, int q_max) {
    if (q_max < 3) throw std::invalid_argument("ansatz_pipeline: q_max >= 3");
    auto ts = taylor_system(b1, g40, 4, q_max - 2);
    auto coeffs = b_from_taylor(ts.f2_series(q_max - 1));
    coeffs.tail = classify_tail(b1, g40, coeffs.b);
    return coeffs;
}

GMapResult g_map(const Rational& b1, const RenormalizationTarget& target, int q_max) {
    target.validate();
    GMapResult out;
    out.q_max = q_max;
    out.coeffs = ansatz_pipeline(b1, target.g40, q_max);
    Rational sum3(0);
    for (long q = 3; q <= out.coeffs.q_max(); ++q)
        sum3 += out.coeffs.at(q) * basis_value(q, target.mu_max);
    Rational F = map_gain(target.mu_max);
    Rational X = target.mu_max / (Rational(1) + 4 * target.mu_max * target.mu_max);
    out.value = F * (target.c / target.mu_max - (3 * target.g40 - b1 * b1) * X - sum3);
    out.tail_bound = F * out.coeffs.tail->tail_sum(q_max, target.mu_max);
    out.tail_certified = out.coeffs.tail->certified();
    return out;
}

PicardResult picard_fixed_point(const RenormalizationTarget& target, const Rational& tol,
                                int max_iter, int q_max) {
    target.validate();
    if (!(tol > 0)) throw std::invalid_argument("picard_fixed_point: tol > 0 required");
    PicardResult res;
    Rational u(0);
    int growth_streak = 0;
    for (int it = 1; it <= max_iter; ++it) {
        auto gm = g_map(u, target, q_max);
        Rational delta = gm.value - u;
        if (!res.deltas.empty() && rat_abs(delta) > rat_abs(res.deltas.back())) {
            if (++growth_streak >= 3)
                throw std::runtime_error(
                    "picard_fixed_point: contraction violated (3 consecutive growing steps)");
        } else {
            growth_streak = 0;
        }
        res.deltas.push_back(delta);
        res.iterations = it;
        if (rat_abs(delta) < tol) {
            res.b1_star = u;
            res.residual = rat_abs(delta);
            res.final = std::move(gm);
            return res;
        }
        // round the next iterate; keeps the exact recursion input small
        long good_bits = -floor_log2_abs(rat_abs(delta)) + 48;
        unsigned bits = static_cast<unsigned>(std::max(64l, good_bits));
        bits = std::min(bits, Real::default_bits());
        u = round_to_bits(gm.value, bits);
    }
    throw std::runtime_error("picard_fixed_point: max_iter exceeded without reaching tol (" +
                             std::to_string(max_iter) + " iterations)");
}

namespace {
std::mutex g_poly_mutex;
std::map<std::pair<std::string, int>, PolynomialTaylorSystem> g_poly_cache;
}  // namespace

ContractionCertificate contraction_certificate(const Rational& b1,
                                               const RenormalizationTarget& target,
                                               int poly_q_max) {
    target.validate();
    ContractionCertificate out;
    out.poly_q_max = poly_q_max;
    const PolynomialTaylorSystem* ps;
    {
        std::lock_guard<std::mutex> lock(g_poly_mutex);
        auto key = std::make_pair(rat_to_string(target.g40), poly_q_max);
        auto it = g_poly_cache.find(key);
        if (it == g_poly_cache.end())
            it = g_poly_cache
                     .emplace(key, polynomial_taylor_system(target.g40, 4, poly_q_max - 2,
                                                            poly_q_max))
                     .first;
        ps = &it->second;
    }
    Rational S(0);
    for (long q = 3; q <= poly_q_max; ++q)
        S += ps->b_derivative(q, b1) * basis_value(q, target.mu_max);
    Rational F = map_gain(target.mu_max);
    Rational X = target.mu_max / (Rational(1) + 4 * target.mu_max * target.mu_max);
    out.exact_core = F * (2 * b1 * X - S);
    // dropped tail under the polynomial envelope: |db_q/db1| <= (4/3) r^{q-1},
    // r = (3/4)(1+|b1|)
    Rational r = make_rational(3, 4) * (Rational(1) + rat_abs(b1));
    out.certified = target.g40 > 0 && target.g40 <= make_rational(1, 900) && r < 1;
    if (r >= 1) r = make_rational(99, 100);
    out.tail = F * make_rational(4, 3) * rat_pow(r, poly_q_max) / (Rational(1) - r) /
               (Rational(poly_q_max + 1) * target.mu_max);
    out.bound = Real(rat_abs(out.exact_core) + out.tail);
    return out;
}

JetWithTail f2_jet_with_tol(const Rational& b1, const Rational& g40, const Rational& mu,
                            int order, const Rational& tol, int q_start, int q_cap) {
    Rational budget = tol / 10;
    for (int q = q_start; q <= q_cap; q = q * 3 / 2) {
        auto coeffs = ansatz_pipeline(b1, g40, q);
        auto jt = f2_jet(coeffs, mu, order);
        bool ok = true;
        for (const auto& t : jt.tail)
            if (t > budget) ok = false;
        if (ok) return jt;
    }
    throw std::runtime_error(
        "f2_jet_with_tol: tolerance unreachable at the q_max cap; increase q_max");
}

}  // namespace mfflow
