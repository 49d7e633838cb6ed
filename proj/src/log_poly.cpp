#include "mfflow/log_poly.hpp"

namespace mfflow {

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatPoly r;
    r.low = std::min(a.low, b.low);
    long top = std::max(a.degree(), b.degree());
    r.c.assign(top - r.low + 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[a.low - r.low + i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[b.low - r.low + i] += b.c[i];
    r.trim();
    return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    return a + b * Rational(-1);
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low = a.low + b.low;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

RatPoly operator*(const RatPoly& a, const Rational& s) {
    if (s == 0) return RatPoly();
    RatPoly r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
}

LogLaurentPoly LogLaurentPoly::term(long p, long q, RatPoly coef) {
    LogLaurentPoly r;
    if (!coef.is_zero()) r.terms_[{p, q}] = std::move(coef);
    return r;
}

void LogLaurentPoly::add_term(long p, long q, const RatPoly& coef) {
    if (coef.is_zero()) return;
    auto it = terms_.find({p, q});
    if (it == terms_.end()) {
        terms_[{p, q}] = coef;
    } else {
        it->second = it->second + coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LogLaurentPoly LogLaurentPoly::operator+(const LogLaurentPoly& o) const {
    LogLaurentPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
}

LogLaurentPoly LogLaurentPoly::operator-(const LogLaurentPoly& o) const {
    LogLaurentPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c * Rational(-1));
    return r;
}

LogLaurentPoly LogLaurentPoly::operator*(const LogLaurentPoly& o) const {
    LogLaurentPoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

LogLaurentPoly LogLaurentPoly::scaled(const Rational& s) const {
    LogLaurentPoly r;
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
}

LogLaurentPoly LogLaurentPoly::alpha_derivative() const {
    LogLaurentPoly r;
    for (const auto& [k, c] : terms_) {
        auto [p, q] = k;
        if (p != 0) r.add_term(p - 1, q, c * Rational(p));
        if (q != 0) r.add_term(p - 1, q - 1, c * Rational(q));
    }
    return r;
}

LogLaurentPoly LogLaurentPoly::mu_derivative() const {
    LogLaurentPoly r;
    for (const auto& [k, c] : terms_) {
        auto [p, q] = k;
        if (p != 0) r.add_term(p, q, c * Rational(p));
        if (q != 0) r.add_term(p, q - 1, c * Rational(q));
    }
    return r;
}

LogLaurentPoly LogLaurentPoly::antiderivative() const {
    LogLaurentPoly r;
    for (const auto& [k, c] : terms_) {
        auto [p, q] = k;
        if (p == -1) {
            // ln^q/alpha -> ln^{q+1}/(q+1)
            r.add_term(0, q + 1, c * make_rational(1, q + 1));
            continue;
        }
        // alpha^p ln^q: peel logs by parts
        RatPoly w = c;
        for (long j = q; j >= 0; --j) {
            r.add_term(p + 1, j, w * make_rational(1, p + 1));
            if (j > 0) w = w * make_rational(-j, p + 1);
        }
    }
    return r;
}

LogLaurentPoly LogLaurentPoly::at_lower_scale(const Rational& ln_a0) const {
    LogLaurentPoly r;
    for (const auto& [k, c] : terms_) {
        auto [p, q] = k;
        // alpha^p -> a0^p, ln(alpha)^q -> ln_a0^q; the coefficient ring is
        // Laurent in a0, so negative p stays exact
        r.add_term(0, 0, RatPoly::monomial(rat_pow(ln_a0, q), p) * c);
    }
    return r;
}

Real LogLaurentPoly::eval(const Real& alpha, const Real& ln_alpha, const Real& a0) const {
    unsigned bits = std::max({alpha.precision_bits(), ln_alpha.precision_bits(), a0.precision_bits()});
    Real acc(bits);
    for (const auto& [k, c] : terms_) {
        auto [p, q] = k;
        Real t = c.eval(a0) * pow(alpha, p);
        if (q != 0) t = t * pow(ln_alpha, q);
        acc += t;
    }
    return acc;
}

Rational LogLaurentPoly::eval_exact(const Rational& alpha, const Rational& ln_alpha,
                                    const Rational& a0) const {
    Rational acc(0);
    for (const auto& [k, c] : terms_) {
        auto [p, q] = k;
        Rational t = c.eval(a0) * rat_pow(alpha, p);
        if (q != 0) t *= rat_pow(ln_alpha, q);
        acc += t;
    }
    return acc;
}

IntegralValue loglaurent_integrate(const LogLaurentPoly& P, const Rational& a, const Rational& b,
                                   const Rational& a0_value) {
    if (a <= 0) throw std::domain_error("loglaurent_integrate: lower limit must be positive");
    if (b < a) throw std::domain_error("loglaurent_integrate: b < a");
    LogLaurentPoly F = P.antiderivative();
    bool log_free = true;
    for (const auto& [k, c] : F.terms())
        if (k.second != 0) log_free = false;
    IntegralValue out;
    if (log_free) {
        Rational exact = F.eval_exact(b, Rational(0), a0_value) - F.eval_exact(a, Rational(0), a0_value);
        out.exact = exact;
        out.value = Real(exact);
        return out;
    }
    Real ra(a), rb(b), ra0(a0_value);
    out.value = F.eval(rb, log(rb), ra0) - F.eval(ra, log(ra), ra0);
    return out;
}

}  // namespace mfflow
