#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mfflow/rational.hpp"
#include "mfflow/real.hpp"

namespace mfflow {


// Dense Laurent polynomial with rational coefficients: sum c[i] X^{low+i}.
// Doubles as the inert-symbol coefficient ring of LogLaurentPoly (where
// negative powers of the bare scale appear) and, with low = 0, as plain
// polynomials in the seed b1 or in eps.
struct RatPoly {
    long low = 0;
    std::vector<Rational> c;

    RatPoly() = default;
    explicit RatPoly(Rational x) : c{std::move(x)} { trim(); }
    static RatPoly monomial(const Rational& x, long r) {
        RatPoly p;
        p.low = r;
        p.c = {x};
        p.trim();
        return p;
    }

    bool is_zero() const { return c.empty(); }
    long degree() const { return low + static_cast<long>(c.size()) - 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
        size_t lead = 0;
        while (lead < c.size() && c[lead] == 0) ++lead;
        if (lead > 0) {
            c.erase(c.begin(), c.begin() + lead);
            low += static_cast<long>(lead);
        }
        if (c.empty()) low = 0;
    }
    // coefficient of X^e
    Rational coeff(long e) const {
        long i = e - low;
        if (i < 0 || i >= static_cast<long>(c.size())) return Rational(0);
        return c[i];
    }
    Real eval(const Real& a0) const {
        Real acc(a0.precision_bits());
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * a0 + Real(*it, a0.precision_bits());
        return low == 0 ? acc : acc * pow(a0, low);
    }
    Rational eval(const Rational& a0) const {
        Rational acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a0 + *it;
        return low == 0 ? acc : Rational(acc * rat_pow(a0, low));
    }
    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        return a.low == b.low && a.c == b.c;
    }
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const Rational& s);

inline RatPoly rat_poly_derivative(const RatPoly& p) {
    RatPoly r;
    if (p.is_zero()) return r;
    r.low = p.low - 1;
    r.c.resize(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i)
        r.c[i] = p.c[i] * Rational(p.low + static_cast<long>(i));
    r.trim();
    return r;
}

// Finite sum  c_{p,q}(a0) * alpha^p * ln(alpha)^q  with integer p, q >= 0.
// No zero coefficients are stored.
class LogLaurentPoly {
  public:
    using Key = std::pair<long, long>;  // (p, q)

    LogLaurentPoly() = default;
    static LogLaurentPoly term(long p, long q, const Rational& coef) {
        return term(p, q, RatPoly(coef));
    }
    static LogLaurentPoly term(long p, long q, RatPoly coef);
    static LogLaurentPoly constant(const Rational& c) { return term(0, 0, c); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, RatPoly>& terms() const { return terms_; }
    void add_term(long p, long q, const RatPoly& coef);

    LogLaurentPoly operator+(const LogLaurentPoly& o) const;
    LogLaurentPoly operator-(const LogLaurentPoly& o) const;
    LogLaurentPoly operator*(const LogLaurentPoly& o) const;
    LogLaurentPoly scaled(const Rational& s) const;
    LogLaurentPoly operator-() const { return scaled(Rational(-1)); }

    // d/dalpha and alpha*d/dalpha (the latter is d/dmu under alpha = a0 e^mu)
    LogLaurentPoly alpha_derivative() const;
    LogLaurentPoly mu_derivative() const;

    // term-by-term antiderivative in alpha
    LogLaurentPoly antiderivative() const;

    // substitute alpha -> a0 (evaluation at the lower scale); ln(alpha) -> ln_a0,
    // which the caller supplies exactly (rational when mu_max is rational).
    LogLaurentPoly at_lower_scale(const Rational& ln_a0) const;

    Real eval(const Real& alpha, const Real& ln_alpha, const Real& a0) const;
    // exact when the symbol values are rational and no ln terms survive trivially
    Rational eval_exact(const Rational& alpha, const Rational& ln_alpha,
                        const Rational& a0) const;

    friend bool operator==(const LogLaurentPoly& a, const LogLaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

  private:
    std::map<Key, RatPoly> terms_;
};

struct IntegralValue {
    Real value;
    std::optional<Rational> exact;  // set when the result is rational
};

// Definite integral of P over [a, b], 0 < a <= b rational.
IntegralValue loglaurent_integrate(const LogLaurentPoly& P, const Rational& a, const Rational& b,
                                   const Rational& a0_value = Rational(0));

}  // namespace mfflow
