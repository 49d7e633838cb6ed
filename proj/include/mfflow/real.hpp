#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "mfflow/rational.hpp"

namespace mfflow {

// Arbitrary-precision real. Every value carries its precision in bits;
// binary operations compute at the larger operand precision.
class Real {
  public:
    static unsigned default_bits();
    static void set_default_bits(unsigned bits);

    Real() : Real(default_bits()) {}
    explicit Real(unsigned bits) { mpfr_init2(v_, clamp(bits)); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real(double d, unsigned bits = 0) { mpfr_init2(v_, clamp(bits)); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(long i, unsigned bits = 0) { mpfr_init2(v_, clamp(bits)); mpfr_set_si(v_, i, MPFR_RNDN); }
    Real(int i, unsigned bits = 0) : Real(static_cast<long>(i), bits) {}
    Real(const Rational& q, unsigned bits = 0) {
        mpfr_init2(v_, clamp(bits));
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    ~Real() { mpfr_clear(v_); }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    unsigned precision_bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // exact: every finite mpfr value is dyadic
    Rational to_rational() const;
    std::string to_string(int digits = 0) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
    Real operator-() const {
        Real r(precision_bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

  private:
    static unsigned clamp(unsigned bits) { return bits ? bits : default_bits(); }
    template <typename F>
    static Real bin(const Real& a, const Real& b, F op) {
        Real r(std::max(a.precision_bits(), b.precision_bits()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long e);
Real sin(const Real& x);
Real cos(const Real& x);
Real real_pi(unsigned bits = 0);

// Complex value over Real; just enough for coupling-plane checks.
struct Complex {
    Real re, im;
    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const Rational& r) : re(r), im(Rational(0)) {}
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
Complex operator/(const Complex& a, const Complex& b);
Real cabs(const Complex& z);
Complex cexp(const Complex& z);

}  // namespace mfflow
