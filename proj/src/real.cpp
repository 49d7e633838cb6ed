#include "mfflow/real.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>

namespace mfflow {

namespace {
std::atomic<unsigned> g_default_bits{256};
}

unsigned Real::default_bits() { return g_default_bits.load(); }
void Real::set_default_bits(unsigned bits) {
    if (bits < 2) bits = 2;
    g_default_bits.store(bits);
}

Rational Real::to_rational() const {
    if (!mpfr_number_p(v_)) throw std::domain_error("Real::to_rational: not finite");
    if (mpfr_zero_p(v_)) return Rational(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rational r(m);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num().get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    r.canonicalize();
    return r;
}

std::string Real::to_string(int digits) const {
    if (digits <= 0) digits = static_cast<int>(precision_bits() * 0.30103) + 2;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

#define MFFLOW_UNARY(name, fn)                          \
    Real name(const Real& x) {                          \
        Real r(x.precision_bits());                     \
        fn(r.raw(), x.raw(), MPFR_RNDN);                \
        return r;                                       \
    }

MFFLOW_UNARY(abs, mpfr_abs)
MFFLOW_UNARY(sqrt, mpfr_sqrt)
MFFLOW_UNARY(exp, mpfr_exp)
MFFLOW_UNARY(log, mpfr_log)
MFFLOW_UNARY(sin, mpfr_sin)
MFFLOW_UNARY(cos, mpfr_cos)
#undef MFFLOW_UNARY

Real pow(const Real& x, const Real& y) {
    Real r(std::max(x.precision_bits(), y.precision_bits()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long e) {
    Real r(x.precision_bits());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

Real real_pi(unsigned bits) {
    Real r(bits ? bits : Real::default_bits());
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Real cabs(const Complex& z) { return sqrt(z.re * z.re + z.im * z.im); }

Complex cexp(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

}  // namespace mfflow
