#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfflow {

using Int = mpz_class;
using Rational = mpq_class;

// num/den with canonicalization (mpq_class(a,b) alone does not reduce).
inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den) {
    return make_rational(Int(num), Int(den));
}

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0^negative");
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    r.canonicalize();
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Parses "p/q", integers, and plain decimals ("0.25" -> 1/4).
inline Rational rat_from_string(const std::string& s) {
    auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) throw bad();
        if (r.get_den() == 0) throw std::domain_error("zero denominator: '" + s + "'");
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Int n;
        if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0) throw bad();
        return Rational(n);
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    Int n;
    if (mpz_set_str(n.get_mpz_t(), digits.c_str(), 10) != 0) throw bad();
    return make_rational(n, int_pow(Int(10), s.size() - dot - 1));
}

inline std::string rat_to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// Nearest dyadic p/2^k with p of at most `bits` significant bits.
inline Rational round_to_bits(const Rational& x, unsigned bits);

// floor(log2 |x|), error for x = 0.
inline long floor_log2_abs(const Rational& x) {
    if (x == 0) throw std::domain_error("floor_log2_abs(0)");
    long num_bits = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    // sizeinbase gives floor(log2)+1; bracket and correct by comparison
    long e = num_bits - den_bits;
    Rational ax = rat_abs(x);
    while (rat_pow(Rational(2), e) > ax) --e;
    while (rat_pow(Rational(2), e + 1) <= ax) ++e;
    return e;
}

inline Rational round_to_bits(const Rational& x, unsigned bits) {
    if (x == 0) return x;
    long e = floor_log2_abs(x);
    long shift = static_cast<long>(bits) - 1 - e;
    Rational scaled = shift >= 0 ? Rational(x * rat_pow(Rational(2), shift))
                                 : Rational(x / rat_pow(Rational(2), -shift));
    // round to nearest integer
    Int num = scaled.get_num(), den = scaled.get_den();
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (Rational(r * 2) >= Rational(den)) q += 1;
    Rational rounded(q);
    return shift >= 0 ? Rational(rounded / rat_pow(Rational(2), shift))
                      : Rational(rounded * rat_pow(Rational(2), -shift));
}

}  // namespace mfflow
