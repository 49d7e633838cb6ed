#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mfflow/log_poly.hpp"
#include "mfflow/rational.hpp"
#include "mfflow/real.hpp"

namespace mfflow {

struct FormalSeries {
    std::vector<Rational> a;  // a[k] multiplies z^k
    std::string variable = "z";

    Rational partial_sum(const Rational& z, int N_terms) const;  // k < N_terms
};

// term-wise division by k!
FormalSeries borel_transform(const FormalSeries& F);
// term-wise multiplication by k! (inverse)
FormalSeries borel_untransform(const FormalSeries& B);

// Diagonal rational approximant from the first 2m+1 coefficients; the order
// degrades gracefully when the underlying linear system is singular.
struct PadeApproximant {
    RatPoly num, den;  // den(0) = 1
    int order = 0;
    Real eval(const Real& t) const;
    // first positive real root of the denominator below t_max, if any
    std::optional<Real> pole_on_ray(const Real& t_max) const;
};

PadeApproximant diagonal_pade(const FormalSeries& B, int m);

enum class Continuation { truncated_polynomial, pade };

struct BorelSumOptions {
    Continuation continuation = Continuation::pade;
    int pade_order = 0;        // 0: from the series length
    Rational quad_tol;         // 0: 1e-30
    Rational switch_point;     // polynomial below, approximant above; 0: auto
};

struct BorelSumResult {
    Real value;
    Real tail_estimate;  // bound on the dropped [T, inf) part
};

// (1/z) integral_0^inf e^{-t/z} Bhat(t) dt with the chosen continuation of B
BorelSumResult borel_sum(const FormalSeries& B, const Real& z, const BorelSumOptions& opt = {});
Complex borel_sum(const FormalSeries& B, const Complex& z, const BorelSumOptions& opt = {});

struct SokalSample {
    Complex z;
    int N;
    Real remainder_abs;
};

struct SokalCertificate {
    Real R;
    Real A, sigma;
    std::vector<SokalSample> samples;
    bool consistent = false;
    std::string note;
};

// remainder(z, N) = f(z) - sum_{k<N} a_k z^k, supplied by the caller exactly
// or with bounded error. Verdict logic: a finite (A, sigma) cover plus a
// no-growth trend in the per-order implied sigma (finitely many orders cannot
// otherwise falsify factorial-type growth).
SokalCertificate sokal_certificate(const std::function<Complex(const Complex&, int)>& remainder,
                                   const Real& R, int N_max, const std::vector<Complex>& zs,
                                   const Real& A_ceiling = Real(10000l));

// partial-sum errors of the expansion at its own coupling, per order
struct ExpansionSample {
    Rational gtilde;
    Rational f2_value;           // resummed value at the top scale
    std::vector<Rational> c;     // expansion coefficients, c[m] for m >= 1
};

struct AsymptoticityRow {
    Rational gtilde;
    int K;
    Rational error;  // |f2 - sum_{j<=K} c_j gt^j|
};

struct AsymptoticityReport {
    std::vector<AsymptoticityRow> rows;
    std::map<int, Real> slope;  // per K: log-log slope of error vs gtilde
};

AsymptoticityReport asymptoticity_check(const std::vector<ExpansionSample>& samples,
                                        const std::vector<int>& orders);

}  // namespace mfflow
