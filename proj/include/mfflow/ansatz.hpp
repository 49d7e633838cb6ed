#pragma once

#include <optional>
#include <vector>

#include "mfflow/jet.hpp"
#include "mfflow/power_series.hpp"
#include "mfflow/rational.hpp"
#include "mfflow/real.hpp"

namespace mfflow {

// Geometric envelope certificate for the basis weights b_q.
struct TailCertificate {
    enum class Kind {
        small_coupling,        // |b_q| <= (5/2)(7/10)^{q-1} K, needs |b1| <= K, g40 <= K/10, K <= 1/30
        polynomial_envelope,   // |b_q| <= (1/q)(3/4)^{q-2}(1+|b1|)^q, needs 0 < g40 <= 1/300, |b1| < 1/3
        empirical              // fitted ratio, uncertified
    };
    Kind kind = Kind::empirical;
    Rational K;      // scale constant (small_coupling), |b1| otherwise
    Rational ratio;  // geometric ratio of the envelope

    bool certified() const { return kind != Kind::empirical; }
    // envelope value bounding |b_q|
    Rational bound(long q) const;
    // closed geometric form of sum_{q > q_from} bound(q)
    Rational env_tail(long q_from) const;
    // exact geometric bound on sum_{q > q_from} envelope(q) * sup|p_q| over [0, mu_max]
    Rational tail_sum(long q_from, const Rational& mu_max) const;
    // same with the Cauchy factor for the l-th derivative at mu0 > 1
    Rational tail_sum_deriv(long q_from, const Rational& mu0, int l) const;
};

struct AnsatzCoefficients {
    std::vector<Rational> b;  // b[0] unused; b[q] is the weight of basis element q
    std::optional<TailCertificate> tail;

    long q_max() const { return static_cast<long>(b.size()) - 1; }
    const Rational& at(long q) const { return b.at(q); }
};

// Chooses the strongest certificate available for (b1, g40); empirical fit otherwise.
TailCertificate classify_tail(const Rational& b1, const Rational& g40,
                              const std::vector<Rational>& b);

// jet of p_q(mu) = (q mu)^{q-1} / (1 + (q mu)^q) at rational mu >= 0
Jet<Rational> basis_jet(long q, const Rational& mu, int order);

// value of p_q at mu (order-0 shortcut)
Rational basis_value(long q, const Rational& mu);

struct JetWithTail {
    Jet<Rational> jet;
    std::vector<Rational> tail;  // certified (or fitted) bound per derivative order
    bool certified = false;
};

// Sum of the weighted basis jets with a dropped-tail bound per derivative.
// Derivative tails need mu > 1; order-0 works on all of [0, mu_max].
JetWithTail f2_jet(const AnsatzCoefficients& coeffs, const Rational& mu, int order);

// Exact Taylor coefficients of the two-point function from the basis weights.
PowerSeries taylor_from_b(const AnsatzCoefficients& coeffs, int k_max);

// Inverse map: basis weights from exact Taylor coefficients (q up to order+1).
AnsatzCoefficients b_from_taylor(const PowerSeries& f2k);

struct RenormalizationTarget {
    Rational c = make_rational(1, 4);        // |c| <= 1/3; c = 0 selects the BPHZ condition
    Rational mu_max = Rational(8);           // > 6
    Rational g40 = make_rational(1, 300);    // bare quartic seed, > 0
    Rational a = make_rational(1, 30);       // contraction domain half-width

    void validate() const;
    // strict fixed-point hypotheses (g40 <= a/30, 0 < a <= 1/30)
    bool strict_hypotheses() const;
};

Rational map_gain(const Rational& x);  // F(x) = (1+x)(1+4x^2)/(1+2x+6x^2)

struct GMapResult {
    Rational value;             // exact value of the truncated map
    AnsatzCoefficients coeffs;  // b pipeline recomputed at this b1
    Rational tail_bound;        // bound on the dropped q-sum, including the F factor
    bool tail_certified = false;
    int q_max = 0;
};

GMapResult g_map(const Rational& b1, const RenormalizationTarget& target, int q_max);

struct PicardResult {
    Rational b1_star;
    Rational residual;              // exact |G(b1*) - b1*| of the truncated map
    std::vector<Rational> deltas;   // per-iteration steps
    int iterations = 0;
    GMapResult final;               // pipeline at the solved point
};

// u_{n+1} = G(u_n) from u_0 = 0, stopping at |delta| < tol.
// Throws on max_iter exhaustion and on three consecutive growing deltas.
PicardResult picard_fixed_point(const RenormalizationTarget& target, const Rational& tol,
                                int max_iter, int q_max);

struct ContractionCertificate {
    Real bound;         // |dG/db1| + dropped-tail envelope
    Rational exact_core;  // the evaluated polynomial part
    Rational tail;
    bool certified = false;
    int poly_q_max = 0;
};

ContractionCertificate contraction_certificate(const Rational& b1,
                                               const RenormalizationTarget& target,
                                               int poly_q_max = 40);

// f2_jet with an evaluation tolerance: raises q_max from q_start until the
// certified (or fitted) tail at every requested order is below tol/10.
JetWithTail f2_jet_with_tol(const Rational& b1, const Rational& g40, const Rational& mu,
                            int order, const Rational& tol, int q_start = 60, int q_cap = 400);

// Rebuild the full b pipeline at given b1 (taylor recursion + inversion).
AnsatzCoefficients ansatz_pipeline(const Rational& b1, const Rational& g40, int q_max);

}  // namespace mfflow
