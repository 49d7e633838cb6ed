#pragma once

#include <map>
#include <vector>

#include "mfflow/ansatz.hpp"
#include "mfflow/flow.hpp"
#include "mfflow/jet.hpp"
#include "mfflow/log_poly.hpp"
#include "mfflow/rational.hpp"
#include "mfflow/real.hpp"

namespace mfflow {

// Boundary constants at the top scale for the two- and four-point amplitudes.
struct RenormConstants {
    std::vector<Rational> A;  // A[j], j >= 1 (A[0] unused)
    std::vector<Rational> B;  // B[j], j >= 1

    static RenormConstants bphz(int j_max);
};

// alpha-space amplitude table; every entry is an exact ring element in
// (alpha, ln alpha, a0) with ln(a0) = -mu_max folded in as a rational.
class PerturbativeAmplitudes {
  public:
    PerturbativeAmplitudes(int j_max, Rational mu_max) : j_max_(j_max), mu_max_(std::move(mu_max)) {}

    int j_max() const { return j_max_; }
    const Rational& mu_max() const { return mu_max_; }

    // zero element outside the populated range (odd n, n > 2j+2, j > j_max)
    const LogLaurentPoly& at(int n, int j) const;
    void set(int n, int j, LogLaurentPoly poly);

    // exact residual of the defining amplitude flow at (n, j); the zero
    // element when the table solves it
    LogLaurentPoly flow_residual(int n, int j, const RenormConstants& rc) const;

    // evaluation at rational mu: alpha = e^{mu - mu_max}, a0 = e^{-mu_max}
    Real eval(int n, int j, const Rational& mu) const;

  private:
    LogLaurentPoly rhs(int n, int j) const;
    friend PerturbativeAmplitudes alpha_flow(int, const RenormConstants&, const Rational&);
    int j_max_;
    Rational mu_max_;
    std::map<std::pair<int, int>, LogLaurentPoly> table_;
    static const LogLaurentPoly zero_;
};

// Solves the amplitude flow order by order: j ascending, n descending from
// 2j+2; the irrelevant amplitudes integrate up from the bare scale, the two-
// and four-point ones integrate down from the top scale.
PerturbativeAmplitudes alpha_flow(int j_max, const RenormConstants& rc, const Rational& mu_max);

// jet of f_{n,j}(mu) = alpha^{2-n/2} * amplitude(alpha) through alpha = a0 e^mu
Jet<Real> to_mu(const PerturbativeAmplitudes& amps, int n, int j, const Rational& mu, int order);

// Expansion data of the two-point function in the inverse top scale.
struct GTildeExpansion {
    Rational mu_max;
    int m_max = 0;
    std::vector<Rational> c;  // c[m], m >= 1; c[1] truncated with a tail bound
    Rational c1_tail;
    bool certified = false;
    std::vector<RatPoly> a;  // a[m] as polynomial in eps = mu_max - mu

    Rational a_value(int m, const Rational& mu) const;
};

GTildeExpansion gtilde_coefficients(const AnsatzCoefficients& coeffs, const Rational& mu_max,
                                    int m_max);

// mu-space perturbative family generated from the expansion through the
// hierarchy, order by order; exact polynomials in eps.
struct GTildeFamily {
    Rational mu_max;
    int n_max = 0, j_max = 0;
    std::map<int, std::vector<RatPoly>> fnj;  // fnj[n][j] in eps

    Jet<Rational> jet(int n, int j, const Rational& mu, int order) const;
};

GTildeFamily gtilde_family(const GTildeExpansion& ge, int n_max, int j_max);

// (f_n - sum_{j<=K} gt^j f_{n,j}) / gt^{K+1} as an exact jet
Jet<Rational> remainder_by_subtraction(const FlowSolution& sol, const GTildeFamily& fam, int n,
                                       int K, const Rational& gtilde);

// remainders for n >= 4 driven by the two-point towers through the hierarchy;
// rem[n][J] holds the order-J remainder jet (J = K+1 >= 1)
std::map<int, std::map<int, Jet<Rational>>> remainder_flow(const FlowSolution& sol,
                                                           const GTildeFamily& fam, int n_top,
                                                           int J_top, const Rational& gtilde);

// Fitted-constant certificates for the amplitude and remainder bound families.
struct BoundFit {
    std::string name;
    Real constant;       // minimal constant covering every sampled ratio
    Real edge_ratio;     // last-row ratio vs overall max, growth indicator
    bool growing_at_edge = false;
    bool finite = true;
};

// max over the computed range of ((n-1)!/ (n+K)! * |rem|)^{1/(K+n)} style
// normalizations; see the per-family comments in the implementation.
std::vector<BoundFit> bound_certificates(const PerturbativeAmplitudes& amps,
                                         const std::map<int, std::map<int, Jet<Rational>>>& rem,
                                         const GTildeFamily& fam, const Rational& mu_lo,
                                         const Rational& mu_hi);

}  // namespace mfflow
