#pragma once

#include <map>
#include <vector>

#include "mfflow/ansatz.hpp"
#include "mfflow/jet.hpp"
#include "mfflow/log_poly.hpp"
#include "mfflow/power_series.hpp"
#include "mfflow/rational.hpp"
#include "mfflow/real.hpp"

namespace mfflow {

// Exact Taylor data at mu = 0: f2 coefficients and the reduced moment series
// g_n (f_n = mu^{n/2-2} g_n for n >= 4).
struct TaylorSystem {
    Rational b1, g40;
    int n_max = 0, k_max = 0;
    std::map<int, std::vector<Rational>> g;  // g[n][k], even n >= 4
    std::vector<Rational> f2;                // f2[k]

    const Rational& g_at(int n, int k) const;
    PowerSeries f2_series(int k_top) const;
    PowerSeries g_series(int n, int k_top) const;
};

// Builds the rectangle (n <= n_max, k <= k_max) by ascending level n + 2k.
// Internally fills the dependence cone (all n + k <= n_max + k_max).
TaylorSystem taylor_system(const Rational& b1, const Rational& g40, int n_max, int k_max);

// Leading and subleading Taylor seeds of g_n in closed form.
std::pair<Rational, Rational> closed_form_seeds(int n, const Rational& g40, const Rational& b1);

// The same recursion with every quantity kept as a polynomial in b1.
struct PolynomialTaylorSystem {
    Rational g40;
    int n_max = 0, k_max = 0, b_q_max = 0;
    std::map<int, std::vector<RatPoly>> g;  // g[n][k] as polynomial in b1
    std::vector<RatPoly> f2;                // f2[k]
    std::vector<RatPoly> b;                 // b[q], q >= 1; b[0] unused

    TaylorSystem evaluate(const Rational& b1) const;
    AnsatzCoefficients evaluate_b(const Rational& b1) const;
    // d b_q / d b1 at b1
    Rational b_derivative(long q, const Rational& b1) const;
};

PolynomialTaylorSystem polynomial_taylor_system(const Rational& g40, int n_max, int k_max,
                                                int b_q_max = 0);

struct FlowSolution {
    Rational mu;
    std::map<int, Jet<Rational>> f;  // f[n] jets at mu, even n
    std::vector<Rational> f2_tail;   // tail bound carried from the ansatz evaluation
    bool certified = false;
};

// One step of the hierarchy: f_{n+2} from the moments up to n.
Jet<Rational> hierarchy_step(const std::map<int, Jet<Rational>>& f, int n);

// f2 from the ansatz, then each next moment from the hierarchy step; the jet
// order drops by one per step up in n.
FlowSolution propagate_jets(const AnsatzCoefficients& coeffs, const Rational& mu, int n_max,
                            int top_order);

// Residual of the hierarchy step at n (recompute f_{n+2} from f_n data and
// subtract); exactly zero for propagated jets by construction, nonzero for
// independently supplied ones.
Jet<Rational> flow_residual(const FlowSolution& sol, int n);

struct OdeControl {
    int taylor_order = 40;
    Rational step = make_rational(1, 4);
    Rational local_tol;  // defaults to 1e-24 when unset (== 0)
    unsigned bits = 0;   // working precision; 0 uses the global default
};

// Direct integration of the truncated hierarchy (f_{n_max+2} := 0) from the
// bare boundary data; independent of the ansatz evaluation path.
std::map<int, Real> truncated_ode_oracle(const Rational& b1, const Rational& g40, int n_max,
                                         const Rational& mu_end, const OdeControl& ctl = {});


struct ScanRow {
    Rational mu_max;
    Rational b1_star;
    Rational residual;
    Real f2, f4, f6;
    Rational f2_exact, f4_exact, f6_exact;
    bool tail_certified = false;
    Rational tail_bound;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    Real slope2, slope4, slope6;  // least-squares slopes of ln|f_n| vs ln mu_max
};

ScanResult triviality_scan(const Rational& g40, const Rational& c,
                           const std::vector<Rational>& mu_max_list, const Rational& tol,
                           int q_max, int max_iter = 200);

}  // namespace mfflow
