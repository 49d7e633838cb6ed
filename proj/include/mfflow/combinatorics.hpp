#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "mfflow/jet.hpp"
#include "mfflow/rational.hpp"

namespace mfflow {

Int binomial(unsigned long n, unsigned long k);

// C_s(n) = binom((s+1)n, n) / (sn+1); always an integer.
Int fuss_catalan(unsigned long s, unsigned long n);

// sum_{i=0..m} C_s(i) C_s(m-i), asserted equal to 2/((s+1)m+2) binom((s+1)m+2, m)
Int fuss_convolution(unsigned long s, unsigned long m);

Int stirling2(unsigned long m, unsigned long k);
Int ordered_bell(unsigned long n);

// multiplicity vectors (l1..l_{n-k+1}) with sum l_j = k, sum j l_j = n
std::vector<std::vector<unsigned long>> partition_multisets(unsigned long n, unsigned long k);

// Partial Bell polynomial B_{n,k}(x1..x_{n-k+1}); direct sum over partition_multisets.
template <typename S>
S bell_polynomial(unsigned long n, unsigned long k, const std::vector<S>& x) {
    if (k < 1 || k > n) throw std::domain_error("bell_polynomial: need 1 <= k <= n");
    if (x.size() < n - k + 1) throw std::domain_error("bell_polynomial: x too short");
    S total(0);
    for (const auto& lambda : partition_multisets(n, k)) {
        Rational w(factorial(n));
        Int jfact = 1;
        for (unsigned long j = 1; j <= n - k + 1; ++j) {
            jfact *= j;
            unsigned long lj = lambda[j - 1];
            if (lj == 0) continue;
            w /= Rational(factorial(lj) * int_pow(jfact, lj));
        }
        S term(w);
        for (unsigned long j = 1; j <= n - k + 1; ++j)
            for (unsigned long rep = 0; rep < lambda[j - 1]; ++rep) term = term * x[j - 1];
        total = total + term;
    }
    return total;
}

// Jet of f(g(x)) at x0 from the jet of f at y0 = g(x0) and the jet of g at x0.
template <typename S>
Jet<S> faa_di_bruno_jet(const Jet<S>& outer, const Jet<S>& inner) {
    if (!(inner.derivs[0] == outer.point))
        throw std::domain_error("faa_di_bruno_jet: inner value must equal outer base point");
    int n = std::min(outer.order(), inner.order());
    std::vector<S> d(n + 1, S(0));
    d[0] = outer.derivs[0];
    std::vector<S> g_shift(inner.derivs.begin() + 1, inner.derivs.end());
    for (int l = 1; l <= n; ++l) {
        S acc(0);
        for (int k = 1; k <= l; ++k)
            acc = acc + outer.derivs[k] * bell_polynomial<S>(l, k, g_shift);
        d[l] = acc;
    }
    return Jet<S>(inner.point, std::move(d));
}

}  // namespace mfflow
