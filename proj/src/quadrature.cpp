#include "mfflow/quadrature.hpp"

#include <vector>

namespace mfflow {

namespace {

struct Node {
    Real x;  // abscissa in (-1, 1)
    Real w;  // weight
};

// nodes at t = k*h for |t| <= t_max, k != 0 handled by symmetry at call site
std::vector<Node> de_nodes(const Real& h, double t_max, unsigned bits) {
    std::vector<Node> nodes;
    Real half_pi = real_pi(bits) / Real(2l, bits);
    int kmax = static_cast<int>(t_max / h.to_double()) + 1;
    for (int k = 0; k <= kmax; ++k) {
        Real t = h * Real(static_cast<long>(k), bits);
        Real et = exp(t), emt = Real(1l, bits) / et;
        Real sinh_t = (et - emt) / Real(2l, bits);
        Real cosh_t = (et + emt) / Real(2l, bits);
        Real u = half_pi * sinh_t;
        Real eu = exp(u), emu = Real(1l, bits) / eu;
        Real cosh_u = (eu + emu) / Real(2l, bits);
        Real x = (eu - emu) / (eu + emu);  // tanh(u)
        Real w = half_pi * cosh_t / (cosh_u * cosh_u);
        nodes.push_back({x, w});
    }
    return nodes;
}

template <typename V, typename Fn, typename Norm>
V de_integrate(const Fn& f, const Real& a, const Real& b, const Real& tol, int max_level,
               const Norm& norm, const V& zero) {
    unsigned bits = std::max(tol.precision_bits(), Real::default_bits());
    Real mid = (a + b) / Real(2l, bits);
    Real rad = (b - a) / Real(2l, bits);
    const double t_max = 5.0;
    V prev = zero;
    V cur = zero;
    for (int level = 0; level <= max_level; ++level) {
        Real h = pow(Real(2l, bits), -static_cast<long>(level));
        auto nodes = de_nodes(h, t_max, bits);
        V sum = zero;
        for (size_t k = 0; k < nodes.size(); ++k) {
            // on refinement only odd-index nodes are new, but recomputing keeps this simple
            const auto& nd = nodes[k];
            V val = f(mid + rad * nd.x) * nd.w;
            if (k > 0) val = val + f(mid - rad * nd.x) * nd.w;
            sum = sum + val;
        }
        cur = sum * (rad * h);
        if (level >= 2 && norm(cur - prev) <= tol) return cur;
        prev = cur;
    }
    return cur;
}

}  // namespace

Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
               const Real& tol, int max_level) {
    return de_integrate<Real>(
        f, a, b, tol, max_level, [](const Real& d) { return abs(d); }, Real(0l));
}

Complex tanh_sinh_complex(const std::function<Complex(const Real&)>& f, const Real& a,
                          const Real& b, const Real& tol, int max_level) {
    return de_integrate<Complex>(
        f, a, b, tol, max_level, [](const Complex& d) { return cabs(d); },
        Complex(Real(0l), Real(0l)));
}

}  // namespace mfflow
