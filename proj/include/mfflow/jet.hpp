#pragma once

#include <stdexcept>
#include <vector>

#include "mfflow/rational.hpp"

namespace mfflow {

// Truncated derivative tower (f(x0), f'(x0), ..., f^(L)(x0)).
// S is Rational for exact work or Real for evaluated work.
template <typename S>
struct Jet {
    S point{};
    std::vector<S> derivs;  // derivs[l] = l-th derivative, size = order+1

    Jet() = default;
    Jet(S pt, std::vector<S> d) : point(std::move(pt)), derivs(std::move(d)) {
        if (derivs.empty()) throw std::invalid_argument("Jet: needs at least the value");
    }

    int order() const { return static_cast<int>(derivs.size()) - 1; }
    const S& value() const { return derivs[0]; }

    static Jet constant(const S& c, const S& pt, int order) {
        std::vector<S> d(order + 1, S(0));
        d[0] = c;
        return Jet(pt, std::move(d));
    }
    // the identity function x at x0
    static Jet variable(const S& pt, int order) {
        std::vector<S> d(order + 1, S(0));
        d[0] = pt;
        if (order >= 1) d[1] = S(1);
        return Jet(pt, std::move(d));
    }
};

template <typename S>
void check_same_point(const Jet<S>& a, const Jet<S>& b) {
    if (!(a.point == b.point)) throw std::domain_error("jet base points differ");
}

template <typename S>
Jet<S> jet_add(const Jet<S>& a, const Jet<S>& b) {
    check_same_point(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<S> d(n + 1);
    for (int l = 0; l <= n; ++l) d[l] = a.derivs[l] + b.derivs[l];
    return Jet<S>(a.point, std::move(d));
}

template <typename S>
Jet<S> jet_sub(const Jet<S>& a, const Jet<S>& b) {
    check_same_point(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<S> d(n + 1);
    for (int l = 0; l <= n; ++l) d[l] = a.derivs[l] - b.derivs[l];
    return Jet<S>(a.point, std::move(d));
}

template <typename S>
Jet<S> jet_scale(const Jet<S>& a, const S& c) {
    std::vector<S> d(a.derivs);
    for (auto& x : d) x = x * c;
    return Jet<S>(a.point, std::move(d));
}

// Leibniz product; binomial weights stay exact in S.
template <typename S>
Jet<S> jet_mul(const Jet<S>& a, const Jet<S>& b) {
    check_same_point(a, b);
    int n = std::min(a.order(), b.order());
    std::vector<S> d(n + 1, S(0));
    for (int l = 0; l <= n; ++l) {
        Int c = 1;  // C(l, i), updated incrementally
        S acc(0);
        for (int i = 0; i <= l; ++i) {
            acc = acc + S(Rational(c)) * a.derivs[i] * b.derivs[l - i];
            c = c * (l - i) / (i + 1);
        }
        d[l] = acc;
    }
    return Jet<S>(a.point, std::move(d));
}

// (f/g)^(l) = (1/g)[f^(l) - l! sum_{j=1}^{l} g^(l+1-j)/((l+1-j)!(j-1)!) (f/g)^(j-1)]
template <typename S>
Jet<S> jet_quotient(const Jet<S>& f, const Jet<S>& g) {
    check_same_point(f, g);
    if (g.derivs[0] == S(0)) throw std::domain_error("jet_quotient: division by zero jet");
    int n = std::min(f.order(), g.order());
    std::vector<S> d(n + 1);
    std::vector<Int> fact(n + 2);
    fact[0] = 1;
    for (int i = 1; i <= n + 1; ++i) fact[i] = fact[i - 1] * i;
    for (int l = 0; l <= n; ++l) {
        S s = f.derivs[l];
        for (int j = 1; j <= l; ++j) {
            Rational w = make_rational(fact[l], fact[l + 1 - j] * fact[j - 1]);
            s = s - S(w) * g.derivs[l + 1 - j] * d[j - 1];
        }
        d[l] = s / g.derivs[0];
    }
    return Jet<S>(f.point, std::move(d));
}

// drop to the derivative: (f')^(l) = f^(l+1); order decreases by one
template <typename S>
Jet<S> jet_derivative(const Jet<S>& a) {
    if (a.order() < 1) throw std::domain_error("jet_derivative: order 0 jet");
    std::vector<S> d(a.derivs.begin() + 1, a.derivs.end());
    return Jet<S>(a.point, std::move(d));
}

template <typename S>
Jet<S> jet_truncate(const Jet<S>& a, int order) {
    if (order > a.order()) throw std::domain_error("jet_truncate: cannot extend");
    std::vector<S> d(a.derivs.begin(), a.derivs.begin() + order + 1);
    return Jet<S>(a.point, std::move(d));
}

template <typename S, typename T>
Jet<T> jet_convert(const Jet<S>& a) {
    std::vector<T> d;
    d.reserve(a.derivs.size());
    for (const auto& x : a.derivs) d.emplace_back(x);
    return Jet<T>(T(a.point), std::move(d));
}

}  // namespace mfflow
