#pragma once

#include <stdexcept>
#include <vector>

#include "mfflow/jet.hpp"
#include "mfflow/rational.hpp"

namespace mfflow {

// Truncated Taylor series at 0 with exact coefficients.
struct PowerSeries {
    std::vector<Rational> coeffs;  // coeffs[k] multiplies mu^k

    PowerSeries() = default;
    explicit PowerSeries(std::vector<Rational> c) : coeffs(std::move(c)) {}
    static PowerSeries zero(int truncation_order) {
        return PowerSeries(std::vector<Rational>(truncation_order + 1, Rational(0)));
    }

    int truncation_order() const { return static_cast<int>(coeffs.size()) - 1; }

    const Rational& operator[](int k) const { return coeffs.at(k); }
    Rational& operator[](int k) { return coeffs.at(k); }

    Rational eval(const Rational& mu) const {
        Rational acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * mu + *it;
        return acc;
    }
};

inline PowerSeries cauchy_product(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    PowerSeries r = PowerSeries::zero(n);
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= k; ++i) r[k] += a[i] * b[k - i];
    return r;
}

// jet at 0 of the polynomial truncation: derivs[l] = l! c_l
inline Jet<Rational> series_to_jet(const PowerSeries& s) {
    std::vector<Rational> d(s.coeffs);
    Int f = 1;
    for (int l = 0; l < static_cast<int>(d.size()); ++l) {
        if (l > 0) f *= l;
        d[l] *= Rational(f);
    }
    return Jet<Rational>(Rational(0), std::move(d));
}

}  // namespace mfflow
