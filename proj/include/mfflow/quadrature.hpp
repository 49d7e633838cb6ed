#pragma once

#include <functional>

#include "mfflow/real.hpp"

namespace mfflow {

// Double-exponential quadrature on [a, b] for integrands analytic on the
// open interval. Halves the step until |I_h - I_{h/2}| <= tol or max_level.
Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
               const Real& tol, int max_level = 12);

Complex tanh_sinh_complex(const std::function<Complex(const Real&)>& f, const Real& a,
                          const Real& b, const Real& tol, int max_level = 12);

}  // namespace mfflow
