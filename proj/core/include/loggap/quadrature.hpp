#pragma once

#include <functional>
#include <span>

namespace loggap {

/// Adaptive Gauss-Kronrod (G15/K31) integral of f over [lo, hi]. The
/// integrand is never evaluated at the endpoints, so integrable endpoint
/// singularities and jump discontinuities placed at lo/hi are fine.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-13);

/// As integrate(), splitting [lo, hi] at every breakpoint inside it.
double integrate_piecewise(const std::function<double(double)>& f, double lo,
                           double hi, std::span<const double> breakpoints,
                           double rel_tol = 1e-13);

/// Fixed 20-point Gauss-Legendre rule; exact-to-rounding for smooth
/// integrands on short intervals.
double gauss_legendre(const std::function<double(double)>& f, double lo, double hi);

}  // namespace loggap
