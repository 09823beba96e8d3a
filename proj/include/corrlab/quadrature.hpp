#pragma once

#include <complex>
#include <functional>

namespace corrlab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;     // accumulated error estimate
  long evaluations = 0;
};

struct QuadResultC {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  long evaluations = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a,b].
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-12,
                              int max_depth = 48);

QuadResultC integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b,
                                       double abs_tol = 1e-12, double rel_tol = 1e-12,
                                       int max_depth = 48);

// integral of amp(x) * e(phase(x)) over [a,b], e(t) = exp(2*pi*i*t).
// Panels where the phase moves less than ~half a cycle go through
// Gauss-Kronrod directly; faster-turning panels use a degree-8 Filon rule
// (Chebyshev interpolation of the amplitude times the residual phase
// against exact monomial moments), so the cost grows like the square root
// of the total phase range instead of linearly.
QuadResultC oscillatory_integrate(const std::function<double(double)>& phase,
                                  const std::function<std::complex<double>(double)>& amp,
                                  double a, double b,
                                  double tol = 1e-10);

} // namespace corrlab
