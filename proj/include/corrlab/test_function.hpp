#pragma once

// Compactly supported even test functions with evaluable Fourier
// transforms and moments. Two families: a cubic B-spline (C^2, closed-form
// transform, cheap enough for large sweeps) and a genuine C-infinity bump
// (transform tabulated once by adaptive quadrature).

#include <memory>
#include <vector>

namespace corrlab {

enum class Smoothness { c2_spline, cinf_bump };

class TestFunction {
public:
  static TestFunction bspline(double radius);
  static TestFunction bump(double radius);

  double support_radius() const { return radius_; }
  Smoothness smoothness() const { return kind_; }

  double operator()(double x) const;
  double fourier(double xi) const;   // real by evenness
  double moment(int j) const;        // E(f^j) = integral of f^j

  // smallest Xi with a certified |fourier(xi)| <= tol for all |xi| >= Xi
  double fourier_tail_edge(double tol) const;

  // certified bound on int_{|xi| >= xi0} |fourier(xi)| d xi (one side)
  double fourier_tail_mass(double xi0) const;

  // k-sum cutoff: |fourier(k/N)| <= tol for all |k| > K
  long long fourier_cutoff(double n_scale, double tol = 1e-12) const;

private:
  TestFunction() = default;

  Smoothness kind_ = Smoothness::c2_spline;
  double radius_ = 1.0;
  std::vector<double> moments_;           // E(f^j), j = 1..8, eager

  // bump-only transform cache on a uniform grid over [0, table_max_]
  std::shared_ptr<std::vector<double>> table_;
  double table_step_ = 0.0;
  double table_max_ = 0.0;
  std::vector<double> l1_deriv_;          // ||f^{(t)}||_1, t = 2,4,6,8 tail certificates

  double fourier_by_table(double xi) const;
};

// F(z_1,...,z_{m-1}) = int f(s) f(z_1+...+z_{m-1}+s) f(z_2+...+z_{m-1}+s)
//                      ... f(z_{m-1}+s) ds
class CorrKernel {
public:
  CorrKernel(TestFunction f, int m);

  int dimension() const { return m_ - 1; }
  int order() const { return m_; }
  const TestFunction& base() const { return f_; }

  double operator()(const std::vector<double>& z) const;
  double operator()(double z) const; // m = 2 convenience

private:
  TestFunction f_;
  int m_;
};

CorrKernel build_corr_kernel(const TestFunction& f, int m);

} // namespace corrlab
