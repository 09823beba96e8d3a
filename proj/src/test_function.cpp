#include "corrlab/test_function.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "corrlab/quadrature.hpp"

namespace corrlab {

namespace {

constexpr double kPi = std::numbers::pi;

// centered cubic B-spline, support [-2,2], integral 1
double bspline3(double t) {
  double a = std::fabs(t);
  if (a >= 2.0) return 0.0;
  if (a <= 1.0) return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
  double b = 2.0 - a;
  return b * b * b / 6.0;
}

double sinc(double z) {
  if (std::fabs(z) < 1e-8) {
    double w = kPi * z;
    return 1.0 - w * w / 6.0;
  }
  return std::sin(kPi * z) / (kPi * z);
}

// bump profile on (-1,1): exp(g), g(t) = -1/(1-t^2)
double bump_val(double t) {
  if (std::fabs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

// g = -(1/2)[(1-t)^{-1} + (1+t)^{-1}], so
// g^{(j)} = -(j!/2)[(1-t)^{-(j+1)} + (-1)^j (1+t)^{-(j+1)}]
double bump_g_deriv(int j, double t) {
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  double a = std::pow(1.0 - t, -(j + 1));
  double b = std::pow(1.0 + t, -(j + 1));
  return -0.5 * fact * (a + ((j % 2 == 0) ? b : -b));
}

// f^{(0..n)} for f = exp(g) via f^{(n)} = sum_k C(n-1,k-1) g^{(k)} f^{(n-k)}
std::array<double, 9> bump_derivs(double t) {
  std::array<double, 9> d{};
  if (std::fabs(t) >= 1.0) return d;
  static const double C[8][8] = {
      {1, 0, 0, 0, 0, 0, 0, 0},    {1, 1, 0, 0, 0, 0, 0, 0},
      {1, 2, 1, 0, 0, 0, 0, 0},    {1, 3, 3, 1, 0, 0, 0, 0},
      {1, 4, 6, 4, 1, 0, 0, 0},    {1, 5, 10, 10, 5, 1, 0, 0},
      {1, 6, 15, 20, 15, 6, 1, 0}, {1, 7, 21, 35, 35, 21, 7, 1}};
  d[0] = bump_val(t);
  double g[9];
  for (int k = 1; k <= 8; ++k) g[k] = bump_g_deriv(k, t);
  for (int n = 1; n <= 8; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += C[n - 1][k - 1] * g[k] * d[n - k];
    d[n] = s;
  }
  return d;
}

} // namespace

TestFunction TestFunction::bspline(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bspline: radius must be > 0");
  TestFunction f;
  f.kind_ = Smoothness::c2_spline;
  f.radius_ = radius;
  f.moments_.resize(8);
  for (int j = 1; j <= 8; ++j) {
    auto r = integrate_adaptive([&](double x) { return std::pow(f(x), j); },
                                -radius, radius, 1e-14, 1e-13);
    f.moments_[j - 1] = r.value;
  }
  return f;
}

TestFunction TestFunction::bump(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be > 0");
  TestFunction f;
  f.kind_ = Smoothness::cinf_bump;
  f.radius_ = radius;

  // ||f^{(t)}||_1 for t = 2,4,6,8: certified transform tails
  // |fourier(xi)| <= ||f^{(t)}||_1 / (2 pi xi)^t
  f.l1_deriv_.resize(4);
  for (int idx = 0; idx < 4; ++idx) {
    int t = 2 * (idx + 1);
    auto r = integrate_adaptive(
        [&](double x) {
          return std::fabs(bump_derivs(x / radius)[t]) / std::pow(radius, t);
        },
        -radius, radius, 1e-9, 1e-9);
    f.l1_deriv_[idx] = r.value;
  }

  double xi_max = f.fourier_tail_edge(1e-13) * 1.02 + 1.0;
  double step = 0.002 / std::pow(radius, 1.25);
  auto n_pts = static_cast<std::size_t>(xi_max / step) + 4;
  auto table = std::make_shared<std::vector<double>>(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    double xi = static_cast<double>(i) * step;
    auto r = integrate_adaptive(
        [&](double x) { return bump_val(x / radius) * std::cos(2.0 * kPi * x * xi); },
        -radius, radius, 1e-13, 1e-13);
    (*table)[i] = r.value;
  }
  f.table_ = std::move(table);
  f.table_step_ = step;
  f.table_max_ = static_cast<double>(n_pts - 1) * step;

  f.moments_.resize(8);
  for (int j = 1; j <= 8; ++j) {
    auto r = integrate_adaptive([&](double x) { return std::pow(f(x), j); },
                                -radius, radius, 1e-14, 1e-13);
    f.moments_[j - 1] = r.value;
  }
  return f;
}

double TestFunction::operator()(double x) const {
  if (kind_ == Smoothness::c2_spline) return bspline3(2.0 * x / radius_);
  return bump_val(x / radius_);
}

double TestFunction::fourier(double xi) const {
  if (kind_ == Smoothness::c2_spline) {
    double s = sinc(radius_ * xi / 2.0);
    double s2 = s * s;
    return 0.5 * radius_ * s2 * s2;
  }
  return fourier_by_table(xi);
}

double TestFunction::fourier_by_table(double xi) const {
  double a = std::fabs(xi);
  if (a >= table_max_) return 0.0;
  const auto& tb = *table_;
  double u = a / table_step_;
  auto i = static_cast<std::size_t>(u);
  if (i + 2 >= tb.size()) return tb.back();
  double t = u - static_cast<double>(i);
  // Catmull-Rom through the four surrounding nodes (even extension at 0)
  double p0 = (i == 0) ? tb[1] : tb[i - 1];
  double p1 = tb[i], p2 = tb[i + 1], p3 = tb[i + 2];
  double a0 = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  double a1 = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  double a2 = -0.5 * p0 + 0.5 * p2;
  return ((a0 * t + a1) * t + a2) * t + p1;
}

double TestFunction::moment(int j) const {
  if (j < 1) throw std::invalid_argument("moment: j must be >= 1");
  if (j <= static_cast<int>(moments_.size())) return moments_[j - 1];
  auto r = integrate_adaptive([&](double x) { return std::pow((*this)(x), j); },
                              -radius_, radius_, 1e-14, 1e-13);
  return r.value;
}

double TestFunction::fourier_tail_edge(double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("fourier_tail_edge: tol must be > 0");
  if (kind_ == Smoothness::c2_spline) {
    // |fourier(xi)| <= (R/2) (2/(pi R xi))^4
    return (2.0 / (kPi * radius_)) * std::pow(radius_ / (2.0 * tol), 0.25);
  }
  double edge = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < 4; ++idx) {
    int t = 2 * (idx + 1);
    edge = std::min(edge, std::pow(l1_deriv_[idx] / tol, 1.0 / t) / (2.0 * kPi));
  }
  return edge;
}

double TestFunction::fourier_tail_mass(double xi0) const {
  if (!(xi0 > 0.0)) throw std::invalid_argument("fourier_tail_mass: xi0 must be > 0");
  if (kind_ == Smoothness::c2_spline) {
    // int_{xi0}^inf (R/2)(2/(pi R xi))^4 d xi
    double c = 0.5 * radius_ * std::pow(2.0 / (kPi * radius_), 4);
    return c / (3.0 * xi0 * xi0 * xi0);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < 4; ++idx) {
    int t = 2 * (idx + 1);
    double c = l1_deriv_[idx] / std::pow(2.0 * kPi, t);
    best = std::min(best, c / ((t - 1) * std::pow(xi0, t - 1)));
  }
  return best;
}

long long TestFunction::fourier_cutoff(double n_scale, double tol) const {
  return static_cast<long long>(std::ceil(n_scale * fourier_tail_edge(tol))) + 1;
}

// ----------------------------------------------------------------------

CorrKernel::CorrKernel(TestFunction f, int m) : f_(std::move(f)), m_(m) {
  if (m < 2) throw std::invalid_argument("CorrKernel: m must be >= 2");
}

double CorrKernel::operator()(const std::vector<double>& z) const {
  if (static_cast<int>(z.size()) != m_ - 1)
    throw std::invalid_argument("CorrKernel: wrong argument dimension");
  double R = f_.support_radius();
  // arguments of the shifted factors: tail sums t_i = z_i + ... + z_{m-1}
  std::vector<double> tails(m_ - 1);
  double run = 0.0;
  for (int i = m_ - 2; i >= 0; --i) {
    run += z[i];
    tails[i] = run;
  }
  double lo = -R, hi = R;
  for (double t : tails) {
    lo = std::max(lo, -R - t);
    hi = std::min(hi, R - t);
  }
  if (lo >= hi) return 0.0;
  auto r = integrate_adaptive(
      [&](double s) {
        double v = f_(s);
        for (double t : tails) v *= f_(t + s);
        return v;
      },
      lo, hi, 1e-13, 1e-12);
  return r.value;
}

double CorrKernel::operator()(double z) const {
  return (*this)(std::vector<double>{z});
}

CorrKernel build_corr_kernel(const TestFunction& f, int m) { return {f, m}; }

} // namespace corrlab
