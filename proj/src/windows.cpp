#include "corrlab/windows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrlab {

namespace {

// C-infinity unit step: 0 below 0, 1 above 1
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

constexpr double kRiseFrac = 2.0 / 2.718281828459045235 - 0.5; // (2/e - 1/2)

} // namespace

double Transition::operator()(double x) const { return smooth_step((x - at) / width); }

double step_profile_derivative_sup(int t) {
  if (t < 1 || t > 4) throw std::invalid_argument("step_profile_derivative_sup: t in 1..4");
  static const auto sup = [] {
    std::array<double, 4> s{};
    const int n = 4000;
    const double h = 5e-3;
    for (int i = 1; i < n; ++i) {
      double x = static_cast<double>(i) / n;
      double fm2 = smooth_step(x - 2 * h), fm1 = smooth_step(x - h);
      double f0 = smooth_step(x);
      double fp1 = smooth_step(x + h), fp2 = smooth_step(x + 2 * h);
      double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
      double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
      double d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h);
      double d4 = (fp2 - 4 * fp1 + 6 * f0 - 4 * fm1 + fm2) / (h * h * h * h);
      s[0] = std::max(s[0], std::fabs(d1));
      s[1] = std::max(s[1], std::fabs(d2));
      s[2] = std::max(s[2], std::fabs(d3));
      s[3] = std::max(s[3], std::fabs(d4));
    }
    return s;
  }();
  return sup[t - 1];
}

DyadicWindow::DyadicWindow(int label, Transition rise, Transition fall, WindowRegime regime)
    : label_(label), rise_(rise), fall_(fall), regime_(regime) {
  if (rise_.at + rise_.width > fall_.at + 1e-12 * fall_.width)
    throw std::invalid_argument("DyadicWindow: rise must finish before the fall starts");
}

double DyadicWindow::operator()(double x) const { return rise_(x) - fall_(x); }

double DyadicWindow::derivative_bound(int t) const {
  if (t < 1 || t > 4) throw std::invalid_argument("derivative_bound: t in 1..4");
  if (cert_[t - 1] < 0.0) {
    double s = step_profile_derivative_sup(t);
    cert_[t - 1] = s * std::max(std::pow(rise_.width, -t), std::pow(fall_.width, -t));
  }
  return cert_[t - 1];
}

// ----------------------------------------------------------------------

NWindowFamily::NWindowFamily(std::int64_t n) : n_(n) {
  if (n < 3) throw std::invalid_argument("NWindowFamily: need N >= 3");
  int q = 0;
  while (std::exp(q + 1) <= static_cast<double>(n)) ++q;
  q_cap_ = q;

  auto coarse = [](int qq) {
    double scale = std::exp(qq);
    return Transition{0.5 * scale, kRiseFrac * scale};
  };

  // coarse windows q = 0..Q-1
  for (int qq = 0; qq < q_cap_; ++qq)
    windows_.emplace_back(qq, coarse(qq), coarse(qq + 1), WindowRegime::below_q);

  // fine tiling with stride e^Q/(2Q) up to N + 3N/log(N)
  double eq = std::exp(q_cap_);
  double stride = eq / (2.0 * q_cap_);
  double tw = 0.5 * stride;
  double bridge_end = 2.0 * std::exp(q_cap_ - 1); // end of the coarse fall at q = Q
  double first = bridge_end + 0.5 * stride;
  double edge = static_cast<double>(n) + 3.0 * static_cast<double>(n) / std::log(static_cast<double>(n));
  int fine_count = std::max(1, static_cast<int>(std::ceil((edge - tw - first) / stride)));

  std::vector<Transition> fine;
  for (int j = 0; j <= fine_count; ++j) fine.push_back({first + j * stride, tw});

  // bridge window: coarse rise at q = Q, first fine fall
  windows_.emplace_back(q_cap_, coarse(q_cap_), fine[0], WindowRegime::above_q);
  for (int j = 0; j < fine_count; ++j)
    windows_.emplace_back(q_cap_ + 1 + j, fine[j], fine[j + 1], WindowRegime::above_q);
}

double NWindowFamily::sum(double x) const {
  double s = 0.0;
  for (const auto& w : windows_) s += w(x);
  return s;
}

double NWindowFamily::coverage_end() const { return windows_.back().support_lo(); }

// ----------------------------------------------------------------------

KWindowFamily::KWindowFamily(std::int64_t n, double epsilon) : n_(n) {
  if (n < 3) throw std::invalid_argument("KWindowFamily: need N >= 3");
  u_cap_ = static_cast<int>(std::ceil((1.0 + epsilon) * std::log(static_cast<double>(n))));
  auto tr = [](int u) {
    double scale = std::exp(u);
    return Transition{0.5 * scale, kRiseFrac * scale};
  };
  for (int u = 0; u <= u_cap_; ++u)
    windows_.emplace_back(u, tr(u), tr(u + 1), WindowRegime::below_q);
}

double KWindowFamily::value(int u, double k) const {
  if (u == 0) return windows_[0](std::fabs(k));
  if (u > 0) return (k > 0.0) ? windows_[u](k) : 0.0;
  return (k < 0.0) ? windows_[-u](-k) : 0.0;
}

double KWindowFamily::sum(double k) const {
  double a = std::fabs(k);
  double s = 0.0;
  for (const auto& w : windows_) s += w(a);
  return s;
}

double KWindowFamily::support_lo(int u) const {
  if (u >= 0) return windows_[u].support_lo();
  return -windows_[-u].support_hi();
}

double KWindowFamily::support_hi(int u) const {
  if (u >= 0) return windows_[u].support_hi();
  return -windows_[-u].support_lo();
}

const DyadicWindow& KWindowFamily::base_window(int u) const {
  return windows_[std::abs(u)];
}

double KWindowFamily::coverage_end() const { return 0.5 * std::exp(u_cap_ + 1); }

} // namespace corrlab
