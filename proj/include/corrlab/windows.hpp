#pragma once

// Smooth dyadic partitions of unity for the n- and k-sums. Every window is
// a difference of two copies of one fixed C-infinity step, so the family
// telescopes and the partition-of-unity identity holds to roundoff by
// construction. Derivative sup-norms are measured numerically and stored
// as certificates.

#include <cstdint>
#include <vector>

namespace corrlab {

enum class WindowRegime { below_q, above_q };

// one smooth monotone 0 -> 1 transition over [at, at + width]
struct Transition {
  double at = 0.0;
  double width = 1.0;
  double operator()(double x) const;
};

class DyadicWindow {
public:
  DyadicWindow() = default;
  DyadicWindow(int label, Transition rise, Transition fall, WindowRegime regime);

  int label() const { return label_; }
  WindowRegime regime() const { return regime_; }
  double support_lo() const { return rise_.at; }
  double support_hi() const { return fall_.at + fall_.width; }

  double operator()(double x) const;

  // measured sup-norm certificate for |W^(t)|, t = 1..4
  double derivative_bound(int t) const;

private:
  int label_ = 0;
  Transition rise_{}, fall_{};
  WindowRegime regime_ = WindowRegime::below_q;
  mutable double cert_[4] = {-1.0, -1.0, -1.0, -1.0};
};

// n-side family: coarse e-adic windows for q < Q plus a fine tiling of
// width e^Q/(2Q) reaching N + 3N/log(N)
class NWindowFamily {
public:
  explicit NWindowFamily(std::int64_t n);

  int q_cap() const { return q_cap_; }                 // Q
  int count() const { return static_cast<int>(windows_.size()); }
  const DyadicWindow& window(int idx) const { return windows_[idx]; }
  const std::vector<DyadicWindow>& windows() const { return windows_; }

  double sum(double x) const;          // partition of unity
  double coverage_end() const;         // where the sum starts to decay

private:
  std::int64_t n_;
  int q_cap_;
  std::vector<DyadicWindow> windows_;
};

// k-side family: windows for u = 0..U on |k| with the reflection
// K_{-u}(k) = K_u(-k); u = 0 is evenized so that the family covers |k| >= 1
class KWindowFamily {
public:
  KWindowFamily(std::int64_t n, double epsilon);

  int u_cap() const { return u_cap_; }                 // U
  // evaluate K_u at k (any sign of u and k)
  double value(int u, double k) const;
  double sum(double k) const;                          // over u = -U..U
  double support_lo(int u) const;
  double support_hi(int u) const;
  const DyadicWindow& base_window(int u) const;        // u >= 0

  double coverage_end() const;

private:
  std::int64_t n_;
  int u_cap_;
  std::vector<DyadicWindow> windows_; // index u = 0..U
};

// measured sup |sigma^{(t)}| of the underlying unit step, t = 1..4
double step_profile_derivative_sup(int t);

} // namespace corrlab
