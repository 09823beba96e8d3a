#include "corrlab/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace corrlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
struct Gk15Out {
  T integral;
  double err;
};

template <typename T, typename F>
Gk15Out<T> gk15(const F& f, double a, double b, long& evals) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  T fc = f(c);
  T resk = kWgk[7] * fc;
  T resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    T f1 = f(c - x);
    T f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  double err = std::abs(resk - resg) * h;
  // QUADPACK-style sharpening of the raw difference
  if (err > 0.0) {
    double scale = std::pow(200.0 * err / (std::abs(resk) * h + 1e-300), 1.5);
    if (scale < 1.0) err *= scale;
  }
  return {resk * h, err};
}

template <typename T, typename F>
void adapt(const F& f, double a, double b, double tol, int depth, int max_depth,
           T& acc, double& err_acc, long& evals) {
  auto r = gk15<T>(f, a, b, evals);
  if (r.err <= tol || depth >= max_depth) {
    acc += r.integral;
    err_acc += r.err;
    return;
  }
  double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth + 1, max_depth, acc, err_acc, evals);
  adapt(f, c, b, 0.5 * tol, depth + 1, max_depth, acc, err_acc, evals);
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol, double rel_tol,
                              int max_depth) {
  long evals = 0;
  double sign = 1.0;
  if (a > b) { std::swap(a, b); sign = -1.0; }
  if (a == b) return {0.0, 0.0, 0};
  auto probe = gk15<double>(f, a, b, evals);
  double tol = std::max(abs_tol, rel_tol * std::abs(probe.integral));
  double acc = 0.0, err = 0.0;
  adapt<double>(f, a, b, tol, 0, max_depth, acc, err, evals);
  return {sign * acc, err, evals};
}

QuadResultC integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double abs_tol, double rel_tol,
                                       int max_depth) {
  long evals = 0;
  double sign = 1.0;
  if (a > b) { std::swap(a, b); sign = -1.0; }
  if (a == b) return {{0.0, 0.0}, 0.0, 0};
  auto probe = gk15<std::complex<double>>(f, a, b, evals);
  double tol = std::max(abs_tol, rel_tol * std::abs(probe.integral));
  std::complex<double> acc{0.0, 0.0};
  double err = 0.0;
  adapt<std::complex<double>>(f, a, b, tol, 0, max_depth, acc, err, evals);
  return {sign * acc, err, evals};
}

// ----------------------------------------------------------------------
// Oscillatory quadrature
// ----------------------------------------------------------------------

namespace {

inline std::complex<double> unit_phase(double t) {
  double f = t - std::nearbyint(t);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

constexpr int kFilonDeg = 8; // degree-8 interpolation on 9 Chebyshev-Lobatto nodes

struct FilonTables {
  std::array<double, kFilonDeg + 1> nodes;               // on [-1,1]
  std::array<std::array<double, kFilonDeg + 1>, kFilonDeg + 1> to_mono; // samples -> monomial coeffs
};

// Invert the Chebyshev-Lobatto Vandermonde once (9x9, Gauss-Jordan).
FilonTables build_filon_tables() {
  FilonTables t{};
  const int n = kFilonDeg + 1;
  for (int i = 0; i < n; ++i)
    t.nodes[i] = -std::cos(kPi * i / kFilonDeg);
  double A[n][2 * n];
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) {
      A[i][j] = p;
      p *= t.nodes[i];
    }
    for (int j = 0; j < n; ++j) A[i][n + j] = (i == j) ? 1.0 : 0.0;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    for (int j = 0; j < 2 * n; ++j) std::swap(A[col][j], A[piv][j]);
    double d = A[col][col];
    for (int j = 0; j < 2 * n; ++j) A[col][j] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double m = A[r][col];
      for (int j = 0; j < 2 * n; ++j) A[r][j] -= m * A[col][j];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.to_mono[i][j] = A[i][n + j];
  return t;
}

const FilonTables& filon_tables() {
  static const FilonTables t = build_filon_tables();
  return t;
}

// Moments M_j = int_{-1}^{1} t^j exp(i*g*t) dt, j = 0..kFilonDeg.
void filon_moments(double g, std::complex<double>* M) {
  const int n = kFilonDeg + 1;
  if (std::abs(g) < 9.0) {
    // Taylor: M_j = sum_k (ig)^k/k! * 2/(j+k+1) over j+k even
    for (int j = 0; j < n; ++j) {
      std::complex<double> term(1.0, 0.0);
      std::complex<double> ig(0.0, g);
      std::complex<double> sum(0.0, 0.0);
      for (int k = 0; k <= 64; ++k) {
        if ((j + k) % 2 == 0) sum += term * (2.0 / (j + k + 1));
        term *= ig / static_cast<double>(k + 1);
        if (std::abs(term) < 1e-20 && k > std::abs(g)) break;
      }
      M[j] = sum;
    }
    return;
  }
  std::complex<double> ig(0.0, g);
  std::complex<double> ep = std::exp(ig);           // e^{i g}
  std::complex<double> em = std::conj(ep);          // e^{-i g}
  M[0] = (ep - em) / ig;
  for (int j = 1; j < n; ++j) {
    std::complex<double> boundary = ep - (j % 2 == 0 ? em : -em);
    M[j] = (boundary - static_cast<double>(j) * M[j - 1]) / ig;
  }
}

struct OscWork {
  const std::function<double(double)>* phase;
  const std::function<std::complex<double>(double)>* amp;
  double tol_per_len;
  std::complex<double> acc{0.0, 0.0};
  double err = 0.0;
  long evals = 0;
  long panels = 0;
};

// Filon value on one panel; phase handled as linear + interpolated residual.
std::complex<double> filon_panel(OscWork& w, double p, double q) {
  const auto& T = filon_tables();
  const int n = kFilonDeg + 1;
  double c = 0.5 * (p + q);
  double h = 0.5 * (q - p);
  double php = (*w.phase)(p);
  double phq = (*w.phase)(q);
  double slope = (phq - php) / (q - p);          // cycles per x
  double g = kTwoPi * slope * h;                 // radians over [-1,1] unit
  std::complex<double> samples[n];
  for (int i = 0; i < n; ++i) {
    double x = c + h * T.nodes[i];
    double resid = (*w.phase)(x) - (php + slope * (x - p));
    samples[i] = (*w.amp)(x)*unit_phase(resid);
  }
  w.evals += n;
  std::complex<double> coeff[n];
  for (int j = 0; j < n; ++j) {
    std::complex<double> s(0.0, 0.0);
    for (int i = 0; i < n; ++i) s += T.to_mono[j][i] * samples[i];
    coeff[j] = s;
  }
  std::complex<double> M[n];
  filon_moments(g, M);
  std::complex<double> integral(0.0, 0.0);
  for (int j = 0; j < n; ++j) integral += coeff[j] * M[j];
  // carrier e(php + slope*(x-p)) referenced to x = c
  std::complex<double> carrier = unit_phase(php + slope * (c - p));
  return integral * h * carrier;
}

// max |phase residual| against the chord, sampled at the Chebyshev nodes
double panel_residual(OscWork& w, double p, double q, double& cycles) {
  const auto& T = filon_tables();
  double php = (*w.phase)(p);
  double phq = (*w.phase)(q);
  double slope = (phq - php) / (q - p);
  double c = 0.5 * (p + q), h = 0.5 * (q - p);
  double worst = 0.0;
  double prev = php, var = 0.0;
  for (int i = 1; i < kFilonDeg; ++i) {
    double x = c + h * T.nodes[i];
    double ph = (*w.phase)(x);
    worst = std::max(worst, std::abs(ph - (php + slope * (x - p))));
    var += std::abs(ph - prev);
    prev = ph;
  }
  var += std::abs(phq - prev);
  w.evals += kFilonDeg - 1;
  cycles = var;
  return worst;
}

void osc_panel(OscWork& w, double p, double q, int depth) {
  double cycles = 0.0;
  double resid = panel_residual(w, p, q, cycles);
  double tol = std::max(w.tol_per_len * (q - p), 1e-16);
  if (++w.panels > 4'000'000) throw std::runtime_error("oscillatory_integrate: panel budget exhausted");

  if (cycles <= 0.5 && depth < 40) {
    // slow phase: integrate the full complex integrand directly
    auto f = [&](double x) { return (*w.amp)(x)*unit_phase((*w.phase)(x)); };
    auto r = gk15<std::complex<double>>(f, p, q, w.evals);
    if (r.err <= tol || depth >= 38) {
      w.acc += r.integral;
      w.err += r.err;
      return;
    }
    double c = 0.5 * (p + q);
    osc_panel(w, p, c, depth + 1);
    osc_panel(w, c, q, depth + 1);
    return;
  }

  if (resid <= 0.06 || depth >= 40) {
    // residual small enough for the degree-8 amplitude interpolation;
    // error estimate by comparing against the two-half evaluation
    std::complex<double> whole = filon_panel(w, p, q);
    double c = 0.5 * (p + q);
    std::complex<double> halves = filon_panel(w, p, c) + filon_panel(w, c, q);
    double diff = std::abs(whole - halves);
    if (diff <= tol || depth >= 40) {
      w.acc += halves;
      w.err += diff;
      return;
    }
  }
  double c = 0.5 * (p + q);
  osc_panel(w, p, c, depth + 1);
  osc_panel(w, c, q, depth + 1);
}

} // namespace

QuadResultC oscillatory_integrate(const std::function<double(double)>& phase,
                                  const std::function<std::complex<double>(double)>& amp,
                                  double a, double b, double tol) {
  if (a == b) return {{0.0, 0.0}, 0.0, 0};
  double sign = 1.0;
  if (a > b) { std::swap(a, b); sign = -1.0; }
  OscWork w;
  w.phase = &phase;
  w.amp = &amp;
  w.tol_per_len = tol / (b - a);
  osc_panel(w, a, b, 0);
  return {sign * w.acc, w.err, w.evals};
}

} // namespace corrlab
