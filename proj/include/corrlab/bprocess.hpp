#pragma once

// The B-process transforms: constants derived from (alpha, theta), the
// stationary value phi(k,r), a stationary-phase evaluator with a measured
// error term, and the once- and twice-transformed sums E^(B), E^(BB).

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "corrlab/compensated.hpp"
#include "corrlab/expsums.hpp"

namespace corrlab {

struct BConstants {
  double alpha = 1.0;
  double theta = 0.5;
  double big_theta = 2.0; // 1/(1-theta)
  double beta = 0.25;     // alpha^T (theta^{T-1} - theta^T)
  double c1 = 0.0;        // sqrt(T (alpha theta)^T)
  double c0 = 0.0;        // (beta T)^{-1/(T-1)}
  double c = 0.0;         // -theta c0

  // double-double mirrors for phase reduction mod 1
  DoubleDouble beta_dd, c0_dd, c_dd;
  DoubleDouble big_theta_dd, one_minus_theta_dd, inv_theta_dd;
};

// closed forms plus a numeric critical-point verification on random
// (r, h, s); a residual above 1e-8 aborts
BConstants derive_constants(double alpha, double theta, bool verify = true,
                            std::uint64_t seed = 20240901);

// phi(k,r) = beta k^T r^{1-T}: the stationary value of k alpha x^theta - r x
double phi(const BConstants& bc, double k, double r);
DoubleDouble phi_dd(const BConstants& bc, double k, double r);

// second derivative of phi in its first argument
double phi_kk(const BConstants& bc, double k, double r);

// critical point x_r = (alpha theta k / r)^T of k alpha x^theta - r x
double first_b_critical_point(const BConstants& bc, double k, double r);

// |d^2/dx^2 (k alpha x^theta - r x)| at x_r, equal to c1^{-2} r^{T+1} / k^T
double first_b_curvature(const BConstants& bc, double k, double r);

// mu(h, r, s) = c0 r (h-s)^{1/(T-1)}
double b_mu(const BConstants& bc, double h, double r, double s);

struct StationaryPhaseSpec {
  std::function<double(double)> phase;    // Phi
  std::function<double(double)> dphase;   // Phi'
  std::function<double(double)> d2phase;  // Phi''
  std::function<double(double)> amplitude; // Psi, vanishing at both ends
  double a = 0.0;
  double b = 1.0;
};

struct StationaryPhaseResult {
  std::complex<double> main_term{0.0, 0.0};
  double measured_error = 0.0;  // |quadrature - main_term|
  double x0 = 0.0;
  std::complex<double> quadrature{0.0, 0.0};
};

struct StationaryPhaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// main term e(Phi(x0) +- 1/8) Psi(x0)/sqrt(|Phi''(x0)|) against the
// oscillatory quadrature oracle; throws StationaryPhaseError when there is
// no interior critical point, several of them, or Phi'' changes sign
StationaryPhaseResult stationary_phase_integral(const StationaryPhaseSpec& sp,
                                                double quad_tol = 1e-10);

struct BBStats {
  long dropped_h = 0; // candidates with h <= s
};

// E^(B)_{q,u}(s); requires u != 0 and (u,q) nondegenerate, u < 0 by conjugation
std::complex<double> e_b_eval(const ExpSumContext& ctx, const BConstants& bc,
                              int q, int u, double s, double delta = 0.1);

// E^(BB)_{q,u}(s)
std::complex<double> e_bb_eval(const ExpSumContext& ctx, const BConstants& bc,
                               int q, int u, double s, double delta = 0.1,
                               BBStats* stats = nullptr);

struct BResidualGrid {
  int q = 0, u = 0;
  std::int64_t n = 0;
  std::vector<double> s_nodes;
  std::vector<double> diff_e_b;   // |E - E^(B)|
  std::vector<double> diff_b_bb;  // |E^(B) - E^(BB)|
  double sup_e_b = 0.0;
  double sup_b_bb = 0.0;
  void write_csv(const std::string& path) const;
};

BResidualGrid b_residual_grid(const ExpSumContext& ctx, const BConstants& bc,
                              int q, int u, int s_nodes, double delta = 0.1);

} // namespace corrlab
