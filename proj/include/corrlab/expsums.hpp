#pragma once

// Smoothed exponential sums over dyadic windows, the degenerate-pair
// classification, and the Kusmin-Landau empirical check.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "corrlab/sequence.hpp"
#include "corrlab/test_function.hpp"
#include "corrlab/windows.hpp"

namespace corrlab {

enum class BlockClass { degenerate, nondegenerate };

// degenerate iff alpha*theta*e^{|u|+(theta-1)q} < 1/10 or q <= delta*Q
BlockClass classify_degenerate(double alpha, double theta, int u, int q, int q_cap,
                               double delta);

// shared evaluation context: sequence table plus both window families
struct ExpSumContext {
  const SequenceTable* table = nullptr;
  const NWindowFamily* nwin = nullptr;
  const KWindowFamily* kwin = nullptr;
  const TestFunction* f = nullptr;

  std::int64_t n() const { return table->size(); }
};

// E_{q,u}(s) = (1/N) sum_k K_u(k) fourier(k/N) e(ks) sum_n N_q(n) e(k y(n))
std::complex<double> e_qu_eval(const ExpSumContext& ctx, int q, int u, double s);

// inner sum T_q(k) = sum_n N_q(n) e(k y(n))
std::complex<double> windowed_exponential_sum(const ExpSumContext& ctx, int q, std::int64_t k);

struct GridEqu {
  int q = 0;
  int u = 0;
  std::int64_t n = 0;
  std::vector<double> s_nodes;
  std::vector<std::complex<double>> values;

  double sup_abs() const;
  void write_csv(const std::string& path) const;
};

GridEqu e_qu_grid(const ExpSumContext& ctx, int q, int u, int s_nodes);

struct KusminLandauReport {
  int q = 0;
  int u = 0;
  double max_ratio = 0.0;      // |T_q(k)| * k * e^{(theta-1)q} over the u-window
  std::int64_t k_checked = 0;
};

// requires the pair to be degenerate through the first condition
KusminLandauReport kusmin_landau_check(const ExpSumContext& ctx, int q, int u, double delta);

// direct unwindowed double sum restricted to the same supports (oracle for
// e_qu_eval and for the reconstruction identity)
std::complex<double> e_qu_direct(const ExpSumContext& ctx, int q, int u, double s);

struct ReconstructionReport {
  double max_abs_diff = 0.0;    // over sampled s
  double certificate = 0.0;     // transform-tail bound for the comparison
  int s_samples = 0;
};

// sum over all (q,u) of E_{q,u}(s) against the direct weighted double sum
ReconstructionReport reconstruction_check(const ExpSumContext& ctx, int s_samples);

} // namespace corrlab
