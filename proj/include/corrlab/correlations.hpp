#pragma once

// The statistical core: m-point correlation sums over sliding windows on
// the circle, the counting variable S_N and its moments, the completed and
// Poisson-dual forms, and the partition-restricted decompositions.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "corrlab/partitions.hpp"
#include "corrlab/sequence.hpp"
#include "corrlab/test_function.hpp"

namespace corrlab {

struct QuadratureGrid {
  long node_count = 0; // power of two; 0 lets the routine pick and double
};

struct MomentResult {
  double value = 0.0;
  long grid_nodes = 0;       // final M
  double doubling_residual = 0.0; // |I_M - I_{M/2}|
  bool converged = true;
};

struct CorrelationReport {
  int m = 0;
  std::int64_t n = 0;
  double value = 0.0;
  double target = 0.0;
  double abs_deviation = 0.0;
  std::string sequence;
  std::string test_function;
  double runtime_ms = 0.0;
};

// Point multiset on [0,1), sorted, with circular window queries.
class PointSet {
public:
  explicit PointSet(std::vector<double> xs);

  static PointSet from_sequence(const SequenceSpec& spec, std::int64_t n);
  static PointSet from_table(const SequenceTable& table);
  static PointSet lattice(std::int64_t n); // x(i) = i/n
  static PointSet iid_uniform(std::int64_t n, std::uint64_t seed);

  std::int64_t size() const { return static_cast<std::int64_t>(x_.size()); }
  const std::vector<double>& sorted() const { return x_; }

  // indices of sorted points with wrapped distance to c < w, as a pair of
  // half-open ranges [b0,e0) and [b1,e1) into sorted()
  void window(double c, double w, std::size_t out[4]) const;

  // signed wrapped offset x - c in [-1/2, 1/2)
  static double wrap(double d);

private:
  std::vector<double> x_;
};

// R^(m)(N,f): f applied coordinate-wise to the m-1 consecutive rescaled
// gaps (product of one test function); distinct index tuples only.
double rm_correlation(const PointSet& pts, const TestFunction& f, int m);

// same with an (m-1)-variable kernel
double rm_correlation(const PointSet& pts, const CorrKernel& kernel);

// S_N(s) = sum_n sum_k f(N*(y(n)+k+s))
double s_counting(const PointSet& pts, const TestFunction& f, double s);

// int_0^1 S_N(s)^m ds on a uniform grid; with grid.node_count = 0 the grid
// is doubled until two successive values differ by < 1e-10.
MomentResult moment_m(const PointSet& pts, const TestFunction& f, int m,
                      QuadratureGrid grid = {});

// completed m-point correlation of the kernel (tuples may repeat)
double completed_correlation(const PointSet& pts, const CorrKernel& kernel);

// Poisson-dual moment: (1/N^m) sum over k in [-K,K]^m with k_1+...+k_m = 0
// of prod fourier(k_i/N) T(k_i), T(k) = sum_n e(k y(n)).
// k_cut = 0 derives K from the 1e-12 transform-tail certificate; a
// supplied k_cut failing that certificate throws.
double moment_dual(const SequenceTable& table, const TestFunction& f, int m,
                   long long k_cut = 0);

// K_j term of the zero-pattern decomposition (j = 0 or 2..m; j = 1 throws)
double k_j_sum(const SequenceTable& table, const TestFunction& f, int m, int j,
               long long k_cut = 0);

// same K_j through the central-moment identity
// K_j = binom(m, m-j) E(f)^{m-j} int (S_N - E(f))^j
double k_j_sum_central(const PointSet& pts, const TestFunction& f, int m, int j,
                       QuadratureGrid grid = {});

// moment restricted to P-distinct tuples, on an explicit grid so that the
// sum over all partitions reproduces moment_m on the same grid exactly
double m_partition_restricted(const PointSet& pts, const TestFunction& f,
                              const Partition& p, QuadratureGrid grid);

// sum over all partitions of [m] of prod_blocks E(f^{|block|})
double poissonian_target(const TestFunction& f, int m);

// dual-form T(k) = sum_n e(k y(n)) for k = 0..k_max (negative k by conjugation)
std::vector<std::complex<double>> exponential_sums(const SequenceTable& table,
                                                   long long k_max);

} // namespace corrlab
