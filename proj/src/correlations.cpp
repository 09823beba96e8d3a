#include "corrlab/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "corrlab/parallel.hpp"
#include "corrlab/rng.hpp"

namespace corrlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> unit_phase(double frac) {
  return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}
} // namespace

// ----------------------------------------------------------------------
// PointSet
// ----------------------------------------------------------------------

PointSet::PointSet(std::vector<double> xs) : x_(std::move(xs)) {
  for (double v : x_)
    if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("PointSet: values must lie in [0,1)");
  std::sort(x_.begin(), x_.end());
}

PointSet PointSet::from_sequence(const SequenceSpec& spec, std::int64_t n) {
  SequenceTable t(spec, n);
  return PointSet(t.fractional_parts());
}

PointSet PointSet::from_table(const SequenceTable& table) {
  return PointSet(table.fractional_parts());
}

PointSet PointSet::lattice(std::int64_t n) {
  std::vector<double> xs(n);
  for (std::int64_t i = 1; i <= n; ++i) {
    double v = static_cast<double>(i) / static_cast<double>(n);
    xs[i - 1] = (v >= 1.0) ? 0.0 : v;
  }
  return PointSet(std::move(xs));
}

PointSet PointSet::iid_uniform(std::int64_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> xs(n);
  for (auto& v : xs) v = rng.next_double();
  return PointSet(std::move(xs));
}

double PointSet::wrap(double d) {
  double r = d - std::nearbyint(d);
  return (r < -0.5) ? r + 1.0 : ((r >= 0.5) ? r - 1.0 : r);
}

void PointSet::window(double c, double w, std::size_t out[4]) const {
  // all indices with wrapped |x - c| < w; w < 1/2
  double lo = c - w, hi = c + w;
  auto begin = x_.begin(), end = x_.end();
  out[0] = out[1] = out[2] = out[3] = 0;
  if (lo >= 0.0 && hi <= 1.0) {
    out[0] = static_cast<std::size_t>(std::lower_bound(begin, end, lo) - begin);
    out[1] = static_cast<std::size_t>(std::upper_bound(begin, end, hi) - begin);
  } else if (lo < 0.0) {
    out[0] = static_cast<std::size_t>(std::lower_bound(begin, end, lo + 1.0) - begin);
    out[1] = x_.size();
    out[2] = 0;
    out[3] = static_cast<std::size_t>(std::upper_bound(begin, end, hi) - begin);
  } else { // hi > 1
    out[0] = static_cast<std::size_t>(std::lower_bound(begin, end, lo) - begin);
    out[1] = x_.size();
    out[2] = 0;
    out[3] = static_cast<std::size_t>(std::upper_bound(begin, end, hi - 1.0) - begin);
  }
}

namespace {

// flat list of window members around c
void collect_window(const PointSet& pts, double c, double w, std::vector<std::size_t>& idx) {
  idx.clear();
  std::size_t r[4];
  pts.window(c, w, r);
  for (std::size_t i = r[0]; i < r[1]; ++i) idx.push_back(i);
  for (std::size_t i = r[2]; i < r[3]; ++i) idx.push_back(i);
}

} // namespace

// ----------------------------------------------------------------------
// R^(m)
// ----------------------------------------------------------------------

namespace {

// DFS over chains of near points; calls visit(chain) for every ordered
// tuple of pairwise-distinct indices whose consecutive wrapped gaps stay
// below w.
template <typename Visit>
void chain_dfs(const PointSet& pts, double w, std::vector<std::size_t>& chain,
               std::vector<std::size_t>& scratch, int depth_left, const Visit& visit) {
  if (depth_left == 0) {
    visit(chain);
    return;
  }
  const auto& xs = pts.sorted();
  std::vector<std::size_t> local;
  collect_window(pts, xs[chain.back()], w, local);
  for (std::size_t j : local) {
    if (std::find(chain.begin(), chain.end(), j) != chain.end()) continue;
    chain.push_back(j);
    chain_dfs(pts, w, chain, scratch, depth_left - 1, visit);
    chain.pop_back();
  }
  (void)scratch;
}

} // namespace

double rm_correlation(const PointSet& pts, const TestFunction& f, int m) {
  if (m < 2) throw std::invalid_argument("rm_correlation: m must be >= 2");
  std::int64_t n = pts.size();
  if (n < m) throw std::invalid_argument("rm_correlation: need N >= m");
  double J = f.support_radius();
  double w = J / static_cast<double>(n);
  if (w >= 0.5) throw std::invalid_argument("rm_correlation: support too wide for N");
  const auto& xs = pts.sorted();
  double N = static_cast<double>(n);

  if (m == 2) {
    // sum over ordered pairs: for each i, sum f over window minus the self term
    std::vector<double> per(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
      std::vector<std::size_t> idx;
      for (std::size_t i = lo; i < hi; ++i) {
        collect_window(pts, xs[i], w, idx);
        double s = 0.0;
        for (std::size_t j : idx) {
          if (j == i) continue;
          double gap = std::fabs(PointSet::wrap(xs[i] - xs[j]));
          s += f(N * gap);
        }
        per[i] = s;
      }
    });
    return pairwise_sum(per) / N;
  }

  std::vector<double> per(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> chain, scratch;
    for (std::size_t i = lo; i < hi; ++i) {
      chain.assign(1, i);
      double acc = 0.0;
      chain_dfs(pts, w, chain, scratch, m - 1, [&](const std::vector<std::size_t>& tup) {
        double prod = 1.0;
        for (std::size_t t = 0; t + 1 < tup.size(); ++t) {
          double gap = std::fabs(PointSet::wrap(xs[tup[t]] - xs[tup[t + 1]]));
          prod *= f(N * gap);
          if (prod == 0.0) return;
        }
        acc += prod;
      });
      per[i] = acc;
    }
  });
  return pairwise_sum(per) / N;
}

double rm_correlation(const PointSet& pts, const CorrKernel& kernel) {
  int m = kernel.order();
  std::int64_t n = pts.size();
  if (n < m) throw std::invalid_argument("rm_correlation: need N >= m");
  double J = 4.0 * kernel.base().support_radius();
  double w = J / static_cast<double>(n);
  if (w >= 0.5) throw std::invalid_argument("rm_correlation: support too wide for N");
  const auto& xs = pts.sorted();
  double N = static_cast<double>(n);
  std::vector<double> per(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> chain, scratch;
    std::vector<double> z(m - 1);
    for (std::size_t i = lo; i < hi; ++i) {
      chain.assign(1, i);
      double acc = 0.0;
      chain_dfs(pts, w, chain, scratch, m - 1, [&](const std::vector<std::size_t>& tup) {
        for (std::size_t t = 0; t + 1 < tup.size(); ++t)
          z[t] = N * std::fabs(PointSet::wrap(xs[tup[t]] - xs[tup[t + 1]]));
        acc += kernel(z);
      });
      per[i] = acc;
    }
  });
  return pairwise_sum(per) / N;
}

// ----------------------------------------------------------------------
// S_N and moments
// ----------------------------------------------------------------------

double s_counting(const PointSet& pts, const TestFunction& f, double s) {
  double R = f.support_radius();
  std::int64_t n = pts.size();
  double N = static_cast<double>(n);
  double w = R / N;
  const auto& xs = pts.sorted();
  if (w < 0.499) {
    double c = PointSet::wrap(-s);
    if (c < 0.0) c += 1.0;
    std::size_t r[4];
    pts.window(c, w, r);
    double acc = 0.0;
    for (std::size_t i = r[0]; i < r[1]; ++i) acc += f(N * PointSet::wrap(xs[i] + s));
    for (std::size_t i = r[2]; i < r[3]; ++i) acc += f(N * PointSet::wrap(xs[i] + s));
    return acc;
  }
  // wide support relative to N: sum the k-shifts directly
  double acc = 0.0;
  for (double x : xs) {
    double base = x + s;
    auto klo = static_cast<long>(std::ceil(-base - w));
    auto khi = static_cast<long>(std::floor(-base + w));
    for (long k = klo; k <= khi; ++k) acc += f(N * (base + static_cast<double>(k)));
  }
  return acc;
}

namespace {

double moment_on_grid(const PointSet& pts, const TestFunction& f, int m, long M) {
  std::vector<double> vals(M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      double s = static_cast<double>(j) / static_cast<double>(M);
      double v = s_counting(pts, f, s);
      double p = v;
      for (int t = 1; t < m; ++t) p *= v;
      vals[j] = p;
    }
  });
  return pairwise_sum(vals) / static_cast<double>(M);
}

long default_grid(const PointSet& pts, const TestFunction& f) {
  double target = 16.0 * static_cast<double>(pts.size()) * std::max(1.0, f.support_radius());
  long M = 4096;
  while (static_cast<double>(M) < target) M *= 2;
  return M;
}

} // namespace

MomentResult moment_m(const PointSet& pts, const TestFunction& f, int m, QuadratureGrid grid) {
  if (m < 1) throw std::invalid_argument("moment_m: m must be >= 1");
  if (grid.node_count > 0) {
    if ((grid.node_count & (grid.node_count - 1)) != 0)
      throw std::invalid_argument("moment_m: node_count must be a power of two");
    return {moment_on_grid(pts, f, m, grid.node_count), grid.node_count, 0.0, true};
  }
  long M = default_grid(pts, f);
  double prev = moment_on_grid(pts, f, m, M);
  for (int step = 0; step < 10; ++step) {
    M *= 2;
    double cur = moment_on_grid(pts, f, m, M);
    double resid = std::fabs(cur - prev);
    if (resid < 1e-10) return {cur, M, resid, true};
    prev = cur;
  }
  return {prev, M, std::fabs(prev), false};
}

// ----------------------------------------------------------------------
// completed correlation
// ----------------------------------------------------------------------

namespace {

// sum of kernel over all completions k_t of the remaining coordinates;
// tuples may repeat, the k-sum per coordinate is truncated by the support
void completed_recurse(const PointSet& pts, const CorrKernel& kernel, double span,
                       std::vector<std::size_t>& tup, std::vector<double>& z, int depth,
                       const std::vector<std::size_t>* all, double& acc) {
  int m = kernel.order();
  const auto& xs = pts.sorted();
  double N = static_cast<double>(pts.size());
  if (depth == m) {
    acc += kernel(z);
    return;
  }
  std::vector<std::size_t> local;
  const std::vector<std::size_t>* cand = all;
  if (all == nullptr) {
    collect_window(pts, xs[tup[depth - 1]], span / N, local);
    cand = &local;
  }
  for (std::size_t j : *cand) {
    double diff = xs[tup[depth - 1]] - xs[j];
    auto klo = static_cast<long>(std::ceil(-diff - span / N));
    auto khi = static_cast<long>(std::floor(-diff + span / N));
    tup.push_back(j);
    for (long k = klo; k <= khi; ++k) {
      z[depth - 1] = N * (diff + static_cast<double>(k));
      completed_recurse(pts, kernel, span, tup, z, depth + 1, all, acc);
    }
    tup.pop_back();
  }
}

} // namespace

double completed_correlation(const PointSet& pts, const CorrKernel& kernel) {
  int m = kernel.order();
  std::int64_t n = pts.size();
  double span = 4.0 * kernel.base().support_radius(); // |z_t| <= span kills the kernel
  double N = static_cast<double>(n);

  // window pruning only valid when one k per pair survives
  bool prune = span / N < 0.499;
  std::vector<std::size_t> everyone;
  if (!prune)
    for (std::int64_t i = 0; i < n; ++i) everyone.push_back(static_cast<std::size_t>(i));

  std::vector<double> per(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> tup;
    std::vector<double> z(m - 1);
    for (std::size_t i = lo; i < hi; ++i) {
      double acc = 0.0;
      tup.assign(1, i);
      completed_recurse(pts, kernel, span, tup, z, 1, prune ? nullptr : &everyone, acc);
      per[i] = acc;
    }
  });
  return pairwise_sum(per) / N;
}

// ----------------------------------------------------------------------
// Poisson-dual forms
// ----------------------------------------------------------------------

std::vector<std::complex<double>> exponential_sums(const SequenceTable& table, long long k_max) {
  std::vector<std::complex<double>> t(k_max + 1);
  std::int64_t n = table.size();
  parallel_for(static_cast<std::size_t>(k_max + 1), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      if (k == 0) {
        t[0] = {static_cast<double>(n), 0.0};
        continue;
      }
      std::vector<std::complex<double>> terms(n);
      for (std::int64_t i = 1; i <= n; ++i)
        terms[i - 1] = unit_phase(table.phase(static_cast<std::int64_t>(k), i));
      t[k] = pairwise_sum(terms);
    }
  });
  return t;
}

namespace {

long long resolve_kcut(const SequenceTable& table, const TestFunction& f, long long k_cut) {
  double n = static_cast<double>(table.size());
  long long needed = f.fourier_cutoff(n, 1e-12);
  if (k_cut == 0) return needed;
  if (k_cut < needed)
    throw std::invalid_argument("moment_dual: k_cut violates the 1e-12 transform-tail certificate");
  return k_cut;
}

// coefficients a_k = fourier(k/N) T(k), k = 0..K; a_{-k} = conj(a_k)
std::vector<std::complex<double>> dual_coefficients(const SequenceTable& table,
                                                    const TestFunction& f, long long K) {
  auto T = exponential_sums(table, K);
  double n = static_cast<double>(table.size());
  for (long long k = 0; k <= K; ++k) T[k] *= f.fourier(static_cast<double>(k) / n);
  return T;
}

std::complex<double> coeff_at(const std::vector<std::complex<double>>& a, long long k) {
  return k >= 0 ? a[k] : std::conj(a[-k]);
}

} // namespace

double moment_dual(const SequenceTable& table, const TestFunction& f, int m, long long k_cut) {
  if (m < 2) throw std::invalid_argument("moment_dual: m must be >= 2");
  long long K = resolve_kcut(table, f, k_cut);
  auto a = dual_coefficients(table, f, K);
  double n = static_cast<double>(table.size());
  double norm = std::pow(n, m);

  if (m == 2) {
    std::vector<double> terms(K + 1);
    terms[0] = std::norm(a[0]);
    for (long long k = 1; k <= K; ++k) terms[k] = 2.0 * std::norm(a[k]);
    return pairwise_sum(terms) / norm;
  }
  if (m == 3) {
    std::vector<double> rows(2 * K + 1, 0.0);
    parallel_for(static_cast<std::size_t>(2 * K + 1), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t r = lo; r < hi; ++r) {
        long long k1 = static_cast<long long>(r) - K;
        std::complex<double> acc{0.0, 0.0};
        long long lo2 = std::max(-K, -K - k1);
        long long hi2 = std::min(K, K - k1);
        for (long long k2 = lo2; k2 <= hi2; ++k2)
          acc += coeff_at(a, k1) * coeff_at(a, k2) * coeff_at(a, -k1 - k2);
        rows[r] = acc.real();
      }
    });
    return pairwise_sum(rows) / norm;
  }
  throw std::invalid_argument("moment_dual: direct k-lattice sum implemented for m <= 3");
}

double k_j_sum(const SequenceTable& table, const TestFunction& f, int m, int j, long long k_cut) {
  if (j == 1) throw std::invalid_argument("k_j_sum: j = 1 is impossible (the s-integral forces sum k = 0)");
  if (j != 0 && (j < 2 || j > m)) throw std::invalid_argument("k_j_sum: j must be 0 or 2..m");
  double ef = f.moment(1);
  if (j == 0) return std::pow(ef, m);

  long long K = resolve_kcut(table, f, k_cut);
  auto a = dual_coefficients(table, f, K);
  double n = static_cast<double>(table.size());
  double norm = std::pow(n, j);

  double binom = 1.0;
  for (int i = 0; i < m - j; ++i) binom = binom * (m - i) / (i + 1);
  double weight = binom * std::pow(ef, m - j);

  if (j == 2) {
    std::vector<double> terms(K);
    for (long long k = 1; k <= K; ++k) terms[k - 1] = 2.0 * std::norm(a[k]);
    return weight * pairwise_sum(terms) / norm;
  }
  if (j == 3) {
    std::vector<double> rows(2 * K + 1, 0.0);
    parallel_for(static_cast<std::size_t>(2 * K + 1), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t r = lo; r < hi; ++r) {
        long long k1 = static_cast<long long>(r) - K;
        if (k1 == 0) continue;
        std::complex<double> acc{0.0, 0.0};
        long long lo2 = std::max(-K, -K - k1);
        long long hi2 = std::min(K, K - k1);
        for (long long k2 = lo2; k2 <= hi2; ++k2) {
          if (k2 == 0 || k1 + k2 == 0) continue;
          acc += coeff_at(a, k1) * coeff_at(a, k2) * coeff_at(a, -k1 - k2);
        }
        rows[r] = acc.real();
      }
    });
    return weight * pairwise_sum(rows) / norm;
  }
  throw std::invalid_argument("k_j_sum: direct k-lattice sum implemented for j <= 3");
}

double k_j_sum_central(const PointSet& pts, const TestFunction& f, int m, int j,
                       QuadratureGrid grid) {
  if (j == 1) throw std::invalid_argument("k_j_sum_central: j = 1 is impossible");
  if (j != 0 && (j < 2 || j > m)) throw std::invalid_argument("k_j_sum_central: j must be 0 or 2..m");
  double ef = f.moment(1);
  if (j == 0) return std::pow(ef, m);
  double binom = 1.0;
  for (int i = 0; i < m - j; ++i) binom = binom * (m - i) / (i + 1);

  long M = grid.node_count > 0 ? grid.node_count : 0;
  auto central = [&](long nodes) {
    std::vector<double> vals(nodes);
    parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t idx = lo; idx < hi; ++idx) {
        double s = static_cast<double>(idx) / static_cast<double>(nodes);
        double v = s_counting(pts, f, s) - ef;
        double p = v;
        for (int t = 1; t < j; ++t) p *= v;
        vals[idx] = p;
      }
    });
    return pairwise_sum(vals) / static_cast<double>(nodes);
  };
  double integral;
  if (M > 0) {
    integral = central(M);
  } else {
    M = default_grid(pts, f);
    double prev = central(M);
    for (int step = 0; step < 10; ++step) {
      M *= 2;
      double cur = central(M);
      if (std::fabs(cur - prev) < 1e-10) { prev = cur; break; }
      prev = cur;
    }
    integral = prev;
  }
  return binom * std::pow(ef, m - j) * integral;
}

// ----------------------------------------------------------------------
// partition-restricted moments
// ----------------------------------------------------------------------

double m_partition_restricted(const PointSet& pts, const TestFunction& f,
                              const Partition& p, QuadratureGrid grid) {
  if (grid.node_count <= 0)
    throw std::invalid_argument("m_partition_restricted: explicit grid required");
  long M = grid.node_count;
  int d = p.block_count();
  std::vector<int> esize(d);
  for (int b = 0; b < d; ++b) esize[b] = static_cast<int>(p.blocks[b].size());

  // partitions of the block set for the distinct-value inclusion-exclusion
  auto rho = enumerate_partitions(d);
  std::vector<double> mobius(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double mu = 1.0;
    for (const auto& cell : rho[i].blocks) {
      int c = static_cast<int>(cell.size());
      double fact = 1.0;
      for (int t = 2; t < c; ++t) fact *= t;
      mu *= ((c % 2 == 0) ? -1.0 : 1.0) * fact;
    }
    mobius[i] = mu;
  }

  double R = f.support_radius();
  std::int64_t n = pts.size();
  double N = static_cast<double>(n);
  double w = R / N;
  if (w >= 0.499)
    throw std::invalid_argument("m_partition_restricted: support too wide for N");
  const auto& xs = pts.sorted();
  int e_max = p.m;

  std::vector<double> vals(M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> g;
    std::vector<double> power_sum(e_max + 1, 0.0);
    for (std::size_t jn = lo; jn < hi; ++jn) {
      double s = static_cast<double>(jn) / static_cast<double>(M);
      double c = PointSet::wrap(-s);
      if (c < 0.0) c += 1.0;
      std::size_t r[4];
      pts.window(c, w, r);
      g.clear();
      for (std::size_t i = r[0]; i < r[1]; ++i) g.push_back(f(N * PointSet::wrap(xs[i] + s)));
      for (std::size_t i = r[2]; i < r[3]; ++i) g.push_back(f(N * PointSet::wrap(xs[i] + s)));
      for (int e = 1; e <= e_max; ++e) {
        double ps = 0.0;
        for (double gv : g) ps += std::pow(gv, e);
        power_sum[e] = ps;
      }
      // sum over injective block-value assignments
      double total = 0.0;
      for (std::size_t ri = 0; ri < rho.size(); ++ri) {
        double prod = mobius[ri];
        for (const auto& cell : rho[ri].blocks) {
          int e = 0;
          for (int b : cell) e += esize[b];
          prod *= power_sum[e];
        }
        total += prod;
      }
      vals[jn] = total;
    }
  });
  return pairwise_sum(vals) / static_cast<double>(M);
}

double poissonian_target(const TestFunction& f, int m) {
  return poissonian_target_moments([&](int j) { return f.moment(j); }, m);
}

} // namespace corrlab
