#include "corrlab/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace corrlab {

namespace {

// restricted-growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]);
// lexicographic emission gives blocks already ordered by least element
void rgs_recurse(int i, int m, int used, std::vector<int>& a,
                 std::vector<Partition>& out) {
  if (i == m) {
    Partition p;
    p.m = m;
    p.blocks.assign(used, {});
    for (int j = 0; j < m; ++j) p.blocks[a[j]].push_back(j);
    out.push_back(std::move(p));
    return;
  }
  for (int v = 0; v <= used; ++v) {
    a[i] = v;
    rgs_recurse(i + 1, m, std::max(used, v + 1), a, out);
  }
}

} // namespace

std::vector<Partition> enumerate_partitions(int m) {
  if (m < 1) throw std::invalid_argument("enumerate_partitions: m must be >= 1");
  if (m > 12) throw std::invalid_argument("enumerate_partitions: m capped at 12");
  std::vector<Partition> out;
  std::vector<int> a(m, 0);
  rgs_recurse(1, m, 1, a, out);
  return out;
}

bool is_nonisolating(const Partition& p) {
  for (const auto& b : p.blocks)
    if (b.size() < 2) return false;
  return true;
}

int count_isolated(const Partition& p) {
  int c = 0;
  for (const auto& b : p.blocks)
    if (b.size() == 1) ++c;
  return c;
}

bool chi_distinct(const Partition& p, const std::vector<std::int64_t>& n) {
  if (static_cast<int>(n.size()) != p.m)
    throw std::invalid_argument("chi_distinct: dimension mismatch");
  // constant on blocks with pairwise different block values
  std::vector<std::int64_t> vals;
  vals.reserve(p.blocks.size());
  for (const auto& b : p.blocks) {
    std::int64_t v = n[b[0]];
    for (int idx : b)
      if (n[idx] != v) return false;
    vals.push_back(v);
  }
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      if (vals[i] == vals[j]) return false;
  return true;
}

bool chi_adjusted(const Partition& p, const std::vector<std::int64_t>& r,
                  const std::vector<std::int64_t>& h) {
  if (static_cast<int>(r.size()) != p.m || static_cast<int>(h.size()) != p.m)
    throw std::invalid_argument("chi_adjusted: dimension mismatch");
  for (std::int64_t ri : r)
    if (ri == 0) throw std::invalid_argument("chi_adjusted: r entries must be nonzero");
  for (const auto& b : p.blocks) {
    std::int64_t hv = h[b[0]];
    std::int64_t sum = 0;
    for (int idx : b) {
      if (h[idx] != hv) return false;
      sum += r[idx];
    }
    if (sum != 0) return false;
  }
  return true;
}

double partition_target(const Partition& p, const std::function<double(int)>& moment) {
  double prod = 1.0;
  for (const auto& b : p.blocks) prod *= moment(static_cast<int>(b.size()));
  return prod;
}

double poissonian_target_moments(const std::function<double(int)>& moment, int m) {
  double s = 0.0;
  for (const auto& p : enumerate_partitions(m)) s += partition_target(p, moment);
  return s;
}

std::uint64_t bell_number(int m) {
  if (m < 0 || m > 20) throw std::invalid_argument("bell_number: out of range");
  // Bell triangle
  std::vector<std::vector<std::uint64_t>> tri;
  tri.push_back({1});
  for (int i = 1; i <= m; ++i) {
    std::vector<std::uint64_t> row;
    row.push_back(tri.back().back());
    for (std::uint64_t v : tri.back()) row.push_back(row.back() + v);
    tri.push_back(std::move(row));
  }
  return tri[m][0];
}

} // namespace corrlab
