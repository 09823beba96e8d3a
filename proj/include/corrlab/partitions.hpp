#pragma once

// Set partitions of {0,...,m-1}: enumeration in canonical order, isolation
// classification, the distinctness/adjustedness indicators, and the
// partition-indexed moment targets.

#include <cstdint>
#include <functional>
#include <vector>

namespace corrlab {

struct Partition {
  int m = 0;
  std::vector<std::vector<int>> blocks; // disjoint, nonempty, cover {0..m-1},
                                        // sorted by least element

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool operator==(const Partition&) const = default;
};

// All set partitions of {0..m-1}; blocks canonically ordered by least
// element, sequence ordered by restricted-growth string. m <= 12.
std::vector<Partition> enumerate_partitions(int m);

// no singleton block
bool is_nonisolating(const Partition& p);

int count_isolated(const Partition& p);

// 1 iff n_i == n_j exactly when i and j share a block
bool chi_distinct(const Partition& p, const std::vector<std::int64_t>& n);

// 1 iff h is constant on each block and the signed r-sum of each block is 0
bool chi_adjusted(const Partition& p, const std::vector<std::int64_t>& r,
                  const std::vector<std::int64_t>& h);

// product over blocks of E(f^{|block|}), with moments supplied as a callable
double partition_target(const Partition& p, const std::function<double(int)>& moment);

// sum over all partitions of [m] of the block-moment products
double poissonian_target_moments(const std::function<double(int)>& moment, int m);

std::uint64_t bell_number(int m);

} // namespace corrlab
