#pragma once

// Evaluation of y(n) = alpha * n^theta and of phases k*y(n) mod 1 with a
// certified absolute error bound. Products k*y reach 1e8..1e12 at desk
// scale, where plain doubles would lose the fractional part entirely, so
// large phases route through double-double arithmetic.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "corrlab/compensated.hpp"

namespace corrlab {

enum class PrecisionPolicy { standard, compensated };

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SequenceSpec {
  double alpha = 1.0;
  double theta = 0.5;
  PrecisionPolicy policy = PrecisionPolicy::standard;
  // |k*y| above this forces the compensated path even under standard policy
  double auto_switch = 1099511627776.0; // 2^40

  SequenceSpec() = default;
  SequenceSpec(double a, double t, PrecisionPolicy p = PrecisionPolicy::standard)
      : alpha(a), theta(t), policy(p) {
    if (!(alpha > 0.0)) throw std::invalid_argument("SequenceSpec: alpha must be > 0");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("SequenceSpec: theta must lie in (0,1)");
  }
};

struct PhaseValue {
  double value_mod1 = 0.0;      // in [0,1)
  double abs_error_bound = 0.0; // certified
};

double eval_y(const SequenceSpec& spec, std::int64_t n);
DoubleDouble eval_y_dd(const SequenceSpec& spec, std::int64_t n);

// y(n) mod 1, in [0,1)
double eval_x(const SequenceSpec& spec, std::int64_t n);

// distance to the nearest integer
inline double nearest_int_dist(double x) {
  double f = x - std::floor(x);
  return f <= 0.5 ? f : 1.0 - f;
}

// k*y(n) mod 1 with a certified bound; throws PrecisionError if the bound
// cannot be kept below 2^-30.
PhaseValue phase_mod1(const SequenceSpec& spec, std::int64_t k, std::int64_t n);

// frac(k * y) for a cached y value (double-double), certified small
PhaseValue phase_mod1_cached(const DoubleDouble& y, std::int64_t k);

// Precomputed table of y(n), x(n) for n = 1..N: the workhorse behind the
// correlation sums and the exponential-sum grids.
class SequenceTable {
public:
  SequenceTable(const SequenceSpec& spec, std::int64_t n_max);

  const SequenceSpec& spec() const { return spec_; }
  std::int64_t size() const { return static_cast<std::int64_t>(x_.size()); }
  double x(std::int64_t n) const { return x_[n - 1]; }            // n is 1-based
  const DoubleDouble& y_dd(std::int64_t n) const { return y_[n - 1]; }
  const std::vector<double>& fractional_parts() const { return x_; }

  // k*y(n) mod 1 via the cached compensated value
  double phase(std::int64_t k, std::int64_t n) const;

private:
  SequenceSpec spec_;
  std::vector<DoubleDouble> y_;
  std::vector<double> x_;
};

} // namespace corrlab
