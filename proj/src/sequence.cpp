#include "corrlab/sequence.hpp"

#include <cmath>

#include "corrlab/parallel.hpp"

namespace corrlab {

namespace {
constexpr double kEps = 2.220446049250313e-16;     // 2^-52
constexpr double kDdEps = 4.93e-32;                // ~2^-104, double-double unit
constexpr double kBoundCeiling = 9.313225746154785e-10; // 2^-30
} // namespace

double eval_y(const SequenceSpec& spec, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("eval_y: n must be >= 1");
  if (spec.policy == PrecisionPolicy::compensated)
    return eval_y_dd(spec, n).value();
  return spec.alpha * std::pow(static_cast<double>(n), spec.theta);
}

DoubleDouble eval_y_dd(const SequenceSpec& spec, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("eval_y_dd: n must be >= 1");
  DoubleDouble nn(static_cast<double>(n));
  DoubleDouble p = dd_pow(nn, DoubleDouble(spec.theta));
  return dd_mul(p, spec.alpha);
}

double eval_x(const SequenceSpec& spec, std::int64_t n) {
  if (spec.policy == PrecisionPolicy::compensated) {
    DoubleDouble f = dd_frac(eval_y_dd(spec, n));
    double v = f.value();
    if (v >= 1.0) v = 0.0; // rounding at the top of the interval
    return v < 0.0 ? 0.0 : v;
  }
  double y = eval_y(spec, n);
  double f = y - std::floor(y);
  return f >= 1.0 ? 0.0 : f;
}

PhaseValue phase_mod1_cached(const DoubleDouble& y, std::int64_t k) {
  DoubleDouble ky = dd_mul(y, static_cast<double>(k));
  double mag = std::fabs(ky.value());
  if (mag >= 9.007199254740992e15) // 2^53: dd_frac loses the integer part
    throw PrecisionError("phase_mod1: |k*y| too large for certified reduction");
  DoubleDouble f = dd_frac(ky);
  double bound = mag * 8.0 * kDdEps + 4.0 * kEps;
  if (bound >= kBoundCeiling)
    throw PrecisionError("phase_mod1: certified bound exceeds 2^-30");
  double v = f.value();
  if (v >= 1.0) v -= 1.0;
  if (v < 0.0) v += 1.0;
  return {v, bound};
}

PhaseValue phase_mod1(const SequenceSpec& spec, std::int64_t k, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("phase_mod1: n must be >= 1");
  if (std::llabs(k) > 1000000000LL)
    throw std::invalid_argument("phase_mod1: |k| must be <= 1e9");
  if (k == 0) return {0.0, 0.0};

  if (spec.policy == PrecisionPolicy::standard) {
    double y = spec.alpha * std::pow(static_cast<double>(n), spec.theta);
    double ky = static_cast<double>(k) * y;
    if (std::fabs(ky) <= spec.auto_switch) {
      // relative error of pow+mul ~ 4 ulp; reduction adds ~2 ulp
      double bound = std::fabs(ky) * 8.0 * kEps;
      if (bound < kBoundCeiling) {
        double f = ky - std::floor(ky);
        if (f >= 1.0) f -= 1.0;
        if (f < 0.0) f += 1.0;
        return {f, bound};
      }
    }
    // fall through to the compensated path
  }
  return phase_mod1_cached(eval_y_dd(spec, n), k);
}

SequenceTable::SequenceTable(const SequenceSpec& spec, std::int64_t n_max) : spec_(spec) {
  if (n_max < 1) throw std::invalid_argument("SequenceTable: n_max must be >= 1");
  y_.resize(n_max);
  x_.resize(n_max);
  parallel_for(static_cast<std::size_t>(n_max), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      y_[i] = eval_y_dd(spec_, static_cast<std::int64_t>(i + 1));
      double v = dd_frac(y_[i]).value();
      if (v >= 1.0) v = 0.0;
      if (v < 0.0) v = 0.0;
      x_[i] = v;
    }
  });
}

double SequenceTable::phase(std::int64_t k, std::int64_t n) const {
  return phase_mod1_cached(y_[n - 1], k).value_mod1;
}

} // namespace corrlab
