#pragma once

// Double-double arithmetic (Dekker/Shewchuk error-free transforms).
// Gives ~31 significant digits; used wherever a phase k*alpha*n^theta
// has to be reduced mod 1 without losing the fractional part.

#include <cmath>
#include <cstdint>
#include <limits>

namespace corrlab {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double v = s - a;
  return {s, (a - (s - v)) + (b - v)};
}

inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline DoubleDouble dd_add(const DoubleDouble& a, const DoubleDouble& b) {
  using namespace dd_detail;
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  double lo = s.lo + t.hi;
  DoubleDouble r = quick_two_sum(s.hi, lo);
  lo = r.lo + t.lo;
  return quick_two_sum(r.hi, lo);
}

inline DoubleDouble dd_neg(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble dd_sub(const DoubleDouble& a, const DoubleDouble& b) {
  return dd_add(a, dd_neg(b));
}

inline DoubleDouble dd_mul(const DoubleDouble& a, const DoubleDouble& b) {
  using namespace dd_detail;
  DoubleDouble p = two_prod(a.hi, b.hi);
  double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, lo);
}

inline DoubleDouble dd_mul(const DoubleDouble& a, double b) {
  using namespace dd_detail;
  DoubleDouble p = two_prod(a.hi, b);
  double lo = p.lo + a.lo * b;
  return quick_two_sum(p.hi, lo);
}

inline DoubleDouble dd_div(const DoubleDouble& a, const DoubleDouble& b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  DoubleDouble r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  DoubleDouble q = two_sum(q1, q2);
  return dd_add(q, DoubleDouble(q3));
}

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) { return dd_add(a, b); }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return dd_sub(a, b); }
inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) { return dd_mul(a, b); }
inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) { return dd_div(a, b); }

// 2*pi and ln(2) to double-double precision.
inline constexpr DoubleDouble dd_ln2{6.93147180559945286e-01, 2.31904681384629956e-17};

// exp(x) for |x| up to ~700; Taylor after ln2 reduction.
inline DoubleDouble dd_exp(const DoubleDouble& x) {
  if (x.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
  if (x.hi < -709.0) return {0.0, 0.0};
  double m = std::nearbyint(x.hi / dd_ln2.hi);
  DoubleDouble r = dd_sub(x, dd_mul(dd_ln2, m));
  // |r| <= ln2/2; 26 Taylor terms reach ~1e-35
  DoubleDouble sum(1.0);
  DoubleDouble term(1.0);
  for (int k = 1; k <= 26; ++k) {
    term = dd_div(dd_mul(term, r), DoubleDouble(static_cast<double>(k)));
    sum = dd_add(sum, term);
    if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
  }
  double scale = std::ldexp(1.0, static_cast<int>(m));
  return {sum.hi * scale, sum.lo * scale};
}

// log(x), x > 0: one Newton step on top of the double-precision log.
inline DoubleDouble dd_log(const DoubleDouble& x) {
  double y0 = std::log(x.hi);
  DoubleDouble y(y0);
  for (int it = 0; it < 2; ++it) {
    // y <- y + x*exp(-y) - 1
    DoubleDouble e = dd_exp(dd_neg(y));
    y = dd_add(y, dd_sub(dd_mul(x, e), DoubleDouble(1.0)));
  }
  return y;
}

// x^p for x > 0 via exp(p*log(x)).
inline DoubleDouble dd_pow(const DoubleDouble& x, const DoubleDouble& p) {
  return dd_exp(dd_mul(dd_log(x), p));
}

// Fractional part in [0,1). Valid while the integer part fits in a double
// exactly (|x| < 2^53), which certifies the result to ~|x|*2^-106.
inline DoubleDouble dd_frac(const DoubleDouble& x) {
  double ip = std::floor(x.hi);
  DoubleDouble f = dd_add(DoubleDouble(x.hi - ip), DoubleDouble(x.lo));
  while (f.hi < 0.0) f = dd_add(f, DoubleDouble(1.0));
  while (f.hi >= 1.0) f = dd_sub(f, DoubleDouble(1.0));
  return f;
}

} // namespace corrlab
