#include "corrlab/expsums.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "corrlab/parallel.hpp"

namespace corrlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> unit_phase(double frac) {
  return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

double frac_ks(std::int64_t k, double s) {
  // k*s mod 1 computed in double-double (k and s both exact inputs)
  return dd_frac(dd_mul(DoubleDouble(s), static_cast<double>(k))).value();
}
} // namespace

BlockClass classify_degenerate(double alpha, double theta, int u, int q, int q_cap,
                               double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("classify_degenerate: delta in (0,1/2)");
  double lhs = alpha * theta * std::exp(std::abs(u) + (theta - 1.0) * q);
  if (lhs < 0.1) return BlockClass::degenerate;
  if (static_cast<double>(q) <= delta * q_cap) return BlockClass::degenerate;
  return BlockClass::nondegenerate;
}

std::complex<double> windowed_exponential_sum(const ExpSumContext& ctx, int q, std::int64_t k) {
  const DyadicWindow& w = ctx.nwin->window(q);
  auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(w.support_lo())));
  auto hi = std::min<std::int64_t>(ctx.table->size(),
                                   static_cast<std::int64_t>(std::floor(w.support_hi())));
  std::complex<double> acc{0.0, 0.0};
  if (lo > hi) return acc;
  std::vector<std::complex<double>> terms;
  terms.reserve(hi - lo + 1);
  for (std::int64_t n = lo; n <= hi; ++n) {
    double wn = w(static_cast<double>(n));
    if (wn == 0.0) {
      terms.emplace_back(0.0, 0.0);
      continue;
    }
    terms.push_back(wn * unit_phase(ctx.table->phase(k, n)));
  }
  return pairwise_sum(terms);
}

namespace {

struct KTermCache {
  std::vector<std::int64_t> ks;                  // nonzero k in the u-support
  std::vector<std::complex<double>> weighted;    // K_u(k) fourier(k/N) T_q(k)
};

KTermCache build_k_terms(const ExpSumContext& ctx, int q, int u) {
  KTermCache c;
  double n_scale = static_cast<double>(ctx.n());
  auto ka = static_cast<std::int64_t>(std::ceil(ctx.kwin->support_lo(u)));
  auto kb = static_cast<std::int64_t>(std::floor(ctx.kwin->support_hi(u)));
  for (std::int64_t k = ka; k <= kb; ++k) {
    if (k == 0) continue;
    double wk = ctx.kwin->value(u, static_cast<double>(k));
    if (wk == 0.0) continue;
    double fk = ctx.f->fourier(static_cast<double>(k) / n_scale);
    if (fk == 0.0) continue;
    c.ks.push_back(k);
    c.weighted.push_back(wk * fk * windowed_exponential_sum(ctx, q, k));
  }
  return c;
}

std::complex<double> eval_from_cache(const KTermCache& c, double s, double n_scale) {
  if (c.ks.empty()) return {0.0, 0.0};
  std::vector<std::complex<double>> terms(c.ks.size());
  for (std::size_t i = 0; i < c.ks.size(); ++i)
    terms[i] = c.weighted[i] * unit_phase(frac_ks(c.ks[i], s));
  return pairwise_sum(terms) / n_scale;
}

} // namespace

std::complex<double> e_qu_eval(const ExpSumContext& ctx, int q, int u, double s) {
  if (q < 0 || q >= ctx.nwin->count()) throw std::invalid_argument("e_qu_eval: q out of range");
  auto cache = build_k_terms(ctx, q, u);
  return eval_from_cache(cache, s, static_cast<double>(ctx.n()));
}

double GridEqu::sup_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

void GridEqu::write_csv(const std::string& path) const {
  std::ofstream out(path);
  out << "s,re,im\n";
  for (std::size_t i = 0; i < s_nodes.size(); ++i)
    out << s_nodes[i] << "," << values[i].real() << "," << values[i].imag() << "\n";
}

GridEqu e_qu_grid(const ExpSumContext& ctx, int q, int u, int s_nodes) {
  GridEqu g;
  g.q = q;
  g.u = u;
  g.n = ctx.n();
  g.s_nodes.resize(s_nodes);
  g.values.resize(s_nodes);
  for (int i = 0; i < s_nodes; ++i) g.s_nodes[i] = static_cast<double>(i) / s_nodes;
  auto cache = build_k_terms(ctx, q, u);
  double n_scale = static_cast<double>(ctx.n());
  parallel_for(static_cast<std::size_t>(s_nodes), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) g.values[i] = eval_from_cache(cache, g.s_nodes[i], n_scale);
  });
  return g;
}

KusminLandauReport kusmin_landau_check(const ExpSumContext& ctx, int q, int u, double delta) {
  const auto& spec = ctx.table->spec();
  if (classify_degenerate(spec.alpha, spec.theta, u, q, ctx.nwin->q_cap(), delta) !=
      BlockClass::degenerate)
    throw std::invalid_argument("kusmin_landau_check: pair is not degenerate");
  double lhs = spec.alpha * spec.theta * std::exp(std::abs(u) + (spec.theta - 1.0) * q);
  if (lhs >= 0.1)
    throw std::invalid_argument("kusmin_landau_check: needs the small-derivative condition");

  KusminLandauReport rep;
  rep.q = q;
  rep.u = u;
  double scale = std::exp((spec.theta - 1.0) * q);
  auto ka = static_cast<std::int64_t>(std::ceil(ctx.kwin->support_lo(std::abs(u))));
  auto kb = static_cast<std::int64_t>(std::floor(ctx.kwin->support_hi(std::abs(u))));
  for (std::int64_t k = std::max<std::int64_t>(1, ka); k <= kb; ++k) {
    double t = std::abs(windowed_exponential_sum(ctx, q, k));
    rep.max_ratio = std::max(rep.max_ratio, t * static_cast<double>(k) * scale);
    ++rep.k_checked;
  }
  return rep;
}

std::complex<double> e_qu_direct(const ExpSumContext& ctx, int q, int u, double s) {
  // one naive double loop, long-double accumulators, no shared caches
  const DyadicWindow& w = ctx.nwin->window(q);
  auto nlo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(w.support_lo())));
  auto nhi = std::min<std::int64_t>(ctx.table->size(),
                                    static_cast<std::int64_t>(std::floor(w.support_hi())));
  double n_scale = static_cast<double>(ctx.n());
  auto ka = static_cast<std::int64_t>(std::ceil(ctx.kwin->support_lo(u)));
  auto kb = static_cast<std::int64_t>(std::floor(ctx.kwin->support_hi(u)));
  long double re = 0.0L, im = 0.0L;
  for (std::int64_t k = ka; k <= kb; ++k) {
    if (k == 0) continue;
    double wk = ctx.kwin->value(u, static_cast<double>(k));
    double fk = ctx.f->fourier(static_cast<double>(k) / n_scale);
    if (wk == 0.0 || fk == 0.0) continue;
    for (std::int64_t n = nlo; n <= nhi; ++n) {
      double wn = w(static_cast<double>(n));
      if (wn == 0.0) continue;
      double ph = ctx.table->phase(k, n) + frac_ks(k, s);
      std::complex<double> t = wk * fk * wn * unit_phase(ph);
      re += t.real();
      im += t.imag();
    }
  }
  return {static_cast<double>(re / n_scale), static_cast<double>(im / n_scale)};
}

ReconstructionReport reconstruction_check(const ExpSumContext& ctx, int s_samples) {
  // The (q,u)-decomposition against the factored double sum carrying the
  // same smooth n-coverage but sharp k-weights up to the family edge; the
  // comparison tolerance is the certified transform-tail mass beyond the
  // covered k-range.
  ReconstructionReport rep;
  rep.s_samples = s_samples;
  double n_scale = static_cast<double>(ctx.n());
  auto kb = static_cast<std::int64_t>(std::ceil(2.0 * std::exp(ctx.kwin->u_cap())));
  auto nhi = static_cast<std::int64_t>(
      std::floor(ctx.nwin->window(ctx.nwin->count() - 1).support_hi()));

  // n-coverage weights and their total mass
  std::vector<double> cover_n(static_cast<std::size_t>(nhi) + 1, 0.0);
  double n_mass = 0.0;
  for (std::int64_t n = 1; n <= nhi; ++n) {
    cover_n[n] = ctx.nwin->sum(static_cast<double>(n));
    n_mass += cover_n[n];
  }

  // certificate: k beyond the covered range, where sum_u K_u < 1, carry
  // transform mass at most the envelope tail from the coverage edge on
  double edge = ctx.kwin->coverage_end();
  double tail_sum = std::fabs(ctx.f->fourier(edge / n_scale)) +
                    n_scale * ctx.f->fourier_tail_mass(edge / n_scale);
  rep.certificate = 2.0 * tail_sum * n_mass / n_scale + 1e-10;

  // s-independent weighted sums T(k) = sum_n cover_n(n) e(k y(n))
  std::vector<std::complex<double>> tk(static_cast<std::size_t>(kb) + 1, {0.0, 0.0});
  parallel_for(static_cast<std::size_t>(kb), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ki = lo; ki < hi; ++ki) {
      auto k = static_cast<std::int64_t>(ki + 1);
      std::vector<std::complex<double>> terms;
      terms.reserve(nhi);
      for (std::int64_t n = 1; n <= nhi; ++n) {
        if (cover_n[n] == 0.0) continue;
        terms.push_back(cover_n[n] * unit_phase(ctx.table->phase(k, n)));
      }
      tk[ki + 1] = pairwise_sum(terms);
    }
  });

  // per-(q,u) caches for the family side
  std::vector<KTermCache> caches;
  for (int q = 0; q < ctx.nwin->count(); ++q)
    for (int u = -ctx.kwin->u_cap(); u <= ctx.kwin->u_cap(); ++u)
      caches.push_back(build_k_terms(ctx, q, u));

  for (int si = 0; si < s_samples; ++si) {
    double s = (static_cast<double>(si) + 0.37) / s_samples;
    std::complex<double> fam{0.0, 0.0};
    for (const auto& c : caches) fam += eval_from_cache(c, s, n_scale);
    std::complex<double> direct{0.0, 0.0};
    for (std::int64_t k = 1; k <= kb; ++k) {
      double fk = ctx.f->fourier(static_cast<double>(k) / n_scale);
      if (fk == 0.0) continue;
      std::complex<double> ph = unit_phase(frac_ks(k, s));
      direct += fk * (ph * tk[k] + std::conj(ph * tk[k])); // k and -k
    }
    direct /= n_scale;
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(fam - direct));
  }
  return rep;
}

} // namespace corrlab
