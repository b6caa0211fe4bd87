#pragma once

// Cauchy-Leray transform in C^2:
//   C(f)(z) = integral_{bD} f(w) Delta(w, z)^-2 d mu(w),
// evaluated from a precomputed list of weighted boundary samples.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leray/boundary.hpp"
#include "leray/geometry.hpp"
#include "leray/measures.hpp"
#include "leray/parallel.hpp"
#include "leray/quadrature.hpp"
#include "leray/types.hpp"

namespace leray {

inline constexpr double kSingularDelta = 1e-12;

/// Holomorphic test polynomials used for the reproducing property.
enum class HoloPoly { One, Z1, Z2, Z1Z2, Z1Sq };

inline std::string to_string(HoloPoly p) {
  switch (p) {
    case HoloPoly::One: return "1";
    case HoloPoly::Z1: return "z1";
    case HoloPoly::Z2: return "z2";
    case HoloPoly::Z1Z2: return "z1*z2";
    case HoloPoly::Z1Sq: return "z1^2";
  }
  return "?";
}

inline cplx eval(HoloPoly p, const CPoint2& z) {
  switch (p) {
    case HoloPoly::One: return 1.0;
    case HoloPoly::Z1: return z.z1;
    case HoloPoly::Z2: return z.z2;
    case HoloPoly::Z1Z2: return z.z1 * z.z2;
    case HoloPoly::Z1Sq: return z.z1 * z.z1;
  }
  return 0.0;
}

/// Boundary datum f: an indicator of a chart region, the trace of a holomorphic
/// polynomial (whole boundary), or a custom function on a chart region.
class BoundaryFunction {
 public:
  using Fn = std::function<cplx(const ChartPoint&, const CPoint2&)>;

  static BoundaryFunction indicator(const ParamBox& box) { return indicator(box.cells()); }
  static BoundaryFunction indicator(Region r) {
    return BoundaryFunction(std::move(r), [](const ChartPoint&, const CPoint2&) { return cplx{1.0}; });
  }
  static BoundaryFunction holomorphic(HoloPoly p) {
    BoundaryFunction f(std::nullopt, [p](const ChartPoint&, const CPoint2& w) { return eval(p, w); });
    f.poly_ = p;
    return f;
  }
  static BoundaryFunction custom(Region support, Fn fn) { return BoundaryFunction(std::move(support), std::move(fn)); }

  /// Chart region carrying the support; empty optional means the whole boundary.
  const std::optional<Region>& support() const { return support_; }
  std::optional<HoloPoly> poly() const { return poly_; }
  cplx operator()(const ChartPoint& t, const CPoint2& w) const { return fn_(t, w); }

 private:
  BoundaryFunction(std::optional<Region> r, Fn fn) : support_(std::move(r)), fn_(std::move(fn)) {}

  std::optional<Region> support_;
  Fn fn_;
  std::optional<HoloPoly> poly_;
};

/// w, d rho(w) of the kernel's defining function, and f(w) * d mu(w) * quadrature weight.
struct KernelSample {
  CPoint2 w;
  CVector2 grad;
  cplx weight;
};

using KernelSamples = std::vector<KernelSample>;

struct TransformValue {
  cplx value{};
  double min_abs_delta = std::numeric_limits<double>::infinity();
};

/// Sum of weight / Delta(w, z)^2. Throws SingularityError when some |Delta| falls below `tol`.
inline TransformValue evaluate(const KernelSamples& samples, const CPoint2& z, double tol = kSingularDelta) {
  TransformValue out;
  double min_d = std::numeric_limits<double>::infinity();
  out.value = pairwise_sum<cplx>(0, samples.size(), [&](std::size_t i) {
    const auto& s = samples[i];
    const cplx d = pair(s.grad, s.w - z);
    min_d = std::min(min_d, std::abs(d));
    return s.weight / (d * d);
  });
  out.min_abs_delta = min_d;
  if (!(min_d >= tol))
    throw SingularityError("Cauchy-Leray kernel within " + std::to_string(min_d) + " of its singular set");
  return out;
}

/// Samples of f d mu over a chart region; the kernel uses the chart's own defining function.
inline KernelSamples chart_samples(const Chart& chart, const Region& region, const BoundaryFunction& f,
                                   const MeasureKind& kind, const RuleOptions& opt) {
  const auto nodes = region_nodes(region, opt);
  KernelSamples out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) {
    const CPoint2 w = chart.embed(n.t);
    const cplx fv = f(n.t, w);
    if (fv == cplx{}) continue;
    out.push_back({w, holo_gradient(chart.spec(), w), fv * n.w * density(chart, n.t, kind)});
  }
  return out;
}

/// Resolution of the global rule on the bounded quartic boundary.
struct PolarRule {
  int psi = 40;
  int phi = 40;
  int theta = 48;
};

/// Leray-Levi samples of f over the whole boundary of |z2 - i|^2 + x1^2 + y1^4 < 1:
/// Gauss in psi, phi and the periodic trapezoid rule in theta.
inline KernelSamples polar_samples(const BoundaryFunction& f, const PolarRule& rule = {}) {
  const PolarChart pc;
  const AxisRule ax = gauss_axis({-pi / 2, pi / 2}, rule.psi);
  const AxisRule ay = gauss_axis({-pi / 2, pi / 2}, rule.phi);
  KernelSamples out;
  out.reserve(ax.x.size() * ay.x.size() * rule.theta);
  const double wt = 2.0 * pi / rule.theta;
  for (std::size_t i = 0; i < ax.x.size(); ++i)
    for (std::size_t j = 0; j < ay.x.size(); ++j)
      for (int k = 0; k < rule.theta; ++k) {
        const std::array<double, 3> p{ax.x[i], ay.x[j], wt * k};
        const CPoint2 w = pc.embed(p);
        const double dens = leray_levi_from_frame(pc.spec(), w, pc.frame(p));
        const cplx fv = f(ChartPoint{w.z1.real(), w.z1.imag(), w.z2.real()}, w);
        out.push_back({w, holo_gradient(pc.spec(), w), fv * dens * ax.w[i] * ay.w[j] * wt});
      }
  return out;
}

/// Chart coordinates of a point of C^2 (x1, y1, x2).
inline ChartPoint chart_coords(const CPoint2& z) { return {z.z1.real(), z.z1.imag(), z.z2.real()}; }

/// Graph chart used for a family's local computations.
inline Chart local_chart(const DomainSpec& spec) {
  return Chart(spec, is_bounded(spec.family) ? ChartSide::Lower : ChartSide::Model);
}

/// C(f)(z) for one evaluation point. Transported measure kinds give the conjugated operator C_eps.
inline TransformValue cauchy_leray(const DomainSpec& spec, const BoundaryFunction& f, const CPoint2& z,
                                   const MeasureKind& kind, const RuleOptions& opt, const PolarRule& polar = {}) {
  if (!f.support()) {
    if (spec.family != Family::BoundedQuad || kind.kind != MeasureKind::Kind::LerayLevi)
      throw std::invalid_argument("whole-boundary data is supported on bounded-quad with the Leray-Levi measure");
    if (!(rho(spec, z) < 0.0)) throw std::invalid_argument("whole-boundary data needs an interior evaluation point");
    return evaluate(polar_samples(f, polar), z);
  }
  if (f.support()->empty()) return {};
  const Chart chart = local_chart(spec);
  if (std::abs(rho(spec, z)) < 1e-9 && region_contains(*f.support(), chart_coords(z)))
    throw std::invalid_argument("evaluation point lies on the support of f");
  return evaluate(chart_samples(chart, *f.support(), f, kind, opt), z);
}

/// (integral_region |g|^p d mu)^(1/p).
template <class G>
double lp_norm(const G& g, const Region& region, double p, const Chart& chart, const MeasureKind& kind,
               const RuleOptions& opt) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("L^p norm needs 1 <= p < infinity");
  const Integral i = integrate_box(
      region, [&](const ChartPoint& t) { return std::pow(std::abs(cplx(g(t))), p) * density(chart, t, kind); }, opt);
  return std::pow(i.value.real(), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Blow-up ratio R_p = ||C(chi_S)||_{L^p(S', mu)} / ||chi_S||_{L^p(mu)}

struct BlowupConfig {
  int inner_order = 16;
  int outer_order = 8;
  int levels = 12;
  int threads = 1;
};

struct BlowupResult {
  std::vector<double> p;
  std::vector<double> ratio;
  std::vector<double> num;       // ||C chi_S||_{L^p(S')}
  std::vector<double> den;       // ||chi_S||_{L^p}
  std::vector<double> err_est;   // |R - R_coarse|
  double min_re = 0.0;           // min Re C(chi_S) over outer nodes
  double max_abs = 0.0;          // max |C(chi_S)| over outer nodes
  double min_abs_delta = 0.0;
  std::size_t kernel_evals = 0;
};

namespace detail {

struct OuterValues {
  std::vector<double> w;  // quadrature weight times norm density
  std::vector<cplx> c;
  double min_abs_delta = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;
};

inline OuterValues outer_values(const Chart& chart, const Region& inner, const Region& outer,
                                const MeasureKind& norm_kind, const BlowupConfig& cfg, int inner_order,
                                int outer_order) {
  const auto f = BoundaryFunction::indicator(inner);
  const auto samples =
      chart_samples(chart, inner, f, MeasureKind::leray_levi(), measure_rule(chart.spec(), MeasureKind::leray_levi(),
                                                                              inner_order, cfg.levels));
  RuleOptions oo;
  oo.order = {outer_order, outer_order, outer_order};
  const auto nodes = region_nodes(outer, oo);
  OuterValues out;
  out.w.resize(nodes.size());
  out.c.resize(nodes.size());
  std::vector<double> mins(nodes.size());
  parallel_for(nodes.size(), cfg.threads, [&](std::size_t i) {
    const auto v = evaluate(samples, chart.embed(nodes[i].t));
    out.c[i] = v.value;
    mins[i] = v.min_abs_delta;
    out.w[i] = nodes[i].w * density(chart, nodes[i].t, norm_kind);
  });
  for (double m : mins) out.min_abs_delta = std::min(out.min_abs_delta, m);
  out.evals = samples.size() * nodes.size();
  return out;
}

inline double outer_norm(const OuterValues& o, double p) {
  const double s = pairwise_sum<double>(0, o.c.size(), [&](std::size_t i) { return o.w[i] * std::pow(std::abs(o.c[i]), p); });
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

/// Ratio for a kernel chart, inner support region, outer evaluation region and norm measure.
inline BlowupResult blowup_ratio(const Chart& chart, const Region& inner, const Region& outer,
                                 const MeasureKind& norm_kind, const std::vector<double>& ps,
                                 const BlowupConfig& cfg = {}) {
  for (double p : ps)
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("blow-up ratio needs 1 <= p < infinity");
  const auto fine = detail::outer_values(chart, inner, outer, norm_kind, cfg, cfg.inner_order, cfg.outer_order);
  const auto coarse = detail::outer_values(chart, inner, outer, norm_kind, cfg, std::max(2, cfg.inner_order - 4),
                                           std::max(2, cfg.outer_order - 2));
  const double mu_s = box_measure(inner, chart, norm_kind, measure_rule(chart.spec(), norm_kind, cfg.inner_order, cfg.levels))
                          .value.real();
  BlowupResult r;
  r.min_re = std::numeric_limits<double>::infinity();
  for (const auto& c : fine.c) {
    r.min_re = std::min(r.min_re, c.real());
    r.max_abs = std::max(r.max_abs, std::abs(c));
  }
  r.min_abs_delta = fine.min_abs_delta;
  r.kernel_evals = fine.evals + coarse.evals;
  for (double p : ps) {
    const double num = detail::outer_norm(fine, p);
    const double den = std::pow(mu_s, 1.0 / p);
    r.p.push_back(p);
    r.num.push_back(num);
    r.den.push_back(den);
    r.ratio.push_back(num / den);
    r.err_est.push_back(std::abs(num / den - detail::outer_norm(coarse, p) / den));
  }
  return r;
}

/// Norm measure for the exponent a of the mu_a family (a = 0 is sigma).
inline MeasureKind norm_measure(double a_measure) {
  return a_measure == 0.0 ? MeasureKind::sigma() : MeasureKind::mu(a_measure);
}

/// Model-domain ratio R_p(delta) for the boxes S, S'.
inline BlowupResult blowup_ratio(const DomainSpec& model, double delta, const std::vector<double>& ps,
                                 double a_measure, const BlowupConfig& cfg = {}, double box_a = 1.0 / 12.0) {
  if (!is_model(model.family)) throw std::invalid_argument("blowup_ratio: model family expected");
  const auto fam = is_power(model.family) ? BoxFamily::Power : BoxFamily::Quad;
  const auto [s, sp] = make_boxes(fam, delta, box_a, model.m);
  return blowup_ratio(Chart(model, ChartSide::Model), s.cells(), sp.cells(), norm_measure(a_measure), ps, cfg);
}

}  // namespace leray
