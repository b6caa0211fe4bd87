#pragma once

// Pointwise kernel bounds on S x S', the convexity inequality on the bounded domains,
// the C-linear convexity failure of the model domain, and box-measure asymptotics.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leray/boundary.hpp"
#include "leray/experiments/blowup.hpp"
#include "leray/experiments/fit.hpp"
#include "leray/geometry.hpp"
#include "leray/measures.hpp"
#include "leray/random.hpp"
#include "leray/report.hpp"

namespace leray {

// ---------------------------------------------------------------------------
// Kernel bounds

struct BoundConfig {
  BoxFamily family = BoxFamily::Quad;
  double m = 1.5;
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  double box_a = 1.0 / 12.0;
  // boxes for the pointwise Re(Delta^-2) > 0 test on the power family; the
  // constant has to be smaller there than for the Re / Im bounds
  double positivity_a = 1.0 / 48.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
};

inline constexpr double kBoundSlack = 1e-12;

/// Extremes of Delta_0 over (w, z) in S x S', scaled by delta^-kappa.
struct BoundStats {
  double min_re = std::numeric_limits<double>::infinity();
  double max_abs_im = 0.0;
  double min_re_inv2 = std::numeric_limits<double>::infinity();  // min Re(Delta^-2) delta^(2 kappa)
  double min_sector = std::numeric_limits<double>::infinity();   // min (Re^2 - 2 Im^2) delta^(-2 kappa)
  std::size_t nonpositive = 0;                                   // samples with Re(Delta^-2) <= 0
  std::size_t count = 0;
};

namespace detail {

inline ChartPoint sample_cell(const Cell3& c, Rng& rng) {
  return {rng.uniform(c.axis[0].lo, c.axis[0].hi), rng.uniform(c.axis[1].lo, c.axis[1].hi),
          rng.uniform(c.axis[2].lo, c.axis[2].hi)};
}

inline ChartPoint sample_region(const Region& r, Rng& rng) {
  double total = 0.0;
  for (const auto& c : r) total += c.volume();
  double u = rng.uniform() * total;
  for (const auto& c : r) {
    if (u <= c.volume()) return sample_cell(c, rng);
    u -= c.volume();
  }
  return sample_cell(r.back(), rng);
}

inline std::vector<ChartPoint> corners(const Region& r) {
  std::vector<ChartPoint> out;
  for (const auto& c : r)
    for (int mask = 0; mask < 8; ++mask)
      out.push_back({(mask & 1) ? c.axis[0].hi : c.axis[0].lo, (mask & 2) ? c.axis[1].hi : c.axis[1].lo,
                     (mask & 4) ? c.axis[2].hi : c.axis[2].lo});
  return out;
}

}  // namespace detail

inline BoundStats bound_stats(BoxFamily family, double delta, double a, double m, std::size_t samples,
                              std::uint64_t seed) {
  const bool power = family == BoxFamily::Power;
  const auto [s, sp] = make_boxes(family, delta, a, power ? std::optional<double>(m) : std::nullopt);
  const DomainSpec spec = power ? DomainSpec::model_power(m) : DomainSpec::model_quad();
  const Chart chart(spec, ChartSide::Model);
  const double scale = std::pow(delta, spec.exponent());
  BoundStats st;
  auto visit = [&](const ChartPoint& wt, const ChartPoint& zt) {
    const cplx d = leray::delta(spec, chart.embed(wt), chart.embed(zt)) / scale;
    st.min_re = std::min(st.min_re, d.real());
    st.max_abs_im = std::max(st.max_abs_im, std::abs(d.imag()));
    const double inv2 = (1.0 / (d * d)).real();
    st.min_re_inv2 = std::min(st.min_re_inv2, inv2);
    st.min_sector = std::min(st.min_sector, d.real() * d.real() - 2.0 * d.imag() * d.imag());
    if (!(inv2 > 0.0)) ++st.nonpositive;
    ++st.count;
  };
  Rng rng(seed);
  const Region sc = s.cells(), spc = sp.cells();
  for (std::size_t i = 0; i < samples; ++i) {
    const ChartPoint wt = detail::sample_region(sc, rng);
    visit(wt, detail::sample_region(spc, rng));
  }
  for (const auto& wt : detail::corners(sc))
    for (const auto& zt : detail::corners(spc)) visit(wt, zt);
  return st;
}

/// Bound thresholds after scaling by delta^-kappa.
struct BoundTargets {
  double min_re;
  double max_im;
};

inline BoundTargets bound_targets(BoxFamily family, double a, double m) {
  if (family == BoxFamily::Quad) return {0.25, 3.0 * a};
  return {0.4, m * std::pow(a, m - 1.0) + 2.0 * a};
}

inline ExperimentReport bound_check(const BoundConfig& cfg) {
  require_decreasing(cfg.deltas, 1, "delta list");
  const bool power = cfg.family == BoxFamily::Power;
  if (power && !(cfg.m > 1.0 && cfg.m < 2.0)) throw std::invalid_argument("power family needs m in (1, 2)");
  const BoundTargets tg = bound_targets(cfg.family, cfg.box_a, cfg.m);
  const double pos_a = power ? cfg.positivity_a : cfg.box_a;

  ExperimentReport rep;
  rep.id = "kernel-bounds";
  rep.params = Json{{"family", to_string(cfg.family)}};
  if (power) rep.params["m"] = cfg.m;
  rep.params["deltas"] = cfg.deltas;
  rep.params["box_a"] = cfg.box_a;
  if (power) rep.params["positivity_a"] = cfg.positivity_a;
  rep.params["samples"] = cfg.samples;
  rep.params["seed"] = cfg.seed;
  rep.columns = {"delta", "min_re_scaled", "max_abs_im_scaled", "min_re_inv2_scaled", "min_sector_scaled",
                 "nonpositive_count", "pairs"};

  double worst_re = std::numeric_limits<double>::infinity(), worst_im = 0.0, worst_sector = worst_re;
  std::size_t nonpositive = 0;
  std::vector<double> inv2;
  for (std::size_t k = 0; k < cfg.deltas.size(); ++k) {
    const double delta = cfg.deltas[k];
    const BoundStats st = bound_stats(cfg.family, delta, cfg.box_a, cfg.m, cfg.samples, cfg.seed + k);
    const BoundStats pos =
        power ? bound_stats(cfg.family, delta, pos_a, cfg.m, cfg.samples, cfg.seed + 1000 + k) : st;
    Json row;
    row["delta"] = delta;
    row["min_re_scaled"] = st.min_re;
    row["max_abs_im_scaled"] = st.max_abs_im;
    row["min_re_inv2_scaled"] = pos.min_re_inv2;
    row["min_sector_scaled"] = pos.min_sector;
    row["nonpositive_count"] = pos.nonpositive;
    row["pairs"] = st.count;
    if (power) {
      row["min_re_inv2_scaled_box_a"] = st.min_re_inv2;
      row["nonpositive_count_box_a"] = st.nonpositive;
    }
    rep.rows.push_back(row);
    worst_re = std::min(worst_re, st.min_re);
    worst_im = std::max(worst_im, st.max_abs_im);
    worst_sector = std::min(worst_sector, pos.min_sector);
    nonpositive += pos.nonpositive;
    inv2.push_back(pos.min_re_inv2);
  }
  double mean = 0.0;
  for (double v : inv2) mean += v;
  mean /= static_cast<double>(inv2.size());
  double spread = 0.0;
  for (double v : inv2) spread = std::max(spread, std::abs(v / mean - 1.0));

  rep.summary["min_re_target"] = tg.min_re;
  rep.summary["max_im_target"] = tg.max_im;
  rep.checks.push_back(check_at_least("min Re Delta delta^-kappa", worst_re, tg.min_re, kBoundSlack * tg.min_re));
  rep.checks.push_back(check_at_most("max |Im Delta| delta^-kappa", worst_im, tg.max_im, kBoundSlack * tg.max_im));
  rep.checks.push_back(check_at_most("samples with Re(Delta^-2) <= 0", static_cast<double>(nonpositive), 0.0));
  if (!power) rep.checks.push_back(check_at_least("min (Re Delta)^2 - 2 (Im Delta)^2", worst_sector, 0.0));
  rep.checks.push_back(check_at_most("spread of min Re(Delta^-2) delta^(2 kappa) across delta", spread, 0.0, 0.25));
  return rep;
}

// ---------------------------------------------------------------------------
// Convexity on the bounded domains

struct ConvexityConfig {
  double m = 1.5;
  std::size_t samples = 1000000;
  std::uint64_t seed = 7;
};

inline constexpr double kConvexitySlack = 1e-12;

/// Boundary point of {|z2 - i|^2 + T0(x1) + T1(y1) < 1}: (x1, y1) by rejection from
/// the base region, then z2 = i + r e^{i theta} with r^2 = 1 - T0 - T1.
inline CPoint2 sample_bounded_boundary(const DomainSpec& spec, Rng& rng) {
  const auto t = detail::terms(spec);
  for (;;) {
    const double x1 = rng.uniform(-1.0, 1.0), y1 = rng.uniform(-1.0, 1.0);
    const double b = t[0].value(x1) + t[1].value(y1);
    const double theta = rng.uniform(0.0, 2.0 * pi);
    if (b >= 1.0) continue;
    const double r = std::sqrt(1.0 - b);
    return {{x1, y1}, cplx{0.0, 1.0} + r * cplx{std::cos(theta), std::sin(theta)}};
  }
}

/// (grad rho(w), w - z)_R for the bounded quartic domain; equals 2 Re Delta(w, z).
inline double real_pairing(const DomainSpec& spec, const CPoint2& w, const CPoint2& z) {
  const auto g = real_gradient(spec, w);
  const auto a = to_real(w), b = to_real(z);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += g[k] * (a[k] - b[k]);
  return s;
}

/// Quadratic lower bound for the bounded quartic domain with quartic coefficient c:
/// (x1-u1)^2 + (x2-u2)^2 + (y2-v2)^2 + c (v1^2 + y1^2)(v1-y1)^2.
inline double convexity_rhs(const CPoint2& w, const CPoint2& z, double c = 1.0) {
  const auto a = to_real(w), b = to_real(z);
  const double d0 = b[0] - a[0], d2 = b[2] - a[2], d3 = b[3] - a[3], d1 = a[1] - b[1];
  return d0 * d0 + d2 * d2 + d3 * d3 + c * (a[1] * a[1] + b[1] * b[1]) * d1 * d1;
}

inline double convexity_slack(const CPoint2& w, const CPoint2& z, double c = 1.0) {
  return real_pairing(DomainSpec::bounded_quad(), w, z) - convexity_rhs(w, z, c);
}

/// Best constant for y^4 - v^4 - 4 v^3 (y - v) >= c (v^2 + y^2)(y - v)^2.
inline const double kQuarticConstant = 2.0 - std::sqrt(2.0);

inline ExperimentReport convexity_report(const DomainSpec& spec, const ConvexityConfig& cfg) {
  if (!is_bounded(spec.family)) throw std::invalid_argument("convexity_report needs a bounded family");
  spec.validate();
  const bool quad = spec.family == Family::BoundedQuad;
  ExperimentReport rep;
  rep.id = std::string("convexity-") + to_string(spec.family);
  rep.params = Json{{"family", to_string(spec.family)}};
  if (!quad) rep.params["m"] = *spec.m;
  rep.params["samples"] = cfg.samples;
  rep.params["seed"] = cfg.seed;

  Rng rng(cfg.seed);
  double min_pair = std::numeric_limits<double>::infinity();
  double min_printed = min_pair, min_sharp = min_pair;
  std::size_t nonpositive = 0;
  CPoint2 worst_w{}, worst_z{};
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const CPoint2 w = sample_bounded_boundary(spec, rng);
    const CPoint2 z = sample_bounded_boundary(spec, rng);
    const double two_re = 2.0 * delta(spec, w, z).real();
    min_pair = std::min(min_pair, two_re);
    if (!(two_re > 0.0) && std::abs(w.z1 - z.z1) + std::abs(w.z2 - z.z2) > 0.0) ++nonpositive;
    if (quad) {
      const double sp = convexity_slack(w, z);
      if (sp < min_printed) {
        min_printed = sp;
        worst_w = w;
        worst_z = z;
      }
      min_sharp = std::min(min_sharp, convexity_slack(w, z, kQuarticConstant));
    }
  }
  rep.summary["min_two_re_delta"] = min_pair;
  rep.summary["nonpositive_pairs"] = nonpositive;
  if (quad) {
    const CPoint2 w1{{1.0, 0.0}, {0.0, 1.0}}, z1{{0.0, 0.0}, {0.0, 1.0}};
    rep.summary["slack_w_equals_z"] = convexity_slack(w1, w1);
    rep.summary["slack_axis_example"] = convexity_slack(w1, z1);
    rep.summary["min_slack"] = min_printed;
    rep.summary["min_slack_sharp_constant"] = min_sharp;
    rep.summary["sharp_constant"] = kQuarticConstant;
    rep.summary["worst_pair"] = Json{{"w", {worst_w.z1.real(), worst_w.z1.imag(), worst_w.z2.real(), worst_w.z2.imag()}},
                                     {"z", {worst_z.z1.real(), worst_z.z1.imag(), worst_z.z2.real(), worst_z.z2.imag()}}};
    rep.checks.push_back(check_within("slack at w = z", convexity_slack(w1, w1), 0.0, 1e-15));
    rep.checks.push_back(check_within("slack at w = (1, i), z = (0, i)", convexity_slack(w1, z1), 1.0, 1e-15));
    rep.checks.push_back(check_at_least("min slack, quartic coefficient 1", min_printed, -kConvexitySlack));
    rep.checks.push_back(
        check_at_least("min slack, quartic coefficient 2 - sqrt 2", min_sharp, -kConvexitySlack));
  }
  rep.checks.push_back(check_at_least("min 2 Re Delta over pairs", min_pair, -kConvexitySlack));
  rep.checks.push_back(check_at_most("pairs w != z with Re Delta <= 0", static_cast<double>(nonpositive), 0.0));
  return rep;
}

// ---------------------------------------------------------------------------
// C-linear convexity failure

inline ExperimentReport clinear_failure_demo(const std::vector<double>& ts) {
  if (ts.empty()) throw std::invalid_argument("clinear_failure_demo needs at least one t");
  ExperimentReport rep;
  rep.id = "clinear-failure";
  rep.params = Json{{"t", ts}};
  rep.columns = {"t", "abs_w", "abs_delta", "ratio", "comparison_ratio"};
  const DomainSpec model = DomainSpec::model_quad();
  bool zeros = true, positive = true;
  for (double t : ts) {
    if (t == 0.0) throw std::invalid_argument("clinear_failure_demo needs nonzero t");
    const CPoint2 w = lift_model(model, {0.0, t, 0.0});
    const CPoint2 origin{};
    const cplx d = delta(model, w, origin);
    const double n2 = std::norm(w.z1) + std::norm(w.z2);
    // comparison domain |z1|^2 - 2 y2 < 0: d rho = (conj z1, i), boundary point (it, i t^2 / 2)
    const CPoint2 wc{{0.0, t}, {0.0, 0.5 * t * t}};
    const cplx dc = pair(CVector2{std::conj(wc.z1), cplx{0.0, 1.0}}, wc - origin);
    const double nc = std::norm(wc.z1) + std::norm(wc.z2);
    Json row;
    row["t"] = t;
    row["abs_w"] = std::sqrt(n2);
    row["abs_delta"] = std::abs(d);
    row["ratio"] = std::abs(d) / n2;
    row["comparison_ratio"] = std::abs(dc) / nc;
    rep.rows.push_back(row);
    zeros = zeros && std::abs(d) == 0.0 && n2 > 0.0;
    positive = positive && std::abs(dc) / nc > 0.0;
  }
  rep.checks.push_back(check_true("Delta_0(w_t, 0) is exactly zero with w_t != 0", zeros));
  rep.checks.push_back(check_true("comparison domain ratio is positive", positive));
  return rep;
}

// ---------------------------------------------------------------------------
// Box-measure asymptotics

struct MeasureAsymptoticsConfig {
  BoxFamily family = BoxFamily::Quad;
  double m = 1.5;
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  double box_a = 1.0 / 12.0;
  std::vector<double> a_values{0.0, 1.0 / 3.0, 1.0};
  int order = 16;
  int levels = 12;
  std::size_t samples = 10000;
  std::uint64_t seed = 11;
};

inline double spread_about_mean(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x / mean - 1.0));
  return s;
}

inline ExperimentReport measure_asymptotics(const MeasureAsymptoticsConfig& cfg) {
  require_decreasing(cfg.deltas, 2, "delta list");
  const bool power = cfg.family == BoxFamily::Power;
  if (power && !(cfg.m > 1.0 && cfg.m < 2.0)) throw std::invalid_argument("power family needs m in (1, 2)");
  const DomainSpec model = power ? DomainSpec::model_power(cfg.m) : DomainSpec::model_quad();
  const Chart chart(model, ChartSide::Model);
  const double kappa = model.exponent();
  const auto opt_m = power ? std::optional<double>(cfg.m) : std::nullopt;

  ExperimentReport rep;
  rep.id = "verify-measures";
  rep.params = Json{{"family", to_string(cfg.family)}};
  if (power) rep.params["m"] = cfg.m;
  rep.params["deltas"] = cfg.deltas;
  rep.params["box_a"] = cfg.box_a;
  rep.params["a_values"] = cfg.a_values;
  rep.params["order"] = cfg.order;
  rep.params["levels"] = cfg.levels;
  rep.params["samples"] = cfg.samples;
  rep.params["seed"] = cfg.seed;

  ExperimentReport boxes;
  boxes.id = "box-measures";
  boxes.columns = {"delta", "lambda_s", "sigma_s", "sigma_sprime", "lambda_s_scaled", "sigma_s_scaled",
                   "sigma_sprime_scaled"};
  std::vector<double> ls, ss, sps;
  double exact_err = 0.0;
  const auto ll = MeasureKind::leray_levi(), sg = MeasureKind::sigma();
  for (double delta : cfg.deltas) {
    const auto [s, sp] = make_boxes(cfg.family, delta, cfg.box_a, opt_m);
    const double l = box_measure(s.cells(), chart, ll, measure_rule(model, ll, cfg.order, cfg.levels)).value.real();
    const double sig = box_measure(s.cells(), chart, sg, measure_rule(model, sg, cfg.order, cfg.levels)).value.real();
    const double sigp = box_measure(sp.cells(), chart, sg, measure_rule(model, sg, cfg.order, cfg.levels)).value.real();
    const double ln = l * std::pow(delta, -2.0 * kappa);
    Json row;
    row["delta"] = delta;
    row["lambda_s"] = l;
    row["sigma_s"] = sig;
    row["sigma_sprime"] = sigp;
    row["lambda_s_scaled"] = ln;
    row["sigma_s_scaled"] = sig * std::pow(delta, -4.0);
    row["sigma_sprime_scaled"] = sigp * std::pow(delta, -3.0);
    boxes.rows.push_back(row);
    ls.push_back(ln);
    ss.push_back(sig * std::pow(delta, -4.0));
    sps.push_back(sigp * std::pow(delta, -3.0));
    if (!power) {
      const double exact = cfg.box_a * cfg.box_a / (pi * pi);
      exact_err = std::max(exact_err, std::abs(ln / exact - 1.0));
    }
  }
  const double band = power ? 0.10 : 0.05;
  if (!power) {
    boxes.summary["lambda_s_scaled_exact"] = cfg.box_a * cfg.box_a / (pi * pi);
    boxes.checks.push_back(check_at_most("lambda(S) delta^-4 relative error to a^2/pi^2", exact_err, 0.0, 1e-10));
  } else {
    boxes.checks.push_back(check_at_most("spread of lambda(S) delta^-2m", spread_about_mean(ls), 0.0, band));
  }
  boxes.checks.push_back(check_at_most("spread of sigma(S) delta^-4", spread_about_mean(ss), 0.0, band));
  boxes.checks.push_back(check_at_most("spread of sigma(S') delta^-3", spread_about_mean(sps), 0.0, band));
  rep.parts.push_back(boxes);

  ExperimentReport expo;
  expo.id = "mu-a-exponents";
  expo.columns = {"a", "slope", "target"};
  for (double a : cfg.a_values) {
    const MeasureKind kind = norm_measure(a);
    std::vector<std::pair<double, double>> pts;
    for (double delta : cfg.deltas) {
      const auto [s, sp] = make_boxes(cfg.family, delta, cfg.box_a, opt_m);
      pts.emplace_back(delta,
                       box_measure(s.cells(), chart, kind, measure_rule(model, kind, cfg.order, cfg.levels)).value.real());
    }
    const double slope = fit_power_law(pts).slope;
    const double target = power ? 4.0 + 2.0 * (cfg.m - 2.0) * a : 4.0;
    Json row;
    row["a"] = a;
    row["slope"] = slope;
    row["target"] = target;
    expo.rows.push_back(row);
    expo.checks.push_back(check_within("mu_a(S) log-log slope, a = " + format_short(a), slope, target, 0.1));
  }
  rep.parts.push_back(expo);

  if (!power) {
    ExperimentReport flat;
    flat.id = "leray-levi-constant";
    Rng rng(cfg.seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      const ChartPoint t{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      worst = std::max(worst, std::abs(leray_levi_density(chart, t) - 1.0 / (4.0 * pi * pi)));
    }
    flat.summary["max_abs_deviation"] = worst;
    flat.checks.push_back(check_at_most("max |lambda density - 1/(4 pi^2)|", worst, 0.0, 1e-12));
    rep.parts.push_back(flat);
  }
  return rep;
}

}  // namespace leray
