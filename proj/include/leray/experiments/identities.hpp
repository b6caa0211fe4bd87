#pragma once

// Identity suites: kernel scaling, L^p isometry of the dilation, conjugation of the
// scaled operator, density transport, closed-form kernels, invariance of Delta.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "leray/boundary.hpp"
#include "leray/experiments/bounds.hpp"
#include "leray/geometry.hpp"
#include "leray/measures.hpp"
#include "leray/random.hpp"
#include "leray/report.hpp"
#include "leray/transform.hpp"

namespace leray {

enum class IdentitySelector { DeltaScaling, Isometry, Conjugation, DensityTransport, ClosedFormAgreement, Invariance, All };

inline std::string to_string(IdentitySelector s) {
  switch (s) {
    case IdentitySelector::DeltaScaling: return "delta-scaling";
    case IdentitySelector::Isometry: return "isometry";
    case IdentitySelector::Conjugation: return "conjugation";
    case IdentitySelector::DensityTransport: return "density-transport";
    case IdentitySelector::ClosedFormAgreement: return "closed-form";
    case IdentitySelector::Invariance: return "invariance";
    case IdentitySelector::All: return "all";
  }
  return "?";
}

inline IdentitySelector identity_selector_from_string(const std::string& s) {
  for (auto v : {IdentitySelector::DeltaScaling, IdentitySelector::Isometry, IdentitySelector::Conjugation,
                 IdentitySelector::DensityTransport, IdentitySelector::ClosedFormAgreement, IdentitySelector::Invariance,
                 IdentitySelector::All})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown identity selector: " + s);
}

struct IdentityConfig {
  double m = 1.5;
  std::uint64_t seed = 42;
  std::size_t closed_form_pairs = 10000;
  int order = 24;        // one side of each quadrature identity
  int cross_order = 32;  // the other side
  int levels = 12;
};

/// Tolerance classes: algebraic identities are compared to tol * max(1, |lhs|, |rhs|),
/// quadrature-mediated ones to tol * max(|lhs|, |rhs|).
inline constexpr double kAlgebraicTol = 1e-13;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kQuadratureTol = 1e-8;
inline constexpr double kPointwiseTransportTol = 1e-10;

namespace detail {

struct CaseTable {
  ExperimentReport rep;
  std::size_t failed = 0;
  double worst = 0.0;  // max abs_err / allowance

  void add(const std::string& id, cplx lhs, cplx rhs, double tol, bool relative) {
    const double scale = relative ? std::max(std::abs(lhs), std::abs(rhs))
                                  : std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const double err = std::abs(lhs - rhs);
    const bool ok = err <= tol * scale;
    Json row;
    row["id"] = id;
    row["lhs"] = lhs.real();
    row["rhs"] = rhs.real();
    row["lhs_im"] = lhs.imag();
    row["rhs_im"] = rhs.imag();
    row["abs_err"] = err;
    row["tol"] = tol;
    row["tol_kind"] = relative ? "relative" : "algebraic";
    row["pass"] = ok;
    rep.rows.push_back(row);
    if (!ok) ++failed;
    worst = std::max(worst, err / (tol * scale));
  }

  ExperimentReport finish() {
    rep.columns = {"id", "lhs", "rhs", "abs_err", "pass"};
    rep.summary["cases"] = rep.rows.size();
    rep.summary["max_error_over_allowance"] = worst;
    rep.checks.push_back(check_at_most("failed cases", static_cast<double>(failed), 0.0));
    return rep;
  }
};

inline DomainSpec scaled_of(bool power, double m, double eps) {
  return power ? DomainSpec::scaled_power(m, eps) : DomainSpec::scaled_quad(eps);
}

inline DomainSpec bounded_of(bool power, double m) {
  return power ? DomainSpec::bounded_power(m) : DomainSpec::bounded_quad();
}

inline const char* fam(bool power) { return power ? "power" : "quad"; }

inline ChartPoint uniform_point(Rng& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

}  // namespace detail

/// Delta_eps(w, z) = eps^-kappa Delta(tau_eps w, tau_eps z).
inline ExperimentReport identity_delta_scaling(const IdentityConfig& cfg) {
  detail::CaseTable t;
  t.rep.id = "identities-delta-scaling";
  Rng rng(cfg.seed);
  for (bool power : {false, true})
    for (double eps : {0.5, 0.25, 0.1}) {
      const DomainSpec sc = detail::scaled_of(power, cfg.m, eps);
      const DomainSpec bd = detail::bounded_of(power, cfg.m);
      const Chart ch(sc, ChartSide::Model);
      const double kappa = sc.z2_weight();
      for (int k = 0; k < 4; ++k) {
        const CPoint2 w = ch.embed(detail::uniform_point(rng, -1.0, 1.0));
        const CPoint2 z = ch.embed(detail::uniform_point(rng, -1.0, 1.0));
        const cplx lhs = delta(sc, w, z);
        const cplx rhs = std::pow(eps, -kappa) * delta(bd, dilate(w, eps, kappa), dilate(z, eps, kappa));
        t.add(std::string(detail::fam(power)) + " eps=" + format_short(eps) + " case " + std::to_string(k), lhs, rhs,
              kAlgebraicTol, false);
      }
    }
  return t.finish();
}

/// ||F||_{L^p(bD, lambda)} = eps^(N/p) ||F o tau_eps||_{L^p(bD_eps, lambda_eps)}.
inline ExperimentReport identity_isometry(const IdentityConfig& cfg) {
  detail::CaseTable t;
  t.rep.id = "identities-isometry";
  const Region r{Cell3{{Interval{0.2, 0.6}, Interval{-0.4, 0.4}, Interval{0.1, 0.5}}}};
  struct Fn {
    const char* name;
    double (*f)(const CPoint2&);
  };
  const Fn fns[] = {{"1", [](const CPoint2&) { return 1.0; }},
                    {"|z1|", [](const CPoint2& z) { return std::abs(z.z1); }},
                    {"Re z2", [](const CPoint2& z) { return z.z2.real(); }}};
  for (bool power : {false, true})
    for (double eps : {0.25, 0.1}) {
      const DomainSpec sc = detail::scaled_of(power, cfg.m, eps);
      const DomainSpec bd = detail::bounded_of(power, cfg.m);
      const Chart ce(sc, ChartSide::Model), cb(bd, ChartSide::Lower);
      const double kappa = sc.z2_weight();
      const auto kind = MeasureKind::transported_ll(eps);
      const double n = transport_normalization(sc, kind);
      const Region rb = dilate_region(r, eps, kappa);
      const auto ll = MeasureKind::leray_levi();
      for (const auto& fn : fns)
        for (double p : {1.0, 2.0, 4.0}) {
          const double lhs = lp_norm([&](const ChartPoint& s) { return fn.f(cb.embed(s)); }, rb, p, cb, ll,
                                     measure_rule(bd, ll, cfg.cross_order, cfg.levels));
          const double rhs =
              std::pow(eps, n / p) *
              lp_norm([&](const ChartPoint& s) { return fn.f(dilate(ce.embed(s), eps, kappa)); }, r, p, ce, kind,
                      measure_rule(sc, kind, cfg.order, cfg.levels));
          t.add(std::string(detail::fam(power)) + " eps=" + format_short(eps) + " F=" + fn.name +
                    " p=" + format_short(p),
                lhs, rhs, kQuadratureTol, true);
        }
    }
  return t.finish();
}

/// C_eps(chi_S)(z) = C(chi_S o tau_eps^-1)(tau_eps z), both sides by quadrature.
inline ExperimentReport identity_conjugation(const IdentityConfig& cfg) {
  detail::CaseTable t;
  t.rep.id = "identities-conjugation";
  Rng rng(cfg.seed + 1);
  const double delta = 0.1;
  for (bool power : {false, true}) {
    const auto [s, sp] = make_boxes(power ? BoxFamily::Power : BoxFamily::Quad, delta, 1.0 / 12.0,
                                    power ? std::optional<double>(cfg.m) : std::nullopt);
    const Region sc = s.cells(), spc = sp.cells();
    const DomainSpec bd = detail::bounded_of(power, cfg.m);
    const Chart cb(bd, ChartSide::Lower);
    const auto ll = MeasureKind::leray_levi();
    for (double eps : {0.5, 0.3, 0.2, 0.1, 0.05}) {
      const DomainSpec scd = detail::scaled_of(power, cfg.m, eps);
      const Chart ce(scd, ChartSide::Model);
      const double kappa = scd.z2_weight();
      const auto kind = MeasureKind::transported_ll(eps);
      const auto lhs_s = chart_samples(ce, sc, BoundaryFunction::indicator(sc), kind,
                                       measure_rule(scd, kind, cfg.order, cfg.levels));
      const Region sb = dilate_region(sc, eps, kappa);
      const auto rhs_s = chart_samples(cb, sb, BoundaryFunction::indicator(sb), ll,
                                       measure_rule(bd, ll, cfg.cross_order, cfg.levels));
      for (int k = 0; k < 2; ++k) {
        const CPoint2 z = ce.embed(detail::sample_region(spc, rng));
        t.add(std::string(detail::fam(power)) + " eps=" + format_short(eps) + " z" + std::to_string(k),
              evaluate(lhs_s, z).value, evaluate(rhs_s, dilate(z, eps, kappa)).value, kQuadratureTol, true);
      }
    }
  }
  return t.finish();
}

/// Transported densities: pointwise against the pull-back along tau_eps o embed_eps,
/// the coordinate reading (eps t1, eps t2, eps^kappa t3), and box integrals against
/// eps^-N times the base-domain integral over the image box.
inline ExperimentReport identity_density_transport(const IdentityConfig& cfg) {
  detail::CaseTable t;
  t.rep.id = "identities-density-transport";
  Rng rng(cfg.seed + 2);
  for (bool power : {false, true})
    for (double eps : {0.2, 0.1}) {
      const DomainSpec sc = detail::scaled_of(power, cfg.m, eps);
      const DomainSpec bd = detail::bounded_of(power, cfg.m);
      const Chart ce(sc, ChartSide::Model);
      const double kappa = sc.z2_weight();
      const auto kind = MeasureKind::transported_ll(eps);
      const double scale = std::pow(eps, -transport_normalization(sc, kind));
      for (int k = 0; k < 4; ++k) {
        ChartPoint p = detail::uniform_point(rng, -1.0, 1.0);
        if (std::abs(p.t1) < 1e-3) p.t1 = 0.5;
        const auto f = ce.frame(p);
        std::array<CVector2, 3> g;
        for (int j = 0; j < 3; ++j) g[j] = CVector2{eps * f[j][0], std::pow(eps, kappa) * f[j][1]};
        const double rhs = scale * leray_levi_from_frame(bd, dilate(ce.embed(p), eps, kappa), g);
        t.add(std::string(detail::fam(power)) + " pull-back eps=" + format_short(eps) + " case " + std::to_string(k),
              transported_density(sc, p, kind), rhs, kPointwiseTransportTol, true);
      }
    }
  {
    const DomainSpec sc = DomainSpec::scaled_quad(0.2);
    const ChartPoint p{0.5, 0.1, 0.3};
    t.add("quad reading eps=0.2 t=(0.5,0.1,0.3)", transported_density(sc, p, MeasureKind::transported_ll(0.2)),
          leray_levi_density(Chart(DomainSpec::bounded_quad(), ChartSide::Lower), {0.1, 0.02, 0.012}),
          kAlgebraicTol, false);
  }
  const Region box{Cell3{{Interval{-0.5, 0.5}, Interval{-0.5, 0.5}, Interval{-0.5, 0.5}}}};
  for (bool power : {false, true})
    for (double a : {1.0, 1.0 / 3.0}) {
      const double eps = 0.1;
      const DomainSpec sc = detail::scaled_of(power, cfg.m, eps);
      const DomainSpec bd = detail::bounded_of(power, cfg.m);
      const double kappa = sc.z2_weight();
      const MeasureKind kind = a == 1.0 ? MeasureKind::transported_ll(eps) : MeasureKind::transported_mu(a, eps);
      const MeasureKind base = kind.base();
      const double lhs =
          box_measure(box, Chart(sc, ChartSide::Model), kind, measure_rule(sc, kind, cfg.order, cfg.levels)).value.real();
      const double rhs = std::pow(eps, -transport_normalization(sc, kind)) *
                         box_measure(dilate_region(box, eps, kappa), Chart(bd, ChartSide::Lower), base,
                                     measure_rule(bd, base, cfg.cross_order, cfg.levels))
                             .value.real();
      t.add(std::string(detail::fam(power)) + " box integral " + kind.name(), lhs, rhs, kQuadratureTol, true);
    }
  return t.finish();
}

/// Closed-form model kernels against Delta of the lifted points.
inline ExperimentReport identity_closed_form(const IdentityConfig& cfg) {
  detail::CaseTable t;
  t.rep.id = "identities-closed-form";
  Rng rng(cfg.seed + 3);
  for (bool power : {false, true}) {
    const DomainSpec spec = power ? DomainSpec::model_power(cfg.m) : DomainSpec::model_quad();
    double worst = -1.0;
    cplx wl{}, wr{};
    for (std::size_t i = 0; i < cfg.closed_form_pairs; ++i) {
      const ChartPoint a = detail::uniform_point(rng, -1.0, 1.0), b = detail::uniform_point(rng, -1.0, 1.0);
      const cplx lhs = power ? delta0_power_closed(a, b, cfg.m) : delta0_quad_closed(a, b);
      const cplx rhs = delta(spec, lift_model(spec, a), lift_model(spec, b));
      const double e = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
      if (e > worst) {
        worst = e;
        wl = lhs;
        wr = rhs;
      }
    }
    t.add(std::string(detail::fam(power)) + " worst of " + std::to_string(cfg.closed_form_pairs) + " pairs", wl, wr,
          kAlgebraicTol, false);
  }
  return t.finish();
}

/// Delta of rho(U^H(. - b)) at (U w + b, U z + b) equals Delta(w, z).
inline ExperimentReport identity_invariance(const IdentityConfig& cfg) {
  detail::CaseTable t;
  t.rep.id = "identities-invariance";
  Rng rng(cfg.seed + 4);
  const CMatrix2 id{{{cplx{1.0}, cplx{0.0}}, {cplx{0.0}, cplx{1.0}}}};
  auto random_c = [&] { return cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; };
  for (const DomainSpec& spec : {DomainSpec::bounded_quad(), DomainSpec::model_power(cfg.m)}) {
    const Chart ch = local_chart(spec);
    auto point = [&] { return ch.embed(detail::uniform_point(rng, -0.5, 0.5)); };
    std::vector<CPoint2> shifts{{cplx{0.1, 0.2}, cplx{0.0, -0.3}}};
    for (int k = 0; k < 3; ++k) shifts.push_back({random_c(), random_c()});
    for (std::size_t k = 0; k < shifts.size(); ++k) {
      const AffineImage img(spec, id, shifts[k]);
      const CPoint2 w = point(), z = point();
      t.add(to_string(spec.family) + " translation " + std::to_string(k), img.delta(img.forward(w), img.forward(z)),
            delta(spec, w, z), kAlgebraicTol, false);
    }
    for (int k = 0; k < 4; ++k) {
      // e^{i phi} [[alpha, -conj beta], [beta, conj alpha]]
      cplx al = random_c(), be = random_c();
      const double nrm = std::sqrt(std::norm(al) + std::norm(be));
      al /= nrm;
      be /= nrm;
      const cplx ph = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
      const CMatrix2 u{{{ph * al, -ph * std::conj(be)}, {ph * be, ph * std::conj(al)}}};
      const AffineImage img(spec, u, k % 2 ? CPoint2{random_c(), random_c()} : CPoint2{});
      const CPoint2 w = point(), z = point();
      t.add(to_string(spec.family) + " unitary " + std::to_string(k), img.delta(img.forward(w), img.forward(z)),
            delta(spec, w, z), kUnitaryTol, false);
    }
  }
  return t.finish();
}

inline ExperimentReport identity_suite(IdentitySelector sel, const IdentityConfig& cfg = {}) {
  ExperimentReport r;
  switch (sel) {
    case IdentitySelector::DeltaScaling: r = identity_delta_scaling(cfg); break;
    case IdentitySelector::Isometry: r = identity_isometry(cfg); break;
    case IdentitySelector::Conjugation: r = identity_conjugation(cfg); break;
    case IdentitySelector::DensityTransport: r = identity_density_transport(cfg); break;
    case IdentitySelector::ClosedFormAgreement: r = identity_closed_form(cfg); break;
    case IdentitySelector::Invariance: r = identity_invariance(cfg); break;
    case IdentitySelector::All:
      r.id = "verify-identities";
      for (auto s : {IdentitySelector::DeltaScaling, IdentitySelector::Isometry, IdentitySelector::Conjugation,
                     IdentitySelector::DensityTransport, IdentitySelector::ClosedFormAgreement,
                     IdentitySelector::Invariance})
        r.parts.push_back(identity_suite(s, cfg));
      break;
  }
  r.params = Json{{"selector", to_string(sel)},
                  {"m", cfg.m},
                  {"seed", cfg.seed},
                  {"closed_form_pairs", cfg.closed_form_pairs},
                  {"order", cfg.order},
                  {"cross_order", cfg.cross_order},
                  {"levels", cfg.levels}};
  return r;
}

}  // namespace leray
