#pragma once

// Boundary measure densities in chart coordinates: induced Lebesgue sigma,
// Leray-Levi lambda (pull-back of (2 pi i)^-2 d rho ^ dbar d rho), the mu_a
// family and the dilation-transported measures.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "leray/boundary.hpp"
#include "leray/geometry.hpp"
#include "leray/quadrature.hpp"
#include "leray/types.hpp"

namespace leray {

struct MeasureKind {
  enum class Kind { Sigma, LerayLevi, MuA, TransportedLL, TransportedMuA };
  Kind kind = Kind::Sigma;
  double a = 0.0;
  double eps = 0.0;

  static MeasureKind sigma() { return {Kind::Sigma, 0.0, 0.0}; }
  static MeasureKind leray_levi() { return {Kind::LerayLevi, 1.0, 0.0}; }
  static MeasureKind mu(double a) { return {Kind::MuA, a, 0.0}; }
  static MeasureKind transported_ll(double eps) { return {Kind::TransportedLL, 1.0, eps}; }
  static MeasureKind transported_mu(double a, double eps) { return {Kind::TransportedMuA, a, eps}; }

  bool transported() const { return kind == Kind::TransportedLL || kind == Kind::TransportedMuA; }

  /// Power of the Levi factor carried by the density (0 for sigma, 1 for lambda).
  double levi_power() const {
    switch (kind) {
      case Kind::Sigma: return 0.0;
      case Kind::LerayLevi:
      case Kind::TransportedLL: return 1.0;
      default: return a;
    }
  }

  /// The untransported counterpart.
  MeasureKind base() const {
    if (kind == Kind::TransportedLL) return leray_levi();
    if (kind == Kind::TransportedMuA) return mu(a);
    return *this;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Sigma: return "sigma";
      case Kind::LerayLevi: return "leray-levi";
      case Kind::MuA: return "mu_a";
      case Kind::TransportedLL: return "transported-leray-levi";
      case Kind::TransportedMuA: return "transported-mu_a";
    }
    return "unknown";
  }
};

inline std::array<double, 4> real_vector(const CVector2& v) {
  return {v[0].real(), v[0].imag(), v[1].real(), v[1].imag()};
}

inline double det4(const std::array<std::array<double, 4>, 4>& c) {
  // columns c[0..3]; cofactor expansion through 2x2 minors of the first two columns
  auto m2 = [&](int i, int j, int a, int b) { return c[a][i] * c[b][j] - c[a][j] * c[b][i]; };
  double d = 0.0;
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  const int comp[6][2] = {{2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}};
  const double sign[6] = {1, -1, 1, 1, -1, 1};
  for (int k = 0; k < 6; ++k)
    d += sign[k] * m2(pairs[k][0], pairs[k][1], 0, 1) * m2(comp[k][0], comp[k][1], 2, 3);
  return d;
}

/// Raw pull-back of d rho ^ dbar d rho on a frame (X1, X2, X3):
///   alpha(X1) beta(X2, X3) - alpha(X2) beta(X1, X3) + alpha(X3) beta(X1, X2),
/// alpha(X) = sum_j rho_j xi_j, beta(X, Y) = sum_jk H_jk (conj(xi_j) eta_k - conj(eta_j) xi_k).
inline cplx levi_form_pullback(const CVector2& grad, const CMatrix2& h, const std::array<CVector2, 3>& f) {
  auto alpha = [&](const CVector2& x) { return grad[0] * x[0] + grad[1] * x[1]; };
  auto beta = [&](const CVector2& x, const CVector2& y) {
    cplx s{};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) s += h[j][k] * (std::conj(x[j]) * y[k] - std::conj(y[j]) * x[k]);
    return s;
  };
  return alpha(f[0]) * beta(f[1], f[2]) - alpha(f[1]) * beta(f[0], f[2]) + alpha(f[2]) * beta(f[0], f[1]);
}

/// +1 when (outward normal, X1, X2, X3) is positively oriented in R^4.
inline double frame_orientation(const DomainSpec& spec, const CPoint2& z, const std::array<CVector2, 3>& f) {
  const auto n = real_gradient(spec, z);
  const double d = det4({n, real_vector(f[0]), real_vector(f[1]), real_vector(f[2])});
  if (d == 0.0) throw std::domain_error("degenerate boundary frame");
  return d > 0.0 ? 1.0 : -1.0;
}

/// Leray-Levi density against the parameter volume of the given frame, for the
/// boundary orientation induced by the domain. Rejects a residual imaginary part.
inline double leray_levi_from_frame(const DomainSpec& spec, const CPoint2& z, const std::array<CVector2, 3>& f) {
  const cplx raw = levi_form_pullback(holo_gradient(spec, z), complex_hessian(spec, z), f);
  // (2 pi i)^-2 = -1 / (4 pi^2)
  const cplx d = -frame_orientation(spec, z, f) * raw / (4.0 * pi * pi);
  if (std::abs(d.imag()) > 1e-10 * std::max(1.0, std::abs(d.real())))
    throw std::logic_error("Leray-Levi pull-back has a non-negligible imaginary part");
  return d.real();
}

/// sqrt(det Gram) of the real frame: the induced Lebesgue density.
inline double gram_volume(const std::array<CVector2, 3>& f) {
  std::array<std::array<double, 4>, 3> v{real_vector(f[0]), real_vector(f[1]), real_vector(f[2])};
  double g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g[i][j] = 0.0;
      for (int k = 0; k < 4; ++k) g[i][j] += v[i][k] * v[j][k];
    }
  const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                     g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                     g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  return std::sqrt(std::max(0.0, det));
}

inline double sigma_density(const Chart& chart, const ChartPoint& t) {
  if (!chart.contains(t)) throw ChartRangeError("sigma_density: point outside chart");
  const auto g = chart.height_gradient(t);
  return std::sqrt(1.0 + g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

inline double leray_levi_density(const Chart& chart, const ChartPoint& t) {
  return leray_levi_from_frame(chart.spec(), chart.embed(t), chart.frame(t));
}

/// (L / |grad rho|)^a d sigma with L / |grad rho| := 4 pi^2 lambda / sigma, so a = 1 gives 4 pi^2 lambda.
inline double mu_a_density(const Chart& chart, const ChartPoint& t, double a) {
  const double s = sigma_density(chart, t);
  if (a == 0.0) return s;
  const double l = leray_levi_density(chart, t);
  return std::pow(4.0 * pi * pi * l / s, a) * s;
}

/// Exponent N in the normalization eps^-N of the transported measure.
inline double transport_normalization(const DomainSpec& scaled, const MeasureKind& kind) {
  if (!is_power(scaled.family)) return 4.0;
  const double m = *scaled.m;
  if (kind.kind == MeasureKind::Kind::TransportedLL) return 2.0 * m;
  return 2.0 + m - kind.a * (2.0 - m);
}

/// Density of the transported measure on bD_eps in the chart of the scaled family:
///   eps^(2 + kappa - N) * density_base(eps t1, eps t2, eps^kappa t3),
/// read off from integral_{bD_eps} F d lambda_eps = eps^-N integral_{bD} F(tau_{1/eps} z) d lambda(z).
inline double transported_density(const DomainSpec& scaled, const ChartPoint& t, const MeasureKind& kind) {
  if (!is_scaled(scaled.family)) throw std::invalid_argument("transported_density needs a scaled family");
  if (!kind.transported()) throw std::invalid_argument("transported_density needs a transported measure kind");
  const double eps = *scaled.eps;
  if (std::abs(kind.eps - eps) > 1e-15 * eps) throw std::invalid_argument("measure eps differs from domain eps");
  const double kappa = scaled.z2_weight();
  const Chart lower(scaled.bounded_base(), ChartSide::Lower);
  const ChartPoint s{eps * t.t1, eps * t.t2, std::pow(eps, kappa) * t.t3};
  if (!lower.contains(s)) throw ChartRangeError("transported_density: base point leaves the chart");
  const double base = kind.kind == MeasureKind::Kind::TransportedLL ? leray_levi_density(lower, s)
                                                                    : mu_a_density(lower, s, kind.a);
  return std::pow(eps, 2.0 + kappa - transport_normalization(scaled, kind)) * base;
}

inline double density(const Chart& chart, const ChartPoint& t, const MeasureKind& kind) {
  switch (kind.kind) {
    case MeasureKind::Kind::Sigma: return sigma_density(chart, t);
    case MeasureKind::Kind::LerayLevi: return leray_levi_density(chart, t);
    case MeasureKind::Kind::MuA: return mu_a_density(chart, t, kind.a);
    default: return transported_density(chart.spec(), t, kind);
  }
}

/// Quadrature settings for integrating against `kind` on `chart`: power families
/// grade t1 toward 0 with gamma = (m - 2) * levi_power.
inline RuleOptions measure_rule(const DomainSpec& spec, const MeasureKind& kind, int order = 16, int levels = 12) {
  RuleOptions opt;
  opt.order = {order, order, order};
  if (is_power(spec.family)) {
    const double gamma = (*spec.m - 2.0) * kind.levi_power();
    if (!(gamma > -1.0))
      throw std::domain_error("density |t1|^" + std::to_string(gamma) +
                              " is not integrable near t1 = 0 (need a < 1/(2 - m))");
    opt.graded = GradedScheme{0, levels, gamma};
  }
  return opt;
}

inline Integral box_measure(const Region& region, const Chart& chart, const MeasureKind& kind,
                            const RuleOptions& opt) {
  return integrate_box(region, [&](const ChartPoint& t) { return density(chart, t, kind); }, opt);
}

inline Integral box_measure(const ParamBox& box, const Chart& chart, const MeasureKind& kind) {
  return box_measure(box.cells(), chart, kind, measure_rule(chart.spec(), kind));
}

}  // namespace leray
