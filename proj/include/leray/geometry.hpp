#pragma once

// Defining functions of the catalog domains in C^2, their holomorphic
// gradients, complex Hessians and the Leray denominator
//   Delta(w, z) = <d rho(w), w - z>.
// Sign convention everywhere: rho < 0 inside, rho = 0 on the boundary.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "leray/types.hpp"

namespace leray {

enum class Family { ModelQuad, ModelPower, BoundedQuad, BoundedPower, ScaledQuad, ScaledPower };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::ModelQuad: return "model-quad";
    case Family::ModelPower: return "model-power";
    case Family::BoundedQuad: return "bounded-quad";
    case Family::BoundedPower: return "bounded-power";
    case Family::ScaledQuad: return "scaled-quad";
    case Family::ScaledPower: return "scaled-power";
  }
  return "unknown";
}

constexpr bool is_power(Family f) {
  return f == Family::ModelPower || f == Family::BoundedPower || f == Family::ScaledPower;
}
constexpr bool is_model(Family f) { return f == Family::ModelQuad || f == Family::ModelPower; }
constexpr bool is_bounded(Family f) { return f == Family::BoundedQuad || f == Family::BoundedPower; }
constexpr bool is_scaled(Family f) { return f == Family::ScaledQuad || f == Family::ScaledPower; }

/// [u]^q = |u|^q sign(u).
inline double signed_power(double u, double q) {
  if (u == 0.0) return 0.0;
  const double p = std::pow(std::abs(u), q);
  return u > 0.0 ? p : -p;
}

/// One of the catalog domains. Immutable once built; use the named constructors.
struct DomainSpec {
  Family family = Family::ModelQuad;
  std::optional<double> m;
  std::optional<double> eps;

  static DomainSpec model_quad() { return {Family::ModelQuad, std::nullopt, std::nullopt}; }
  static DomainSpec model_power(double m) { return checked({Family::ModelPower, m, std::nullopt}); }
  static DomainSpec bounded_quad() { return {Family::BoundedQuad, std::nullopt, std::nullopt}; }
  static DomainSpec bounded_power(double m) { return checked({Family::BoundedPower, m, std::nullopt}); }
  static DomainSpec scaled_quad(double eps) { return checked({Family::ScaledQuad, std::nullopt, eps}); }
  static DomainSpec scaled_power(double m, double eps) { return checked({Family::ScaledPower, m, eps}); }

  static DomainSpec checked(DomainSpec s) {
    s.validate();
    return s;
  }

  void validate() const {
    if (is_power(family)) {
      if (!m) throw std::invalid_argument(to_string(family) + ": exponent m is required");
      if (!(*m > 1.0 && *m < 2.0)) throw std::invalid_argument("exponent m must lie in (1, 2)");
    }
    if (is_scaled(family)) {
      if (!eps) throw std::invalid_argument(to_string(family) + ": scaling parameter eps is required");
      if (!(*eps > 0.0) || !std::isfinite(*eps)) throw std::invalid_argument("eps must be positive");
    }
  }

  double exponent() const { return is_power(family) ? *m : 2.0; }

  /// Anisotropic weight of z2 under the dilation tau_eps: 2 (quad) or m (power).
  double z2_weight() const { return exponent(); }

  /// Bounded domain whose dilation produces this scaled family member.
  DomainSpec bounded_base() const {
    switch (family) {
      case Family::ScaledQuad:
      case Family::ModelQuad:
      case Family::BoundedQuad: return bounded_quad();
      default: return bounded_power(*m);
    }
  }

  /// Model domain of the same family.
  DomainSpec model() const {
    return is_power(family) ? model_power(*m) : model_quad();
  }
};

namespace detail {

// rho is separable: rho = T0(x1) + T1(y1) + T2(x2) + T3(y2) with each term
//   T(t) = lin t + sq t^2 + quart t^4 + pw |t|^m.
struct Term {
  double lin = 0.0;
  double sq = 0.0;
  double quart = 0.0;
  double pw = 0.0;
  double m = 2.0;

  double value(double t) const {
    const double t2 = t * t;
    double v = lin * t + sq * t2 + quart * t2 * t2;
    if (pw != 0.0) v += pw * std::pow(std::abs(t), m);
    return v;
  }
  double d1(double t) const {
    double v = lin + 2.0 * sq * t + 4.0 * quart * t * t * t;
    if (pw != 0.0) v += pw * m * signed_power(t, m - 1.0);
    return v;
  }
  double d2(double t) const {
    double v = 2.0 * sq + 12.0 * quart * t * t;
    if (pw != 0.0) {
      if (t == 0.0) throw std::domain_error("second derivative of |t|^m is singular at t = 0");
      v += pw * m * (m - 1.0) * std::pow(std::abs(t), m - 2.0);
    }
    return v;
  }
};

inline std::array<Term, 4> terms(const DomainSpec& s) {
  s.validate();
  std::array<Term, 4> t{};
  const bool power = is_power(s.family);
  const double m = s.exponent();
  if (power) {
    t[0].pw = 1.0;
    t[0].m = m;
  } else {
    t[0].sq = 1.0;
  }
  t[3].lin = -2.0;
  switch (s.family) {
    case Family::ModelQuad:
    case Family::ModelPower: break;
    case Family::BoundedQuad:
      t[1].quart = 1.0;
      t[2].sq = 1.0;
      t[3].sq = 1.0;
      break;
    case Family::BoundedPower:
      t[1].sq = 1.0;
      t[2].sq = 1.0;
      t[3].sq = 1.0;
      break;
    case Family::ScaledQuad: {
      const double e2 = *s.eps * *s.eps;
      t[1].quart = e2;
      t[2].sq = e2;
      t[3].sq = e2;
      break;
    }
    case Family::ScaledPower: {
      const double em = std::pow(*s.eps, m);
      t[1].sq = std::pow(*s.eps, 2.0 - m);
      t[2].sq = em;
      t[3].sq = em;
      break;
    }
  }
  return t;
}

}  // namespace detail

inline double rho(const DomainSpec& s, const CPoint2& z) {
  const auto t = detail::terms(s);
  const auto r = to_real(z);
  return t[0].value(r[0]) + t[1].value(r[1]) + t[2].value(r[2]) + t[3].value(r[3]);
}

/// Real gradient (d/dx1, d/dy1, d/dx2, d/dy2).
inline std::array<double, 4> real_gradient(const DomainSpec& s, const CPoint2& z) {
  const auto t = detail::terms(s);
  const auto r = to_real(z);
  return {t[0].d1(r[0]), t[1].d1(r[1]), t[2].d1(r[2]), t[3].d1(r[3])};
}

/// d rho / d z_j = (d/dx_j - i d/dy_j) rho / 2.
inline CVector2 holo_from_real(const std::array<double, 4>& g) {
  return {cplx{0.5 * g[0], -0.5 * g[1]}, cplx{0.5 * g[2], -0.5 * g[3]}};
}

inline CVector2 holo_gradient(const DomainSpec& s, const CPoint2& z) {
  return holo_from_real(real_gradient(s, z));
}

/// H_jk = d^2 rho / d zbar_j d z_k. Separable rho gives a diagonal Hessian,
/// H_jj = (rho_{x_j x_j} + rho_{y_j y_j}) / 4.
inline CMatrix2 complex_hessian(const DomainSpec& s, const CPoint2& z) {
  const auto t = detail::terms(s);
  const auto r = to_real(z);
  if (is_power(s.family) && r[0] == 0.0)
    throw std::domain_error("complex Hessian is singular on x1 = 0 for power families");
  CMatrix2 h{};
  h[0][0] = 0.25 * (t[0].d2(r[0]) + t[1].d2(r[1]));
  h[1][1] = 0.25 * (t[2].d2(r[2]) + t[3].d2(r[3]));
  return h;
}

/// Leray denominator <d rho(w), w - z>.
inline cplx delta(const DomainSpec& s, const CPoint2& w, const CPoint2& z) {
  return pair(holo_gradient(s, w), w - z);
}

/// Same, with the gradient at w already known.
inline cplx delta(const CVector2& grad_w, const CPoint2& w, const CPoint2& z) { return pair(grad_w, w - z); }

/// Closed form of Delta_0 on the quadratic model boundary, both points in chart coordinates.
inline cplx delta0_quad_closed(const ChartPoint& w, const ChartPoint& z) {
  const double d1 = w.t1 - z.t1;
  return {0.5 * d1 * d1, w.t1 * (w.t2 - z.t2) + w.t3 - z.t3};
}

/// Closed form of Delta_0 on the power model boundary 2 Im z2 = |x1|^m.
inline cplx delta0_power_closed(const ChartPoint& w, const ChartPoint& z, double m) {
  if (!(m > 1.0 && m < 2.0)) throw std::invalid_argument("exponent m must lie in (1, 2)");
  const double su = signed_power(w.t1, m - 1.0);
  const double re = 0.5 * (std::pow(std::abs(z.t1), m) - std::pow(std::abs(w.t1), m) + m * su * (w.t1 - z.t1));
  const double im = 0.5 * m * su * (w.t2 - z.t2) + (w.t3 - z.t3);
  return {re, im};
}

/// tau_eps(z1, z2) = (eps z1, eps^kappa z2).
inline CPoint2 dilate(const CPoint2& z, double eps, double kappa) {
  return {eps * z.z1, std::pow(eps, kappa) * z.z2};
}

/// rho composed with the inverse of an affine unitary map, rho~(zeta) = rho(U^H (zeta - b)).
/// The gradient goes through the real 4x4 representation of U^H, not the complex chain rule.
class AffineImage {
 public:
  AffineImage(DomainSpec spec, const CMatrix2& unitary, const CPoint2& shift)
      : spec_(std::move(spec)), u_(unitary), b_(shift) {
    // real matrix of v -> U^H v acting on (x1, y1, x2, y2)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const cplx a = std::conj(u_[k][j]);
        inv_[2 * j][2 * k] = a.real();
        inv_[2 * j][2 * k + 1] = -a.imag();
        inv_[2 * j + 1][2 * k] = a.imag();
        inv_[2 * j + 1][2 * k + 1] = a.real();
      }
  }

  CPoint2 forward(const CPoint2& z) const {
    return {u_[0][0] * z.z1 + u_[0][1] * z.z2 + b_.z1, u_[1][0] * z.z1 + u_[1][1] * z.z2 + b_.z2};
  }

  CPoint2 preimage(const CPoint2& zeta) const {
    const auto r = to_real(zeta - b_);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) out[i] += inv_[i][k] * r[k];
    return from_real(out);
  }

  double rho(const CPoint2& zeta) const { return leray::rho(spec_, preimage(zeta)); }

  CVector2 holo_gradient(const CPoint2& zeta) const {
    const auto g = real_gradient(spec_, preimage(zeta));
    std::array<double, 4> gt{};
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i) gt[k] += inv_[i][k] * g[i];
    return holo_from_real(gt);
  }

  cplx delta(const CPoint2& w, const CPoint2& z) const { return pair(holo_gradient(w), w - z); }

 private:
  DomainSpec spec_;
  CMatrix2 u_{};
  CPoint2 b_{};
  double inv_[4][4]{};
};

}  // namespace leray
