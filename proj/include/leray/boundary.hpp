#pragma once

// Graph charts of the catalog boundaries, the two-chart atlas of the bounded
// domains, a global (polar) parameterization of the bounded quartic boundary,
// and the test boxes S, S'.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "leray/geometry.hpp"
#include "leray/types.hpp"

namespace leray {

enum class ChartSide { Model, Lower, Upper };

/// Boundary written as the graph y2 = g(x1, y1, x2).
///
/// Every catalog rho has the form B(t) + q y2^2 - 2 y2, with B depending only on
/// t = (x1, y1, x2); the graph heights are the two roots of q y^2 - 2y + B = 0.
/// Model and scaled families use the root that stays finite as q -> 0; bounded
/// families expose both roots as the Lower and Upper charts.
class Chart {
 public:
  Chart(DomainSpec spec, ChartSide side) : spec_(std::move(spec)), side_(side), terms_(detail::terms(spec_)) {
    const bool graph_family = is_model(spec_.family) || is_scaled(spec_.family);
    if (graph_family && side_ != ChartSide::Model)
      throw std::invalid_argument("model and scaled boundaries have a single graph chart");
    if (is_bounded(spec_.family) && side_ == ChartSide::Model)
      throw std::invalid_argument("bounded boundaries need a Lower or Upper chart");
  }

  const DomainSpec& spec() const { return spec_; }
  ChartSide side() const { return side_; }

  /// B(t); the bounded base region is B < 1.
  double base(const ChartPoint& t) const {
    return terms_[0].value(t.t1) + terms_[1].value(t.t2) + terms_[2].value(t.t3);
  }

  bool contains(const ChartPoint& t) const { return 1.0 - q() * base(t) > 0.0; }

  double height(const ChartPoint& t) const {
    const double b = base(t);
    const double s = root_term(b);
    if (side_ == ChartSide::Upper) return (1.0 + s) / q();
    return b / (1.0 + s);
  }

  std::array<double, 3> height_gradient(const ChartPoint& t) const {
    const double s = root_term(base(t));
    const double f = (side_ == ChartSide::Upper ? -0.5 : 0.5) / s;
    return {f * terms_[0].d1(t.t1), f * terms_[1].d1(t.t2), f * terms_[2].d1(t.t3)};
  }

  CPoint2 embed(const ChartPoint& t) const { return {{t.t1, t.t2}, {t.t3, height(t)}}; }

  /// Images of d/dt1, d/dt2, d/dt3 as complex tangent vectors.
  std::array<CVector2, 3> frame(const ChartPoint& t) const {
    const auto g = height_gradient(t);
    return {CVector2{cplx{1.0, 0.0}, cplx{0.0, g[0]}}, CVector2{cplx{0.0, 1.0}, cplx{0.0, g[1]}},
            CVector2{cplx{0.0, 0.0}, cplx{1.0, g[2]}}};
  }

 private:
  double q() const { return terms_[3].sq; }

  double root_term(double b) const {
    const double disc = 1.0 - q() * b;
    if (!(disc > 0.0)) throw ChartRangeError("chart point outside the graph range of this boundary");
    return std::sqrt(disc);
  }

  DomainSpec spec_;
  ChartSide side_;
  std::array<detail::Term, 4> terms_;
};

inline CPoint2 lift_model(const DomainSpec& spec, const ChartPoint& t) {
  if (!is_model(spec.family)) throw std::invalid_argument("lift_model needs a model family");
  return Chart(spec, ChartSide::Model).embed(t);
}

inline CPoint2 lift_scaled(const DomainSpec& spec, const ChartPoint& t) {
  if (!is_scaled(spec.family)) throw std::invalid_argument("lift_scaled needs a scaled family");
  return Chart(spec, ChartSide::Model).embed(t);
}

inline std::vector<Chart> atlas_bounded(const DomainSpec& spec) {
  if (!is_bounded(spec.family)) throw std::invalid_argument("atlas_bounded needs a bounded family");
  return {Chart(spec, ChartSide::Lower), Chart(spec, ChartSide::Upper)};
}

/// Global parameterization of |z2 - i|^2 + x1^2 + y1^4 = 1 by
/// (psi, phi, theta) in [-pi/2, pi/2]^2 x [0, 2 pi):
///   y1 = sin psi,  R = sqrt(1 - y1^4),  x1 = R sin phi,
///   z2 = i + R cos phi e^{i theta}.
/// The map is real-analytic, so tensor Gauss / trapezoid rules converge
/// geometrically; the graph charts instead degenerate at the equator.
class PolarChart {
 public:
  PolarChart() = default;

  const DomainSpec& spec() const { return spec_; }

  CPoint2 embed(const std::array<double, 3>& p) const {
    const auto [y1, big_r, dr] = radial(p[0]);
    (void)dr;
    const double r = big_r * std::cos(p[1]);
    return {{big_r * std::sin(p[1]), y1}, cplx{0.0, 1.0} + r * std::polar(1.0, p[2])};
  }

  std::array<CVector2, 3> frame(const std::array<double, 3>& p) const {
    const auto [y1, big_r, dr] = radial(p[0]);
    (void)y1;
    const double sphi = std::sin(p[1]);
    const double cphi = std::cos(p[1]);
    const cplx e = std::polar(1.0, p[2]);
    const double r = big_r * cphi;
    return {CVector2{cplx{dr * sphi, std::cos(p[0])}, dr * cphi * e},
            CVector2{cplx{big_r * cphi, 0.0}, -big_r * sphi * e},
            CVector2{cplx{0.0, 0.0}, cplx{0.0, r} * e}};
  }

 private:
  // (y1, R, dR/dpsi); R = cos psi sqrt(1 + sin^2 psi) stays analytic at psi = +-pi/2.
  static std::array<double, 3> radial(double psi) {
    const double s = std::sin(psi);
    const double c = std::cos(psi);
    const double w = std::sqrt(1.0 + s * s);
    return {s, c * w, -s * w + c * c * s / w};
  }

  DomainSpec spec_ = DomainSpec::bounded_quad();
};

// ---------------------------------------------------------------------------
// Test boxes

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double t) const { return t >= lo && t <= hi; }
};

/// Axis-aligned cell in chart coordinates.
struct Cell3 {
  std::array<Interval, 3> axis{};
  bool contains(const ChartPoint& t) const {
    return axis[0].contains(t.t1) && axis[1].contains(t.t2) && axis[2].contains(t.t3);
  }
  double volume() const { return axis[0].length() * axis[1].length() * axis[2].length(); }
};

using Region = std::vector<Cell3>;

inline bool region_contains(const Region& r, const ChartPoint& t) {
  for (const auto& c : r)
    if (c.contains(t)) return true;
  return false;
}

/// Image of a chart region under tau_eps, read in chart coordinates: (t1, t2, t3) -> (eps t1, eps t2, eps^kappa t3).
inline Region dilate_region(const Region& r, double eps, double kappa) {
  const double sc[3] = {eps, eps, std::pow(eps, kappa)};
  Region out = r;
  for (auto& c : out)
    for (int k = 0; k < 3; ++k) c.axis[k] = {sc[k] * c.axis[k].lo, sc[k] * c.axis[k].hi};
  return out;
}

enum class BoxFamily { Quad, Power };
enum class BoxRole { S, Sprime };

/// S or S' at scale delta. S is centered at the origin with half-widths (h1, h2, h3);
/// S' is the pair of slabs inner <= |t1| <= h1 with the same h2, h3.
struct ParamBox {
  BoxFamily family = BoxFamily::Quad;
  BoxRole role = BoxRole::S;
  double delta = 0.0;
  double a = 0.0;
  std::optional<double> m;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double inner = 0.0;

  Region cells() const {
    const Interval y{-h2, h2};
    const Interval x2{-h3, h3};
    if (role == BoxRole::S) return {Cell3{{Interval{-h1, h1}, y, x2}}};
    return {Cell3{{Interval{-h1, -inner}, y, x2}}, Cell3{{Interval{inner, h1}, y, x2}}};
  }

  bool contains(const ChartPoint& t) const { return region_contains(cells(), t); }

  double volume() const {
    double v = 0.0;
    for (const auto& c : cells()) v += c.volume();
    return v;
  }
};

inline bool boxes_disjoint(const ParamBox& s, const ParamBox& sp) {
  // S' sits at |t1| >= inner, S at |t1| <= h1
  return s.h1 < sp.inner;
}

/// The boxes S, S' at scale delta. Power boxes carry the small constant a on the x2 width as well.
inline std::pair<ParamBox, ParamBox> make_boxes(BoxFamily family, double delta, double a = 1.0 / 12.0,
                                                std::optional<double> m = std::nullopt) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(a > 0.0 && a <= 1.0 / 12.0)) throw std::invalid_argument("box constant a must lie in (0, 1/12]");
  // S' must sit inside the unit chart ball |t1| <= 1 where the scaled charts are compared
  if (2.0 * delta > 1.0) throw std::invalid_argument("delta too large: S' leaves the unit chart ball (need delta <= 1/2)");
  ParamBox s, sp;
  s.family = sp.family = family;
  s.role = BoxRole::S;
  sp.role = BoxRole::Sprime;
  s.delta = sp.delta = delta;
  s.a = sp.a = a;
  if (family == BoxFamily::Quad) {
    s.h1 = a * delta * delta;
    s.h2 = 0.5;
    s.h3 = a * delta * delta;
    sp.h2 = 0.5;
    sp.h3 = a * delta * delta;
  } else {
    if (!m || !(*m > 1.0 && *m < 2.0)) throw std::invalid_argument("power boxes need m in (1, 2)");
    s.m = sp.m = m;
    s.h1 = a * delta * delta;
    s.h2 = std::pow(delta, 2.0 - *m);
    s.h3 = a * std::pow(delta, *m);
    sp.h2 = s.h2;
    sp.h3 = s.h3;
  }
  sp.inner = delta;
  sp.h1 = 2.0 * delta;
  if (!boxes_disjoint(s, sp)) throw std::invalid_argument("S and S' overlap at this delta");
  return {s, sp};
}

}  // namespace leray
