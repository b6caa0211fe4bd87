#pragma once

// Gauss-Legendre tensor rules, dyadically graded rules for |t|^gamma endpoint
// singularities, and pairwise (order-fixed) reductions.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leray/boundary.hpp"
#include "leray/types.hpp"

namespace leray {

/// Sum of term(i) for i in [lo, hi) by recursive halving. The association order
/// depends only on the range, never on who calls it.
template <class T, class F>
T pairwise_sum(std::size_t lo, std::size_t hi, const F& term) {
  if (hi - lo <= 32) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum<T>(lo, mid, term) + pairwise_sum<T>(mid, hi, term);
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int kMaxGaussOrder = 64;

namespace detail {

inline QuadRule build_gauss(int n) {
  QuadRule r;
  r.order = n;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace detail

inline const QuadRule& gauss_rule(int order) {
  if (order < 1 || order > kMaxGaussOrder)
    throw std::invalid_argument("Gauss order must lie in [1, " + std::to_string(kMaxGaussOrder) + "]");
  static const std::vector<QuadRule> table = [] {
    std::vector<QuadRule> t(kMaxGaussOrder + 1);
    t[1] = QuadRule{1, {0.0}, {2.0}};
    for (int n = 2; n <= kMaxGaussOrder; ++n) t[n] = detail::build_gauss(n);
    return t;
  }();
  return table[order];
}

/// One-dimensional nodes and weights on a concrete interval.
struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;

  void append_gauss(double lo, double hi, int order) {
    const auto& g = gauss_rule(order);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int i = 0; i < g.order; ++i) {
      x.push_back(mid + half * g.nodes[i]);
      w.push_back(half * g.weights[i]);
    }
  }

  double sum_weights() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
  }
};

/// Dyadic grading toward a singular point t = 0 of the given axis.
struct GradedScheme {
  int axis = 0;
  int levels = 12;
  double gamma = 0.0;  // integrand behaves like |t|^gamma near 0
};

inline AxisRule gauss_axis(const Interval& iv, int order) {
  AxisRule r;
  r.append_gauss(iv.lo, iv.hi, order);
  return r;
}

namespace detail {

// Rule on [0, c] (sign = +1) or [-c, 0] (sign = -1), graded toward 0.
inline void append_graded_half(AxisRule& r, double c, double sign, int order, int levels, double gamma) {
  double hi = c;
  for (int k = 0; k < levels; ++k) {
    const double lo = 0.5 * hi;
    if (sign > 0)
      r.append_gauss(lo, hi, order);
    else
      r.append_gauss(-hi, -lo, order);
    hi = lo;
  }
  // innermost cell: t = c0 u^q maps t^gamma dt to c0^(1+gamma) q du
  const double c0 = hi;
  const double q = 1.0 / (1.0 + gamma);
  const auto& g = gauss_rule(order);
  for (int i = 0; i < g.order; ++i) {
    const double u = 0.5 * (g.nodes[i] + 1.0);
    const double wu = 0.5 * g.weights[i];
    r.x.push_back(sign * c0 * std::pow(u, q));
    r.w.push_back(wu * c0 * q * std::pow(u, q - 1.0));
  }
}

}  // namespace detail

inline AxisRule graded_axis(const Interval& iv, int order, int levels, double gamma) {
  if (!(gamma > -1.0)) throw std::domain_error("graded rule needs gamma > -1 (integrand not integrable)");
  if (levels < 1) throw std::invalid_argument("graded rule needs at least one level");
  AxisRule r;
  if (iv.lo >= 0.0 || iv.hi <= 0.0) {
    // singular point at an endpoint or outside
    if (iv.lo == 0.0)
      detail::append_graded_half(r, iv.hi, 1.0, order, levels, gamma);
    else if (iv.hi == 0.0)
      detail::append_graded_half(r, -iv.lo, -1.0, order, levels, gamma);
    else
      r.append_gauss(iv.lo, iv.hi, order);
    return r;
  }
  detail::append_graded_half(r, -iv.lo, -1.0, order, levels, gamma);
  detail::append_graded_half(r, iv.hi, 1.0, order, levels, gamma);
  return r;
}

/// Quadrature settings for a box integral.
struct RuleOptions {
  std::array<int, 3> order{16, 16, 16};
  std::optional<GradedScheme> graded;
};

struct WeightedNode {
  ChartPoint t;
  double w = 0.0;
};

inline std::vector<WeightedNode> tensor_nodes(const Cell3& cell, const RuleOptions& opt) {
  std::array<AxisRule, 3> ax;
  for (int k = 0; k < 3; ++k) {
    if (opt.graded && opt.graded->axis == k)
      ax[k] = graded_axis(cell.axis[k], opt.order[k], opt.graded->levels, opt.graded->gamma);
    else
      ax[k] = gauss_axis(cell.axis[k], opt.order[k]);
  }
  std::vector<WeightedNode> out;
  out.reserve(ax[0].x.size() * ax[1].x.size() * ax[2].x.size());
  for (std::size_t i = 0; i < ax[0].x.size(); ++i)
    for (std::size_t j = 0; j < ax[1].x.size(); ++j)
      for (std::size_t k = 0; k < ax[2].x.size(); ++k)
        out.push_back({ChartPoint{ax[0].x[i], ax[1].x[j], ax[2].x[k]}, ax[0].w[i] * ax[1].w[j] * ax[2].w[k]});
  return out;
}

inline std::vector<WeightedNode> region_nodes(const Region& region, const RuleOptions& opt) {
  std::vector<WeightedNode> all;
  for (const auto& c : region) {
    auto n = tensor_nodes(c, opt);
    all.insert(all.end(), n.begin(), n.end());
  }
  return all;
}

struct Integral {
  cplx value{};
  double err_est = 0.0;
};

namespace detail {

template <class F>
cplx integrate_nodes(const std::vector<WeightedNode>& nodes, const F& f) {
  return pairwise_sum<cplx>(0, nodes.size(), [&](std::size_t i) {
    const cplx v = cplx(f(nodes[i].t));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::domain_error("integrand returned a non-finite sample");
    return nodes[i].w * v;
  });
}

inline RuleOptions raised(RuleOptions o, int by) {
  for (auto& n : o.order) n = std::min(kMaxGaussOrder, n + by);
  return o;
}

}  // namespace detail

/// Tensor Gauss integral over a region; err_est is the difference to the rule with order + 4.
template <class F>
Integral integrate_box(const Region& region, const F& integrand, const RuleOptions& opt = {}) {
  Integral out;
  out.value = detail::integrate_nodes(region_nodes(region, opt), integrand);
  const cplx finer = detail::integrate_nodes(region_nodes(region, detail::raised(opt, 4)), integrand);
  out.err_est = std::abs(finer - out.value);
  return out;
}

/// 1-D integral of an integrand with a |t|^gamma singularity at t = 0;
/// err_est is the change from dropping the last grading level.
template <class F>
Integral integrate_graded(const Interval& iv, const F& integrand, const GradedScheme& scheme, int order = 16) {
  auto run = [&](int levels) {
    const AxisRule r = graded_axis(iv, order, levels, scheme.gamma);
    return pairwise_sum<cplx>(0, r.x.size(), [&](std::size_t i) {
      const cplx v = cplx(integrand(r.x[i]));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::domain_error("integrand returned a non-finite sample");
      return r.w[i] * v;
    });
  };
  Integral out;
  out.value = run(scheme.levels);
  out.err_est = scheme.levels > 1 ? std::abs(out.value - run(scheme.levels - 1)) : 0.0;
  return out;
}

}  // namespace leray
