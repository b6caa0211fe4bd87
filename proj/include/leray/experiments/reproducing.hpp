#pragma once

// C(F|bD)(z) = F(z) on the bounded quartic domain for a few holomorphic polynomials.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "leray/geometry.hpp"
#include "leray/report.hpp"
#include "leray/transform.hpp"

namespace leray {

struct ReproducingConfig {
  std::vector<CPoint2> points{{cplx{0.0}, cplx{0.0, 1.0}},
                              {cplx{0.3, 0.2}, cplx{0.1, 1.1}},
                              {cplx{-0.2, 0.1}, cplx{-0.3, 0.8}}};
  std::vector<HoloPoly> basis{HoloPoly::One, HoloPoly::Z1, HoloPoly::Z2, HoloPoly::Z1Z2, HoloPoly::Z1Sq};
  double margin = 0.05;
  double tolerance = 1e-2;
  std::size_t budget = 10000000;  // kernel evaluations
  PolarRule rule{};
};

inline ExperimentReport reproducing_check(const ReproducingConfig& cfg) {
  const DomainSpec spec = DomainSpec::bounded_quad();
  for (const auto& z : cfg.points)
    if (!(rho(spec, z) < -cfg.margin))
      throw std::invalid_argument("evaluation point is not interior with margin " + format_short(cfg.margin));

  ExperimentReport rep;
  rep.id = "verify-reproducing";
  Json pts = Json::array();
  for (const auto& z : cfg.points) pts.push_back({z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag()});
  Json basis = Json::array();
  for (auto p : cfg.basis) basis.push_back(to_string(p));
  rep.params = Json{{"points", pts},
                    {"basis", basis},
                    {"margin", cfg.margin},
                    {"tolerance", cfg.tolerance},
                    {"rule", {cfg.rule.psi, cfg.rule.phi, cfg.rule.theta}}};
  rep.columns = {"poly", "point", "value_re", "value_im", "expected_re", "expected_im", "abs_err"};

  std::size_t evals = 0;
  for (auto p : cfg.basis) {
    const auto samples = polar_samples(BoundaryFunction::holomorphic(p), cfg.rule);
    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.points.size(); ++k) {
      const CPoint2& z = cfg.points[k];
      const cplx v = evaluate(samples, z).value;
      const cplx e = eval(p, z);
      evals += samples.size();
      Json row;
      row["poly"] = to_string(p);
      row["point"] = k;
      row["value_re"] = v.real();
      row["value_im"] = v.imag();
      row["expected_re"] = e.real();
      row["expected_im"] = e.imag();
      row["abs_err"] = std::abs(v - e);
      rep.rows.push_back(row);
      worst = std::max(worst, std::abs(v - e));
    }
    rep.checks.push_back(check_at_most("max |C(F)(z) - F(z)|, F = " + to_string(p), worst, cfg.tolerance));
  }
  rep.summary["kernel_evals"] = evals;
  rep.checks.push_back(check_at_most("kernel evaluations", static_cast<double>(evals), static_cast<double>(cfg.budget)));
  return rep;
}

}  // namespace leray
