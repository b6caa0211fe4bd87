#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "leray/report.hpp"

namespace leray {

/// Least-squares line through (log x, log y). residual is the RMS deviation in log y.
inline PowerFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("power-law fit needs at least two points");
  double sx = 0, sy = 0;
  std::vector<std::pair<double, double>> lg;
  lg.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::invalid_argument("power-law fit needs positive abscissae and values");
    lg.emplace_back(std::log(x), std::log(y));
    sx += lg.back().first;
    sy += lg.back().second;
  }
  const double n = static_cast<double>(lg.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : lg) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("power-law fit needs distinct abscissae");
  PowerFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (const auto& [x, y] : lg) {
    const double r = y - (f.intercept + f.slope * x);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace leray
