#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace leray {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Point of C^2 as two complex coordinates z_j = x_j + i y_j.
struct CPoint2 {
  cplx z1{};
  cplx z2{};

  constexpr cplx operator[](int j) const { return j == 0 ? z1 : z2; }

  friend CPoint2 operator+(const CPoint2& a, const CPoint2& b) { return {a.z1 + b.z1, a.z2 + b.z2}; }
  friend CPoint2 operator-(const CPoint2& a, const CPoint2& b) { return {a.z1 - b.z1, a.z2 - b.z2}; }

  bool finite() const {
    return std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::isfinite(z2.real()) &&
           std::isfinite(z2.imag());
  }
};

/// Holomorphic covector (d rho / d z_j) or a complex tangent vector.
using CVector2 = std::array<cplx, 2>;

/// 2x2 complex matrix, row-major: m[j][k].
using CMatrix2 = std::array<std::array<cplx, 2>, 2>;

/// <a, b> = a_1 b_1 + a_2 b_2 (no conjugation: the Leray pairing).
inline cplx pair(const CVector2& a, const CPoint2& b) { return a[0] * b.z1 + a[1] * b.z2; }

/// Real coordinates (x1, y1, x2, y2).
inline std::array<double, 4> to_real(const CPoint2& z) {
  return {z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag()};
}

inline CPoint2 from_real(const std::array<double, 4>& r) { return {{r[0], r[1]}, {r[2], r[3]}}; }

/// Boundary point in graph-chart coordinates (t1, t2, t3) = (x1, y1, x2).
struct ChartPoint {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  constexpr double operator[](int k) const { return k == 0 ? t1 : (k == 1 ? t2 : t3); }
};

/// Raised when the Cauchy-Leray kernel is evaluated too close to its singular set.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a chart is asked for a point outside its parameter range.
class ChartRangeError : public std::domain_error {
 public:
  explicit ChartRangeError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace leray
