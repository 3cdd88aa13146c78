// point.hpp - fixed-capacity coordinate vectors used on every hot path
#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>

namespace hgcalc {

using cplx = std::complex<double>;

/// Largest group dimension the kernel handles.
inline constexpr int kMaxDim = 4;

/// Coordinates of a group element in the chart where dilations are diagonal.
struct Point {
  std::array<double, kMaxDim> c{};
  int n = 0;

  Point() = default;
  explicit Point(int dim) : n(dim) { assert(dim >= 0 && dim <= kMaxDim); }
  Point(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
    assert(n <= kMaxDim);
    int i = 0;
    for (double x : xs) c[i++] = x;
  }

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
  int size() const { return n; }

  std::span<double> span() { return {c.data(), static_cast<std::size_t>(n)}; }
  std::span<const double> span() const { return {c.data(), static_cast<std::size_t>(n)}; }

  bool all_finite() const {
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(c[i])) return false;
    return true;
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
      if (a.c[i] != b.c[i]) return false;
    return true;
  }
};

/// Lie-algebra coordinates (e.g. exponential coordinates e(x)).
using Vector = Point;

inline double max_abs_diff(const Point& a, const Point& b) {
  assert(a.n == b.n);
  double m = 0.0;
  for (int i = 0; i < a.n; ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

/// Complex n-vector, the value type of vector-valued operators (position, momentum).
struct CVector {
  std::array<cplx, kMaxDim> c{};
  int n = 0;

  CVector() = default;
  explicit CVector(int dim) : n(dim) {}

  cplx& operator[](int i) { return c[i]; }
  const cplx& operator[](int i) const { return c[i]; }
  int size() const { return n; }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::norm(c[i]);
    return s;
  }
};

/// Sum_j a_j * conj(b_j).
inline cplx dot_conj(const CVector& a, const CVector& b) {
  cplx s{};
  for (int i = 0; i < a.n; ++i) s += a.c[i] * std::conj(b.c[i]);
  return s;
}

}  // namespace hgcalc
