// polynomial.hpp - sparse real multivariate polynomials
//
// Group laws, frame coefficients and exponential coordinates of the shipped
// groups are all polynomial in the diagonal chart, so one sparse
// representation serves built-in and user-defined groups alike.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hgcalc {

inline constexpr int kMaxPolyVars = 8;

struct Monomial {
  double coef = 0.0;
  std::array<std::uint8_t, kMaxPolyVars> pow{};
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars);

  static Polynomial constant(int nvars, double c);
  /// The coordinate function x_var.
  static Polynomial variable(int nvars, int var);
  /// coef * prod_i x_i^{pow[i]}.
  static Polynomial monomial(int nvars, double coef, std::span<const int> pow);

  int nvars() const { return nvars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the polynomial has no non-constant terms.
  bool is_constant() const;
  double constant_term() const;

  double operator()(std::span<const double> x) const;

  Polynomial derivative(int var) const;
  /// Substitutes x_i -> scale[i] * x_i.
  Polynomial scaled(std::span<const double> scale) const;

  /// Weighted degrees sum_i pow_i * w_i of every term; empty for the zero polynomial.
  std::vector<double> weighted_degrees(std::span<const double> weights) const;
  /// True iff every term has weighted degree `degree` (the zero polynomial is homogeneous of any degree).
  bool is_weighted_homogeneous(std::span<const double> weights, double degree,
                               double tol = 1e-12) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void canonicalize();

  int nvars_ = 0;
  std::vector<Monomial> terms_;
};

using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

/// p(q_1, ..., q_m) where m = p.nvars(); every q_i must share one variable count.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> args);

}  // namespace hgcalc
