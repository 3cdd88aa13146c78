// quasi_norm.hpp - homogeneous quasi-norms |x| with |D_lambda x| = lambda |x|
#pragma once

#include <array>
#include <string>

#include "hgcalc/group.hpp"
#include "hgcalc/point.hpp"

namespace hgcalc {

enum class QuasiNormKind { p_family, koranyi, euclidean };

/// Description of a quasi-norm independent of any group.
///
/// p_family:  |x| = (sum_j |x_j|^{p/nu_j})^{1/p},  p >= 1
/// koranyi:   |x| = ((x_1^2 + x_2^2)^2 + x_3^2)^{1/4}  (Heisenberg only)
/// euclidean: |x| = sqrt(sum_j x_j^2)  (isotropic unit weights only)
class QuasiNorm {
 public:
  static QuasiNorm p_family(double p);
  static QuasiNorm koranyi();
  static QuasiNorm euclidean();

  QuasiNormKind kind() const { return kind_; }
  double p() const { return p_; }
  /// Stable identifier, e.g. "p4", "koranyi", "euclidean".
  std::string id() const;

 private:
  QuasiNorm(QuasiNormKind k, double p) : kind_(k), p_(p) {}
  QuasiNormKind kind_;
  double p_;
};

/// Parses an id produced by QuasiNorm::id ("euclidean", "koranyi", "p<value>").
QuasiNorm parse_quasi_norm(const std::string& id);

/// Empty if the pairing is valid, else the reason it is not.
std::string incompatibility(const QuasiNorm& qn, const GroupSpec& g);

/// A quasi-norm bound to a group: pairing validated once, exponents
/// precomputed, value and gradient cheap enough for quadrature loops.
class HomogeneousNorm {
 public:
  HomogeneousNorm(const QuasiNorm& qn, const GroupSpec& g);

  const QuasiNorm& spec() const { return qn_; }
  int dim() const { return n_; }
  std::span<const double> weights() const { return {nu_.data(), static_cast<std::size_t>(n_)}; }

  double operator()(const Point& x) const;
  /// Value and Euclidean gradient; the gradient is zero at the origin.
  double value_and_gradient(const Point& x, std::array<double, kMaxDim>& grad) const;
  /// The integer m for which |x|^m is the most regular power of the norm
  /// (p for p_family, 4 for koranyi, 2 for euclidean).
  double smooth_power() const;

 private:
  QuasiNorm qn_;
  int n_ = 0;
  std::array<double, kMaxDim> nu_{};
  std::array<double, kMaxDim> expo_{};  // p / nu_j
  std::array<int, kMaxDim> int_expo_{};  // p / nu_j when it is an integer, else -1
};

/// |x| with a compatibility check on every call.
double quasi_norm(const QuasiNorm& qn, const GroupSpec& g, const Point& x);

}  // namespace hgcalc
