// group.hpp - homogeneous groups on R^n with diagonal dilations
#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hgcalc/point.hpp"
#include "hgcalc/polynomial.hpp"

namespace hgcalc {

class ScalarField;

/// Dilation exponents nu_1..nu_n and the homogeneous dimension Q = sum nu_j.
class DilationWeights {
 public:
  DilationWeights() = default;
  explicit DilationWeights(std::vector<double> nu);

  int size() const { return static_cast<int>(nu_.size()); }
  double operator[](int j) const { return nu_[j]; }
  std::span<const double> nu() const { return nu_; }
  double homogeneous_dimension() const { return q_; }
  bool isotropic() const;

 private:
  std::vector<double> nu_;
  double q_ = 0.0;
};

enum class GroupKind { abelian, heisenberg, custom };

std::string to_string(GroupKind k);

/// Polynomial description of a homogeneous group in its diagonal chart.
///
/// The frame is stored as coefficients c_{j,k}(x) with
/// X_j f = sum_k c_{j,k}(x) df/dx_k.  `exp_inverse` gives e(x), the
/// coordinates of exp^{-1}(x) in the basis X_1..X_n.
struct GroupData {
  std::string name;
  std::vector<double> nu;
  std::vector<Polynomial> product;      // n polynomials in 2n variables (x then y)
  std::vector<Polynomial> inverse;      // n polynomials in n variables
  PolynomialMatrix frame;               // n x n polynomials in n variables
  std::vector<Polynomial> exp_inverse;  // n polynomials in n variables
};

class GroupSpec {
 public:
  /// R^n with coordinatewise addition and arbitrary positive weights.
  static GroupSpec abelian(std::vector<double> nu, std::string name = {});
  /// The Heisenberg group on R^3, nu = (1,1,2), with frame
  /// X_1 = d1 + 2 x2 d3, X_2 = d2 - 2 x1 d3, X_3 = -4 d3.
  static GroupSpec heisenberg();
  /// User-supplied group; every structural invariant is validated on
  /// sampled points before the spec is returned.
  static GroupSpec custom(GroupData data);

  const std::string& name() const { return data_.name; }
  int dim() const { return weights_.size(); }
  GroupKind kind() const { return kind_; }
  const DilationWeights& weights() const { return weights_; }
  double homogeneous_dimension() const { return weights_.homogeneous_dimension(); }
  const GroupData& data() const { return data_; }

  Point origin() const { return Point(dim()); }
  Point product(const Point& x, const Point& y) const;
  Point inverse(const Point& x) const;
  Vector exp_inverse(const Point& x) const;
  /// Row j holds the coefficients of X_j at x.
  std::array<std::array<double, kMaxDim>, kMaxDim> frame_at(const Point& x) const;
  /// (X_j f)(x) from the Euclidean gradient of f at x.
  cplx apply_frame(int j, const Point& x, std::span<const cplx> gradient) const;

 private:
  GroupSpec(GroupData data, GroupKind kind);

  GroupData data_;
  DilationWeights weights_;
  GroupKind kind_ = GroupKind::custom;
};

/// D_lambda(x) = (lambda^{nu_1} x_1, ..., lambda^{nu_n} x_n); lambda must be positive.
Point dilate(const GroupSpec& g, double lambda, const Point& x);

Point group_product(const GroupSpec& g, const Point& x, const Point& y);

/// e(x), the exponential coordinates of x.
Vector exp_coords(const GroupSpec& g, const Point& x);

/// Time-one flow from the origin of sum_j a_j X_j (adaptive Runge-Kutta-Fehlberg 7(8)).
Point exp_map(const GroupSpec& g, const Vector& a);

/// (X_j f)(x) for 0-based j; uses analytic partials of f when present.
cplx vector_field_apply(const GroupSpec& g, int j, const ScalarField& f, const Point& x);

/// Polynomials P with d/dx_j = sum_k P_{j,k} X_k.  Off-diagonal entries are
/// the p_{j,k} (nonzero only for nu_k > nu_j, weighted degree nu_k - nu_j);
/// the diagonal holds the constant 1/c_{j,j}.
PolynomialMatrix frame_change_polynomials(const GroupSpec& g);

}  // namespace hgcalc
