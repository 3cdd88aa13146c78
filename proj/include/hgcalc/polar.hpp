// polar.hpp - polar decomposition dx = r^{Q-1} dr dsigma(y) over the unit quasi-sphere
//
// The quasi-sphere is charted through the Euclidean sphere: for angles theta,
// u(theta) is a unit Euclidean vector and y(theta) = D_{1/|u|} u lies on
// {|y| = 1}.  With x = D_r y(theta) the Jacobian factors as
// r^{Q-1} |det[nu o y, dy/dtheta]|, so the second factor is the density of
// sigma in the chart.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "hgcalc/field.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/quadrature.hpp"
#include "hgcalc/quasi_norm.hpp"

namespace hgcalc {

enum class RadialSpacing { linear, logarithmic };

struct RadialRule {
  double r_lo = 0.0;  // must be > 0 for logarithmic spacing
  double r_hi = 1.0;
  int panels = 16;
  int order = 10;
  RadialSpacing spacing = RadialSpacing::linear;
};

struct SphereNode {
  Point y;        // point on the unit quasi-sphere
  double weight;  // angular quadrature weight times sigma density
};

class PolarScheme {
 public:
  PolarScheme(const GroupSpec& g, const QuasiNorm& qn, RadialRule radial, int angular_panels_per_quarter,
              int angular_order, int workers = 1);

  /// Radial range covering every field's extent box.
  static PolarScheme for_fields(const GroupSpec& g, const QuasiNorm& qn, std::span<const ScalarField> fields,
                                int radial_panels, int angular_panels_per_quarter, int order, int workers = 1);

  double homogeneous_dimension() const { return q_; }
  const RadialRule& radial() const { return radial_; }
  const std::vector<SphereNode>& sphere_nodes() const { return sphere_; }
  /// sigma(unit quasi-sphere).
  double sphere_mass() const { return mass_; }
  std::size_t node_count() const { return sphere_.size() * r_nodes_.size(); }

  /// int_0^inf int_sphere fn(D_r y) r^{Q-1} dsigma(y) dr, k channels,
  /// deterministic reduction.
  std::vector<double> integrate(const Integrand& fn, int k) const;

  std::string describe() const;

 private:
  GroupSpec group_;
  QuasiNorm qn_;
  RadialRule radial_;
  int angular_panels_;
  int angular_order_;
  int workers_;
  double q_;
  std::vector<SphereNode> sphere_;
  std::vector<double> r_nodes_, r_weights_;
  double mass_ = 0.0;
};

/// Unit Euclidean sphere chart u(theta) in hyperspherical angles
/// (theta_1..theta_{n-2} in [0, pi], theta_{n-1} in [0, 2 pi)).
Point sphere_chart(int n, std::span<const double> theta);

/// Density of sigma at chart angles theta.  Throws chart-degenerate where the
/// Euclidean chart itself is singular (poles).
double sphere_measure_density(const QuasiNorm& qn, const GroupSpec& g, std::span<const double> theta);

/// Same density with the Jacobian of y(theta) taken by central differences,
/// used to cross-check the analytic chain rule.
double sphere_measure_density_fd(const QuasiNorm& qn, const GroupSpec& g, std::span<const double> theta);

cplx polar_integral(const PolarScheme& ps, const ScalarField& f);

/// |Cartesian - polar| / (1 + |Cartesian|) for int f dx.
double polar_identity_residual(const QuadratureScheme& q, const PolarScheme& ps, const ScalarField& f);

}  // namespace hgcalc
