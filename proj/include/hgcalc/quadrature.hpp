// quadrature.hpp - tensor-product composite Gauss-Legendre integration on R^n
//
// Haar measure is Lebesgue measure in the diagonal chart, so every L^2
// quantity is an ordinary Cartesian integral over a truncated box.  Each
// axis is split at 0 into uniform panels in a graded variable s with
// x = sgn(s)|s|^g; choosing g = nu_j makes a quasi-ball look isotropic
// in s and keeps kinks of |x_j|^{p/nu_j} on panel boundaries.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hgcalc/field.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/point.hpp"

namespace hgcalc {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int order);

/// Composite rule on [-half_width, half_width]: `panels_per_half` uniform
/// panels on each side of 0 in s, mapped by x = sgn(s)|s|^grade.
Rule1D composite_axis_rule(double half_width, int panels_per_half, int order, double grade);

struct AxisSpec {
  double half_width = 1.0;  // truncation radius in x
  int panels_per_half = 4;
  int order = 8;
  double grade = 1.0;
};

/// Pointwise integrand writing k real channels at each node.
using Integrand = std::function<void(const Point&, std::span<double>)>;

struct IntegrationResult {
  std::vector<double> value;
  /// Per channel, from the rule at N, 3N/4 and N/2 panels per half-axis.
  std::vector<double> error_estimate;
};

/// Pairwise summation with a fixed association order.
double pairwise_sum(std::span<const double> xs);

class QuadratureScheme {
 public:
  QuadratureScheme(std::vector<AxisSpec> axes, double target_tol = 1e-6, int workers = 1);

  /// Box covering the extents of `fields`, graded by the group weights.
  static QuadratureScheme for_fields(const GroupSpec& g, std::span<const ScalarField> fields,
                                     int panels_per_half, int order, double target_tol = 1e-6,
                                     int workers = 1);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<AxisSpec>& axes() const { return axes_; }
  double target_tol() const { return target_tol_; }
  int workers() const { return workers_; }
  std::size_t node_count() const;
  const Rule1D& axis_rule(int axis) const { return fine_[axis]; }
  /// Whether verification passes run the coarser rules for an error estimate.
  bool error_estimates() const { return estimates_; }
  void set_error_estimates(bool on) { estimates_ = on; }

  /// Integrates k channels; the reduction order is fixed by node index and
  /// independent of the worker count.
  IntegrationResult integrate(const Integrand& fn, int k, bool estimate_error = true) const;

  /// Throws truncation-error when |f|^2 on the box faces exceeds 1e-16 of its interior peak.
  void require_decay(const ScalarField& f) const;

  std::string describe() const;

 private:
  std::vector<double> run(const std::vector<Rule1D>& rules, const Integrand& fn, int k) const;

  std::vector<AxisSpec> axes_;
  double target_tol_;
  int workers_;
  bool estimates_ = true;
  std::vector<Rule1D> fine_;
  std::vector<Rule1D> coarse_;
  std::vector<Rule1D> coarsest_;
};

/// <f, h> = int f conj(h) dx.
cplx l2_inner(const QuadratureScheme& q, const ScalarField& f, const ScalarField& h);
double l2_norm(const QuadratureScheme& q, const ScalarField& f);

/// Worker count from HGCALC_THREADS, else hardware concurrency.
int default_worker_count();

}  // namespace hgcalc
