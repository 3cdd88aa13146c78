// field.hpp - complex test functions on the chart, with optional analytic partials
#pragma once

#include <array>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "hgcalc/point.hpp"
#include "hgcalc/quasi_norm.hpp"

namespace hgcalc {

/// Value and Euclidean gradient of a field at a point.
struct Jet {
  cplx value{};
  std::array<cplx, kMaxDim> grad{};
};

enum class Smoothness { smooth_everywhere, vanishes_near_origin };

struct FieldTraits {
  Smoothness smoothness = Smoothness::smooth_everywhere;
  /// Support hint in quasi-norm radius: f = 0 for |x| <= r_min (and |x| >= r_max).
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  /// Per-coordinate half-widths outside of which |f|^2 < 1e-16 of its peak.
  std::array<double, kMaxDim> extent{};
  /// Nesting level of finite differences behind the field's values.
  int fd_depth = 0;
  /// Suggested Cartesian panels per half-axis (0: caller decides).
  int resolution = 0;
  /// Family parameters (width, exponent, cutoff radii, ...), echoed into reports.
  std::map<std::string, double> params;
};

class ScalarField {
 public:
  using ValueFn = std::function<cplx(const Point&)>;
  using JetFn = std::function<Jet(const Point&)>;

  ScalarField(std::string id, int dim, ValueFn value, JetFn jet, FieldTraits traits);

  const std::string& id() const { return id_; }
  int dim() const { return dim_; }
  const FieldTraits& traits() const { return traits_; }
  bool vanishes_near_origin() const { return traits_.smoothness == Smoothness::vanishes_near_origin; }

  cplx operator()(const Point& x) const { return value_(x); }
  bool has_partials() const { return static_cast<bool>(jet_); }
  /// Analytic jet when available, otherwise value plus Richardson finite differences.
  Jet jet(const Point& x) const;

  /// Same values, partials forced through finite differences.
  ScalarField without_partials() const;
  ScalarField renamed(std::string id) const;
  /// Attaches a support radius function used for boundary diagnostics in differentiation.
  ScalarField with_radius(std::function<double(const Point&)> radius) const;
  const std::function<double(const Point&)>& radius() const { return radius_; }

 private:
  std::string id_;
  int dim_;
  ValueFn value_;
  JetFn jet_;
  FieldTraits traits_;
  std::function<double(const Point&)> radius_;
};

struct Derivative {
  cplx value{};
  double error_estimate = 0.0;
  /// The stencil straddled a support boundary of the field.
  bool degraded = false;
};

/// df/dx_j at x: analytic partial when the field has one, else central
/// differences at steps h and h/2 combined by Richardson extrapolation.
Derivative partial_derivative(const ScalarField& f, int j, const Point& x);

/// Always the finite-difference path, regardless of analytic partials.
Derivative fd_partial(const ScalarField& f, int j, const Point& x);

// ---------------------------------------------------------------------------
// Building blocks

/// A radial profile g(r) with its derivative, r >= 0.
struct Profile {
  std::function<std::pair<cplx, cplx>(double)> eval;  // (g(r), g'(r))
};

/// C-infinity step: 0 for t <= 0, 1 for t >= 1; ratio of exp(-1/t) splines.
double smooth_step(double t);
double smooth_step_derivative(double t);

ScalarField constant_field(int dim, cplx c);

/// f(x) = g(|x|) with analytic partials through the norm gradient.
ScalarField radial_field(std::string id, const HomogeneousNorm& norm, Profile g, FieldTraits traits);

/// Pointwise product with the product rule for jets (analytic only when both factors are).
ScalarField multiply(const ScalarField& a, const ScalarField& b, std::string id = {});

/// Linear combination a*f + b*g.
ScalarField linear_combination(cplx a, const ScalarField& f, cplx b, const ScalarField& g);

}  // namespace hgcalc
