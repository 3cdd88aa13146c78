// operators.hpp - position, momentum, Euler, radial, Coulomb and dilation-generator operators
//
// Operators act lazily: applying one to a field yields a derived field that
// evaluates pointwise.  Derived fields keep analytic partials where the
// product rule suffices and fall back to nested finite differences otherwise.
#pragma once

#include <functional>
#include <string>
#include <utility>

#include "hgcalc/field.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/quadrature.hpp"
#include "hgcalc/quasi_norm.hpp"

namespace hgcalc {

enum class PositionVariant { coordinate, exp_coordinate };
enum class MomentumVariant { plain_gradient, weighted_gradient, weighted_frame };
enum class EulerVariant { dilation_weighted, paper_example };
enum class RadialMethod { euler_quotient, orbit_fd };

std::string to_string(PositionVariant v);
std::string to_string(MomentumVariant v);
std::string to_string(EulerVariant v);
std::string to_string(RadialMethod v);

struct PmPairing {
  PositionVariant position = PositionVariant::coordinate;
  MomentumVariant momentum = MomentumVariant::plain_gradient;
};

std::string to_string(const PmPairing& p);

/// The pairing whose factorisation residual vanishes against the canonical
/// Euler operator: coordinate/plain on isotropic abelian groups,
/// coordinate/weighted on anisotropic abelian ones, exp/frame otherwise.
PmPairing compatible_pairing(const GroupSpec& g);

CVector position_apply(PositionVariant v, const GroupSpec& g, const ScalarField& f, const Point& x);
CVector momentum_apply(MomentumVariant v, const GroupSpec& g, const ScalarField& f, const Point& x);
cplx euler_apply(EulerVariant v, const GroupSpec& g, const ScalarField& f, const Point& x);
cplx radial_apply(RadialMethod m, const GroupSpec& g, const HomogeneousNorm& norm, const ScalarField& f,
                  const Point& x);
cplx coulomb_apply(const HomogeneousNorm& norm, const ScalarField& f, const Point& x);
cplx dilation_generator_apply(const GroupSpec& g, const HomogeneousNorm& norm, const ScalarField& f,
                              const Point& x);

// Pointwise kernels shared by the operators above and by the verification
// integrands; they take an already evaluated jet.

CVector position_from_jet(PositionVariant v, const GroupSpec& g, const Point& x, const Jet& j);
CVector momentum_from_jet(MomentumVariant v, const GroupSpec& g, const Point& x, const Jet& j);
/// sum_j nu_j x_j df/dx_j.
cplx euler_from_jet(const GroupSpec& g, const Point& x, const Jet& j);

/// Scalar operator acting on fields.
class OperatorHandle {
 public:
  using Transform = std::function<ScalarField(const ScalarField&)>;

  OperatorHandle(std::string name, std::string variant, Smoothness needs, Transform t)
      : name_(std::move(name)), variant_(std::move(variant)), requires_(needs), transform_(std::move(t)) {}

  const std::string& name() const { return name_; }
  const std::string& variant() const { return variant_; }
  Smoothness required_smoothness() const { return requires_; }

  ScalarField operator()(const ScalarField& f) const { return transform_(f); }
  cplx apply(const ScalarField& f, const Point& x) const { return transform_(f)(x); }

 private:
  std::string name_;
  std::string variant_;
  Smoothness requires_;
  Transform transform_;
};

OperatorHandle coulomb_operator(const HomogeneousNorm& norm);
OperatorHandle euler_operator(const GroupSpec& g, EulerVariant v = EulerVariant::dilation_weighted);
OperatorHandle radial_operator(const GroupSpec& g, const HomogeneousNorm& norm,
                               RadialMethod m = RadialMethod::euler_quotient);
OperatorHandle dilation_generator_operator(const GroupSpec& g, const HomogeneousNorm& norm);
/// Multiplication by |x|^power.
OperatorHandle norm_power_operator(const HomogeneousNorm& norm, double power);
OperatorHandle identity_operator();

/// Resolves "C", "E", "E.paper_example", "R", "R.orbit_fd", "Rg", "C2", "I".
OperatorHandle operator_by_name(const std::string& name, const GroupSpec& g, const HomogeneousNorm& norm);

/// A(B f)(x) - B(A f)(x).
cplx operator_commutator(const OperatorHandle& a, const OperatorHandle& b, const ScalarField& f, const Point& x);

/// |<Af, h> - <f, Ah>| / (1 + |<Af, h>|).
double symmetry_residual(const QuadratureScheme& q, const OperatorHandle& a, const ScalarField& f,
                         const ScalarField& h);

/// (|2 Re(Pf . conj(iMf)) - (P o iM)|f|^2|, |(P o iM)|f|^2 - E|f|^2|) at x.
std::pair<double, double> pm_factorization_residual(const GroupSpec& g, const PmPairing& pm, const ScalarField& f,
                                                    const Point& x);

}  // namespace hgcalc
