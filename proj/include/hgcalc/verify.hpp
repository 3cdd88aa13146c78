// verify.hpp - both sides of every identity and inequality, evaluated by quadrature
//
// Each check integrates all the quantities it needs in a single multi-channel
// pass over the scheme, then assembles one or more CheckReports.  Identities
// pass when rel_residual <= tolerance; inequalities lhs <= rhs carry a slack
// and pass when slack >= -tolerance.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgcalc/field.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/operators.hpp"
#include "hgcalc/polar.hpp"
#include "hgcalc/quadrature.hpp"
#include "hgcalc/quasi_norm.hpp"

namespace hgcalc {

enum class CheckStatus { pass, fail, skipped, error };

std::string to_string(CheckStatus s);
CheckStatus parse_check_status(const std::string& s);

struct CheckReport {
  std::string check_id;
  /// The relation under test written as a formula.
  std::string paper_ref;
  /// group, quasinorm, field, Q and optionally alpha, variant.
  std::map<std::string, std::string> params;
  cplx lhs{};
  cplx rhs{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  /// Inequalities only: (rhs - lhs) / (1 + max(|lhs|, |rhs|)).
  std::optional<double> slack;
  CheckStatus status = CheckStatus::pass;
  /// Reason for skipped reports, message for errored ones.
  std::string skipped_reason;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::string> notes;

  bool pass() const { return status == CheckStatus::pass; }
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

struct Tolerances {
  double identity = 1e-6;     // relative, analytic partials
  double identity_fd = 1e-5;  // relative, finite-difference partials
  double inequality_slack = 1e-8;
  double pointwise = 1e-7;
  double structural = 1e-12;
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// lhs = rhs.
CheckReport identity_report(std::string check_id, cplx lhs, cplx rhs, double tolerance);
/// lhs <= rhs.
CheckReport inequality_report(std::string check_id, double lhs, double rhs, double slack_tolerance);
CheckReport skipped_report(std::string check_id, std::string reason);

/// Formula string for a check id (empty when unknown).
std::string check_formula(const std::string& check_id);

/// group, quasinorm, field and Q entries shared by all reports on a triple.
std::map<std::string, std::string> triple_params(const GroupSpec& g, const QuasiNorm& qn, const std::string& field);

/// Compact decimal rendering used in params ("0.5", "-2", "1e-06").
std::string format_number(double x);

/// Identity tolerance for f: the finite-difference one when any partial is numerical.
double identity_tolerance(const Tolerances& tol, const ScalarField& f);

// ---------------------------------------------------------------------------
// Uncertainty identities

/// kennard: ||Pf||^2 + ||Mf||^2 = Q||f||^2 + ||Pf + iMf||^2, with the printed
/// minus variant in the diagnostics; kennard.normalized_form; kennard.proof_integral.
std::vector<CheckReport> check_kennard(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                       const PmPairing& pm, const ScalarField& f, const Tolerances& tol = {});

/// heisenberg_kennard: (Q/2)||f||^2 <= ||Pf|| ||Mf|| with the equality probe;
/// heisenberg_kennard.pythagorean: Q||f||^2 <= ||Pf||^2 + ||Mf||^2.
std::vector<CheckReport> check_heisenberg_kennard(const QuadratureScheme& q, const GroupSpec& g,
                                                  const QuasiNorm& qn, const PmPairing& pm, const ScalarField& f,
                                                  const Tolerances& tol = {});

/// {-2, -1, -0.5, 0, (Q-2)/2, 1, 2}, sorted and deduplicated.
std::vector<double> default_alpha_grid(double Q);

CheckReport check_weighted_radial_identity(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                           const ScalarField& f, double alpha, const Tolerances& tol = {});
/// One integration pass for the whole grid.
std::vector<CheckReport> check_weighted_radial_grid(const QuadratureScheme& q, const GroupSpec& g,
                                                    const QuasiNorm& qn, const ScalarField& f,
                                                    std::span<const double> alphas, const Tolerances& tol = {});

/// True for abelian groups with unit weights under the Euclidean norm.
bool euclidean_mode(const GroupSpec& g, const QuasiNorm& qn);

/// hardy: ||f/|x||| <= (2/(Q-2)) ||Rf||; in Euclidean mode also hardy.directional.
std::vector<CheckReport> check_hardy(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                     const ScalarField& f, const Tolerances& tol = {});

/// ckn per alpha (Euclidean mode, f vanishing near the origin):
/// (|n-2-2a|/2) ||f/||x||^{a+1}|| <= ||grad f/||x||^a||; degenerate constants are skipped.
std::vector<CheckReport> check_ckn(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                   const ScalarField& f, std::span<const double> alphas,
                                   const Tolerances& tol = {});

/// hpw: ||f||^2 <= (2/(Q-2)) ||Rf|| |||x|f||, plus hpw.chain_hardy and hpw.chain_holder.
std::vector<CheckReport> check_hpw(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                   const ScalarField& f, const Tolerances& tol = {});

/// euler_pythagoras: ||Ef||^2 = (Q/2)^2||f||^2 + ||Ef + (Q/2)f||^2; euler_pythagoras.corollary.
std::vector<CheckReport> check_euler_pythagoras(const QuadratureScheme& q, const GroupSpec& g,
                                                const ScalarField& f, const Tolerances& tol = {});

/// -i int ([A,B]f) conj(f) = ||Af|| ||Bf|| (2 - ||Af/||Af|| + iBf/||Bf|| ||^2).
/// Both operators must be symmetric on (f, probe) within 1e-6, else precondition-violation.
CheckReport check_symmetric_pair_identity(const QuadratureScheme& q, const OperatorHandle& a,
                                          const OperatorHandle& b, const ScalarField& f, const ScalarField& probe,
                                          const Tolerances& tol = {});

/// rsrc: ||Rf||^2 = ||R_g f||^2 + ((Q-1)(Q-3)/4)||Cf||^2; rsrc.rsc; the three corollary bounds.
std::vector<CheckReport> check_rsrc(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                    const ScalarField& f, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Operator relations

/// Annulus points x with |x| in [lo, hi], deterministic in (seed, k).
std::vector<Point> sample_shell_points(const GroupSpec& g, const QuasiNorm& qn, int count, double lo, double hi,
                                       unsigned seed);

/// [R_g, C]f = i C^2 f at `points` random shell points; reports the worst point.
CheckReport check_commutator(const GroupSpec& g, const QuasiNorm& qn, const ScalarField& f, int points = 100,
                             const Tolerances& tol = {});

/// <Af, h> = <f, Ah> for A = R_g and C; symmetry.negative_control for A = R.
std::vector<CheckReport> check_symmetry(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                        const ScalarField& f, const ScalarField& h, const Tolerances& tol = {});

/// Euler-quotient and orbit-difference radial derivatives at shell points.
CheckReport check_radial_methods(const GroupSpec& g, const QuasiNorm& qn, const ScalarField& f, int points = 50,
                                 const Tolerances& tol = {});

/// -int E|f|^2 = Q||f||^2 for the dilation-weighted E; the other Euler variant in diagnostics.
CheckReport check_euler_variants(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                 const ScalarField& f, const Tolerances& tol = {});

/// 2 Re(Pf . conj(iMf)) = E|f|^2 pointwise for the compatible pairing; the
/// unweighted pairing residual goes to the diagnostics.
CheckReport check_pm_factorization(const GroupSpec& g, const QuasiNorm& qn, const ScalarField& f, int points = 50,
                                   const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Polar decomposition and structure

/// Cartesian int f dx against the polar integral.
CheckReport check_polar(const QuadratureScheme& q, const PolarScheme& ps, const GroupSpec& g, const QuasiNorm& qn,
                        const ScalarField& f, const Tolerances& tol = {});

/// sigma(unit quasi-sphere) against int e^{-|x|^s} dx / (Gamma(Q/s)/s), or the
/// closed form 2 pi^{n/2}/Gamma(n/2) under the Euclidean norm.
CheckReport check_sphere_mass(const QuadratureScheme& q, const PolarScheme& ps, const GroupSpec& g,
                              const QuasiNorm& qn, const ScalarField& qn_radial, const Tolerances& tol = {});

/// structural.{automorphism, associativity, inverse, frame_homogeneity,
/// frame_homogeneity_fd, exp_homogeneity, exp_roundtrip, quasinorm_axioms, frame_change}.
std::vector<CheckReport> check_structural(const GroupSpec& g, const QuasiNorm& qn, const Tolerances& tol = {});

}  // namespace hgcalc
