// sharpness.hpp - approaching the optimal constants with parametrized test functions
//
// Power-law families f = |x|^{-a+eps} chi(ln|x|) are integrated with a
// logarithmic polar rule; chi is a C-infinity plateau on |t| <= T/2 with
// ramps of width T/2, so the family is quasi-radial and vanishes near 0 and
// infinity.  The HK search uses Gaussians exp(-e^s ||x||^2)(1 + eta x_1^2)
// on the Cartesian scheme, widths scaled by 1/nu_j.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hgcalc/group.hpp"
#include "hgcalc/quasi_norm.hpp"

namespace hgcalc {

enum class SharpnessTarget { hardy, ckn, hk, hpw, euler_corollary };

std::string to_string(SharpnessTarget t);
SharpnessTarget parse_sharpness_target(const std::string& s);

struct FamilyParam {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
};

struct SharpnessOptions {
  int budget = 200;  // functional evaluations
  double alpha = 1.0;  // ckn only
  /// Overrides the default search box when non-empty (matched by name).
  std::vector<FamilyParam> ranges;
  int radial_panels = 40;
  /// Cycles stop once a full sweep improves the ratio by less than this (relative).
  double stall_tol = 1e-9;
};

struct SharpnessResult {
  std::string inequality_id;
  std::string group;
  std::string quasinorm;
  std::string family;
  /// The optimal constant the ratio is compared with.
  double constant_paper = 0.0;
  /// "maximize": the ratio is bounded above by the constant; "minimize": below.
  std::string direction;
  double best_ratio = 0.0;
  std::map<std::string, double> best_params;
  /// Best ratio after each evaluation; monotone in the search direction.
  std::vector<double> trace;
  int evaluations = 0;
  bool converged = false;
  /// |best_ratio / constant - 1|.
  double relative_gap = 0.0;
  /// best_ratio never crosses the constant by more than 1e-6 relative.
  bool respects_constant = true;
};

/// Search box used when SharpnessOptions::ranges is empty.
std::vector<FamilyParam> default_family(SharpnessTarget t);

/// The optimal constant for (t, g) and the search direction.
std::pair<double, std::string> sharp_constant(SharpnessTarget t, const GroupSpec& g, double alpha);

/// One evaluation of the ratio at family parameters `p`.
double sharpness_ratio(SharpnessTarget t, const GroupSpec& g, const QuasiNorm& qn,
                       const std::map<std::string, double>& p, const SharpnessOptions& opt = {});

/// Golden-section line searches cycling through the family parameters.
SharpnessResult sharpness_search(SharpnessTarget t, const GroupSpec& g, const QuasiNorm& qn,
                                 const SharpnessOptions& opt = {});

}  // namespace hgcalc
