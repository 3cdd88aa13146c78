// catalog.hpp - shipped groups, their quasi-norms, and the standard field battery
#pragma once

#include <string>
#include <vector>

#include "hgcalc/field.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/polar.hpp"
#include "hgcalc/quadrature.hpp"
#include "hgcalc/quasi_norm.hpp"

namespace hgcalc {

/// r3_isotropic, r3_aniso_123, r2_aniso_12, heisenberg.
std::vector<std::string> shipped_group_ids();

/// A shipped id, or a path to a JSON group file.
GroupSpec resolve_group(const std::string& id_or_path);

/// Quasi-norms shipped with a group (every one compatible with it).
std::vector<QuasiNorm> shipped_quasi_norms(const GroupSpec& g);

std::vector<std::string> battery_field_ids();
bool is_annulus_field(const std::string& id);

/// The eight standard fields for (g, qn); annulus and quasi-radial fields use qn.
std::vector<ScalarField> standard_battery(const GroupSpec& g, const QuasiNorm& qn);
ScalarField battery_field(const GroupSpec& g, const QuasiNorm& qn, const std::string& id);

/// Ramp profile shared by the annulus fields: zero below `start`, one above `start + width`.
struct AnnulusRamp {
  double start = 0.2;
  double width = 1.8;
  double value(double r) const;
  double derivative(double r) const;
};

/// Cartesian scheme sized from the fields' extents and resolution hints.
QuadratureScheme scheme_for(const GroupSpec& g, std::span<const ScalarField> fields, double target_tol = 1e-6,
                            int workers = 1);
QuadratureScheme scheme_for(const GroupSpec& g, const ScalarField& f, double target_tol = 1e-6, int workers = 1);

/// Polar scheme covering the fields' extents, linear radial rule.
PolarScheme polar_scheme_for(const GroupSpec& g, const QuasiNorm& qn, std::span<const ScalarField> fields,
                             int workers = 1);

}  // namespace hgcalc
