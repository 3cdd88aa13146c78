// group_io.hpp - JSON description of user-defined homogeneous groups
//
// {
//   "name": "my_group", "n": 3, "nu": [1, 1, 2],
//   "product":     [poly, ...]            n polynomials in x_1..x_n, y_1..y_n
//   "inverse":     [poly, ...]            optional, solved from the law if absent
//   "frame":       [[poly, ...], ...]     row j = coefficients of X_j
//   "exp_inverse": [poly, ...]
// }
// with poly = [{"coef": c, "pow": [k_1, ..., k_m]}, ...].
#pragma once

#include <string>

#include <json.hpp>

#include "hgcalc/group.hpp"

namespace hgcalc {

GroupSpec group_from_json(const nlohmann::json& doc);
nlohmann::json group_to_json(const GroupSpec& g);
GroupSpec load_group_file(const std::string& path);

/// Solves product(x, y) = 0 for y in order of increasing weight.  Requires
/// product_k = x_k + y_k + (terms in x and lower-weight y).
std::vector<Polynomial> solve_inverse(const std::vector<Polynomial>& product, std::span<const double> nu);

}  // namespace hgcalc
