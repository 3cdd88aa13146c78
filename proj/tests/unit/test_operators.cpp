#include <doctest.h>

#include <cmath>
#include <random>

#include "hgcalc/catalog.hpp"
#include "hgcalc/error.hpp"
#include "hgcalc/operators.hpp"
#include "hgcalc/verify.hpp"
#include "support.hpp"

using namespace hgcalc;

namespace {

ScalarField coordinate_field(int n, int j) {
  FieldTraits t;
  return ScalarField(
      "x" + std::to_string(j + 1), n, [j](const Point& x) -> cplx { return x[j]; },
      [j](const Point&) {
        Jet jet;
        jet.grad[j] = 1.0;
        return jet;
      },
      t);
}

}  // namespace

TEST_CASE("euler variants disagree on the heisenberg x3 coordinate") {
  const GroupSpec h = GroupSpec::heisenberg();
  const ScalarField x3 = coordinate_field(3, 2);
  const Point x{0.4, -0.3, 1.7};
  CHECK(euler_apply(EulerVariant::dilation_weighted, h, x3, x) == cplx(2 * 1.7));
  CHECK(euler_apply(EulerVariant::paper_example, h, x3, x) == cplx(1.7));
}

TEST_CASE("position and momentum on the isotropic gaussian") {
  const GroupSpec g = resolve_group("r3_isotropic");
  const ScalarField f = battery_field(g, QuasiNorm::euclidean(), "gauss");
  const Point x{0.3, -0.5, 0.8};
  const CVector p = position_apply(PositionVariant::coordinate, g, f, x);
  const CVector m = momentum_apply(MomentumVariant::plain_gradient, g, f, x);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(p[j] - x[j] * f(x)) < 1e-14);
    // iMf = grad f = -x f
    CHECK(std::abs(cplx(0, 1) * m[j] + x[j] * f(x)) < 1e-12);
  }
}

TEST_CASE("radial derivative of a quasi-radial profile, both methods") {
  std::mt19937_64 rng(29);
  for (const auto& g : hgtest::shipped_groups()) {
    for (const auto& qn : shipped_quasi_norms(g)) {
      const HomogeneousNorm norm(qn, g);
      const ScalarField f = radial_field(
          "bump", norm, Profile{[](double r) -> std::pair<cplx, cplx> {
            return {std::exp(-r * r), -2.0 * r * std::exp(-r * r)};
          }},
          FieldTraits{});
      CAPTURE(g.name());
      CAPTURE(qn.id());
      for (int k = 0; k < 10; ++k) {
        const Point x = hgtest::random_point(rng, g.dim());
        const double r = norm(x);
        const cplx want = -2.0 * r * std::exp(-r * r);
        CHECK(std::abs(radial_apply(RadialMethod::euler_quotient, g, norm, f, x) - want) < 1e-12);
        CHECK(std::abs(radial_apply(RadialMethod::orbit_fd, g, norm, f, x) - want) < 1e-8);
      }
    }
  }
}

TEST_CASE("commutator [R_g, C] = i C^2 pointwise") {
  std::mt19937_64 rng(31);
  for (const auto& g : hgtest::shipped_groups()) {
    const QuasiNorm qn = shipped_quasi_norms(g).front();
    const HomogeneousNorm norm(qn, g);
    const ScalarField f = battery_field(g, qn, "annulus_osc");
    const auto rg = dilation_generator_operator(g, norm), c = coulomb_operator(norm);
    for (const Point& x : sample_shell_points(g, qn, 20, 0.5, 1.5, 41)) {
      const cplx lhs = operator_commutator(rg, c, f, x);
      const cplx rhs = cplx(0, 1) * f(x) / (norm(x) * norm(x));
      CHECK(std::abs(lhs - rhs) < 1e-7 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("pm factorization holds for the compatible pairing only") {
  std::mt19937_64 rng(37);
  for (const auto& g : hgtest::shipped_groups()) {
    const ScalarField f = battery_field(g, shipped_quasi_norms(g).front(), "complex_gauss");
    const PmPairing pm = compatible_pairing(g);
    CAPTURE(g.name());
    for (int k = 0; k < 10; ++k) {
      const Point x = hgtest::random_point(rng, g.dim(), 1.0);
      CHECK(pm_factorization_residual(g, pm, f, x).second < 1e-9);
    }
  }
  // Unweighted pairing on an anisotropic group misses the weights.
  const GroupSpec a = resolve_group("r3_aniso_123");
  const ScalarField f = battery_field(a, QuasiNorm::p_family(6), "gauss");
  const PmPairing plain{PositionVariant::coordinate, MomentumVariant::plain_gradient};
  CHECK(pm_factorization_residual(a, plain, f, {0.5, 0.5, 0.5}).second > 1e-3);
}

TEST_CASE("operator lookup by name") {
  const GroupSpec h = GroupSpec::heisenberg();
  const HomogeneousNorm norm(QuasiNorm::koranyi(), h);
  for (const char* n : {"C", "C2", "E", "E.paper_example", "R", "R.orbit_fd", "Rg", "I"})
    CHECK_NOTHROW(operator_by_name(n, h, norm));
  CHECK_THROWS_AS(operator_by_name("nope", h, norm), Error);
}
