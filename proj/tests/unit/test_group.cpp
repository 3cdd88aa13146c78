#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "hgcalc/error.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/group_io.hpp"
#include "hgcalc/quasi_norm.hpp"
#include "support.hpp"

using namespace hgcalc;

TEST_CASE("heisenberg law, inverse and frame against closed forms") {
  const GroupSpec h = GroupSpec::heisenberg();
  CHECK(h.homogeneous_dimension() == 4.0);

  // (x1+y1, x2+y2, x3+y3+2(x2 y1 - x1 y2))
  const Point p = h.product({1, 2, 3}, {4, 5, 6});
  CHECK(p[0] == 5.0);
  CHECK(p[1] == 7.0);
  CHECK(p[2] == doctest::Approx(6 + 3 + 2 * (2 * 4 - 1 * 5)));

  const Point inv = h.inverse({1.5, -2.0, 0.25});
  CHECK(inv[0] == -1.5);
  CHECK(inv[1] == 2.0);
  CHECK(inv[2] == -0.25);

  const auto fr = h.frame_at({1.0, 2.0, 3.0});
  CHECK(fr[0][0] == 1.0);
  CHECK(fr[0][2] == doctest::Approx(4.0));   // 2 x2
  CHECK(fr[1][1] == 1.0);
  CHECK(fr[1][2] == doctest::Approx(-2.0));  // -2 x1
  CHECK(fr[2][2] == doctest::Approx(-4.0));

  const Vector e = exp_coords(h, {1.0, 2.0, 8.0});
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(2.0));
  CHECK(e[2] == doctest::Approx(-2.0));
}

TEST_CASE("group axioms and dilation automorphism on random points") {
  std::mt19937_64 rng(7);
  for (const auto& g : hgtest::shipped_groups()) {
    CAPTURE(g.name());
    const int n = g.dim();
    for (int k = 0; k < 50; ++k) {
      const Point x = hgtest::random_point(rng, n), y = hgtest::random_point(rng, n), z = hgtest::random_point(rng, n);
      const double lam = std::exp(std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
      CHECK(max_abs_diff(g.product(g.product(x, y), z), g.product(x, g.product(y, z))) < 1e-12);
      CHECK(max_abs_diff(g.product(x, g.inverse(x)), g.origin()) < 1e-12);
      CHECK(max_abs_diff(dilate(g, lam, g.product(x, y)), g.product(dilate(g, lam, x), dilate(g, lam, y))) < 1e-12);
    }
  }
}

TEST_CASE("exp map round trip") {
  std::mt19937_64 rng(11);
  for (const auto& g : hgtest::shipped_groups()) {
    CAPTURE(g.name());
    for (int k = 0; k < 10; ++k) {
      const Point x = hgtest::random_point(rng, g.dim());
      CHECK(max_abs_diff(exp_map(g, exp_coords(g, x)), x) < 1e-10);
    }
  }
}

TEST_CASE("exponential coordinates are homogeneous") {
  std::mt19937_64 rng(3);
  const GroupSpec h = GroupSpec::heisenberg();
  for (int k = 0; k < 20; ++k) {
    const Point x = hgtest::random_point(rng, 3);
    const Vector a = exp_coords(h, dilate(h, 2.5, x)), b = exp_coords(h, x);
    for (int j = 0; j < 3; ++j) CHECK(a[j] == doctest::Approx(std::pow(2.5, h.weights()[j]) * b[j]).epsilon(1e-12));
  }
}

TEST_CASE("frame change polynomials reconstruct the coordinate derivatives") {
  std::mt19937_64 rng(5);
  for (const auto& g : hgtest::shipped_groups()) {
    CAPTURE(g.name());
    const int n = g.dim();
    const PolynomialMatrix p = frame_change_polynomials(g);
    for (int k = 0; k < 10; ++k) {
      const Point x = hgtest::random_point(rng, n);
      const auto fr = g.frame_at(x);
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += p[j][l](x.span()) * fr[l][m];
          CHECK(s == doctest::Approx(j == m ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
  }
}

namespace {

nlohmann::json term(double c, std::vector<int> pow) { return {{"coef", c}, {"pow", pow}}; }

// The Heisenberg group written out by hand, inverse left to the solver.
nlohmann::json heisenberg_doc() {
  using nlohmann::json;
  json product = json::array({json::array({term(1, {1, 0, 0, 0, 0, 0}), term(1, {0, 0, 0, 1, 0, 0})}),
                              json::array({term(1, {0, 1, 0, 0, 0, 0}), term(1, {0, 0, 0, 0, 1, 0})}),
                              json::array({term(1, {0, 0, 1, 0, 0, 0}), term(1, {0, 0, 0, 0, 0, 1}),
                                           term(2, {0, 1, 0, 1, 0, 0}), term(-2, {1, 0, 0, 0, 1, 0})})});
  json frame = json::array({json::array({json::array({term(1, {0, 0, 0})}), json::array(),
                                         json::array({term(2, {0, 1, 0})})}),
                            json::array({json::array(), json::array({term(1, {0, 0, 0})}),
                                         json::array({term(-2, {1, 0, 0})})}),
                            json::array({json::array(), json::array(), json::array({term(-4, {0, 0, 0})})})});
  json expi = json::array({json::array({term(1, {1, 0, 0})}), json::array({term(1, {0, 1, 0})}),
                           json::array({term(-0.25, {0, 0, 1})})});
  return {{"name", "hand_heisenberg"}, {"n", 3}, {"nu", {1, 1, 2}},
          {"product", product},        {"frame", frame}, {"exp_inverse", expi}};
}

}  // namespace

TEST_CASE("custom group from JSON matches the built-in Heisenberg group") {
  const GroupSpec c = group_from_json(heisenberg_doc());
  const GroupSpec h = GroupSpec::heisenberg();
  CHECK(c.kind() == GroupKind::custom);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const Point x = hgtest::random_point(rng, 3), y = hgtest::random_point(rng, 3);
    CHECK(max_abs_diff(c.product(x, y), h.product(x, y)) < 1e-13);
    CHECK(max_abs_diff(c.inverse(x), h.inverse(x)) < 1e-13);
  }
  const GroupSpec back = group_from_json(group_to_json(c));
  CHECK(max_abs_diff(back.product({1, 2, 3}, {3, 2, 1}), c.product({1, 2, 3}, {3, 2, 1})) < 1e-14);
}

TEST_CASE("custom group with a broken law is rejected") {
  auto doc = heisenberg_doc();
  // x3 + y3 + 2 x2 y1 + 2 x1 y2 is not associative with this frame.
  doc["product"][2][3]["coef"] = 2.0;
  CHECK_THROWS_AS(group_from_json(doc), Error);
}

TEST_CASE("quasi-norms are homogeneous and symmetric") {
  std::mt19937_64 rng(17);
  for (const auto& g : hgtest::shipped_groups()) {
    for (const auto& qn : shipped_quasi_norms(g)) {
      CAPTURE(g.name());
      CAPTURE(qn.id());
      const HomogeneousNorm norm(qn, g);
      CHECK(norm(g.origin()) == 0.0);
      for (int k = 0; k < 30; ++k) {
        const Point x = hgtest::random_point(rng, g.dim());
        const double lam = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
        CHECK(norm(dilate(g, lam, x)) == doctest::Approx(lam * norm(x)).epsilon(1e-12));
        CHECK(norm(g.inverse(x)) == doctest::Approx(norm(x)).epsilon(1e-12));
        CHECK(norm(x) > 0.0);
      }
    }
  }
}

TEST_CASE("koranyi norm closed form and incompatible pairings") {
  const GroupSpec h = GroupSpec::heisenberg();
  const HomogeneousNorm k(QuasiNorm::koranyi(), h);
  CHECK(k({1.0, 1.0, 2.0}) == doctest::Approx(std::pow(4.0 + 4.0, 0.25)));
  CHECK_FALSE(incompatibility(QuasiNorm::euclidean(), h).empty());
  CHECK_FALSE(incompatibility(QuasiNorm::koranyi(), resolve_group("r3_isotropic")).empty());
  CHECK(incompatibility(QuasiNorm::p_family(4), h).empty());
  CHECK(parse_quasi_norm("p6").id() == "p6");
  CHECK_THROWS_AS(parse_quasi_norm("banana"), Error);
}
