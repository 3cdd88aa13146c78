#include <doctest.h>

#include <cmath>

#include "hgcalc/catalog.hpp"
#include "hgcalc/error.hpp"
#include "hgcalc/field.hpp"
#include "hgcalc/sharpness.hpp"

using namespace hgcalc;

namespace {

// For radial f = r^{-a+eps} chi(ln r) with a = (Q-2)/2 the Hardy quotient
// reduces to a one-dimensional integral in t = ln r; the sphere mass cancels.
double hardy_ratio_1d(double Q, double eps, double T) {
  const double a = 0.5 * (Q - 2.0), half = 0.5 * T;
  auto chi = [&](double t) {
    const double u = (T - std::abs(t)) / half;
    return u <= 0.0 ? 0.0 : smooth_step(u);
  };
  auto dchi = [&](double t) {
    const double u = (T - std::abs(t)) / half;
    return u <= 0.0 ? 0.0 : (t > 0 ? -1.0 : 1.0) * smooth_step_derivative(u) / half;
  };
  const int n = 400000;  // even, Simpson
  const double h = 2.0 * T / n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = -T + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double e = std::exp(2.0 * eps * t), c = chi(t);
    const double d = (-a + eps) * c + dchi(t);
    num += w * e * c * c;
    den += w * e * d * d;
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("hardy family ratio against the one-dimensional reduction") {
  struct Case {
    const char* group;
    QuasiNorm qn;
  };
  const Case cases[] = {{"r3_isotropic", QuasiNorm::euclidean()},
                        {"heisenberg", QuasiNorm::koranyi()},
                        {"r3_aniso_123", QuasiNorm::p_family(6)}};
  for (const auto& c : cases) {
    const GroupSpec g = resolve_group(c.group);
    for (auto [eps, T] : {std::pair{0.1, 10.0}, std::pair{-0.2, 4.0}, std::pair{0.0, 25.0}}) {
      CAPTURE(c.group);
      CAPTURE(eps);
      CAPTURE(T);
      const double got = sharpness_ratio(SharpnessTarget::hardy, g, c.qn, {{"epsilon", eps}, {"T", T}});
      CHECK(got == doctest::Approx(hardy_ratio_1d(g.homogeneous_dimension(), eps, T)).epsilon(1e-6));
    }
  }
}

TEST_CASE("hardy search approaches 2/(Q-2) from below with a monotone trace") {
  const GroupSpec g = resolve_group("r3_aniso_123");
  SharpnessOptions opt;
  opt.budget = 200;
  const SharpnessResult r = sharpness_search(SharpnessTarget::hardy, g, QuasiNorm::p_family(6), opt);
  CHECK(r.direction == "maximize");
  CHECK(r.constant_paper == doctest::Approx(0.5));
  CHECK(r.respects_constant);
  CHECK(r.relative_gap < 0.01);
  CHECK(r.evaluations <= opt.budget);
  REQUIRE(r.trace.size() == static_cast<std::size_t>(r.evaluations));
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
  CHECK(r.best_params.count("delta") == 1);
}

TEST_CASE("heisenberg-kennard family attains Q/2 on abelian groups") {
  for (const char* gid : {"r3_isotropic", "r2_aniso_12", "r3_aniso_123"}) {
    const GroupSpec g = resolve_group(gid);
    const double r = sharpness_ratio(SharpnessTarget::hk, g, shipped_quasi_norms(g).front(), {{"s", 0.3}, {"eta", 0.0}});
    CAPTURE(gid);
    CHECK(r == doctest::Approx(0.5 * g.homogeneous_dimension()).epsilon(1e-8));
  }
}

TEST_CASE("ckn search is bounded below by its constant") {
  const GroupSpec g = resolve_group("r3_isotropic");
  SharpnessOptions opt;
  opt.alpha = -1.0;
  opt.budget = 120;
  const SharpnessResult r = sharpness_search(SharpnessTarget::ckn, g, QuasiNorm::euclidean(), opt);
  CHECK(r.direction == "minimize");
  CHECK(r.constant_paper == doctest::Approx(1.5));
  CHECK(r.respects_constant);
  CHECK(r.relative_gap < 0.01);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);

  opt.alpha = 0.5;
  CHECK_THROWS_AS(sharpness_search(SharpnessTarget::ckn, g, QuasiNorm::euclidean(), opt), Error);
  opt.alpha = 0.0;
  CHECK_THROWS_AS(sharpness_search(SharpnessTarget::ckn, GroupSpec::heisenberg(), QuasiNorm::koranyi(), opt), Error);
}

TEST_CASE("budget and parsing") {
  const GroupSpec g = resolve_group("r2_aniso_12");
  SharpnessOptions opt;
  opt.budget = 5;
  const SharpnessResult r = sharpness_search(SharpnessTarget::euler_corollary, g, QuasiNorm::p_family(4), opt);
  CHECK(r.evaluations <= 5);
  CHECK_FALSE(r.converged);
  CHECK(parse_sharpness_target("hpw") == SharpnessTarget::hpw);
  CHECK_THROWS_AS(parse_sharpness_target("nope"), Error);
  CHECK_THROWS_AS(sharp_constant(SharpnessTarget::hardy, GroupSpec::abelian({1, 1}), 0.0), Error);
}
