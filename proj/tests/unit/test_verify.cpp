#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hgcalc/catalog.hpp"
#include "hgcalc/error.hpp"
#include "hgcalc/verify.hpp"

using namespace hgcalc;
using std::numbers::pi;

namespace {

const CheckReport& find(const std::vector<CheckReport>& v, const std::string& id) {
  for (const auto& r : v)
    if (r.check_id == id) return r;
  FAIL("missing report " << id);
  return v.front();
}

struct R3Gauss {
  GroupSpec g = resolve_group("r3_isotropic");
  QuasiNorm qn = QuasiNorm::euclidean();
  ScalarField f = battery_field(g, qn, "gauss");
  QuadratureScheme q = scheme_for(g, f);
};

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_CASE("report semantics") {
  const CheckReport a = identity_report("x", 2.0, 2.5, 1e-6);
  CHECK(a.abs_residual == doctest::Approx(0.5));
  CHECK(a.rel_residual == doctest::Approx(0.5 / 3.5));
  CHECK(a.status == CheckStatus::fail);
  CHECK(identity_report("x", 1.0, 1.0 + 1e-7, 1e-6).pass());

  const CheckReport ok = inequality_report("y", 1.0, 2.0, 1e-8);
  CHECK(ok.pass());
  REQUIRE(ok.slack);
  CHECK(*ok.slack == doctest::Approx(1.0 / 3.0));
  CHECK(ok.abs_residual == 0.0);
  const CheckReport bad = inequality_report("y", 2.0, 1.0, 1e-8);
  CHECK(bad.status == CheckStatus::fail);
  CHECK(bad.abs_residual == doctest::Approx(1.0));
  CHECK(inequality_report("y", 1.0 + 1e-9, 1.0, 1e-8).pass());

  const CheckReport s = skipped_report("z", "because");
  CHECK(s.status == CheckStatus::skipped);
  CHECK(s.skipped_reason == "because");
  CHECK(parse_check_status(to_string(CheckStatus::error)) == CheckStatus::error);
  CHECK_FALSE(check_formula("rsrc.rsc").empty());
}

TEST_CASE("kennard on the R^3 gaussian: closed forms and sign diagnosis") {
  R3Gauss s;
  const auto v = check_kennard(s.q, s.g, s.qn, compatible_pairing(s.g), s.f);
  const double p32 = std::pow(pi, 1.5);
  const auto& k = find(v, "kennard");
  CHECK(k.pass());
  CHECK(k.lhs.real() == doctest::Approx(3 * p32).epsilon(1e-10));
  CHECK(k.rhs.real() == doctest::Approx(3 * p32).epsilon(1e-10));
  CHECK(k.diagnostics.at("norm2_Pf_plus_iMf") < 1e-8);
  CHECK(k.rel_residual < 1e-8);
  CHECK(k.diagnostics.at("rel_residual_printed_minus") >= 0.5);
  CHECK(k.diagnostics.at("minus_gap_consistency") < 1e-6);
  CHECK(k.params.at("Q") == "3");

  const auto& pr = find(v, "kennard.proof_integral");
  CHECK(pr.pass());
  CHECK(pr.lhs.real() == doctest::Approx(3 * p32).epsilon(1e-10));
  CHECK(find(v, "kennard.normalized_form").pass());
}

TEST_CASE("heisenberg-kennard equality at the gaussian, strict for the odd field") {
  R3Gauss s;
  const auto v = check_heisenberg_kennard(s.q, s.g, s.qn, compatible_pairing(s.g), s.f);
  const auto& hk = find(v, "heisenberg_kennard");
  const double p32 = std::pow(pi, 1.5);
  CHECK(hk.lhs.real() == doctest::Approx(1.5 * p32).epsilon(1e-10));
  CHECK(hk.rhs.real() == doctest::Approx(1.5 * p32).epsilon(1e-10));
  CHECK(hk.diagnostics.at("c_re") == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(hk.diagnostics.at("equality_negative_proportionality") == 1.0);
  CHECK(hk.diagnostics.at("printed_condition_residual") > 1.0);
  CHECK(find(v, "heisenberg_kennard.pythagorean").pass());

  const ScalarField odd = battery_field(s.g, s.qn, "odd");
  const auto w = check_heisenberg_kennard(s.q, s.g, s.qn, compatible_pairing(s.g), odd);
  const auto& h2 = find(w, "heisenberg_kennard");
  CHECK(h2.pass());
  // slack > 0.01 ||f||^2 in absolute terms
  CHECK(h2.rhs.real() - h2.lhs.real() > 0.01 * (h2.lhs.real() / 1.5));
}

TEST_CASE("anisotropic kennard with the weighted pairing") {
  const GroupSpec g = resolve_group("r3_aniso_123");
  const QuasiNorm qn = QuasiNorm::p_family(6);
  const ScalarField f = battery_field(g, qn, "aniso_gauss");
  const auto v = check_kennard(scheme_for(g, f), g, qn, compatible_pairing(g), f);
  CHECK(find(v, "kennard").rel_residual < 1e-6);
  CHECK(find(v, "kennard.proof_integral").pass());
}

TEST_CASE("euler pythagoras closed form and quasi-norm invariance") {
  R3Gauss s;
  const auto v = check_euler_pythagoras(s.q, s.g, s.f);
  const auto& e = find(v, "euler_pythagoras");
  const double p32 = std::pow(pi, 1.5);
  CHECK(e.lhs.real() == doctest::Approx(15.0 / 4.0 * p32).epsilon(1e-10));
  // Ef + (3/2)f = (3/2 - |x|^2) f
  CHECK(e.diagnostics.at("remainder_term") == doctest::Approx(1.5 * p32).epsilon(1e-10));
  CHECK(find(v, "euler_pythagoras.corollary").pass());

  const GroupSpec h = GroupSpec::heisenberg();
  std::vector<double> lhs;
  for (const auto& qn : shipped_quasi_norms(h)) {
    const ScalarField f = battery_field(h, qn, "complex_gauss");
    lhs.push_back(find(check_euler_pythagoras(scheme_for(h, f), h, f), "euler_pythagoras").lhs.real());
  }
  CHECK(std::abs(lhs[0] - lhs[1]) <= 1e-9 * lhs[0]);
}

TEST_CASE("hpw closed form on the gaussian") {
  R3Gauss s;
  const auto v = check_hpw(s.q, s.g, s.qn, s.f);
  const auto& h = find(v, "hpw");
  CHECK(std::pow(h.lhs.real(), 2) == doctest::Approx(std::pow(pi, 3)).epsilon(1e-10));
  CHECK(std::pow(h.rhs.real(), 2) == doctest::Approx(9 * std::pow(pi, 3)).epsilon(1e-10));
  for (const auto& r : v) CHECK(r.pass());
}

TEST_CASE("weighted radial identity on the alpha grid") {
  const GroupSpec g = resolve_group("r2_aniso_12");
  const QuasiNorm qn = QuasiNorm::p_family(4);
  for (const char* fid : {"annulus_gauss", "annulus_power", "annulus_osc"}) {
    const ScalarField f = battery_field(g, qn, fid);
    const auto alphas = default_alpha_grid(g.homogeneous_dimension());
    CHECK(alphas.size() == 7);
    const auto v = check_weighted_radial_grid(scheme_for(g, f), g, qn, f, alphas);
    for (const auto& r : v) {
      CAPTURE(fid);
      CAPTURE(r.params.at("alpha"));
      CHECK(r.rel_residual < 1e-6);
    }
  }
  const ScalarField f = battery_field(g, qn, "annulus_gauss");
  const CheckReport zero = check_weighted_radial_identity(scheme_for(g, f), g, qn, f, 0.5);
  CHECK(zero.diagnostics.at("coefficient") == 0.0);
  CHECK(zero.pass());
  CHECK(kind_of([&] { check_weighted_radial_identity(scheme_for(g, battery_field(g, qn, "gauss")), g, qn,
                                                     battery_field(g, qn, "gauss"), 0.0); }) ==
        ErrorKind::invalid_field);
}

TEST_CASE("weighted radial at alpha 0 on heisenberg") {
  const GroupSpec h = GroupSpec::heisenberg();
  const ScalarField f = battery_field(h, QuasiNorm::koranyi(), "annulus_gauss");
  CHECK(check_weighted_radial_identity(scheme_for(h, f), h, QuasiNorm::koranyi(), f, 0.0).rel_residual < 1e-6);
}

TEST_CASE("hardy and rsrc in the zero-coefficient dimension Q = 3") {
  const GroupSpec g = resolve_group("r2_aniso_12");
  const QuasiNorm qn = QuasiNorm::p_family(4);
  const ScalarField f = battery_field(g, qn, "annulus_power");
  const QuadratureScheme q = scheme_for(g, f);
  const auto h = check_hardy(q, g, qn, f);
  CHECK(find(h, "hardy").pass());
  const auto r = check_rsrc(q, g, qn, f);
  const auto& main = find(r, "rsrc");
  CHECK(main.diagnostics.at("coefficient") == 0.0);
  CHECK(main.rel_residual < 1e-6);
  for (const auto& x : r) CHECK(x.status == CheckStatus::pass);
}

TEST_CASE("hardy needs Q >= 3") {
  const GroupSpec plane = GroupSpec::abelian({1, 1}, "r2");
  const QuasiNorm qn = QuasiNorm::euclidean();
  const ScalarField f = battery_field(plane, qn, "annulus_gauss");
  CHECK(kind_of([&] { check_hardy(scheme_for(plane, f), plane, qn, f); }) == ErrorKind::precondition_violation);
}

TEST_CASE("ckn skips the degenerate constant") {
  const GroupSpec g = resolve_group("r3_isotropic");
  const QuasiNorm qn = QuasiNorm::euclidean();
  const ScalarField f = battery_field(g, qn, "annulus_gauss");
  const double alphas[] = {0.5, 1.0};
  const auto v = check_ckn(scheme_for(g, f), g, qn, f, alphas);
  REQUIRE(v.size() == 2);
  CHECK(v[0].status == CheckStatus::skipped);
  CHECK(v[0].skipped_reason.find("degenerate constant") != std::string::npos);
  CHECK(v[1].pass());
  const QuasiNorm p4 = QuasiNorm::p_family(4);
  CHECK(kind_of([&] { check_ckn(scheme_for(g, f), g, p4, f, alphas); }) == ErrorKind::precondition_violation);
}

TEST_CASE("symmetric pair identity: R_g with C, A = B, and the negative control") {
  const GroupSpec g = resolve_group("r2_aniso_12");
  const QuasiNorm qn = QuasiNorm::p_family(4);
  const HomogeneousNorm norm(qn, g);
  const ScalarField f = battery_field(g, qn, "annulus_gauss"), h = battery_field(g, qn, "annulus_osc");
  const ScalarField both[] = {f, h};
  const QuadratureScheme q = scheme_for(g, both);
  const auto rg = dilation_generator_operator(g, norm), c = coulomb_operator(norm);

  const CheckReport r = check_symmetric_pair_identity(q, rg, c, f, h);
  CHECK(r.rel_residual < 1e-6);
  const CheckReport same = check_symmetric_pair_identity(q, c, c, f, h);
  CHECK(std::abs(same.lhs) < 1e-12);
  CHECK(std::abs(same.rhs) < 1e-9);
  const CheckReport mult = check_symmetric_pair_identity(q, c, norm_power_operator(norm, -2.0), f, h);
  CHECK(mult.diagnostics.at("norm2_u_plus_iv") == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(kind_of([&] { check_symmetric_pair_identity(q, radial_operator(g, norm), c, f, h); }) ==
        ErrorKind::precondition_violation);

  const auto sym = check_symmetry(q, g, qn, f, h);
  for (const auto& s : sym) CHECK(s.pass());
}

TEST_CASE("pointwise relations and structure on every shipped pairing") {
  for (const auto& gid : shipped_group_ids()) {
    const GroupSpec g = resolve_group(gid);
    for (const auto& qn : shipped_quasi_norms(g)) {
      CAPTURE(gid);
      CAPTURE(qn.id());
      const ScalarField f = battery_field(g, qn, "annulus_osc");
      CHECK(check_commutator(g, qn, f).rel_residual <= 1e-7);
      CHECK(check_radial_methods(g, qn, f).pass());
      CHECK(check_pm_factorization(g, qn, battery_field(g, qn, "complex_gauss")).pass());
      for (const auto& r : check_structural(g, qn)) {
        CAPTURE(r.check_id);
        CHECK(r.pass());
      }
    }
  }
}

TEST_CASE("euler variants on heisenberg: the dilation-weighted operator satisfies the integral identity") {
  const GroupSpec h = GroupSpec::heisenberg();
  const ScalarField f = battery_field(h, QuasiNorm::koranyi(), "aniso_gauss");
  const CheckReport r = check_euler_variants(scheme_for(h, f), h, QuasiNorm::koranyi(), f);
  CHECK(r.pass());
}

TEST_CASE("polar decomposition and sphere mass") {
  const GroupSpec g = resolve_group("r3_isotropic");
  const QuasiNorm qn = QuasiNorm::euclidean();
  const ScalarField f = battery_field(g, qn, "qn_radial");
  const ScalarField fs[] = {f};
  const QuadratureScheme q = scheme_for(g, f);
  const PolarScheme ps = polar_scheme_for(g, qn, fs);
  CHECK(check_polar(q, ps, g, qn, f).pass());
  const CheckReport m = check_sphere_mass(q, ps, g, qn, f);
  CHECK(m.rhs.real() == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(std::abs(m.lhs.real() - 4 * pi) < 1e-6);
}
