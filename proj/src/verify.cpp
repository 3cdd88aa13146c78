#include "hgcalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hgcalc/error.hpp"

namespace hgcalc {

namespace {

constexpr cplx kI(0.0, 1.0);

const std::map<std::string, std::string>& formulas() {
  static const std::map<std::string, std::string> table = {
      {"kennard", "||Pf||^2 + ||Mf||^2 = Q||f||^2 + ||Pf + iMf||^2"},
      {"kennard.normalized_form", "||Pf||^2 + ||Mf||^2 = ||Pf|| ||Mf|| (2 - ||u + v||^2) + ||Pf + iMf||^2"},
      {"kennard.proof_integral", "-2 Re int Pf conj(iMf) dx = Q||f||^2"},
      {"heisenberg_kennard", "(Q/2)||f||^2 <= ||Pf|| ||Mf||"},
      {"heisenberg_kennard.pythagorean", "Q||f||^2 <= ||Pf||^2 + ||Mf||^2"},
      {"weighted_radial",
       "|| |x|^-a Rf ||^2 = ((Q-2)/2 - a)^2 ||f/|x|^(a+1)||^2 + || |x|^-a Rf + (Q-2-2a)/(2|x|^(a+1)) f ||^2"},
      {"hardy", "||f/|x||| <= 2/(Q-2) ||Rf||"},
      {"hardy.directional", "||f/||x|||| <= 2/(n-2) ||(x/||x||) . grad f||"},
      {"ckn", "|n-2-2a|/2 ||f/||x||^(a+1)|| <= ||grad f/||x||^a||"},
      {"hpw", "||f||^2 <= 2/(Q-2) ||Rf|| || |x| f ||"},
      {"hpw.chain_hardy", "(Q-2)/2 ||f/|x||| || |x| f || <= ||Rf|| || |x| f ||"},
      {"hpw.chain_holder", "(Q-2)/2 ||f||^2 <= (Q-2)/2 ||f/|x||| || |x| f ||"},
      {"euler_pythagoras", "||Ef||^2 = (Q/2)^2 ||f||^2 + ||Ef + (Q/2) f||^2"},
      {"euler_pythagoras.corollary", "||f|| <= (2/Q) ||Ef||"},
      {"symmetric_pair", "-i int ([A,B]f) conj(f) dx = ||Af|| ||Bf|| (2 - ||Af/||Af|| + i Bf/||Bf|| ||^2)"},
      {"rsrc", "||Rf||^2 = ||R_g f||^2 + ((Q-1)(Q-3)/4) ||Cf||^2"},
      {"rsrc.rsc", "||Cf|| = ||R_g f|| (2 - ||u + iv||^2)"},
      {"rsrc.corollary_rg", "||R_g f|| <= ||Rf||"},
      {"rsrc.corollary_c", "sqrt((Q-1)(Q-3))/2 ||Cf|| <= ||Rf||"},
      {"rsrc.relative_bound", "||Cf|| <= 2 ||R_g f||"},
      {"commutator", "[R_g, C] f = i C^2 f"},
      {"symmetry", "<Af, h> = <f, Ah>"},
      {"symmetry.negative_control", "|<Rf, h> - <f, Rh>| / (1 + |<Rf, h>|) >= 1e-2"},
      {"radial_methods", "E f(x)/|x| = d/dr f(D_r y) at r = |x|"},
      {"euler_variants", "-int E|f|^2 dx = Q||f||^2"},
      {"pm_factorization", "2 Re(Pf . conj(iMf)) = E|f|^2"},
      {"polar", "int f dx = int_0^inf int_S f(D_r y) r^(Q-1) dsigma(y) dr"},
      {"polar.sphere_mass", "sigma(S) = int e^{-|x|^s} dx / (Gamma(Q/s)/s)"},
      {"sharpness.hardy", "sup ||f/|x||| / ||Rf|| = 2/(Q-2)"},
      {"sharpness.ckn", "inf ||grad f/||x||^a|| / ||f/||x||^(a+1)|| = |n-2-2a|/2"},
      {"sharpness.hk", "inf ||Pf|| ||Mf|| / ||f||^2 = Q/2"},
      {"sharpness.hpw", "sup ||f||^2 / (||Rf|| || |x| f ||) <= 2/(Q-2)"},
      {"sharpness.euler_corollary", "sup ||f|| / ||Ef|| = 2/Q"},
      {"structural.automorphism", "D_l(xy) = D_l(x) D_l(y)"},
      {"structural.associativity", "(xy)z = x(yz)"},
      {"structural.inverse", "x x^-1 = 0"},
      {"structural.frame_homogeneity", "X_j(f o D_l)(x) = l^nu_j (X_j f)(D_l x)"},
      {"structural.frame_homogeneity_fd", "X_j(f o D_l)(x) = l^nu_j (X_j f)(D_l x), numerical partials"},
      {"structural.exp_homogeneity", "e(D_r x) = (r^nu_j e_j(x))"},
      {"structural.exp_roundtrip", "exp(e(x)) = x"},
      {"structural.quasinorm_axioms", "|D_l x| = l|x|, |x^-1| = |x|, |x| = 0 iff x = 0"},
      {"structural.frame_change", "d/dx_j = sum_k p_jk X_k"},
  };
  return table;
}

double scale_of(cplx a, cplx b) { return 1.0 + std::max(std::abs(a), std::abs(b)); }

bool in_hole(const ScalarField& f, double r) { return f.vanishes_near_origin() && r <= f.traits().r_min; }

void require_dim(const GroupSpec& g, const ScalarField& f) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::invalid_argument, "field and group dimensions differ");
}

void require_annulus(const ScalarField& f, const std::string& what) {
  if (!f.vanishes_near_origin() || !(f.traits().r_min > 0.0))
    throw Error(ErrorKind::invalid_field, what + " needs a field vanishing near the origin");
}

void require_q3(const GroupSpec& g, const std::string& what) {
  if (g.homogeneous_dimension() < 3.0)
    throw Error(ErrorKind::precondition_violation, what + " needs Q >= 3");
}

struct Pass {
  std::vector<double> v;
  double error_estimate = 0.0;
  bool estimated = false;
};

// One multi-channel integration with the scheme's error ladder.
Pass integrate_pass(const QuadratureScheme& q, std::span<const ScalarField* const> decaying, int k,
                    const Integrand& fn) {
  for (const ScalarField* f : decaying) q.require_decay(*f);
  auto r = q.integrate(fn, k, q.error_estimates());
  Pass p{r.value, 0.0, q.error_estimates()};
  for (int c = 0; c < k; ++c)
    p.error_estimate = std::max(p.error_estimate, r.error_estimate[c] / (1.0 + std::abs(r.value[c])));
  return p;
}

Pass integrate_pass(const QuadratureScheme& q, const ScalarField& f, int k, const Integrand& fn) {
  const ScalarField* fs[] = {&f};
  return integrate_pass(q, fs, k, fn);
}

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

CheckReport& decorate(CheckReport& r, const std::map<std::string, std::string>& params, const Pass* pass = nullptr) {
  for (const auto& [k, v] : params) r.params.emplace(k, v);
  if (pass && pass->estimated) r.diagnostics["quadrature_error_estimate"] = pass->error_estimate;
  return r;
}

std::map<std::string, std::string> field_params(const GroupSpec& g, const ScalarField& f) {
  return {{"group", g.name()}, {"field", f.id()}, {"Q", format_number(g.homogeneous_dimension())}};
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::error: return "error";
  }
  return "error";
}

CheckStatus parse_check_status(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skipped") return CheckStatus::skipped;
  if (s == "error") return CheckStatus::error;
  throw Error(ErrorKind::invalid_argument, "unknown check status '" + s + "'");
}

std::string check_formula(const std::string& id) {
  auto it = formulas().find(id);
  return it == formulas().end() ? std::string() : it->second;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::map<std::string, std::string> triple_params(const GroupSpec& g, const QuasiNorm& qn, const std::string& field) {
  return {{"group", g.name()},
          {"quasinorm", qn.id()},
          {"field", field},
          {"Q", format_number(g.homogeneous_dimension())}};
}

double identity_tolerance(const Tolerances& tol, const ScalarField& f) {
  return f.has_partials() && f.traits().fd_depth == 0 ? tol.identity : tol.identity_fd;
}

CheckReport identity_report(std::string check_id, cplx lhs, cplx rhs, double tolerance) {
  CheckReport r;
  r.paper_ref = check_formula(check_id);
  r.check_id = std::move(check_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = r.abs_residual / scale_of(lhs, rhs);
  r.tolerance = tolerance;
  r.status = r.rel_residual <= tolerance ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckReport inequality_report(std::string check_id, double lhs, double rhs, double slack_tolerance) {
  CheckReport r;
  r.paper_ref = check_formula(check_id);
  r.check_id = std::move(check_id);
  r.lhs = lhs;
  r.rhs = rhs;
  const double scale = scale_of(lhs, rhs);
  r.abs_residual = std::max(0.0, lhs - rhs);
  r.rel_residual = r.abs_residual / scale;
  r.slack = (rhs - lhs) / scale;
  r.tolerance = slack_tolerance;
  r.status = *r.slack >= -slack_tolerance ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckReport skipped_report(std::string check_id, std::string reason) {
  CheckReport r;
  r.paper_ref = check_formula(check_id);
  r.check_id = std::move(check_id);
  r.status = CheckStatus::skipped;
  r.skipped_reason = std::move(reason);
  return r;
}

// ---------------------------------------------------------------------------
// Kennard family

namespace {

struct KennardMoments {
  double f2, p2, m2, plus2, minus2;
  cplx p_im;  // <Pf, iMf>
  double unweighted_re;  // Re int x f . conj(grad f)
  double err;
};

KennardMoments kennard_moments(const QuadratureScheme& q, const GroupSpec& g, const PmPairing& pm,
                               const ScalarField& f) {
  require_dim(g, f);
  const int n = g.dim();
  {
    // Surfaces pairing errors before the parallel pass.
    Jet probe;
    (void)momentum_from_jet(pm.momentum, g, g.origin(), probe);
  }
  auto pass = integrate_pass(q, f, 8, [&](const Point& x, std::span<double> o) {
    const Jet j = f.jet(x);
    const CVector p = position_from_jet(pm.position, g, x, j);
    const CVector m = momentum_from_jet(pm.momentum, g, x, j);
    double p2 = 0, m2 = 0, pl = 0, mi = 0, uw = 0;
    cplx pim{};
    for (int k = 0; k < n; ++k) {
      const cplx im = kI * m[k];
      p2 += std::norm(p[k]);
      m2 += std::norm(m[k]);
      pl += std::norm(p[k] + im);
      mi += std::norm(p[k] - im);
      pim += p[k] * std::conj(im);
      uw += (x[k] * j.value * std::conj(j.grad[k])).real();
    }
    o[0] = std::norm(j.value);
    o[1] = p2;
    o[2] = m2;
    o[3] = pl;
    o[4] = mi;
    o[5] = pim.real();
    o[6] = pim.imag();
    o[7] = uw;
  });
  const auto& v = pass.v;
  KennardMoments km{v[0], v[1], v[2], v[3], v[4], {v[5], v[6]}, v[7], pass.error_estimate};
  const double tiny = 1e-20 * (1.0 + km.f2);
  if (km.p2 <= tiny) throw Error(ErrorKind::degenerate_input, "Pf vanishes numerically");
  if (km.m2 <= tiny) throw Error(ErrorKind::degenerate_input, "Mf vanishes numerically");
  return km;
}

}  // namespace

std::vector<CheckReport> check_kennard(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                       const PmPairing& pm, const ScalarField& f, const Tolerances& tol) {
  const KennardMoments km = kennard_moments(q, g, pm, f);
  const double Q = g.homogeneous_dimension();
  const double tolerance = identity_tolerance(tol, f);
  auto params = triple_params(g, qn, f.id());
  params["variant"] = to_string(pm);

  const double A = km.p2 + km.m2;
  const double b_plus = Q * km.f2 + km.plus2;
  const double b_minus = Q * km.f2 + km.minus2;
  const double pn = std::sqrt(km.p2), mn = std::sqrt(km.m2);
  const double u_plus_v2 = 2.0 + 2.0 * km.p_im.real() / (pn * mn);
  const double c_form = pn * mn * (2.0 - u_plus_v2) + km.plus2;

  Pass pass{{}, km.err, q.error_estimates()};
  std::vector<CheckReport> out;
  CheckReport main = identity_report("kennard", A, b_plus, tolerance);
  main.diagnostics = {{"norm2_f", km.f2},
                      {"norm2_Pf", km.p2},
                      {"norm2_Mf", km.m2},
                      {"norm2_Pf_plus_iMf", km.plus2},
                      {"norm2_Pf_minus_iMf", km.minus2},
                      {"A", A},
                      {"B_plus", b_plus},
                      {"B_minus_printed", b_minus},
                      {"C", c_form},
                      {"rel_residual_printed_minus", std::abs(A - b_minus) / scale_of(A, b_minus)},
                      {"minus_gap_consistency", std::abs((b_minus - A) - 2.0 * Q * km.f2) / (1.0 + b_minus)}};
  main.notes["sign_variant"] =
      "pass criterion uses ||Pf + iMf||^2; the printed ||Pf - iMf||^2 residual is reported as a diagnostic";
  out.push_back(main);
  out.push_back(identity_report("kennard.normalized_form", A, c_form, tolerance));
  out.back().diagnostics["norm2_u_plus_v"] = u_plus_v2;

  CheckReport proof = identity_report("kennard.proof_integral", -2.0 * km.p_im.real(), Q * km.f2, tolerance);
  proof.diagnostics["unweighted_pairing_ratio"] = -2.0 * km.unweighted_re / (Q * km.f2);
  proof.notes["unweighted_pairing"] = "coordinate/plain_gradient gives n||f||^2 in place of Q||f||^2";
  out.push_back(proof);
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

std::vector<CheckReport> check_heisenberg_kennard(const QuadratureScheme& q, const GroupSpec& g,
                                                  const QuasiNorm& qn, const PmPairing& pm, const ScalarField& f,
                                                  const Tolerances& tol) {
  const KennardMoments km = kennard_moments(q, g, pm, f);
  const double Q = g.homogeneous_dimension();
  auto params = triple_params(g, qn, f.id());
  params["variant"] = to_string(pm);
  const double pn = std::sqrt(km.p2), mn = std::sqrt(km.m2);

  std::vector<CheckReport> out;
  CheckReport hk = inequality_report("heisenberg_kennard", 0.5 * Q * km.f2, pn * mn, tol.inequality_slack);
  // Best c in ||iMf - c Pf||: c = <iMf, Pf> / ||Pf||^2.
  const cplx c = std::conj(km.p_im) / km.p2;
  const double defect = safe_sqrt(km.m2 - std::norm(km.p_im) / km.p2) / mn;
  const double cos_angle = km.p_im.real() / (pn * mn);
  const double printed = safe_sqrt(2.0 - 2.0 * cos_angle);  // || iMf/||Mf|| - Pf/||Pf|| ||
  const double derived = safe_sqrt(2.0 + 2.0 * cos_angle);  // || iMf/||Mf|| + Pf/||Pf|| ||
  hk.diagnostics = {{"c_re", c.real()},
                    {"c_im", c.imag()},
                    {"proportionality_defect", defect},
                    {"printed_condition_residual", printed},
                    {"negative_condition_residual", derived},
                    {"ratio", pn * mn / (km.f2 > 0 ? km.f2 : 1.0)}};
  const bool equality = derived < 1e-6;
  hk.diagnostics["equality_negative_proportionality"] = equality ? 1.0 : 0.0;
  hk.notes["equality_case"] =
      equality ? "equality attained with iMf a negative multiple of Pf"
               : (printed < 1e-6 ? "equality attained with positive proportionality" : "strict inequality");
  out.push_back(hk);

  CheckReport py =
      inequality_report("heisenberg_kennard.pythagorean", Q * km.f2, km.p2 + km.m2, tol.inequality_slack);
  py.diagnostics["norm2_Pf_plus_iMf"] = km.plus2;
  out.push_back(py);
  Pass pass{{}, km.err, q.error_estimates()};
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

// ---------------------------------------------------------------------------
// Radial identities and Hardy-type inequalities

std::vector<double> default_alpha_grid(double Q) {
  std::vector<double> a = {-2.0, -1.0, -0.5, 0.0, 0.5 * (Q - 2.0), 1.0, 2.0};
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<CheckReport> check_weighted_radial_grid(const QuadratureScheme& q, const GroupSpec& g,
                                                    const QuasiNorm& qn, const ScalarField& f,
                                                    std::span<const double> alphas, const Tolerances& tol) {
  require_dim(g, f);
  require_annulus(f, "the weighted radial identity");
  const HomogeneousNorm norm(qn, g);
  const double Q = g.homogeneous_dimension();
  const int na = static_cast<int>(alphas.size());
  std::vector<double> alpha(alphas.begin(), alphas.end());
  auto pass = integrate_pass(q, f, 3 * na, [&](const Point& x, std::span<double> o) {
    const double r = norm(x);
    if (in_hole(f, r)) return;
    const Jet j = f.jet(x);
    const cplx rf = euler_from_jet(g, x, j) / r;
    for (int i = 0; i < na; ++i) {
      const double a = alpha[i];
      const double w = std::pow(r, -a), w1 = w / r;
      const double c = 0.5 * (Q - 2.0 - 2.0 * a);
      o[3 * i] = std::norm(w * rf);
      o[3 * i + 1] = std::norm(j.value * w1);
      o[3 * i + 2] = std::norm(w * rf + c * w1 * j.value);
    }
  });
  const double tolerance = identity_tolerance(tol, f);
  std::vector<CheckReport> out;
  for (int i = 0; i < na; ++i) {
    const double a = alpha[i], c = 0.5 * (Q - 2.0) - a;
    const double lhs = pass.v[3 * i], t1 = pass.v[3 * i + 1], t2 = pass.v[3 * i + 2];
    CheckReport r = identity_report("weighted_radial", lhs, c * c * t1 + t2, tolerance);
    r.params["alpha"] = format_number(a);
    r.diagnostics = {{"coefficient", c}, {"weighted_hardy_term", t1}, {"remainder_term", t2}};
    if (c == 0.0) r.notes["special_case"] = "alpha = (Q-2)/2: the first term vanishes";
    if (a == -1.0) r.notes["special_case"] = "alpha = -1 reproduces the Euler operator relation";
    if (a == 0.0) r.notes["special_case"] = "alpha = 0: the identity behind the Hardy inequality";
    out.push_back(std::move(r));
  }
  const auto params = triple_params(g, qn, f.id());
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

CheckReport check_weighted_radial_identity(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                           const ScalarField& f, double alpha, const Tolerances& tol) {
  const double a[] = {alpha};
  return check_weighted_radial_grid(q, g, qn, f, a, tol).front();
}

bool euclidean_mode(const GroupSpec& g, const QuasiNorm& qn) {
  return g.kind() == GroupKind::abelian && g.weights().isotropic() && g.weights()[0] == 1.0 &&
         qn.kind() == QuasiNormKind::euclidean;
}

std::vector<CheckReport> check_hardy(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                     const ScalarField& f, const Tolerances& tol) {
  require_dim(g, f);
  require_q3(g, "the Hardy inequality");
  const HomogeneousNorm norm(qn, g);
  const double Q = g.homogeneous_dimension();
  const int n = g.dim();
  const bool eucl = euclidean_mode(g, qn);
  auto pass = integrate_pass(q, f, 3, [&](const Point& x, std::span<double> o) {
    const double r = norm(x);
    if (in_hole(f, r)) return;
    const Jet j = f.jet(x);
    o[0] = std::norm(j.value / r);
    o[1] = std::norm(euler_from_jet(g, x, j) / r);
    if (eucl) {
      cplx d{};
      for (int k = 0; k < n; ++k) d += x[k] * j.grad[k];
      o[2] = std::norm(d / r);
    }
  });
  const double cf = std::sqrt(pass.v[0]), rf = std::sqrt(pass.v[1]);
  const double k = 2.0 / (Q - 2.0);
  std::vector<CheckReport> out;
  CheckReport h = inequality_report("hardy", cf, k * rf, tol.inequality_slack);
  h.diagnostics = {{"constant", k}, {"ratio", rf > 0 ? cf / rf : 0.0}};
  if (!f.vanishes_near_origin())
    h.notes["field_class"] = "smooth at the origin; admissible since Q >= 3 makes |f|^2/|x|^2 integrable";
  out.push_back(h);
  if (eucl) {
    const double kd = 2.0 / (n - 2.0);
    CheckReport d = inequality_report("hardy.directional", cf, kd * std::sqrt(pass.v[2]), tol.inequality_slack);
    d.diagnostics["constant"] = kd;
    out.push_back(d);
  }
  const auto params = triple_params(g, qn, f.id());
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

std::vector<CheckReport> check_ckn(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                   const ScalarField& f, std::span<const double> alphas, const Tolerances& tol) {
  require_dim(g, f);
  if (!euclidean_mode(g, qn))
    throw Error(ErrorKind::precondition_violation, "the CKN form needs the Euclidean norm on an isotropic abelian group");
  require_annulus(f, "the CKN inequality");
  const HomogeneousNorm norm(qn, g);
  const int n = g.dim();
  const int na = static_cast<int>(alphas.size());
  std::vector<double> alpha(alphas.begin(), alphas.end());
  auto pass = integrate_pass(q, f, 2 * na, [&](const Point& x, std::span<double> o) {
    const double r = norm(x);
    if (in_hole(f, r)) return;
    const Jet j = f.jet(x);
    double grad2 = 0.0;
    for (int k = 0; k < n; ++k) grad2 += std::norm(j.grad[k]);
    for (int i = 0; i < na; ++i) {
      const double w2 = std::pow(r, -2.0 * alpha[i]);
      o[2 * i] = grad2 * w2;
      o[2 * i + 1] = std::norm(j.value) * w2 / (r * r);
    }
  });
  std::vector<CheckReport> out;
  const auto params = triple_params(g, qn, f.id());
  for (int i = 0; i < na; ++i) {
    const double a = alpha[i];
    const double k = std::abs(n - 2.0 - 2.0 * a) / 2.0;
    CheckReport r = k < 1e-12 ? skipped_report("ckn", "degenerate constant: |n-2-2a| = 0")
                              : inequality_report("ckn", k * std::sqrt(pass.v[2 * i + 1]),
                                                  std::sqrt(pass.v[2 * i]), tol.inequality_slack);
    r.params["alpha"] = format_number(a);
    r.diagnostics["constant"] = k;
    if (r.status != CheckStatus::skipped && pass.v[2 * i + 1] > 0)
      r.diagnostics["ratio"] = std::sqrt(pass.v[2 * i] / pass.v[2 * i + 1]);
    decorate(r, params, &pass);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckReport> check_hpw(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                   const ScalarField& f, const Tolerances& tol) {
  require_dim(g, f);
  require_q3(g, "the uncertainty principle");
  const HomogeneousNorm norm(qn, g);
  const double Q = g.homogeneous_dimension();
  auto pass = integrate_pass(q, f, 4, [&](const Point& x, std::span<double> o) {
    const double r = norm(x);
    if (in_hole(f, r)) return;
    const Jet j = f.jet(x);
    const double a2 = std::norm(j.value);
    o[0] = a2;
    o[1] = std::norm(euler_from_jet(g, x, j) / r);
    o[2] = a2 * r * r;
    o[3] = a2 / (r * r);
  });
  const double f2 = pass.v[0], rf = std::sqrt(pass.v[1]), xf = std::sqrt(pass.v[2]), cf = std::sqrt(pass.v[3]);
  const double k = 2.0 / (Q - 2.0), h = 0.5 * (Q - 2.0);
  std::vector<CheckReport> out;
  CheckReport main = inequality_report("hpw", f2, k * rf * xf, tol.inequality_slack);
  main.diagnostics = {{"constant", k}, {"ratio", rf * xf > 0 ? f2 / (rf * xf) : 0.0}};
  out.push_back(main);
  out.push_back(inequality_report("hpw.chain_hardy", h * cf * xf, rf * xf, tol.inequality_slack));
  out.push_back(inequality_report("hpw.chain_holder", h * f2, h * cf * xf, tol.inequality_slack));
  const auto params = triple_params(g, qn, f.id());
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

std::vector<CheckReport> check_euler_pythagoras(const QuadratureScheme& q, const GroupSpec& g,
                                                const ScalarField& f, const Tolerances& tol) {
  require_dim(g, f);
  const double Q = g.homogeneous_dimension();
  auto pass = integrate_pass(q, f, 3, [&](const Point& x, std::span<double> o) {
    const Jet j = f.jet(x);
    const cplx e = euler_from_jet(g, x, j);
    o[0] = std::norm(j.value);
    o[1] = std::norm(e);
    o[2] = std::norm(e + 0.5 * Q * j.value);
  });
  const double f2 = pass.v[0], e2 = pass.v[1], s2 = pass.v[2];
  std::vector<CheckReport> out;
  CheckReport id = identity_report("euler_pythagoras", e2, 0.25 * Q * Q * f2 + s2, identity_tolerance(tol, f));
  id.diagnostics = {{"norm2_f", f2}, {"remainder_term", s2}};
  out.push_back(id);
  CheckReport cor =
      inequality_report("euler_pythagoras.corollary", std::sqrt(f2), 2.0 / Q * std::sqrt(e2), tol.inequality_slack);
  cor.diagnostics["constant"] = 2.0 / Q;
  out.push_back(cor);
  const auto params = field_params(g, f);
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

CheckReport check_symmetric_pair_identity(const QuadratureScheme& q, const OperatorHandle& a,
                                          const OperatorHandle& b, const ScalarField& f, const ScalarField& probe,
                                          const Tolerances& tol) {
  const ScalarField af = a(f), bf = b(f), ah = a(probe), bh = b(probe);
  const ScalarField abf = a(bf), baf = b(af);
  // Symmetry of A and B on (f, probe) rides along in channels 6..13.
  const ScalarField* fs[] = {&f, &probe};
  auto pass = integrate_pass(q, fs, 14, [&](const Point& x, std::span<double> o) {
    const cplx fx = f(x), hx = probe(x);
    const cplx lhs = -kI * (abf(x) - baf(x)) * std::conj(fx);
    const cplx ax = af(x), bx = bf(x);
    const cplx ab = ax * std::conj(bx);
    o[0] = lhs.real();
    o[1] = lhs.imag();
    o[2] = std::norm(ax);
    o[3] = std::norm(bx);
    o[4] = ab.real();
    o[5] = ab.imag();
    const cplx s[] = {ax * std::conj(hx), fx * std::conj(ah(x)), bx * std::conj(hx), fx * std::conj(bh(x))};
    for (int i = 0; i < 4; ++i) {
      o[6 + 2 * i] = s[i].real();
      o[7 + 2 * i] = s[i].imag();
    }
  });
  auto sym = [&](int c) {
    const cplx l(pass.v[c], pass.v[c + 1]), r(pass.v[c + 2], pass.v[c + 3]);
    return std::abs(l - r) / (1.0 + std::abs(l));
  };
  const double ra = sym(6), rb = sym(10);
  if (!(ra < 1e-6))
    throw Error(ErrorKind::precondition_violation,
                "operator " + a.name() + " is not symmetric (residual " + format_number(ra) + ")");
  if (!(rb < 1e-6))
    throw Error(ErrorKind::precondition_violation,
                "operator " + b.name() + " is not symmetric (residual " + format_number(rb) + ")");
  const double an = std::sqrt(pass.v[2]), bn = std::sqrt(pass.v[3]);
  const double tiny = 1e-20;
  if (an <= tiny) throw Error(ErrorKind::degenerate_input, "Af vanishes numerically");
  if (bn <= tiny) throw Error(ErrorKind::degenerate_input, "Bf vanishes numerically");
  const double u_iv2 = 2.0 + 2.0 * pass.v[5] / (an * bn);
  CheckReport r = identity_report("symmetric_pair", cplx(pass.v[0], pass.v[1]), an * bn * (2.0 - u_iv2),
                                  identity_tolerance(tol, f));
  r.params["field"] = f.id();
  r.params["variant"] = a.name() + "," + b.name();
  r.diagnostics = {{"symmetry_residual_A", ra}, {"symmetry_residual_B", rb}, {"norm2_u_plus_iv", u_iv2}};
  r.notes["probe"] = probe.id();
  return decorate(r, {}, &pass);
}

std::vector<CheckReport> check_rsrc(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                    const ScalarField& f, const Tolerances& tol) {
  require_dim(g, f);
  require_annulus(f, "the R_g/C relations");
  const HomogeneousNorm norm(qn, g);
  const double Q = g.homogeneous_dimension();
  auto pass = integrate_pass(q, f, 5, [&](const Point& x, std::span<double> o) {
    const double r = norm(x);
    if (in_hole(f, r)) return;
    const Jet j = f.jet(x);
    const cplx rf = euler_from_jet(g, x, j) / r;
    const cplx cf = j.value / r;
    const cplx rg = -kI * (rf + 0.5 * (Q - 1.0) * cf);
    const cplx ip = rg * std::conj(cf);
    o[0] = std::norm(rf);
    o[1] = std::norm(rg);
    o[2] = std::norm(cf);
    o[3] = ip.real();
    o[4] = ip.imag();
  });
  const double r2 = pass.v[0], rg2 = pass.v[1], c2 = pass.v[2];
  const double rn = std::sqrt(r2), rgn = std::sqrt(rg2), cn = std::sqrt(c2);
  if (rgn <= 1e-20) throw Error(ErrorKind::degenerate_input, "R_g f vanishes numerically");
  if (cn <= 1e-20) throw Error(ErrorKind::degenerate_input, "Cf vanishes numerically");
  const double coef = (Q - 1.0) * (Q - 3.0) / 4.0;
  const double tolerance = identity_tolerance(tol, f);
  std::vector<CheckReport> out;
  CheckReport main = identity_report("rsrc", r2, rg2 + coef * c2, tolerance);
  main.diagnostics = {{"coefficient", coef}, {"norm2_Rgf", rg2}, {"norm2_Cf", c2}};
  if (coef == 0.0) main.notes["special_case"] = "Q = 3: ||Rf|| = ||R_g f||";
  out.push_back(main);
  const double u_iv2 = 2.0 + 2.0 * pass.v[4] / (rgn * cn);
  CheckReport rsc = identity_report("rsrc.rsc", cn, rgn * (2.0 - u_iv2), tolerance);
  rsc.diagnostics["norm2_u_plus_iv"] = u_iv2;
  out.push_back(rsc);
  if (Q >= 3.0) {
    out.push_back(inequality_report("rsrc.corollary_rg", rgn, rn, tol.inequality_slack));
    CheckReport cc =
        inequality_report("rsrc.corollary_c", 0.5 * std::sqrt((Q - 1.0) * (Q - 3.0)) * cn, rn, tol.inequality_slack);
    out.push_back(cc);
  } else {
    out.push_back(skipped_report("rsrc.corollary_rg", "needs Q >= 3"));
    out.push_back(skipped_report("rsrc.corollary_c", "needs Q >= 3"));
  }
  out.push_back(inequality_report("rsrc.relative_bound", cn, 2.0 * rgn, tol.inequality_slack));
  const auto params = triple_params(g, qn, f.id());
  for (auto& r : out) decorate(r, params, &pass);
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise operator relations

std::vector<Point> sample_shell_points(const GroupSpec& g, const QuasiNorm& qn, int count, double lo, double hi,
                                       unsigned seed) {
  const HomogeneousNorm norm(qn, g);
  const int n = g.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(lo, hi);
  std::vector<Point> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    Point u(n);
    for (int k = 0; k < n; ++k) u[k] = gauss(rng);
    const double ru = norm(u);
    const double r = radius(rng);
    if (!(ru > 1e-8)) continue;
    pts.push_back(dilate(g, r / ru, u));
  }
  return pts;
}

namespace {

std::pair<double, double> shell_for(const ScalarField& f) {
  const double lo = f.vanishes_near_origin() ? std::max(1.5 * f.traits().r_min, 0.3) : 0.3;
  return {lo, 2.5};
}

// Worst point of a pointwise identity.
struct Worst {
  double rel = -1.0, abs = 0.0;
  cplx lhs{}, rhs{};
  void add(cplx l, cplx r) {
    const double d = std::abs(l - r), rr = d / scale_of(l, r);
    abs = std::max(abs, d);
    if (rr > rel) {
      rel = rr;
      lhs = l;
      rhs = r;
    }
  }
};

}  // namespace

CheckReport check_commutator(const GroupSpec& g, const QuasiNorm& qn, const ScalarField& f, int points,
                             const Tolerances& tol) {
  require_dim(g, f);
  const HomogeneousNorm norm(qn, g);
  const OperatorHandle rg = dilation_generator_operator(g, norm), c = coulomb_operator(norm);
  const auto [lo, hi] = shell_for(f);
  Worst w;
  for (const Point& x : sample_shell_points(g, qn, points, lo, hi, 0xc0117u)) {
    const double r = norm(x);
    w.add(operator_commutator(rg, c, f, x), kI * f(x) / (r * r));
  }
  CheckReport rep = identity_report("commutator", w.lhs, w.rhs, tol.pointwise);
  rep.diagnostics = {{"points", static_cast<double>(points)}, {"max_abs_residual", w.abs}};
  return decorate(rep, triple_params(g, qn, f.id()));
}

std::vector<CheckReport> check_symmetry(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                        const ScalarField& f, const ScalarField& h, const Tolerances& tol) {
  require_dim(g, f);
  require_dim(g, h);
  require_annulus(f, "the symmetry check");
  require_annulus(h, "the symmetry check");
  const HomogeneousNorm norm(qn, g);
  const double Q = g.homogeneous_dimension();
  const ScalarField* fs[] = {&f, &h};
  auto pass = integrate_pass(q, fs, 12, [&](const Point& x, std::span<double> o) {
    const double r = norm(x);
    if (in_hole(f, r) || in_hole(h, r)) return;
    const Jet jf = f.jet(x), jh = h.jet(x);
    const cplx rf = euler_from_jet(g, x, jf) / r, rh = euler_from_jet(g, x, jh) / r;
    const cplx cf = jf.value / r, ch = jh.value / r;
    const cplx gf = -kI * (rf + 0.5 * (Q - 1.0) * cf), gh = -kI * (rh + 0.5 * (Q - 1.0) * ch);
    const cplx vals[6] = {gf * std::conj(jh.value), jf.value * std::conj(gh), cf * std::conj(jh.value),
                          jf.value * std::conj(ch), rf * std::conj(jh.value), jf.value * std::conj(rh)};
    for (int k = 0; k < 6; ++k) {
      o[2 * k] = vals[k].real();
      o[2 * k + 1] = vals[k].imag();
    }
  });
  auto at = [&](int k) { return cplx(pass.v[2 * k], pass.v[2 * k + 1]); };
  auto spec_residual = [](cplx l, cplx r) { return std::abs(l - r) / (1.0 + std::abs(l)); };
  std::vector<CheckReport> out;
  const char* names[2] = {"Rg", "C"};
  for (int a = 0; a < 2; ++a) {
    CheckReport r = identity_report("symmetry", at(2 * a), at(2 * a + 1), tol.pointwise);
    r.params["variant"] = names[a];
    r.diagnostics["symmetry_residual"] = spec_residual(at(2 * a), at(2 * a + 1));
    out.push_back(r);
  }
  const double neg = spec_residual(at(4), at(5));
  CheckReport nc = inequality_report("symmetry.negative_control", 1e-2, neg, tol.inequality_slack);
  nc.params["variant"] = "R";
  nc.diagnostics["symmetry_residual"] = neg;
  out.push_back(nc);
  const auto params = triple_params(g, qn, f.id());
  for (auto& r : out) {
    r.notes["partner"] = h.id();
    decorate(r, params, &pass);
  }
  return out;
}

CheckReport check_radial_methods(const GroupSpec& g, const QuasiNorm& qn, const ScalarField& f, int points,
                                 const Tolerances& tol) {
  require_dim(g, f);
  const HomogeneousNorm norm(qn, g);
  const auto [lo, hi] = shell_for(f);
  Worst w;
  for (const Point& x : sample_shell_points(g, qn, points, lo, hi, 0x4ad1u))
    w.add(radial_apply(RadialMethod::euler_quotient, g, norm, f, x),
          radial_apply(RadialMethod::orbit_fd, g, norm, f, x));
  CheckReport rep = identity_report("radial_methods", w.lhs, w.rhs, tol.pointwise);
  rep.diagnostics = {{"points", static_cast<double>(points)}, {"max_abs_residual", w.abs}};
  return decorate(rep, triple_params(g, qn, f.id()));
}

CheckReport check_euler_variants(const QuadratureScheme& q, const GroupSpec& g, const QuasiNorm& qn,
                                 const ScalarField& f, const Tolerances& tol) {
  require_dim(g, f);
  const int n = g.dim();
  const double Q = g.homogeneous_dimension();
  auto example_euler = [&](const Point& x, const Jet& j) {
    const Vector e = exp_coords(g, x);
    cplx s{};
    for (int k = 0; k < n; ++k) s += e[k] * g.apply_frame(k, x, std::span<const cplx>(j.grad.data(), n));
    return s;
  };
  auto pass = integrate_pass(q, f, 3, [&](const Point& x, std::span<double> o) {
    const Jet j = f.jet(x);
    o[0] = 2.0 * (std::conj(j.value) * euler_from_jet(g, x, j)).real();
    o[1] = 2.0 * (std::conj(j.value) * example_euler(x, j)).real();
    o[2] = std::norm(j.value);
  });
  CheckReport rep = identity_report("euler_variants", -pass.v[0], Q * pass.v[2], identity_tolerance(tol, f));
  rep.params["variant"] = "dilation_weighted";
  const double example_ratio = pass.v[2] > 0 ? -pass.v[1] / (Q * pass.v[2]) : 0.0;

  const HomogeneousNorm norm(qn, g);
  const auto [lo, hi] = shell_for(f);
  Worst wd, wp;
  for (const Point& x : sample_shell_points(g, qn, 20, lo, hi, 0xe7e7u)) {
    const double r = norm(x);
    const Jet j = f.jet(x);
    const cplx orbit = radial_apply(RadialMethod::orbit_fd, g, norm, f, x);
    wd.add(euler_from_jet(g, x, j) / r, orbit);
    wp.add(example_euler(x, j) / r, orbit);
  }
  rep.diagnostics = {{"paper_example_integral_ratio", example_ratio},
                     {"dilation_weighted_radial_residual", wd.rel},
                     {"paper_example_radial_residual", wp.rel}};
  rep.notes["paper_example"] = wp.rel <= tol.pointwise && std::abs(example_ratio - 1.0) <= identity_tolerance(tol, f)
                                   ? "agrees with the dilation-weighted operator on this group"
                                   : "differs from the dilation-weighted operator on this group";
  return decorate(rep, triple_params(g, qn, f.id()), &pass);
}

CheckReport check_pm_factorization(const GroupSpec& g, const QuasiNorm& qn, const ScalarField& f, int points,
                                   const Tolerances& tol) {
  require_dim(g, f);
  const PmPairing pm = compatible_pairing(g);
  const PmPairing plain{PositionVariant::coordinate, MomentumVariant::plain_gradient};
  const int n = g.dim();
  const auto [lo, hi] = shell_for(f);
  Worst w;
  double r1 = 0.0, r2 = 0.0, unweighted = 0.0;
  for (const Point& x : sample_shell_points(g, qn, points, lo, hi, 0x9e3u)) {
    const Jet j = f.jet(x);
    const CVector p = position_from_jet(pm.position, g, x, j);
    const CVector m = momentum_from_jet(pm.momentum, g, x, j);
    double lhs = 0.0;
    for (int k = 0; k < n; ++k) lhs += 2.0 * (p[k] * std::conj(kI * m[k])).real();
    const double e = 2.0 * (std::conj(j.value) * euler_from_jet(g, x, j)).real();
    w.add(lhs, e);
    const auto [a, b] = pm_factorization_residual(g, pm, f, x);
    r1 = std::max(r1, a);
    r2 = std::max(r2, b);
    const auto [ua, ub] = pm_factorization_residual(g, plain, f, x);
    unweighted = std::max(unweighted, ua + ub);
  }
  CheckReport rep = identity_report("pm_factorization", w.lhs, w.rhs, tol.pointwise);
  rep.params["variant"] = to_string(pm);
  rep.diagnostics = {{"max_r1", r1}, {"max_r2", r2}, {"unweighted_pairing_max_residual", unweighted}};
  return decorate(rep, triple_params(g, qn, f.id()));
}

// ---------------------------------------------------------------------------
// Polar decomposition

CheckReport check_polar(const QuadratureScheme& q, const PolarScheme& ps, const GroupSpec& g, const QuasiNorm& qn,
                        const ScalarField& f, const Tolerances& tol) {
  require_dim(g, f);
  auto pass = integrate_pass(q, f, 2, [&](const Point& x, std::span<double> o) {
    const cplx v = f(x);
    o[0] = v.real();
    o[1] = v.imag();
  });
  const cplx cart(pass.v[0], pass.v[1]);
  const cplx polar = polar_integral(ps, f);
  CheckReport rep = identity_report("polar", cart, polar, tol.identity);
  rep.diagnostics["sphere_mass"] = ps.sphere_mass();
  rep.notes["polar_scheme"] = ps.describe();
  return decorate(rep, triple_params(g, qn, f.id()), &pass);
}

CheckReport check_sphere_mass(const QuadratureScheme& q, const PolarScheme& ps, const GroupSpec& g,
                              const QuasiNorm& qn, const ScalarField& qn_radial, const Tolerances& tol) {
  require_dim(g, qn_radial);
  const auto it = qn_radial.traits().params.find("power");
  if (it == qn_radial.traits().params.end())
    throw Error(ErrorKind::invalid_field, "sphere mass oracle needs the quasi-radial field e^{-|x|^s}");
  const double s = it->second, Q = g.homogeneous_dimension();
  const int n = g.dim();
  auto pass = integrate_pass(q, qn_radial, 1,
                             [&](const Point& x, std::span<double> o) { o[0] = qn_radial(x).real(); });
  const double from_cartesian = pass.v[0] / (std::tgamma(Q / s) / s);
  double rhs = from_cartesian;
  CheckReport rep;
  if (euclidean_mode(g, qn)) {
    rhs = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
    rep = identity_report("polar.sphere_mass", ps.sphere_mass(), rhs, tol.identity);
    rep.paper_ref = "sigma(S) = 2 pi^(n/2) / Gamma(n/2)";
    rep.diagnostics["from_cartesian"] = from_cartesian;
  } else {
    rep = identity_report("polar.sphere_mass", ps.sphere_mass(), rhs, tol.identity);
  }
  return decorate(rep, triple_params(g, qn, qn_radial.id()), &pass);
}

// ---------------------------------------------------------------------------
// Structure

namespace {

Point random_point(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  return p;
}

double rel_diff(const Point& a, const Point& b) {
  double m = 1.0;
  for (int i = 0; i < a.n; ++i) m = std::max({m, std::abs(a[i]), std::abs(b[i])});
  return max_abs_diff(a, b) / m;
}

// exp(-sum_k x_k^2 / (k+2)) (1 + x_1 x_n + x_1^2/2) with its gradient.
Jet probe_jet(const Point& x) {
  const int n = x.n;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += x[k] * x[k] / (k + 2.0);
  const double e = std::exp(-s);
  const double p = 1.0 + x[0] * x[n - 1] + 0.5 * x[0] * x[0];
  Jet j;
  j.value = e * p;
  for (int k = 0; k < n; ++k) {
    double dp = 0.0;
    if (k == 0) dp += x[n - 1] + x[0];
    if (k == n - 1) dp += x[0];
    j.grad[k] = e * (dp - 2.0 * x[k] / (k + 2.0) * p);
  }
  return j;
}

CheckReport structural(const std::string& id, double residual, double tol, const std::string& note = {}) {
  CheckReport r = identity_report(id, residual, 0.0, tol);
  if (!note.empty()) r.notes["detail"] = note;
  return r;
}

}  // namespace

std::vector<CheckReport> check_structural(const GroupSpec& g, const QuasiNorm& qn, const Tolerances& tol) {
  const int n = g.dim();
  const auto nu = g.weights().nu();
  std::mt19937_64 rng(0x57a7u);
  std::uniform_real_distribution<double> lam(0.25, 4.0);
  std::vector<CheckReport> out;

  double aut = 0.0, assoc = 0.0, inv = 0.0, exph = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Point x = random_point(rng, n, 2.0), y = random_point(rng, n, 2.0), z = random_point(rng, n, 2.0);
    const double l = lam(rng);
    aut = std::max(aut, rel_diff(dilate(g, l, g.product(x, y)), g.product(dilate(g, l, x), dilate(g, l, y))));
    assoc = std::max(assoc, rel_diff(g.product(g.product(x, y), z), g.product(x, g.product(y, z))));
    inv = std::max({inv, rel_diff(g.product(x, g.inverse(x)), g.origin()),
                    rel_diff(g.product(g.inverse(x), x), g.origin())});
    exph = std::max(exph, rel_diff(exp_coords(g, dilate(g, l, x)), dilate(g, l, exp_coords(g, x))));
  }
  out.push_back(structural("structural.automorphism", aut, tol.structural));
  out.push_back(structural("structural.associativity", assoc, tol.structural));
  out.push_back(structural("structural.inverse", inv, tol.structural));
  out.push_back(structural("structural.exp_homogeneity", exph, tol.structural));

  // Frame homogeneity with analytic partials and through finite differences.
  double fh = 0.0, fh_fd = 0.0;
  const ScalarField probe("probe", n, [](const Point& x) { return probe_jet(x).value; }, probe_jet, FieldTraits{});
  for (int k = 0; k < 30; ++k) {
    const Point x = random_point(rng, n, 1.2);
    const double l = lam(rng);
    std::array<double, kMaxDim> ln{};
    for (int m = 0; m < n; ++m) ln[m] = std::pow(l, nu[m]);
    auto scaled_value = [&g, l](const Point& p) { return probe_jet(dilate(g, l, p)).value; };
    auto scaled_jet = [&g, l, ln, n](const Point& p) {
      Jet j = probe_jet(dilate(g, l, p));
      for (int m = 0; m < n; ++m) j.grad[m] *= ln[m];
      return j;
    };
    const ScalarField composed("probe_dilated", n, scaled_value, scaled_jet, FieldTraits{});
    const ScalarField composed_fd = composed.without_partials();
    const Point dx = dilate(g, l, x);
    for (int j = 0; j < n; ++j) {
      const cplx rhs = ln[j] * vector_field_apply(g, j, probe, dx);
      const cplx lhs = vector_field_apply(g, j, composed, x);
      const cplx lhs_fd = vector_field_apply(g, j, composed_fd, x);
      fh = std::max(fh, std::abs(lhs - rhs) / scale_of(lhs, rhs));
      fh_fd = std::max(fh_fd, std::abs(lhs_fd - rhs) / scale_of(lhs_fd, rhs));
    }
  }
  out.push_back(structural("structural.frame_homogeneity", fh, tol.structural));
  out.push_back(structural("structural.frame_homogeneity_fd", fh_fd, tol.pointwise));

  double rt = 0.0;
  for (int k = 0; k < 16; ++k) {
    const Point x = random_point(rng, n, 1.5);
    rt = std::max(rt, rel_diff(exp_map(g, exp_coords(g, x)), x));
  }
  out.push_back(structural("structural.exp_roundtrip", rt, 1e-10));

  const HomogeneousNorm norm(qn, g);
  double ax = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Point x = random_point(rng, n, 2.0);
    const double l = lam(rng);
    const double r = norm(x);
    ax = std::max(ax, std::abs(norm(dilate(g, l, x)) - l * r) / (1.0 + l * r));
    ax = std::max(ax, std::abs(norm(g.inverse(x)) - r) / (1.0 + r));
    if (!(r > 0.0)) ax = std::max(ax, 1.0);
  }
  if (norm(g.origin()) != 0.0) ax = std::max(ax, 1.0);
  out.push_back(structural("structural.quasinorm_axioms", ax, tol.structural));

  // d/dx_j f = sum_k p_jk X_k f on random polynomials.
  const PolynomialMatrix p = frame_change_polynomials(g);
  int degree_violations = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (k != j && !p[j][k].is_zero() && !p[j][k].is_weighted_homogeneous(nu, nu[k] - nu[j])) ++degree_violations;
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double fc = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial poly(n);
    for (int t = 0; t < 6; ++t) {
      std::array<int, kMaxDim> pw{};
      for (int m = 0; m < n; ++m) pw[m] = deg(rng);
      poly += Polynomial::monomial(n, coef(rng), std::span<const int>(pw.data(), n));
    }
    std::vector<Polynomial> grad;
    for (int m = 0; m < n; ++m) grad.push_back(poly.derivative(m));
    for (int s = 0; s < 5; ++s) {
      const Point x = random_point(rng, n, 1.5);
      std::array<cplx, kMaxDim> gr{};
      for (int m = 0; m < n; ++m) gr[m] = grad[m](x.span());
      for (int j = 0; j < n; ++j) {
        cplx rhs{};
        for (int k = 0; k < n; ++k)
          if (!p[j][k].is_zero()) rhs += p[j][k](x.span()) * g.apply_frame(k, x, std::span<const cplx>(gr.data(), n));
        fc = std::max(fc, std::abs(gr[j] - rhs) / scale_of(gr[j], rhs));
      }
    }
  }
  CheckReport frc = structural("structural.frame_change", degree_violations ? std::max(fc, 1.0) : fc, tol.structural);
  frc.diagnostics["degree_violations"] = degree_violations;
  out.push_back(frc);

  const auto params = triple_params(g, qn, "-");
  for (auto& r : out) decorate(r, params);
  return out;
}

}  // namespace hgcalc
