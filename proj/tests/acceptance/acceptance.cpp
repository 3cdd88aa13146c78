// Acceptance gate: one line per criterion, tolerances pinned below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hgcalc/catalog.hpp"
#include "hgcalc/error.hpp"
#include "hgcalc/sharpness.hpp"
#include "hgcalc/suite.hpp"
#include "hgcalc/verify.hpp"

using namespace hgcalc;
using std::numbers::pi;

namespace {

constexpr double kIdentity = 1e-6;
constexpr double kClosedForm = 1e-8;
constexpr double kSlack = 1e-8;
constexpr double kPointwise = 1e-7;
constexpr double kNegativeControl = 1e-2;
constexpr double kInvariance = 1e-9;
constexpr double kKennardSecondsPerGroup = 60.0;
constexpr double kSuiteSeconds = 600.0;
constexpr double kHardyGap = 0.02;
constexpr double kCknGap = 0.03;
constexpr int kHardyBudget = 500;

const char* const kUncertaintyGroups[] = {"r3_isotropic", "r3_aniso_123", "heisenberg"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct Gate {
  int failed = 0;
  void line(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
};

// Running worst-case tracker over report selections.
struct Worst {
  double value = 0.0;
  std::string where;
  int count = 0;
  void see(double v, const CheckReport& r) {
    if (count++ == 0 || v > value) {
      value = v;
      where = r.check_id + "[" + r.params.at("group") + "/" + r.params.at("quasinorm") + "/" +
              (r.params.count("field") ? r.params.at("field") : std::string("-")) + "]";
    }
  }
};

std::vector<const CheckReport*> select(const SuiteReport& s, const std::string& id,
                                       const std::function<bool(const CheckReport&)>& extra = {}) {
  std::vector<const CheckReport*> v;
  for (const auto& r : s.checks)
    if (r.check_id == id && r.status != CheckStatus::skipped && (!extra || extra(r))) v.push_back(&r);
  return v;
}

bool in_uncertainty_groups(const CheckReport& r) {
  for (const char* g : kUncertaintyGroups)
    if (r.params.at("group") == g) return true;
  return false;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

SuiteConfig single_threaded(std::vector<std::string> groups, std::vector<std::string> checks) {
  SuiteConfig c;
  c.groups = std::move(groups);
  c.checks = std::move(checks);
  c.threads = 1;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: a saved JSON report to evaluate instead of running the
  // suite. Criterion 14 then has no timing and fails.
  const std::string replay = argc > 1 ? argv[1] : "";
  Gate gate;
  const double p32 = std::pow(pi, 1.5);

  const GroupSpec r3 = resolve_group("r3_isotropic");
  const QuasiNorm eu = QuasiNorm::euclidean();
  const ScalarField gauss = battery_field(r3, eu, "gauss");
  const QuadratureScheme q3 = scheme_for(r3, gauss);

  // 1. Kennard identity, per-group timing and the Gaussian closed forms.
  {
    bool ok = true;
    std::string detail;
    for (const char* gid : kUncertaintyGroups) {
      const auto t0 = std::chrono::steady_clock::now();
      const SuiteReport s = run_suite(single_threaded({gid}, {"kennard"}));
      const double dt = seconds_since(t0);
      double worst = 0.0;
      int n = 0;
      for (const auto* r : select(s, "kennard")) {
        ++n;
        worst = std::max(worst, r->rel_residual);
        ok = ok && r->status == CheckStatus::pass;
      }
      ok = ok && n >= 8 && worst <= kIdentity && dt <= kKennardSecondsPerGroup;
      detail += std::string(gid) + fmt(": %g reports worst %.1e %.1fs; ", n, worst, dt);
    }
    const auto k = check_kennard(q3, r3, eu, compatible_pairing(r3), gauss);
    const double ab = k[0].lhs.real(), plus = k[0].diagnostics.at("norm2_Pf_plus_iMf");
    ok = ok && rel(ab, 3 * p32) <= kClosedForm && std::sqrt(plus) <= kClosedForm;
    detail += fmt("gauss |P|^2+|M|^2 rel err %.1e, |Pf+iMf| %.1e", rel(ab, 3 * p32), std::sqrt(plus));
    gate.line(1, ok, "kennard identity", detail);
    // 2. Sign diagnosis on the same report.
    const double minus = k[0].diagnostics.at("rel_residual_printed_minus");
    gate.line(2, minus >= 0.5 && k[0].rel_residual <= kClosedForm, "printed minus sign fails",
              fmt("minus rel_residual %.3f (>= 0.5), plus rel_residual %.1e (<= 1e-8)", minus, k[0].rel_residual));
  }

  // Everything else reads the full single-threaded suite.
  const auto t0 = std::chrono::steady_clock::now();
  SuiteConfig all;
  all.threads = 1;
  SuiteReport full;
  double suite_seconds = 1e300;
  if (replay.empty()) {
    full = run_suite(all);
    suite_seconds = seconds_since(t0);
  } else {
    std::ifstream in(replay);
    std::stringstream ss;
    ss << in.rdbuf();
    full = report_from_json(ss.str());
  }
  std::printf("full suite: %zu reports, pass %d fail %d skipped %d errored %d, %s\n", full.checks.size(),
              full.summary.pass, full.summary.fail, full.summary.skipped, full.summary.errored,
              replay.empty() ? fmt("%.1f s", suite_seconds).c_str() : "replayed, not timed");
  for (const auto& r : full.checks)
    if (r.status == CheckStatus::fail || r.status == CheckStatus::error)
      std::printf("  %s %s %s/%s/%s %s\n", to_string(r.status).c_str(), r.check_id.c_str(),
                  r.params.count("group") ? r.params.at("group").c_str() : "-",
                  r.params.count("quasinorm") ? r.params.at("quasinorm").c_str() : "-",
                  r.params.count("field") ? r.params.at("field").c_str() : "-", r.skipped_reason.c_str());

  // 3. Proof integral.
  {
    Worst w;
    bool ok = true;
    for (const auto* r : select(full, "kennard.proof_integral", in_uncertainty_groups)) {
      w.see(r->rel_residual, *r);
      ok = ok && r->status == CheckStatus::pass;
    }
    ok = ok && w.count >= 3 * 8 && w.value <= kIdentity;
    gate.line(3, ok, "proof integral identity", fmt("%g reports, worst rel_residual %.1e ", w.count, w.value) + w.where);
  }

  // 4. Heisenberg-Kennard equality at the Gaussian, slack elsewhere.
  {
    const auto hk = check_heisenberg_kennard(q3, r3, eu, compatible_pairing(r3), gauss);
    const double l = hk[0].lhs.real(), r = hk[0].rhs.real();
    bool ok = rel(l, 1.5 * p32) <= kClosedForm && rel(r, 1.5 * p32) <= kClosedForm;
    Worst w;
    w.value = 1.0;
    for (const auto* x : select(full, "heisenberg_kennard")) {
      if (x->status == CheckStatus::skipped) continue;
      const double s = x->slack.value_or(-1.0);
      if (w.count == 0 || s < w.value) {
        w.value = s;
        w.where = x->params.at("group") + "/" + x->params.at("field");
      }
      ++w.count;
    }
    ok = ok && w.count > 0 && w.value >= -kSlack;
    gate.line(4, ok, "heisenberg-kennard equality",
              fmt("gauss sides rel err %.1e / %.1e, min slack %.2e ", rel(l, 1.5 * p32), rel(r, 1.5 * p32), w.value) +
                  w.where);
  }

  // 5. Weighted radial identity over the alpha grid.
  {
    Worst w;
    bool ok = true;
    std::map<std::string, std::set<std::string>> alphas;  // pair -> alphas seen
    std::set<double> qs;
    for (const auto* r : select(full, "weighted_radial")) {
      w.see(r->rel_residual, *r);
      ok = ok && r->status == CheckStatus::pass;
      alphas[r->params.at("group") + "/" + r->params.at("quasinorm")].insert(r->params.at("alpha"));
      qs.insert(std::stod(r->params.at("Q")));
    }
    for (const auto& gid : shipped_group_ids()) {
      const GroupSpec g = resolve_group(gid);
      for (const auto& qn : shipped_quasi_norms(g)) {
        const auto& seen = alphas[gid + "/" + qn.id()];
        for (double a : default_alpha_grid(g.homogeneous_dimension())) ok = ok && seen.count(format_number(a)) == 1;
      }
    }
    ok = ok && qs == std::set<double>{3.0, 4.0, 6.0} && w.value <= kIdentity;
    gate.line(5, ok, "weighted radial identity",
              fmt("%g reports over Q in {3,4,6}, worst rel_residual %.1e ", w.count, w.value) + w.where);
  }

  // 6. Hardy sharpness for Q = 3, 4, 6 and the inequality on every field.
  {
    bool ok = true;
    std::string detail;
    struct Case {
      const char* group;
      QuasiNorm qn;
    };
    const Case cases[] = {{"r2_aniso_12", QuasiNorm::p_family(4)},
                          {"heisenberg", QuasiNorm::koranyi()},
                          {"r3_aniso_123", QuasiNorm::p_family(6)}};
    for (const auto& c : cases) {
      SharpnessOptions opt;
      opt.budget = kHardyBudget;
      const SharpnessResult s = sharpness_search(SharpnessTarget::hardy, resolve_group(c.group), c.qn, opt);
      ok = ok && s.relative_gap <= kHardyGap && s.respects_constant && s.evaluations <= kHardyBudget;
      detail += fmt("Q=%g ratio %.5f gap %.2f%%; ", resolve_group(c.group).homogeneous_dimension(), s.best_ratio,
                    100 * s.relative_gap);
    }
    double min_slack = 1.0;
    int n = 0;
    for (const auto& r : full.checks) {
      if (r.check_id.rfind("hardy", 0) != 0 || !r.slack) continue;
      ++n;
      min_slack = std::min(min_slack, *r.slack);
    }
    ok = ok && n > 0 && min_slack >= -kSlack;
    gate.line(6, ok, "hardy sharpness", detail + fmt("min slack %.2e over %g reports", min_slack, n));
  }

  // 7. CKN on R^3.
  {
    bool ok = true;
    std::string detail;
    for (double a : {-1.0, 0.0, 1.0}) {
      const auto reps = select(full, "ckn", [&](const CheckReport& r) {
        return r.params.at("group") == "r3_isotropic" && r.params.count("alpha") && r.params.at("alpha") == format_number(a);
      });
      bool held = !reps.empty();
      for (const auto* r : reps) held = held && r->status == CheckStatus::pass;
      SharpnessOptions opt;
      opt.alpha = a;
      const SharpnessResult s = sharpness_search(SharpnessTarget::ckn, r3, eu, opt);
      ok = ok && held && s.relative_gap <= kCknGap && s.respects_constant;
      detail += fmt("a=%g: %g fields hold, gap %.2f%%; ", a, reps.size(), 100 * s.relative_gap);
    }
    gate.line(7, ok, "ckn inequality and sharpness", detail);
  }

  // 8. HPW closed form and the proof chain.
  {
    const auto h = check_hpw(q3, r3, eu, gauss);
    const double l4 = std::pow(h[0].lhs.real(), 2), r4 = std::pow(h[0].rhs.real(), 2);
    const double p3 = std::pow(pi, 3);
    bool ok = rel(l4, p3) <= kClosedForm && rel(r4, 9 * p3) <= kClosedForm;
    double min_slack = 1.0;
    int n = 0;
    for (const auto& r : full.checks) {
      if (r.check_id.rfind("hpw", 0) != 0 || !r.slack) continue;
      ++n;
      min_slack = std::min(min_slack, *r.slack);
    }
    ok = ok && n > 0 && min_slack >= 0.0;
    gate.line(8, ok, "hpw closed form and chain",
              fmt("|f|^4 rel err %.1e, rhs^2 rel err %.1e, ", rel(l4, p3), rel(r4, 9 * p3)) +
                  fmt("min chain slack %.2e over %g reports", min_slack, n));
  }

  // 9. Euler Pythagoras closed form and quasi-norm invariance.
  {
    const auto e = check_euler_pythagoras(q3, r3, gauss);
    const double lhs = e[0].lhs.real(), f2 = e[0].diagnostics.at("norm2_f"), rem = e[0].diagnostics.at("remainder_term");
    bool ok = rel(lhs, 3.75 * p32) <= kClosedForm && rel(2.25 * f2, 2.25 * p32) <= kClosedForm &&
              rel(rem, 1.5 * p32) <= kClosedForm;
    std::map<std::string, std::vector<const CheckReport*>> by;
    // Only fields defined without reference to the quasi-norm can be compared.
    for (const auto* r : select(full, "euler_pythagoras", [](const CheckReport& r) {
           const std::string& f = r.params.at("field");
           return !is_annulus_field(f) && f != "qn_radial";
         }))
      by[r->params.at("group") + "/" + r->params.at("field")].push_back(r);
    double spread = 0.0;
    int multi = 0;
    for (const auto& [key, v] : by) {
      if (v.size() < 2) continue;
      ++multi;
      for (const auto* r : v) {
        spread = std::max(spread, std::abs(r->lhs - v[0]->lhs) / std::abs(v[0]->lhs));
        spread = std::max(spread, std::abs(r->rhs - v[0]->rhs) / std::abs(v[0]->rhs));
      }
    }
    ok = ok && multi > 0 && spread <= kInvariance;
    gate.line(9, ok, "euler pythagoras",
              fmt("gauss rel err %.1e, (9/4, 6/4) rel err %.1e / %.1e, ", rel(lhs, 3.75 * p32), rel(2.25 * f2, 2.25 * p32),
                  rel(rem, 1.5 * p32)) +
                  fmt("quasi-norm spread %.1e over %g (group, field) pairs", spread, multi));
  }

  // 10. Commutator, symmetry, negative control.
  {
    double worst_c = 0.0, worst_s = 0.0, min_neg = 1e300;
    int nc = 0, ns = 0, nn = 0;
    std::set<std::string> groups;
    for (const auto* r : select(full, "commutator")) {
      ++nc;
      groups.insert(r->params.at("group"));
      worst_c = std::max(worst_c, r->rel_residual);
    }
    for (const auto* r : select(full, "symmetry")) {
      ++ns;
      worst_s = std::max(worst_s, r->diagnostics.at("symmetry_residual"));
    }
    for (const auto* r : select(full, "symmetry.negative_control")) {
      ++nn;
      min_neg = std::min(min_neg, r->diagnostics.at("symmetry_residual"));
    }
    const bool ok = groups.size() == shipped_group_ids().size() && ns > 0 && nn > 0 && worst_c <= kPointwise &&
                    worst_s <= kPointwise && min_neg >= kNegativeControl;
    gate.line(10, ok, "commutator and symmetry",
              fmt("commutator worst %.1e (100 points each), symmetry worst %.1e, ", worst_c, worst_s) +
                  fmt("negative control min %.2e", min_neg));
  }

  // 11. Abstract identity with (R_g, C).
  {
    Worst w;
    bool ok = true;
    for (const auto* r : select(full, "symmetric_pair")) {
      w.see(r->rel_residual, *r);
      ok = ok && r->status == CheckStatus::pass && r->params.at("variant") == "Rg,C";
    }
    ok = ok && w.count > 0 && w.value <= kIdentity;
    gate.line(11, ok, "symmetric pair identity (Rg, C)",
              fmt("%g reports, worst rel_residual %.1e ", w.count, w.value) + w.where);
  }

  // 12. RsRC, RsC, the Q = 3 case and the corollary bounds.
  {
    Worst w;
    bool ok = true;
    int q3cases = 0;
    double min_slack = 1.0;
    for (const auto& r : full.checks) {
      if (r.check_id.rfind("rsrc", 0) != 0 || r.status == CheckStatus::skipped) continue;
      if (r.slack) {
        min_slack = std::min(min_slack, *r.slack);
        continue;
      }
      w.see(r.rel_residual, r);
      if (r.check_id == "rsrc" && r.params.at("Q") == "3") {
        ++q3cases;
        const double rg = r.diagnostics.at("norm2_Rgf");
        ok = ok && r.diagnostics.at("coefficient") == 0.0 &&
             std::abs(std::sqrt(r.lhs.real()) - std::sqrt(rg)) <= kIdentity * std::sqrt(r.lhs.real());
      }
    }
    // At Q = 3, ||R_g f|| <= ||Rf|| is an equality, so its slack is quadrature noise.
    ok = ok && w.count > 0 && q3cases > 0 && w.value <= kIdentity && min_slack >= -kSlack;
    gate.line(12, ok, "rsrc and rsc",
              fmt("worst rel_residual %.1e, %g Q=3 fields with |Rf| = |R_g f|, ", w.value, q3cases) +
                  fmt("min corollary slack %.2e", min_slack));
  }

  // 13. Polar decomposition and the Euclidean sphere mass.
  {
    Worst w;
    std::set<std::string> pairs;
    for (const auto* r : select(full, "polar")) {
      w.see(r->rel_residual, *r);
      pairs.insert(r->params.at("group") + "/" + r->params.at("quasinorm"));
    }
    std::size_t shipped = 0;
    for (const auto& gid : shipped_group_ids()) shipped += shipped_quasi_norms(resolve_group(gid)).size();
    double mass_err = 1.0;
    for (const auto* r : select(full, "polar.sphere_mass", [](const CheckReport& r) {
           return r.params.at("group") == "r3_isotropic" && r.params.at("quasinorm") == "euclidean";
         }))
      mass_err = std::abs(r->lhs.real() - 4 * pi);
    const bool ok = pairs.size() == shipped && w.value <= kIdentity && mass_err <= kIdentity;
    gate.line(13, ok, "polar decomposition",
              fmt("%g pairs, worst rel_residual %.1e, |sigma - 4 pi| %.1e", pairs.size(), w.value, mass_err));
  }

  // 14. Structural invariants and the suite budget.
  {
    int n = 0, bad = 0;
    std::set<std::string> kinds;
    for (const auto& r : full.checks) {
      if (r.check_id.rfind("structural", 0) != 0) continue;
      ++n;
      kinds.insert(r.check_id);
      if (r.status != CheckStatus::pass) ++bad;
    }
    const bool ok = n > 0 && bad == 0 && kinds.size() >= 5 && suite_seconds <= kSuiteSeconds &&
                    full.summary.fail == 0;
    gate.line(14, ok, "structural invariants and runtime",
              fmt("%g structural reports, %g failing; ", n, bad) +
                  (replay.empty() ? fmt("full suite %.1f s single-threaded", suite_seconds) : "suite not timed"));
  }

  std::printf("%d of 14 criteria failed\n", gate.failed);
  return gate.failed == 0 ? 0 : 1;
}
