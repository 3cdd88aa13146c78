// hgcalc - command line front end for the verification suite and the sharpness search
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgcalc/catalog.hpp"
#include "hgcalc/error.hpp"
#include "hgcalc/sharpness.hpp"
#include "hgcalc/suite.hpp"

using namespace hgcalc;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

// Accepts repeated flags as well as comma-separated lists.
std::vector<std::string> split_all(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::config_error, what + ": not a number '" + s + "'");
  }
}

// "1e-7" overrides the identity tolerance; "name=value" any of them.
void apply_tolerance(Tolerances& t, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    t.identity = parse_double(spec, "--tol");
    return;
  }
  const std::string k = spec.substr(0, eq);
  const double v = parse_double(spec.substr(eq + 1), "--tol " + k);
  if (k == "identity") t.identity = v;
  else if (k == "identity_fd") t.identity_fd = v;
  else if (k == "inequality_slack") t.inequality_slack = v;
  else if (k == "pointwise") t.pointwise = v;
  else if (k == "structural") t.structural = v;
  else throw Error(ErrorKind::config_error, "--tol: unknown tolerance '" + k + "'");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) throw Error(ErrorKind::io_error, "cannot open '" + out + "' for writing");
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw Error(ErrorKind::io_error, "write to '" + out + "' failed");
}

int exit_for(const Error& e) { return e.kind() == ErrorKind::config_error ? kExitConfig : kExitInternal; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculus and verification kernel for homogeneous Lie groups"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List groups, quasi-norms, fields and checks");
  std::string what = "all";
  list->add_option("what", what, "groups | quasinorms | fields | checks | all")
      ->check(CLI::IsMember({"groups", "quasinorms", "fields", "checks", "all"}));

  auto* run = app.add_subcommand("run", "Run the verification suite");
  std::string config_path;
  std::vector<std::string> groups, quasinorms, fields, checks, tols, alphas;
  int budget = -1, threads = -1;
  std::string out, format;
  bool no_estimates = false;
  run->add_option("--config", config_path, "JSON config; flags override its values");
  run->add_option("--group", groups, "Group id or JSON group file (repeatable, comma-separated)");
  run->add_option("--quasinorm", quasinorms, "Quasi-norm id, e.g. euclidean, koranyi, p4");
  run->add_option("--field", fields, "Battery field id, or all | annulus | smooth");
  run->add_option("--check", checks, "Check family or check id, or all");
  run->add_option("--tol", tols, "Identity tolerance, or name=value");
  run->add_option("--alpha", alphas, "Alpha grid override");
  run->add_option("--budget", budget, "Sharpness evaluations per search");
  run->add_option("--out", out, "Output file (default stdout)");
  run->add_option("--format", format, "json | csv | markdown");
  run->add_option("--threads", threads, "Worker threads (default HGCALC_THREADS or all cores)");
  run->add_flag("--no-error-estimates", no_estimates, "Skip the coarse-rule error estimates");

  auto* sharp = app.add_subcommand("sharpness", "Search a test-function family for the optimal constant");
  std::string ineq, s_group = "r3_isotropic", s_qn, s_out;
  int s_budget = 200;
  double s_alpha = 1.0;
  int s_panels = 40;
  std::vector<std::string> s_params;
  sharp->add_option("--inequality", ineq, "hardy | ckn | hk | hpw | euler_corollary")->required();
  sharp->add_option("--group", s_group, "Group id or JSON group file");
  sharp->add_option("--quasinorm", s_qn, "Quasi-norm id (default: first shipped for the group)");
  sharp->add_option("--budget", s_budget, "Functional evaluations");
  sharp->add_option("--alpha", s_alpha, "CKN weight exponent");
  sharp->add_option("--radial-panels", s_panels, "Panels of the logarithmic radial rule");
  sharp->add_option("--param", s_params, "Search range override name=lo:hi (epsilon, T, beta, eta, s)");
  sharp->add_option("--out", s_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*list) {
      auto show = [&](const std::string& title, const std::vector<std::string>& items) {
        if (what != "all" && what != title) return;
        std::cout << title << ":\n";
        for (const auto& s : items) std::cout << "  " << s << "\n";
      };
      std::vector<std::string> qns;
      for (const auto& gid : shipped_group_ids()) {
        std::string line = gid + ":";
        for (const auto& q : shipped_quasi_norms(resolve_group(gid))) line += " " + q.id();
        qns.push_back(line);
      }
      show("groups", shipped_group_ids());
      show("quasinorms", qns);
      show("fields", battery_field_ids());
      show("checks", check_family_ids());
      return 0;
    }

    if (*run) {
      SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : load_suite_config(config_path);
      if (!groups.empty()) cfg.groups = split_all(groups);
      if (!quasinorms.empty()) cfg.quasinorms = split_all(quasinorms);
      if (!fields.empty()) cfg.fields = split_all(fields);
      if (!checks.empty()) cfg.checks = split_all(checks);
      for (const auto& t : split_all(tols)) apply_tolerance(cfg.tolerances, t);
      if (!alphas.empty()) {
        cfg.alphas.clear();
        for (const auto& a : split_all(alphas)) cfg.alphas.push_back(parse_double(a, "--alpha"));
      }
      if (budget >= 0) cfg.sharpness_budget = budget;
      if (threads >= 0) cfg.threads = threads;
      if (!out.empty()) cfg.out = out;
      if (!format.empty()) cfg.format = format;
      if (no_estimates) cfg.error_estimates = false;
      validate(cfg);
      const ReportFormat fmt = parse_report_format(cfg.format);
      const SuiteReport rep = run_suite(cfg);
      emit(emit_report(rep, fmt), cfg.out);
      std::fprintf(stderr, "pass %d  fail %d  skipped %d  errored %d  wall %.1f s\n", rep.summary.pass,
                   rep.summary.fail, rep.summary.skipped, rep.summary.errored, rep.wall_time);
      return rep.summary.fail == 0 ? 0 : kExitFail;
    }

    if (*sharp) {
      const SharpnessTarget t = parse_sharpness_target(ineq);
      const GroupSpec g = resolve_group(s_group);
      const QuasiNorm qn = s_qn.empty() ? shipped_quasi_norms(g).front() : parse_quasi_norm(s_qn);
      if (const std::string why = incompatibility(qn, g); !why.empty())
        throw Error(ErrorKind::config_error, "quasinorm: " + why);
      SharpnessOptions opt;
      opt.budget = s_budget;
      opt.alpha = s_alpha;
      opt.radial_panels = s_panels;
      for (const auto& p : s_params) {
        const auto eq = p.find('='), colon = p.find(':');
        if (eq == std::string::npos || colon == std::string::npos || colon < eq)
          throw Error(ErrorKind::config_error, "--param: expected name=lo:hi, got '" + p + "'");
        opt.ranges.push_back({p.substr(0, eq), parse_double(p.substr(eq + 1, colon - eq - 1), "--param"),
                              parse_double(p.substr(colon + 1), "--param")});
      }
      const SharpnessResult r = sharpness_search(t, g, qn, opt);
      nlohmann::json j = {{"version", kVersion},
                          {"inequality", r.inequality_id},
                          {"group", r.group},
                          {"quasinorm", r.quasinorm},
                          {"family", r.family},
                          {"constant", r.constant_paper},
                          {"direction", r.direction},
                          {"best_ratio", r.best_ratio},
                          {"best_params", r.best_params},
                          {"relative_gap", r.relative_gap},
                          {"evaluations", r.evaluations},
                          {"converged", r.converged},
                          {"respects_constant", r.respects_constant},
                          {"trace", r.trace}};
      if (t == SharpnessTarget::ckn) j["alpha"] = s_alpha;
      emit(j.dump(2) + "\n", s_out);
      return r.respects_constant ? 0 : kExitFail;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "hgcalc: %s\n", e.what());
    return exit_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hgcalc: internal error: %s\n", e.what());
    return kExitInternal;
  }
  return 0;
}
