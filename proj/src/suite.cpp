#include "hgcalc/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hgcalc/catalog.hpp"
#include "hgcalc/error.hpp"
#include "hgcalc/sharpness.hpp"

namespace hgcalc {

using nlohmann::json;

namespace {

const std::vector<std::string>& families() {
  static const std::vector<std::string> ids = {
      "kennard",     "heisenberg_kennard", "weighted_radial", "hardy",          "ckn",
      "hpw",         "euler_pythagoras",   "symmetric_pair",  "rsrc",           "commutator",
      "symmetry",    "polar",              "radial_methods",  "euler_variants", "pm_factorization",
      "structural",  "sharpness"};
  return ids;
}

bool prefixed(const std::string& id, const std::string& sel) {
  return id == sel || (id.size() > sel.size() && id.compare(0, sel.size(), sel) == 0 && id[sel.size()] == '.');
}

bool known_check(const std::string& id) {
  if (id == "all") return true;
  if (std::find(families().begin(), families().end(), id) != families().end()) return true;
  return !check_formula(id).empty();
}

struct Selection {
  std::vector<std::string> entries;
  bool all = false;

  explicit Selection(const std::vector<std::string>& e) : entries(e) {
    all = std::find(e.begin(), e.end(), "all") != e.end();
  }
  bool family(const std::string& fam) const {
    if (all) return true;
    for (const auto& e : entries)
      if (prefixed(e, fam)) return true;
    return false;
  }
  bool report(const std::string& id) const {
    if (all) return true;
    for (const auto& e : entries)
      if (prefixed(id, e) || prefixed(e, id)) return true;
    return false;
  }
};

std::vector<std::string> select_fields(const std::vector<std::string>& sel) {
  std::vector<std::string> out;
  for (const auto& id : battery_field_ids()) {
    bool take = false;
    for (const auto& s : sel)
      take = take || s == "all" || s == id || (s == "annulus" && is_annulus_field(id)) ||
             (s == "smooth" && !is_annulus_field(id));
    if (take) out.push_back(id);
  }
  return out;
}

std::string partner_of(const std::string& fid) {
  if (fid == "annulus_gauss") return "annulus_osc";
  if (fid == "annulus_power") return "annulus_gauss";
  return "annulus_power";
}

// Reason a family cannot run on this combination, empty when it can.
std::string field_skip_reason(const std::string& fam, const GroupSpec& g, const QuasiNorm& qn,
                              const std::string& fid) {
  static const std::vector<std::string> annulus_only = {"weighted_radial", "symmetric_pair", "rsrc", "symmetry",
                                                        "ckn"};
  if (fam == "ckn" && !euclidean_mode(g, qn))
    return "abelian-only: needs the Euclidean norm on an isotropic abelian group";
  if ((fam == "hardy" || fam == "hpw") && g.homogeneous_dimension() < 3.0) return "needs Q >= 3";
  if (std::find(annulus_only.begin(), annulus_only.end(), fam) != annulus_only.end() && !is_annulus_field(fid))
    return "needs a field vanishing near the origin";
  return {};
}

CheckReport errored(const std::string& fam, const std::string& what) {
  CheckReport r;
  r.check_id = fam;
  r.paper_ref = check_formula(fam);
  r.status = CheckStatus::error;
  r.skipped_reason = what;
  return r;
}

struct Job {
  GroupSpec group;
  QuasiNorm qn;
  std::string field;  // empty for per-(group, quasi-norm) jobs
  std::vector<std::string> families;
  std::string skip_all;  // incompatible pairing
};

CheckReport sharpness_report(const SharpnessResult& s, const std::string& id) {
  const bool up = s.direction == "maximize";
  CheckReport r = up ? inequality_report(id, s.best_ratio, s.constant_paper, 1e-6)
                     : inequality_report(id, s.constant_paper, s.best_ratio, 1e-6);
  r.diagnostics["best_ratio"] = s.best_ratio;
  r.diagnostics["constant"] = s.constant_paper;
  r.diagnostics["relative_gap"] = s.relative_gap;
  r.diagnostics["evaluations"] = s.evaluations;
  r.diagnostics["converged"] = s.converged ? 1.0 : 0.0;
  for (const auto& [k, v] : s.best_params) r.diagnostics["param." + k] = v;
  r.notes["direction"] = s.direction;
  r.notes["family"] = s.family;
  if (!s.converged) r.notes["convergence"] = "budget exhausted before the trace stabilised";
  return r;
}

class Runner {
 public:
  Runner(const SuiteConfig& cfg) : cfg_(cfg), sel_(cfg.checks) {}

  std::vector<CheckReport> run(const Job& job) const {
    std::vector<CheckReport> out;
    const auto params = triple_params(job.group, job.qn, job.field);
    auto guarded = [&](const std::string& fam, const std::function<std::vector<CheckReport>()>& fn) {
      std::vector<CheckReport> got;
      try {
        got = fn();
      } catch (const std::exception& e) {
        got = {errored(fam, e.what())};
      }
      for (auto& r : got) {
        if (!sel_.report(r.check_id)) continue;
        for (const auto& [k, v] : params)
          if (!v.empty()) r.params.emplace(k, v);
        out.push_back(std::move(r));
      }
    };
    for (const auto& fam : job.families) {
      std::string reason = job.skip_all;
      if (reason.empty() && !job.field.empty()) reason = field_skip_reason(fam, job.group, job.qn, job.field);
      if (!reason.empty()) {
        guarded(fam, [&] { return std::vector<CheckReport>{skipped_report(fam, reason)}; });
        continue;
      }
      if (job.field.empty())
        guarded(fam, [&] { return run_global(fam, job.group, job.qn); });
      else
        guarded(fam, [&] { return run_field(fam, job.group, job.qn, job.field); });
    }
    return out;
  }

 private:
  std::vector<CheckReport> run_global(const std::string& fam, const GroupSpec& g, const QuasiNorm& qn) const {
    if (fam == "structural") return check_structural(g, qn, cfg_.tolerances);
    std::vector<CheckReport> out;
    SharpnessOptions opt;
    opt.budget = cfg_.sharpness_budget;
    const bool q3 = g.homogeneous_dimension() > 2.0;
    for (auto t : {SharpnessTarget::hardy, SharpnessTarget::hpw, SharpnessTarget::euler_corollary,
                   SharpnessTarget::hk}) {
      const std::string id = "sharpness." + to_string(t);
      if (!sel_.report(id)) continue;
      if (!q3 && (t == SharpnessTarget::hardy || t == SharpnessTarget::hpw)) {
        out.push_back(skipped_report(id, "needs Q > 2"));
        continue;
      }
      out.push_back(sharpness_report(sharpness_search(t, g, qn, opt), id));
    }
    if (sel_.report("sharpness.ckn")) {
      if (!euclidean_mode(g, qn)) {
        out.push_back(skipped_report("sharpness.ckn", "abelian-only: needs the Euclidean norm on an isotropic abelian group"));
      } else {
        for (double a : cfg_.alphas.empty() ? std::vector<double>{-1.0, 0.0, 1.0} : cfg_.alphas) {
          opt.alpha = a;
          CheckReport r = std::abs(g.dim() - 2.0 - 2.0 * a) < 1e-12
                              ? skipped_report("sharpness.ckn", "degenerate constant: |n-2-2a| = 0")
                              : sharpness_report(sharpness_search(SharpnessTarget::ckn, g, qn, opt), "sharpness.ckn");
          r.params["alpha"] = format_number(a);
          out.push_back(r);
        }
      }
    }
    return out;
  }

  std::vector<CheckReport> run_field(const std::string& fam, const GroupSpec& g, const QuasiNorm& qn,
                                     const std::string& fid) const {
    const Tolerances& tol = cfg_.tolerances;
    const ScalarField f = battery_field(g, qn, fid);
    QuadratureScheme q = scheme_for(g, f, 1e-6, 1);
    q.set_error_estimates(cfg_.error_estimates);
    const double Q = g.homogeneous_dimension();
    auto one = [](CheckReport r) { return std::vector<CheckReport>{std::move(r)}; };

    if (fam == "kennard") return check_kennard(q, g, qn, compatible_pairing(g), f, tol);
    if (fam == "heisenberg_kennard") return check_heisenberg_kennard(q, g, qn, compatible_pairing(g), f, tol);
    if (fam == "weighted_radial") {
      const auto alphas = cfg_.alphas.empty() ? default_alpha_grid(Q) : cfg_.alphas;
      return check_weighted_radial_grid(q, g, qn, f, alphas, tol);
    }
    if (fam == "hardy") return check_hardy(q, g, qn, f, tol);
    if (fam == "ckn") {
      const auto alphas = cfg_.alphas.empty() ? std::vector<double>{-1.0, 0.0, 0.5, 1.0} : cfg_.alphas;
      return check_ckn(q, g, qn, f, alphas, tol);
    }
    if (fam == "hpw") return check_hpw(q, g, qn, f, tol);
    if (fam == "euler_pythagoras") return check_euler_pythagoras(q, g, f, tol);
    if (fam == "rsrc") return check_rsrc(q, g, qn, f, tol);
    if (fam == "commutator") return one(check_commutator(g, qn, f, 100, tol));
    if (fam == "radial_methods") return one(check_radial_methods(g, qn, f, 50, tol));
    if (fam == "euler_variants") return one(check_euler_variants(q, g, qn, f, tol));
    if (fam == "pm_factorization") return one(check_pm_factorization(g, qn, f, 50, tol));
    if (fam == "polar") {
      const ScalarField fs[] = {f};
      const PolarScheme ps = polar_scheme_for(g, qn, fs, 1);
      std::vector<CheckReport> out{check_polar(q, ps, g, qn, f, tol)};
      if (fid == "qn_radial") out.push_back(check_sphere_mass(q, ps, g, qn, f, tol));
      return out;
    }
    if (fam == "symmetry" || fam == "symmetric_pair") {
      const ScalarField h = battery_field(g, qn, partner_of(fid));
      const ScalarField both[] = {f, h};
      QuadratureScheme q2 = scheme_for(g, both, 1e-6, 1);
      q2.set_error_estimates(cfg_.error_estimates);
      if (fam == "symmetry") return check_symmetry(q2, g, qn, f, h, tol);
      const HomogeneousNorm norm(qn, g);
      return one(check_symmetric_pair_identity(q2, dilation_generator_operator(g, norm), coulomb_operator(norm), f, h,
                                               tol));
    }
    throw Error(ErrorKind::config_error, "unknown check family '" + fam + "'");
  }

  const SuiteConfig& cfg_;
  Selection sel_;
};

// ---------------------------------------------------------------------------
// JSON helpers

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double unnum(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  throw Error(ErrorKind::invalid_argument, "bad number '" + s + "'");
}

json cnum(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  return json{{"re", num(z.real())}, {"im", num(z.imag())}};
}

cplx uncnum(const json& j) {
  if (j.is_object()) return {unnum(j.at("re")), unnum(j.at("im"))};
  return unnum(j);
}

json tolerances_json(const Tolerances& t) {
  return {{"identity", t.identity},
          {"identity_fd", t.identity_fd},
          {"inequality_slack", t.inequality_slack},
          {"pointwise", t.pointwise},
          {"structural", t.structural}};
}

json config_json(const SuiteConfig& c) {
  return {{"groups", c.groups},
          {"quasinorms", c.quasinorms},
          {"fields", c.fields},
          {"checks", c.checks},
          {"tolerances", tolerances_json(c.tolerances)},
          {"alphas", c.alphas},
          {"sharpness_budget", c.sharpness_budget},
          {"error_estimates", c.error_estimates}};
}

json report_json(const CheckReport& r) {
  json j = {{"check_id", r.check_id},
            {"paper_ref", r.paper_ref},
            {"params", r.params},
            {"lhs", cnum(r.lhs)},
            {"rhs", cnum(r.rhs)},
            {"abs_residual", num(r.abs_residual)},
            {"rel_residual", num(r.rel_residual)},
            {"tolerance", num(r.tolerance)},
            {"pass", r.pass()},
            {"status", to_string(r.status)}};
  if (r.slack) j["slack"] = num(*r.slack);
  if (!r.skipped_reason.empty()) j["skipped_reason"] = r.skipped_reason;
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = num(v);
  j["diagnostics"] = d;
  j["notes"] = r.notes;
  return j;
}

CheckReport report_from(const json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.paper_ref = j.at("paper_ref").get<std::string>();
  r.params = j.at("params").get<std::map<std::string, std::string>>();
  r.lhs = uncnum(j.at("lhs"));
  r.rhs = uncnum(j.at("rhs"));
  r.abs_residual = unnum(j.at("abs_residual"));
  r.rel_residual = unnum(j.at("rel_residual"));
  r.tolerance = unnum(j.at("tolerance"));
  r.status = parse_check_status(j.at("status").get<std::string>());
  if (j.contains("slack")) r.slack = unnum(j.at("slack"));
  if (j.contains("skipped_reason")) r.skipped_reason = j.at("skipped_reason").get<std::string>();
  for (const auto& [k, v] : j.at("diagnostics").items()) r.diagnostics[k] = unnum(v);
  r.notes = j.at("notes").get<std::map<std::string, std::string>>();
  return r;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

std::string md_cell(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '|') o += '\\';
    o += c == '\n' ? ' ' : c;
  }
  return o;
}

std::string param_or(const CheckReport& r, const std::string& k) {
  auto it = r.params.find(k);
  return it == r.params.end() ? "" : it->second;
}

std::string extra_params(const CheckReport& r) {
  std::string o;
  for (const auto& [k, v] : r.params) {
    if (k == "group" || k == "quasinorm" || k == "field" || k == "Q") continue;
    if (!o.empty()) o += "; ";
    o += k + "=" + v;
  }
  return o;
}

std::string cplx_text(cplx z, std::string (*fmt)(double)) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

template <class T>
T field_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::config_error, "bad value for '" + key + "'");
  }
}

}  // namespace

std::vector<std::string> check_family_ids() { return families(); }

SuiteConfig suite_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config_error, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::config_error, "config must be a JSON object");
  SuiteConfig c;
  using strings = std::vector<std::string>;
  for (const auto& [k, v] : j.items()) {
    if (k == "groups") c.groups = field_as<strings>(v, k);
    else if (k == "quasinorms") c.quasinorms = field_as<strings>(v, k);
    else if (k == "fields") c.fields = field_as<strings>(v, k);
    else if (k == "checks") c.checks = field_as<strings>(v, k);
    else if (k == "alphas") c.alphas = field_as<std::vector<double>>(v, k);
    else if (k == "sharpness_budget") c.sharpness_budget = field_as<int>(v, k);
    else if (k == "error_estimates") c.error_estimates = field_as<bool>(v, k);
    else if (k == "out") c.out = field_as<std::string>(v, k);
    else if (k == "format") c.format = field_as<std::string>(v, k);
    else if (k == "threads") c.threads = field_as<int>(v, k);
    else if (k == "tolerances") {
      if (!v.is_object()) throw Error(ErrorKind::config_error, "bad value for 'tolerances'");
      for (const auto& [tk, tv] : v.items()) {
        const double x = field_as<double>(tv, "tolerances." + tk);
        if (tk == "identity") c.tolerances.identity = x;
        else if (tk == "identity_fd") c.tolerances.identity_fd = x;
        else if (tk == "inequality_slack") c.tolerances.inequality_slack = x;
        else if (tk == "pointwise") c.tolerances.pointwise = x;
        else if (tk == "structural") c.tolerances.structural = x;
        else throw Error(ErrorKind::config_error, "unknown key 'tolerances." + tk + "'");
      }
    } else {
      throw Error(ErrorKind::config_error, "unknown key '" + k + "'");
    }
  }
  return c;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config_error, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return suite_config_from_json(ss.str());
}

std::string suite_config_to_json(const SuiteConfig& cfg) { return config_json(cfg).dump(2); }

void validate(const SuiteConfig& cfg) {
  auto bad = [](const std::string& key, const std::string& why) {
    throw Error(ErrorKind::config_error, key + ": " + why);
  };
  for (const auto& g : cfg.groups) {
    try {
      resolve_group(g);
    } catch (const std::exception& e) {
      bad("groups", e.what());
    }
  }
  for (const auto& q : cfg.quasinorms) {
    try {
      parse_quasi_norm(q);
    } catch (const std::exception& e) {
      bad("quasinorms", e.what());
    }
  }
  if (cfg.fields.empty()) bad("fields", "empty selection");
  const auto ids = battery_field_ids();
  for (const auto& f : cfg.fields)
    if (f != "all" && f != "annulus" && f != "smooth" && std::find(ids.begin(), ids.end(), f) == ids.end())
      bad("fields", "unknown field '" + f + "'");
  if (cfg.checks.empty()) bad("checks", "empty check list");
  for (const auto& c : cfg.checks)
    if (!known_check(c)) bad("checks", "unknown check '" + c + "'");
  const Tolerances& t = cfg.tolerances;
  for (auto [k, v] : {std::pair{"identity", t.identity}, {"identity_fd", t.identity_fd},
                      {"inequality_slack", t.inequality_slack}, {"pointwise", t.pointwise},
                      {"structural", t.structural}})
    if (!(v > 0.0) || !std::isfinite(v)) bad(std::string("tolerances.") + k, "must be positive");
  for (double a : cfg.alphas)
    if (!std::isfinite(a)) bad("alphas", "must be finite");
  if (cfg.sharpness_budget < 1) bad("sharpness_budget", "must be positive");
  if (cfg.threads < 0) bad("threads", "must be non-negative");
  parse_report_format(cfg.format);
}

SuiteSummary summarize(const std::vector<CheckReport>& checks) {
  SuiteSummary s;
  for (const auto& r : checks) {
    switch (r.status) {
      case CheckStatus::pass: ++s.pass; break;
      case CheckStatus::fail: ++s.fail; break;
      case CheckStatus::skipped: ++s.skipped; break;
      case CheckStatus::error:
        ++s.fail;
        ++s.errored;
        break;
    }
  }
  return s;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const Selection sel(cfg.checks);

  std::vector<std::string> global, per_field;
  for (const auto& fam : families()) {
    if (!sel.family(fam)) continue;
    (fam == "structural" || fam == "sharpness" ? global : per_field).push_back(fam);
  }
  const auto field_ids = select_fields(cfg.fields);

  std::vector<Job> jobs;
  const auto group_ids = cfg.groups.empty() ? shipped_group_ids() : cfg.groups;
  for (const auto& gid : group_ids) {
    const GroupSpec g = resolve_group(gid);
    std::vector<QuasiNorm> qns;
    if (cfg.quasinorms.empty()) {
      qns = shipped_quasi_norms(g);
    } else {
      for (const auto& id : cfg.quasinorms) qns.push_back(parse_quasi_norm(id));
    }
    for (const auto& qn : qns) {
      const std::string why = incompatibility(qn, g);
      if (!why.empty()) {
        jobs.push_back({g, qn, "", global, "incompatible quasi-norm: " + why});
        for (const auto& fid : field_ids) jobs.push_back({g, qn, fid, per_field, "incompatible quasi-norm: " + why});
        continue;
      }
      for (const auto& fam : global) jobs.push_back({g, qn, "", {fam}, ""});
      if (!per_field.empty())
        for (const auto& fid : field_ids) jobs.push_back({g, qn, fid, per_field, ""});
    }
  }

  const Runner runner(cfg);
  std::vector<std::vector<CheckReport>> results(jobs.size());
  const int threads = std::max(1, std::min<int>(cfg.threads > 0 ? cfg.threads : default_worker_count(),
                                                static_cast<int>(jobs.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) results[i] = runner.run(jobs[i]);
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  SuiteReport rep;
  rep.config = cfg;
  for (auto& v : results)
    for (auto& r : v) rep.checks.push_back(std::move(r));
  std::stable_sort(rep.checks.begin(), rep.checks.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return a.params < b.params;
  });
  rep.summary = summarize(rep.checks);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw Error(ErrorKind::config_error, "format: unknown report format '" + s + "' (json, csv, markdown)");
}

std::string emit_report(const SuiteReport& r, ReportFormat fmt) {
  if (fmt == ReportFormat::json) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(report_json(c));
    json j = {{"version", r.version},
              {"config", config_json(r.config)},
              {"checks", checks},
              {"summary",
               {{"pass", r.summary.pass},
                {"fail", r.summary.fail},
                {"skipped", r.summary.skipped},
                {"errored", r.summary.errored}}}};
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  if (fmt == ReportFormat::csv) {
    o << "check_id,status,group,quasinorm,field,Q,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,"
         "tolerance,slack,skipped_reason,paper_ref\n";
    for (const auto& c : r.checks) {
      o << csv_cell(c.check_id) << ',' << to_string(c.status) << ',' << csv_cell(param_or(c, "group")) << ','
        << csv_cell(param_or(c, "quasinorm")) << ',' << csv_cell(param_or(c, "field")) << ','
        << csv_cell(param_or(c, "Q")) << ',' << csv_cell(extra_params(c)) << ',' << g17(c.lhs.real()) << ','
        << g17(c.lhs.imag()) << ',' << g17(c.rhs.real()) << ',' << g17(c.rhs.imag()) << ',' << g17(c.abs_residual)
        << ',' << g17(c.rel_residual) << ',' << g17(c.tolerance) << ',' << (c.slack ? g17(*c.slack) : "") << ','
        << csv_cell(c.skipped_reason) << ',' << csv_cell(c.paper_ref) << '\n';
    }
    return o.str();
  }
  o << "# hgcalc report " << r.version << "\n\n";
  o << "pass " << r.summary.pass << ", fail " << r.summary.fail << " (errored " << r.summary.errored
    << "), skipped " << r.summary.skipped << "\n\n";
  o << "| check | group | quasinorm | field | params | lhs | rhs | rel_residual | slack | status | relation |\n";
  o << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    std::string status = to_string(c.status);
    if (!c.skipped_reason.empty()) status += ": " + c.skipped_reason;
    o << "| " << md_cell(c.check_id) << " | " << md_cell(param_or(c, "group")) << " | "
      << md_cell(param_or(c, "quasinorm")) << " | " << md_cell(param_or(c, "field")) << " | "
      << md_cell(extra_params(c)) << " | " << cplx_text(c.lhs, g6) << " | " << cplx_text(c.rhs, g6) << " | "
      << g6(c.rel_residual) << " | " << (c.slack ? g6(*c.slack) : "") << " | " << md_cell(status) << " | `"
      << md_cell(c.paper_ref) << "` |\n";
  }
  return o.str();
}

void write_report(const SuiteReport& r, ReportFormat fmt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot open '" + path + "' for writing");
  out << emit_report(r, fmt);
  out.flush();
  if (!out) throw Error(ErrorKind::io_error, "write to '" + path + "' failed");
}

SuiteReport report_from_json(const std::string& text) {
  SuiteReport r;
  try {
    const json j = json::parse(text);
    r.version = j.at("version").get<std::string>();
    r.config = suite_config_from_json(j.at("config").dump());
    for (const auto& c : j.at("checks")) r.checks.push_back(report_from(c));
    const json& s = j.at("summary");
    r.summary = {s.at("pass").get<int>(), s.at("fail").get<int>(), s.at("skipped").get<int>(),
                 s.value("errored", 0)};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_argument, std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace hgcalc
