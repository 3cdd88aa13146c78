#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hgcalc/error.hpp"
#include "hgcalc/suite.hpp"

using namespace hgcalc;

namespace {

ErrorKind config_kind(const std::string& text) {
  try {
    validate(suite_config_from_json(text));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return ErrorKind::invalid_argument;
}

SuiteConfig small_config() {
  SuiteConfig c;
  c.groups = {"r2_aniso_12"};
  c.fields = {"annulus_gauss", "gauss"};
  c.checks = {"kennard", "hardy", "commutator", "weighted_radial", "ckn"};
  c.threads = 1;
  return c;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("config parsing and validation") {
  const SuiteConfig c = suite_config_from_json(
      R"({"groups":["heisenberg"],"fields":["smooth"],"checks":["kennard"],"tolerances":{"identity":1e-7},"threads":2})");
  CHECK(c.groups == std::vector<std::string>{"heisenberg"});
  CHECK(c.tolerances.identity == 1e-7);
  CHECK(c.tolerances.pointwise == 1e-7);
  CHECK(c.threads == 2);
  CHECK_NOTHROW(validate(c));

  CHECK(config_kind("[1,2]") == ErrorKind::config_error);
  CHECK(config_kind("{not json") == ErrorKind::config_error);
  CHECK(config_kind(R"({"colour":"blue"})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"groups":["klein_bottle"]})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"fields":["triangle"]})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"checks":["kenard"]})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"tolerances":{"identity":-1}})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"tolerances":{"nope":1}})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"threads":"many"})") == ErrorKind::config_error);
  CHECK(config_kind(R"({"sharpness_budget":0})") == ErrorKind::config_error);

  // Echo round trip.
  CHECK(suite_config_from_json(suite_config_to_json(c)).groups == c.groups);
  CHECK(parse_report_format("markdown") == ReportFormat::markdown);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
}

TEST_CASE("small suite: summary, skips and deterministic output") {
  SuiteConfig c = small_config();
  const SuiteReport r1 = run_suite(c);
  c.threads = 3;
  const SuiteReport r3 = run_suite(c);
  CHECK(emit_report(r1, ReportFormat::json) == emit_report(r3, ReportFormat::json));

  const SuiteSummary s = r1.summary;
  CHECK(s == summarize(r1.checks));
  CHECK(s.pass + s.fail + s.skipped == static_cast<int>(r1.checks.size()));
  CHECK(s.fail == 0);
  CHECK(s.errored == 0);

  // p4 on R^2 is not Euclidean, so ckn is skipped with a reason.
  bool saw_ckn = false;
  for (const auto& rep : r1.checks) {
    CHECK_FALSE(rep.paper_ref.empty());
    CHECK(rep.params.count("group") == 1);
    if (rep.check_id == "ckn") {
      saw_ckn = true;
      CHECK(rep.status == CheckStatus::skipped);
      CHECK(rep.skipped_reason.find("abelian-only") != std::string::npos);
    }
    if (rep.status == CheckStatus::pass) {
      if (rep.slack)
        CHECK(*rep.slack >= -rep.tolerance);
      else
        CHECK(rep.rel_residual <= rep.tolerance);
    }
  }
  CHECK(saw_ckn);
  CHECK(std::is_sorted(r1.checks.begin(), r1.checks.end(),
                       [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; }));

  SUBCASE("json round trip") {
    const std::string js = emit_report(r1, ReportFormat::json);
    const SuiteReport back = report_from_json(js);
    CHECK(back.checks == r1.checks);
    CHECK(back.summary == r1.summary);
    CHECK(back.version == kVersion);
    CHECK(emit_report(back, ReportFormat::json) == js);
    const auto j = nlohmann::json::parse(js);
    CHECK(j.contains("summary"));
    CHECK_FALSE(j["config"].contains("threads"));
  }
  SUBCASE("csv and markdown carry one row per check") {
    CHECK(count_lines(emit_report(r1, ReportFormat::csv)) == r1.checks.size() + 1);
    const std::string md = emit_report(r1, ReportFormat::markdown);
    std::istringstream in(md);
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);)
      if (line.rfind("| ", 0) == 0) ++rows;
    CHECK(rows == r1.checks.size() + 1);  // header row
  }
}

TEST_CASE("incompatible quasi-norms become skipped reports") {
  SuiteConfig c;
  c.groups = {"heisenberg"};
  c.quasinorms = {"euclidean"};
  c.fields = {"gauss"};
  c.checks = {"kennard"};
  c.threads = 1;
  const SuiteReport r = run_suite(c);
  REQUIRE_FALSE(r.checks.empty());
  for (const auto& rep : r.checks) {
    CHECK(rep.status == CheckStatus::skipped);
    CHECK(rep.skipped_reason.find("incompatible quasi-norm") != std::string::npos);
  }
}

TEST_CASE("write_report reports unwritable paths") {
  const SuiteReport r = run_suite([] {
    SuiteConfig c;
    c.groups = {"r2_aniso_12"};
    c.fields = {"gauss"};
    c.checks = {"structural"};
    c.threads = 1;
    return c;
  }());
  CHECK(r.summary.pass > 0);
  try {
    write_report(r, ReportFormat::json, "/nonexistent-dir/x/report.json");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io_error);
  }
  const auto p = std::filesystem::temp_directory_path() / "hgcalc_unit_report.csv";
  write_report(r, ReportFormat::csv, p.string());
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == emit_report(r, ReportFormat::csv));
  std::filesystem::remove(p);
}
