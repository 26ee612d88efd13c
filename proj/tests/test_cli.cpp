#include "kkbar/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace kkbar;
using namespace kkbar::cli;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "kkbar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double num(const Table& t, std::size_t row, std::string_view col) {
  return std::get<double>(t.rows[row][t.column(col)]);
}

}  // namespace

TEST_CASE("verify passes on the corrected matrix and fails with the printed one") {
  const Invocation ok = invoke({"verify"});
  CHECK(ok.code == kSuccess);
  CHECK(ok.err.find("verify: all checks passed") != std::string::npos);
  CHECK(ok.out.find(",fail\n") == std::string::npos);

  const Invocation bad = invoke({"verify", "--uncorrected-b"});
  CHECK(bad.code == kVerificationFailure);
  CHECK(bad.err.find("FAILED: braid_relation") != std::string::npos);
}

TEST_CASE("verify report is deterministic for a fixed seed") {
  const Invocation a = invoke({"verify", "--seed", "42"});
  const Invocation b = invoke({"verify", "--seed", "42"});
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("a tight --tol override makes verify fail") {
  CHECK(invoke({"verify", "--tol", "1e-30"}).code == kVerificationFailure);
  CHECK(invoke({"verify", "--tol", "-1"}).code == kConfigError);
}

TEST_CASE("sweep-phi rows") {
  RunConfig cfg;
  cfg.command = Command::sweep_phi;
  cfg.grid = 5;  // 0, π/2, π, 3π/2, 2π
  const CommandResult r = dispatch(cfg);
  REQUIRE(r.table.rows.size() == 5);
  for (const char* c : {"c1", "c2", "c3", "c4", "corr_s"}) {
    CHECK(num(r.table, 0, c) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(num(r.table, 0, "corr_cp") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(num(r.table, 2, "phi") == std::numbers::pi);
  CHECK(num(r.table, 2, "corr_cp") == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(num(r.table, 2, "c1") == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    CHECK(std::abs(num(r.table, i, "corr_cp") - std::cos(num(r.table, i, "phi"))) < 1e-12);
  }
}

TEST_CASE("oscillate table") {
  RunConfig cfg;
  cfg.command = Command::oscillate;
  cfg.t_max = 12.0;
  cfg.steps = 500;
  const CommandResult r = dispatch(cfg);
  REQUIRE(r.table.rows.size() == 500);
  CHECK(num(r.table, 0, "t") == 0.0);
  CHECK(num(r.table, 0, "p_kkbar") == 0.0);
  CHECK(num(r.table, 0, "asymmetry") == 1.0);
  for (std::size_t i = 0; i < 500; ++i) {
    for (const char* c : {"p_kk", "p_kkbar"}) {
      CHECK(num(r.table, i, c) >= 0.0);
      CHECK(num(r.table, i, c) <= 1.0);
    }
  }

  cfg.gamma_s = cfg.gamma_l = 0.0;
  const CommandResult stable = dispatch(cfg);
  for (std::size_t i = 0; i < 500; ++i) {
    const double t = num(stable.table, i, "t");
    CHECK(std::abs(num(stable.table, i, "p_kkbar") - std::pow(std::sin(cfg.dm * t / 2), 2)) < 1e-12);
  }

  CHECK(invoke({"oscillate", "--gamma-s", "-1"}).code == kConfigError);
}

TEST_CASE("evolve command") {
  RunConfig cfg;
  cfg.command = Command::evolve;
  cfg.t0 = cfg.t1 = 0.6;
  cfg.steps = 3;
  cfg.state = "KbarK";
  const CommandResult same = dispatch(cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(num(same.table, i, "re_a2") == 1.0);
    CHECK(num(same.table, i, "re_a0") == 0.0);
  }

  cfg.t0 = 0.0;
  cfg.t1 = 3.0;
  cfg.steps = 50;
  cfg.amplitudes = {0.5, 0.0, 0.0, 0.5, -0.5, 0.0, 0.0, -0.5};
  const CommandResult traj = dispatch(cfg);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(num(traj.table, i, "norm") - 1.0) < 1e-12);
  bool saw_round_trip = false;
  for (const auto& line : traj.summary) {
    if (line.rfind("round-trip residual ", 0) == 0) {
      saw_round_trip = true;
      CHECK(std::stod(line.substr(20)) < 1e-12);
    }
  }
  CHECK(saw_round_trip);

  CHECK(invoke({"evolve", "--amplitudes", "1,0,1,0,0,0,0,0"}).code == kConfigError);
  CHECK(invoke({"evolve", "--state", "KL"}).code == kConfigError);
}

TEST_CASE("rho-report flags the printed formula") {
  RunConfig cfg;
  cfg.command = Command::rho_report;
  cfg.grid = 9;
  const CommandResult r = dispatch(cfg);
  REQUIRE(r.table.rows.size() == 9);
  // Middle row is t = 1: computed 4, printed formula 0.
  CHECK(num(r.table, 4, "t") == 1.0);
  CHECK(std::abs(num(r.table, 4, "scalar_re") - 4.0) < 1e-12);
  CHECK(num(r.table, 4, "printed_formula") == doctest::Approx(0.0));
  CHECK(num(r.table, 4, "discrepancy") == doctest::Approx(4.0));
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(std::get<std::int64_t>(r.table.rows[i][r.table.column("is_scalar")]) == 1);
    CHECK(num(r.table, i, "inversion_residual") < 1e-12);
  }
}

TEST_CASE("bell command lists images and the eigentable") {
  const Invocation inv = invoke({"bell", "--phi", "0"});
  CHECK(inv.code == kSuccess);
  CHECK(inv.out.rfind("state,re_a0", 0) == 0);
  CHECK(inv.err.find("Phi4: S=-1 CP=-1") != std::string::npos);
}

TEST_CASE("CSV output is byte-identical across runs and round-trips") {
  const Invocation a = invoke({"oscillate", "--steps", "50", "--seed", "5"});
  const Invocation b = invoke({"oscillate", "--steps", "50", "--seed", "5"});
  CHECK(a.out == b.out);

  const Table parsed = parse_csv(a.out);
  RunConfig cfg;
  cfg.command = Command::oscillate;
  cfg.steps = 50;
  const CommandResult direct = dispatch(cfg);
  REQUIRE(parsed.rows.size() == direct.table.rows.size());
  for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
    for (std::size_t c = 0; c < parsed.header.size(); ++c) {
      CHECK(std::get<double>(parsed.rows[i][c]) == std::get<double>(direct.table.rows[i][c]));
    }
  }
}

TEST_CASE("JSON output, file output and config files") {
  const Invocation js = invoke({"sweep-phi", "--grid", "3", "--format", "json"});
  REQUIRE(js.code == kSuccess);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["meta"]["config"]["grid"] == 3);
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["header"][0] == "phi");

  const std::string path = "kkbar_test_out.csv";
  REQUIRE(invoke({"rho-report", "--grid", "3", "--out", path}).code == kSuccess);
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(parse_csv(content.str()).rows.size() == 3);
  std::remove(path.c_str());

  const std::string conf = "kkbar_test.conf";
  {
    std::ofstream f(conf);
    f << "# sweep settings\ngrid = 4\nformat = json\n";
  }
  const Invocation from_file = invoke({"sweep-phi", "--config", conf});
  CHECK(nlohmann::json::parse(from_file.out)["rows"].size() == 4);
  // Flags win over the file.
  const Invocation override = invoke({"sweep-phi", "--config", conf, "--grid", "6"});
  CHECK(nlohmann::json::parse(override.out)["rows"].size() == 6);
  std::remove(conf.c_str());
}

TEST_CASE("configuration errors exit with status 2") {
  CHECK(invoke({}).code == kConfigError);
  CHECK(invoke({"sweep-phi", "--grid", "1"}).code == kConfigError);
  CHECK(invoke({"bell", "--sign", "sideways"}).code == kConfigError);
  CHECK(invoke({"oscillate", "--t-max", "0"}).code == kConfigError);
  CHECK(invoke({"verify", "--out", "/nonexistent/dir/x.csv"}).code == kConfigError);
}
