#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "bzt/commands.hpp"
#include "bzt/config.hpp"
#include "bzt/error.hpp"
#include "bzt/io.hpp"

using namespace bzt;

namespace {

RunConfig make(const std::string& text) {
  RunConfig c = parse_config(text, "t.json");
  resolve(c);
  return c;
}

json run_json(CommandResult (*cmd)(const RunConfig&), const RunConfig& c) {
  return json::parse(cmd(c).body);
}

const char* kStirred = R"({"schema_version": "1.0",
  "nondim": {"alpha": 77.27, "beta": 8.375e-6, "gamma": 1.0, "delta": 71.0},
  "overrides": {"sigma": 700}})";

const char* kNoTransition = R"({"schema_version": "1.0",
  "nondim": {"alpha": 1.2, "beta": 0.4, "gamma": 1.1, "delta": 0.9}})";

std::string with_sweep(double lo, double hi, int steps) {
  std::ostringstream os;
  os << R"({"schema_version": "1.0",
  "nondim": {"alpha": 77.27, "beta": 8.375e-6, "gamma": 1.0, "delta": 71.0},
  "overrides": {"sigma": 700}, "sweep": {"delta_min": )"
     << lo << ", \"delta_max\": " << hi << ", \"steps\": " << steps << "}}";
  return os.str();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

// Smallest sweep cell that brackets the sign change.
std::pair<double, double> bracket(const json& j) {
  const auto& rows = j["rows"];
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i]["crossing"].get<bool>())
      return {rows[i - 1]["delta"].get<double>(), rows[i]["delta"].get<double>()};
  return {NAN, NAN};
}

}  // namespace

TEST_CASE("config: missing parameter block") {
  try {
    make(R"({"schema_version": "1.0"})");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(exit_code_for(e.code()) == 1);
  }
}

TEST_CASE("config: unknown key reports field and line") {
  try {
    make("{\"schema_version\": \"1.0\",\n\"nondim\": {\"alpha\": 1, \"beta\": 1, \"gamma\": 1,\n \"delat\": 1}}");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    const std::string w = e.what();
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(w.find("delat") != std::string::npos);
    CHECK(w.find("t.json:3") != std::string::npos);
  }
}

TEST_CASE("config: malformed JSON and bad values") {
  CHECK(code_of([] { make("{\"schema_version\": \"1.0\",\n\"nondim\": {"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { make(with_sweep(80, 60, 10)); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { make(with_sweep(60, 80, 0)); }) == ErrorCode::ConfigError);
  CHECK(code_of([] {
          make(R"({"schema_version": "9", "nondim": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1}})");
        }) == ErrorCode::ConfigError);
  CHECK(code_of([] {
          make(R"({"schema_version": "1.0", "nondim": {"alpha": -1, "beta": 1, "gamma": 1, "delta": 1}})");
        }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { load_config("/nonexistent/config.json"); }) == ErrorCode::ConfigError);
}

TEST_CASE("flags override the file") {
  RunConfig c = make(kStirred);
  CliOverrides o;
  o.format = "csv";
  o.sigma = 650.0;
  o.seed = 9;
  apply_overrides(c, o);
  resolve(c);
  CHECK(c.format == "csv");
  CHECK(c.sigma == 650.0);
  CliOverrides bad;
  bad.format = "xml";
  CHECK(code_of([&] { apply_overrides(c, bad); }) == ErrorCode::ConfigError);
}

TEST_CASE("analyze on the stirred example") {
  const json j = run_json(cmd_analyze, make(kStirred));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["parameters"]["alpha"].get<double>() == 77.27);
  CHECK(j["scenario"] == "HopfAtDelta0");
  CHECK(j["steady_states"]["closed_forms_agree"].get<bool>());
  CHECK(j["steady_states"]["trivial"]["u1"].get<double>() == 0.0);
  CHECK(j["steady_states"]["U1_used"]["u1"].get<double>() == 700.0);
  // Printed value is 71.67; the computed one sits a little lower.
  CHECK(std::abs(j["critical"]["delta0"].get<double>() - 71.67) < 0.1);
}

TEST_CASE("analyze: b < 0 gives no transition") {
  const json j = run_json(cmd_analyze, make(kNoTransition));
  CHECK(j["b"].get<double>() < 0);
  CHECK(j["scenario"] == "NoTransition");
  CHECK(code_of([] { cmd_transition(make(kNoTransition)); }) == ErrorCode::ScenarioMismatch);
}

TEST_CASE("transition: stirred and interval examples are continuous") {
  const json h = run_json(cmd_transition, make(kStirred));
  CHECK(h["report"]["scenario"] == "HopfAtDelta0");
  CHECK(h["report"]["classification"] == "TypeI_Continuous");
  CHECK(h["lyapunov_check"]["sign_agrees"].get<bool>());

  RunConfig s = load_config(BZT_SOURCE_DIR "/configs/section4_interval_z2.json");
  resolve(s);
  const json st = run_json(cmd_transition, s);
  CHECK(st["report"]["scenario"] == "SteadyAtDelta1");
  CHECK(st["report"]["classification"] == "TypeI_Continuous");
}

TEST_CASE("sweep brackets the crossing") {
  const json j = run_json(cmd_sweep, make(with_sweep(60, 80, 40)));
  const auto [lo, hi] = bracket(j);
  CHECK(lo >= 71.5 - 1e-12);
  CHECK(hi <= 72.0 + 1e-12);
  for (const auto& r : j["rows"])
    if (r["delta"].get<double>() > hi) CHECK(r["max_real"].get<double>() < 0);

  const json fine = run_json(cmd_sweep, make(with_sweep(60, 80, 80)));
  const auto [flo, fhi] = bracket(fine);
  CHECK((fhi - flo) == doctest::Approx((hi - lo) / 2).epsilon(1e-9));
  CHECK(flo >= lo - 1e-12);
  CHECK(fhi <= hi + 1e-12);
}

TEST_CASE("sweep CSV layout") {
  RunConfig c = make(with_sweep(60, 80, 4));
  c.format = "csv";
  const std::string body = cmd_sweep(c).body;
  std::istringstream is(body);
  std::string line;
  std::getline(is, line);
  CHECK(line == "delta,max_real,max_imag,mode,hurwitz,scenario,crossing");
  int n = 0;
  while (std::getline(is, line)) ++n;
  CHECK(n == 5);
}

TEST_CASE("simulate: oscillation below delta0 and rest at U1") {
  RunConfig c = load_config(BZT_SOURCE_DIR "/configs/section4_stirred_sim.json");
  resolve(c);
  const json j = run_json(cmd_simulate, c);
  CHECK(j["diagnostics"]["converged"].get<bool>());

  c.sim->config.ic.amplitude = 0;
  c.sim->config.t_end = 20;
  const json r = run_json(cmd_simulate, c);
  CHECK(r["diagnostics"]["status"] == "NoOscillation");
}

TEST_CASE("simulate: unwritable trajectory path") {
  RunConfig c = load_config(BZT_SOURCE_DIR "/configs/section4_stirred_sim.json");
  resolve(c);
  c.sim->config.t_end = 5;
  c.sim->trajectory_path = "/nonexistent/dir/traj.csv";
  try {
    cmd_simulate(c);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
    CHECK(exit_code_for(e.code()) == 1);
  }
}

TEST_CASE("trajectory files: CSV header and binary layout") {
  RunConfig c = load_config(BZT_SOURCE_DIR "/configs/section4_stirred_sim.json");
  resolve(c);
  c.sim->config.t_end = 2;
  const std::string csv = "test_cli_traj.csv", bin = "test_cli_traj.bin";
  c.sim->trajectory_path = csv;
  cmd_simulate(c);
  c.sim->trajectory_path = bin;
  cmd_simulate(c);

  std::ifstream f(csv);
  std::string head;
  std::getline(f, head);
  CHECK(head == "t,u1,u2,u3");
  int rows = 0;
  for (std::string l; std::getline(f, l);) ++rows;

  std::ifstream b(bin, std::ios::binary);
  char magic[8];
  std::uint32_t version = 0, ncols = 0;
  b.read(magic, 8);
  b.read(reinterpret_cast<char*>(&version), 4);
  b.read(reinterpret_cast<char*>(&ncols), 4);
  CHECK(std::string(magic, 6) == "BZTRAJ");
  CHECK(version == 1);
  CHECK(ncols == 4);
  b.seekg(0, std::ios::end);
  CHECK(static_cast<long>(b.tellg()) == 16 + rows * 4 * 8);
  std::remove(csv.c_str());
  std::remove(bin.c_str());
}

TEST_CASE("JSON numbers round-trip at 17 digits") {
  json j;
  j["x"] = 0.1 + 0.2;
  j["y"] = 1.0 / 3.0;
  j["z"] = 2.0;
  j["nan"] = NAN;
  const json back = json::parse(dump_json(j));
  CHECK(back["x"].get<double>() == 0.1 + 0.2);
  CHECK(back["y"].get<double>() == 1.0 / 3.0);
  CHECK(back["z"].is_number_float());
  CHECK(back["nan"].is_null());
}

TEST_CASE("output is deterministic") {
  const RunConfig c = make(with_sweep(60, 80, 20));
  CHECK(cmd_sweep(c).body == cmd_sweep(c).body);
  CHECK(cmd_analyze(c).body == cmd_analyze(c).body);
}

TEST_CASE("paper-check passes and catches a tampered value") {
  const PaperReport r = paper_check();
  CHECK(r.all_pass());
  CHECK(render_paper_report(r, "text").status == 0);

  PaperFixture bad;
  bad.a = 10.74;
  const PaperReport t = paper_check(bad);
  CHECK_FALSE(t.all_pass());
  bool found = false;
  for (const auto& row : t.gated)
    if (!row.pass && row.name == "a") found = true;
  CHECK(found);
  CHECK(render_paper_report(t, "text").status == 2);
  const json tj = json::parse(render_paper_report(t, "json").body);
  CHECK_FALSE(tj["all_pass"].get<bool>());
}
