#include "builders.hpp"
#include "vortexwave/config_io.hpp"
#include "vortexwave/error.hpp"
#include "vortexwave/harness.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace vw;
using namespace vw::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vw_unit_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr const char* kMinimal = R"(
[scenario]
mode = moving
patch = disk 0 0 0.5 1
[numerics]
dt = 0.01
t_end = 0.05
)";

ScenarioConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScenarioConfig c;
  c.name = "random_" + std::to_string(rng() % 1000);
  const int kind = static_cast<int>(rng() % 3);
  c.mode = kind == 0 ? Mode::moving : (kind == 1 ? Mode::fixed : Mode::multi);
  const double r1 = 0.1 + u(rng);
  if (c.mode == Mode::fixed) {
    c.patches.push_back({PatchKind::annulus, {0, 0}, 0.05 + 0.1 * u(rng), 0.2 + r1, u(rng) * 3 - 1});
    c.vortices.push_back({{0, 0}, u(rng) * 2});
  } else {
    const PlanePoint c0{u(rng), -u(rng)};
    c.patches.push_back({PatchKind::disk, c0, 0.0, r1, 1.0 / 3.0 + u(rng)});
    c.patches.push_back({PatchKind::profile, {10.0 + u(rng), 0.1}, 0.2, 0.5 + u(rng), u(rng), u(rng) * 1e-7,
                         u(rng) * 1e5, static_cast<int>(rng() % 7)});
    c.vortices.push_back({c0 + PlanePoint{u(rng) * 1e-9, 0.3 * r1 * u(rng)}, u(rng)});
    if (c.mode == Mode::multi) c.vortices.push_back({c0 + PlanePoint{-0.5 * r1 * u(rng), -0.1 * r1}, 0.1 + u(rng)});
  }
  c.eta = u(rng) * 1e-3;
  c.perturbation = rng() % 2 ? Perturbation::vortex_offset : Perturbation::marker_jitter;
  c.seed = rng();
  if (rng() % 2) c.numerics.h = 0.001 + u(rng) * 0.1;
  if (rng() % 2) c.numerics.blob_delta = 0.001 + u(rng) * 0.1;
  if (rng() % 2) c.numerics.r_guard = 0.001 + u(rng) * 0.01;
  if (rng() % 2) c.numerics.dt = 1e-4 + u(rng) * 1e-2;
  c.numerics.t_end = u(rng) * 2;
  if (rng() % 2) c.numerics.grid_spacing = 0.01 + u(rng) * 0.1;
  if (rng() % 2) c.numerics.grid_half_width = 1 + u(rng) * 10;
  if (rng() % 2) c.numerics.grid_center = PlanePoint{u(rng), -u(rng)};
  c.diagnostics.constancy = rng() % 2 && c.mode != Mode::fixed;
  c.diagnostics.constancy_tol = 1e-12 + u(rng) * 1e-6;
  c.diagnostics.support_tol = u(rng) * 1e-3;
  c.diagnostics.norms = rng() % 2;
  c.diagnostics.hole_tol = u(rng) * 1e-3;
  c.diagnostics.lp_drift_tol = u(rng) * 0.1;
  c.diagnostics.pair_ratio = u(rng);
  c.diagnostics.convergence_factor = 1 + u(rng);
  const int nb = static_cast<int>(rng() % 4);
  for (int i = 0; i < nb; ++i)
    c.diagnostics.bumps.push_back({{u(rng), u(rng)}, 0.01 + u(rng), u(rng), 0.01 + u(rng), u(rng) * 4 - 2});
  c.output_stride = 1 + rng() % 50;
  return c;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(VW_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("minimal config parses with defaults") {
    const ScenarioConfig c = parse_config(kMinimal);
    CHECK(c.mode == Mode::moving);
    REQUIRE(c.patches.size() == 1);
    CHECK(c.patches[0].r_outer == 0.5);
    CHECK(c.numerics.dt == 0.01);
    const ResolvedNumerics r = resolve_numerics(c);
    CHECK(r.h == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(r.blob_delta == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(r.r_guard == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(c.output_stride == 10);
  }

  TEST_CASE("unknown keys and sections are rejected with their name") {
    try {
      (void)parse_config(std::string(kMinimal) + "viscosity = 0.1\n");
      FAIL("accepted an unknown key");
    } catch (const ConfigError& e) {
      CHECK(e.key().find("viscosity") != std::string::npos);
      CHECK(std::string(e.what()).find("viscosity") != std::string::npos);
      CHECK(e.line() == 8);
    }
    CHECK_THROWS_AS(parse_config("[physics]\nfoo = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[numerics]\ndt = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[numerics]\ndt = 0.1\ndt = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[scenario]\npatch = triangle 0 0 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[numerics]\ndt = -1\n"), ConfigError);
    try {
      (void)parse_config("[scenario]\nmode = fixed\npatch = annulus 0 0 0.3 1 1\n");
      FAIL("fixed mode without a vortex accepted");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "vortices");
    }
  }

  TEST_CASE("emit then parse reproduces the config") {
    const ScenarioConfig c = parse_config(kMinimal);
    CHECK(parse_config(emit_config(c)) == c);
    CHECK(emit_config(parse_config(emit_config(c))) == emit_config(c));
  }

  TEST_CASE("randomized round trip") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
      const ScenarioConfig c = random_config(rng);
      REQUIRE_NOTHROW(validate(c));
      const ScenarioConfig back = parse_config(emit_config(c));
      CHECK(back == c);
      const RunManifest m = make_manifest(c, "simulate");
      CHECK(parse_config(emit_manifest(m)) == m.config);
    }
  }

  TEST_CASE("format_real is lossless") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
      const double v = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150);
      CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
    }
  }

  TEST_CASE("time series files") {
    const fs::path dir = scratch("series");
    TimeSeriesTable one{{"time", "value"}, {{0.0, 1.0 / 3.0}}};
    write_timeseries(one, dir / "one.csv");
    const std::string text = slurp(dir / "one.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.rfind("time,value\n", 0) == 0);
    const TimeSeriesTable back = read_timeseries(dir / "one.csv");
    CHECK(back.columns == one.columns);
    CHECK(back.rows == one.rows);
    CHECK_THROWS(write_timeseries(TimeSeriesTable{{"time"}, {}}, dir / "empty.csv"));
    CHECK_FALSE(fs::exists(dir / "one.csv.tmp"));
    fs::remove_all(dir);
  }

  TEST_CASE("simulate writes byte-identical outputs across reruns") {
    ScenarioConfig c = testing::rankine_config(0.5, 0.05, 0.05, 0.01);
    c.vortices.push_back({{0.0, 0.0}, 1.0});
    c.diagnostics.constancy = true;
    const fs::path a = scratch("sim_a"), b = scratch("sim_b");
    const auto ra = simulate(c, a);
    (void)simulate(c, b);
    for (const char* f : {"series.csv", "manifest", "report"}) {
      REQUIRE(fs::exists(a / f));
      CHECK(slurp(a / f) == slurp(b / f));
    }
    const TimeSeriesTable t = read_timeseries(a / "series.csv");
    const TimeSeriesTable direct = flatten(ra.trajectory, c);
    CHECK(t.columns == direct.columns);
    CHECK(t.rows == direct.rows);
    CHECK(parse_config(slurp(a / "manifest")) == with_resolved_defaults(c));
    CHECK(slurp(a / "report").find("status: PASS") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
  }

  TEST_CASE("twin with zero eta has identically zero divergence") {
    ScenarioConfig c = testing::rankine_config(0.5, 0.05, 0.05, 0.01);
    c.vortices.push_back({{0.0, 0.0}, 1.0});
    c.diagnostics.constancy = true;
    const auto out = twin(c, std::nullopt);
    for (double v : out.r.value) CHECK(v == 0.0);
    CHECK(out.report.passed());
  }

  TEST_CASE("command exit codes") {
    const fs::path dir = scratch("cmd");
    {
      std::ofstream(dir / "ok.cfg") << kMinimal;
      std::ofstream(dir / "bad.cfg") << "[scenario]\nviscosity = 1\n";
      std::ofstream(dir / "crash.cfg") << "[scenario]\nmode = multi\npatch = disk 0 0 0.1 1\n"
                                          "[vortices]\nvortex = 0.5 0 1\nvortex = 0.5 1e-11 1\n"
                                          "[numerics]\ndt = 0.01\nt_end = 0.02\n";
      std::ofstream(dir / "fail.cfg") << kMinimal << "[diagnostics]\nlp_drift_tol = 1e-300\n";
    }
    CommandOptions opts;
    opts.kind = CommandKind::check_kernels;
    CHECK(run_command(opts).exit_code == kExitPass);

    opts.kind = CommandKind::simulate;
    opts.config_path = dir / "ok.cfg";
    opts.out_dir = dir / "ok";
    CHECK(run_command(opts).exit_code == kExitPass);
    CHECK(fs::exists(dir / "ok" / "series.csv"));

    opts.config_path = dir / "bad.cfg";
    opts.out_dir = dir / "bad";
    const auto bad = run_command(opts);
    CHECK(bad.exit_code == kExitConfigError);
    CHECK(slurp(dir / "bad" / "report").find("viscosity") != std::string::npos);

    opts.config_path = dir / "crash.cfg";
    opts.out_dir = dir / "crash";
    CHECK(run_command(opts).exit_code == kExitRuntimeError);

    opts.config_path = dir / "fail.cfg";
    opts.out_dir = dir / "fail";
    CHECK(run_command(opts).exit_code == kExitCheckFailure);
    CHECK(slurp(dir / "fail" / "report").find("status: FAIL") != std::string::npos);

    opts.kind = CommandKind::fixed;
    opts.config_path = dir / "ok.cfg";
    CHECK(run_command(opts).exit_code == kExitConfigError);

    CHECK(run_tool("simulate --config " + (dir / "ok.cfg").string() + " --out " + (dir / "cli").string()) == 0);
    CHECK(run_tool("twin --config " + (dir / "ok.cfg").string() + " --eta 0.1") == 2);  // no vortex to offset
    CHECK(run_tool("simulate --config " + (dir / "missing.cfg").string()) == 2);
    CHECK(run_tool("simulate") == 2);
    CHECK(run_tool("bogus") == 2);
    CHECK(run_tool("simulate --config " + (dir / "crash.cfg").string()) == 3);
    fs::remove_all(dir);
  }
}
