#include "vortexwave/harness.hpp"

#include "vortexwave/config_io.hpp"
#include "vortexwave/error.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vw::harness {

namespace fs = std::filesystem;

RunManifest make_manifest(const ScenarioConfig& config, std::string command) {
  return {with_resolved_defaults(config), std::move(command), std::string(kVersionTag)};
}

std::string emit_manifest(const RunManifest& manifest) {
  std::ostringstream out;
  out << "# version: " << manifest.version << "\n";
  out << "# command: " << manifest.command << "\n";
  out << "# seed: " << manifest.config.seed << "\n";
  out << emit_config(manifest.config);
  return out.str();
}

TimeSeriesTable flatten(const dynamics::Trajectory& traj, const ScenarioConfig& config) {
  TimeSeriesTable table;
  const std::size_t nv = config.vortices.size();
  const bool has_markers = !config.patches.empty();
  auto& c = table.columns;
  c.push_back("time");
  if (config.diagnostics.constancy)
    for (std::size_t i = 0; i < nv; ++i) c.push_back("constancy_radius_" + std::to_string(i));
  c.push_back("support_radius");
  if (config.diagnostics.norms && has_markers) {
    c.push_back("l1");
    c.push_back("l2");
    c.push_back("linf");
  }
  if (nv >= 1 && has_markers) c.push_back("min_vortex_marker_dist");
  if (nv >= 2) c.push_back("min_vortex_pair_dist");
  if (config.mode == Mode::fixed && has_markers) c.push_back("hole_radius");
  c.push_back("guard_event_count");
  for (std::size_t i = 0; i < nv; ++i) {
    c.push_back("z" + std::to_string(i) + "_x1");
    c.push_back("z" + std::to_string(i) + "_x2");
  }

  auto require = [](const std::optional<double>& v, const char* what) {
    if (!v) throw std::logic_error(std::string("flatten: record lacks ") + what);
    return *v;
  };
  for (const auto& snap : traj.snapshots) {
    const auto& rec = snap.record;
    std::vector<double> row;
    row.push_back(rec.time);
    if (config.diagnostics.constancy)
      for (double r : rec.constancy_radius) row.push_back(r);
    row.push_back(rec.support_radius);
    if (config.diagnostics.norms && has_markers) {
      row.push_back(require(rec.l1, "l1"));
      row.push_back(require(rec.l2, "l2"));
      row.push_back(require(rec.linf, "linf"));
    }
    if (nv >= 1 && has_markers) row.push_back(require(rec.min_vortex_marker_dist, "min_vortex_marker_dist"));
    if (nv >= 2) row.push_back(require(rec.min_vortex_pair_dist, "min_vortex_pair_dist"));
    if (config.mode == Mode::fixed && has_markers) row.push_back(require(rec.hole_radius, "hole_radius"));
    row.push_back(static_cast<double>(rec.guard_event_count));
    for (const auto& v : snap.state.vortices) {
      row.push_back(v.pos.x1);
      row.push_back(v.pos.x2);
    }
    if (row.size() != c.size()) throw std::logic_error("flatten: row does not match column set");
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_timeseries(const TimeSeriesTable& table, const fs::path& path) {
  if (table.rows.empty()) throw std::invalid_argument("write_timeseries: no rows");
  std::string text;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) text += ',';
    text += table.columns[i];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += format_real(row[i]);
    }
    text += '\n';
  }
  write_file_atomic(path, text);
}

TimeSeriesTable read_timeseries(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  TimeSeriesTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
  table.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw std::runtime_error(path.string() + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::text() const {
  std::ostringstream out;
  for (const auto& [k, v] : info) out << k << ": " << v << "\n";
  for (const auto& c : checks)
    out << "check." << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " value=" << format_real(c.value)
        << " threshold=" << format_real(c.threshold) << "\n";
  out << "status: " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// check-kernels

namespace {

using Kernel = PlanePoint (*)(PlanePoint, double);

// Fourth-order central difference divergence with step h.
double fd_divergence(const std::function<PlanePoint(PlanePoint)>& f, PlanePoint x, double h) {
  auto d = [&](PlanePoint e, auto component) {
    const double fm2 = component(f(x - e * 2.0));
    const double fm1 = component(f(x - e));
    const double fp1 = component(f(x + e));
    const double fp2 = component(f(x + e * 2.0));
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  };
  return d(PlanePoint{h, 0.0}, [](PlanePoint p) { return p.x1; }) +
         d(PlanePoint{0.0, h}, [](PlanePoint p) { return p.x2; });
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  PlanePoint log_radial(double r_min, double r_max) {
    const double r = r_min * std::pow(r_max / r_min, uniform());
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

Report check_kernels(const kernels::KernelParams& params, std::size_t orthogonality_samples, std::uint64_t seed) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.note("command", "check-kernels");
  report.note("version", std::string(kVersionTag));
  report.note("blob_delta", format_real(params.blob_delta));
  report.note("eps", format_real(params.eps));
  report.note("cutoff_delta", format_real(params.cutoff_delta));
  Sampler sampler(seed);
  constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

  double worst_orth = 0.0;
  for (std::size_t i = 0; i < orthogonality_samples; ++i) {
    const PlanePoint x = sampler.log_radial(1e-3, 1e3);
    const PlanePoint k = kernels::biot_savart(x);
    worst_orth = std::max(worst_orth, std::abs(dot(k, x)) / (kMachineEps * norm(k) * norm(x)));
  }
  report.check("orthogonality", worst_orth <= 4.0, worst_orth, 4.0);

  constexpr double kStep = 1e-5;
  constexpr std::size_t kDivSamples = 20000;
  double div_k = 0.0, div_eps = 0.0, div_blob = 0.0;
  for (std::size_t i = 0; i < kDivSamples; ++i) {
    const PlanePoint x = sampler.log_radial(1e-2, 10.0);
    div_k = std::max(div_k, std::abs(fd_divergence(kernels::biot_savart, x, kStep)));
  }
  for (std::size_t i = 0; i < kDivSamples; ++i) {
    const PlanePoint x = sampler.log_radial(1e-4 * params.eps, 10.0);
    // K_eps is only C^1 on |x| = eps; skip stencils straddling it.
    if (std::abs(norm(x) - params.eps) <= 2.5 * kStep) continue;
    div_eps = std::max(div_eps, std::abs(fd_divergence(
                                    [&](PlanePoint p) { return kernels::regularized_kernel(p, params.eps); }, x, kStep)));
  }
  for (std::size_t i = 0; i < kDivSamples; ++i) {
    const PlanePoint x = sampler.log_radial(1e-4 * params.blob_delta, 10.0);
    div_blob = std::max(div_blob, std::abs(fd_divergence(
                                      [&](PlanePoint p) { return kernels::blob_kernel(p, params.blob_delta); }, x, kStep)));
  }
  report.check("divergence_biot_savart", div_k < 1e-6, div_k, 1e-6);
  report.check("divergence_regularized", div_eps < 1e-6, div_eps, 1e-6);
  report.check("divergence_blob", div_blob < 1e-6, div_blob, 1e-6);

  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 100000; ++i) {
    const PlanePoint x = sampler.log_radial(params.eps, 1e3);
    const PlanePoint a = kernels::regularized_kernel(x, params.eps);
    const PlanePoint b = kernels::biot_savart(x);
    if (!(a == b)) ++mismatches;
  }
  report.check("regularized_matches_outside_eps", mismatches == 0, static_cast<double>(mismatches), 0.0);

  double worst_excess = -std::numeric_limits<double>::infinity();
  constexpr int kGrid = 4000;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = std::pow(10.0, -9.0 + 10.0 * i / kGrid);
    const double phi = kernels::al_modulus(t);
    for (int p = 1; p <= 64; ++p)
      worst_excess = std::max(worst_excess, phi - p * std::pow(t, 1.0 - 1.0 / p));
  }
  report.check("modulus_bound", worst_excess <= 1e-12, worst_excess, 1e-12);

  double worst_decrease = 0.0, worst_convexity = 0.0;
  constexpr int kShape = 10000;
  const double step = 1.0 / kShape;
  for (int i = 1; i < 2 * kShape; ++i) {
    const double z = i * step;
    worst_decrease = std::max(worst_decrease, kernels::al_modulus(z - step) - kernels::al_modulus(z));
    if (z + step < 1.0) {
      const double second = kernels::al_modulus(z + step) - 2.0 * kernels::al_modulus(z) + kernels::al_modulus(z - step);
      worst_convexity = std::max(worst_convexity, second);
    }
  }
  report.check("modulus_monotone", worst_decrease <= 0.0, worst_decrease, 0.0);
  report.check("modulus_concave", worst_convexity <= 1e-15, worst_convexity, 1e-15);

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.note("runtime_seconds", format_real(seconds));
  report.check("runtime", seconds < 30.0, seconds, 30.0);
  return report;
}

// ---------------------------------------------------------------------------
// simulate / fixed

namespace {

void note_run(Report& report, const ScenarioConfig& config, const dynamics::Trajectory& traj, std::string_view command) {
  const ResolvedNumerics r = resolve_numerics(config);
  report.note("command", std::string(command));
  report.note("version", std::string(kVersionTag));
  report.note("scenario", config.name);
  report.note("mode", to_string(config.mode));
  report.note("markers", std::to_string(traj.snapshots.front().state.cloud.size()));
  report.note("steps", std::to_string(traj.steps));
  report.note("dt", format_real(traj.dt));
  report.note("h", format_real(r.h));
  report.note("blob_delta", format_real(r.blob_delta));
  report.note("r_guard", format_real(r.r_guard));
  report.note("guard_events", std::to_string(traj.guard_events));
}

diagnostics::Series constancy_series(const dynamics::Trajectory& traj, std::size_t vortex) {
  diagnostics::Series s;
  for (const auto& snap : traj.snapshots) s.push(snap.record.time, snap.record.constancy_radius.at(vortex));
  return s;
}

void add_run_checks(Report& report, const ScenarioConfig& config, const dynamics::Trajectory& traj) {
  const ResolvedNumerics r = resolve_numerics(config);
  const bool has_markers = !traj.snapshots.front().state.cloud.empty();
  const std::size_t n = traj.snapshots.size();

  if (!config.vortices.empty() && has_markers) {
    const auto margin = diagnostics::collision_margin(traj, r.r_guard);
    report.check("no_collision_margin", margin.min_margin > r.r_guard, margin.min_margin, r.r_guard);
    report.check("guard_events", margin.guard_events == 0, static_cast<double>(margin.guard_events), 0.0);
  }

  if (config.diagnostics.constancy) {
    const auto targets = constancy_targets(config);
    for (std::size_t i = 0; i < config.vortices.size(); ++i) {
      const std::string suffix = "_" + std::to_string(i);
      const auto rho = constancy_series(traj, i);
      const double rho_min = *std::min_element(rho.value.begin(), rho.value.end());
      report.check("constancy_radius_positive" + suffix, rho_min > 0.0, rho_min, 0.0);
      if (n < 5 || !(rho_min > 0.0)) continue;
      try {
        const auto fit = diagnostics::fit_constancy_constant(rho, diagnostics::constancy_band_floor(rho, 2.0 * r.h));
        report.note("constancy_C" + suffix, format_real(fit.constant));
        report.note("constancy_fit_residual" + suffix, format_real(fit.residual));
        report.check("constancy_law" + suffix, fit.pass, fit.constant, fit.band);
        std::size_t violations = 0;
        for (const auto& snap : traj.snapshots) {
          const double law = diagnostics::law_radius(fit, snap.state.time);
          if (!diagnostics::disk_is_value_constant(snap.state.cloud, snap.state.vortices[i].pos, law,
                                                   targets[i].alpha, config.diagnostics.constancy_tol))
            ++violations;
        }
        report.check("constancy_set" + suffix, violations == 0, static_cast<double>(violations), 0.0);
      } catch (const DomainError& e) {
        report.note("constancy_error" + suffix, e.what());
        report.check("constancy_law" + suffix, false, 0.0, 0.0);
      }
    }
  }

  if (has_markers && n >= 5) {
    diagnostics::Series support;
    for (const auto& snap : traj.snapshots) support.push(snap.record.time, snap.record.support_radius);
    const auto fit = diagnostics::support_growth_fit(support, r.h);
    report.note("support_growth_slope", format_real(fit.slope));
    report.check("support_growth", fit.pass, fit.slope, fit.band);
  }

  if (config.diagnostics.norms && has_markers) {
    for (double p : {1.0, 2.0}) {
      const double drift = diagnostics::lp_drift(traj, p);
      report.check(p == 1.0 ? "l1_drift" : "l2_drift", drift < config.diagnostics.lp_drift_tol, drift,
                   config.diagnostics.lp_drift_tol);
    }
  }

  if (config.vortices.size() >= 2) {
    const double d0 = *traj.snapshots.front().record.min_vortex_pair_dist;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& snap : traj.snapshots) worst = std::min(worst, *snap.record.min_vortex_pair_dist / d0);
    report.check("vortex_pair_separation", worst >= config.diagnostics.pair_ratio, worst,
                 config.diagnostics.pair_ratio);
  }
}

void write_run_files(const fs::path& dir, const ScenarioConfig& config, std::string_view command,
                     const Report& report) {
  fs::create_directories(dir);
  write_file_atomic(dir / "manifest", emit_manifest(make_manifest(config, std::string(command))));
  write_file_atomic(dir / "report", report.text());
}

}  // namespace

SimulateOutcome simulate(const ScenarioConfig& config, const std::optional<fs::path>& out_dir,
                         std::string_view command) {
  validate(config);
  SimulateOutcome out;
  out.trajectory = dynamics::run(config);
  note_run(out.report, config, out.trajectory, command);
  add_run_checks(out.report, config, out.trajectory);
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_timeseries(flatten(out.trajectory, config), *out_dir / "series.csv");
    write_run_files(*out_dir, config, command, out.report);
  }
  return out;
}

SimulateOutcome fixed(const ScenarioConfig& config, const std::optional<fs::path>& out_dir) {
  if (config.mode != Mode::fixed) throw ConfigError("scenario.mode", 0, "scenario.mode: fixed command needs mode = fixed");
  SimulateOutcome out = simulate(config, std::nullopt, "fixed");
  const ResolvedNumerics r = resolve_numerics(config);
  if (out.trajectory.snapshots.size() >= 2) {
    const auto hole = diagnostics::hole_radius(out.trajectory, config.diagnostics.hole_tol, r.h);
    out.report.note("hole_log_intercept", format_real(hole.fit.intercept));
    out.report.note("hole_log_slope", format_real(hole.fit.slope));
    out.report.check("hole_law", hole.fit.pass, hole.fit.constant, hole.fit.band);
  }
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_timeseries(flatten(out.trajectory, config), *out_dir / "series.csv");
    write_run_files(*out_dir, config, "fixed", out.report);
  }
  return out;
}

// ---------------------------------------------------------------------------
// twin

TwinOutcome twin(const ScenarioConfig& config, const std::optional<fs::path>& out_dir) {
  validate(config);
  TwinOutcome out;
  auto [a0, b0] = dynamics::init_twin(config);
  out.a = dynamics::run_from(std::move(a0), config);
  out.b = dynamics::run_from(std::move(b0), config);
  const ResolvedNumerics r = resolve_numerics(config);
  out.r = diagnostics::twin_divergence(out.a, out.b, r.grid);

  Report& report = out.report;
  note_run(report, config, out.a, "twin");
  report.note("eta", format_real(config.eta));
  report.note("perturbation", to_string(config.perturbation));
  report.note("r_final", format_real(out.r.value.back()));

  const bool has_markers = !config.patches.empty();
  if (!config.vortices.empty() && has_markers) {
    const auto ma = diagnostics::collision_margin(out.a, r.r_guard);
    const auto mb = diagnostics::collision_margin(out.b, r.r_guard);
    const double m = std::min(ma.min_margin, mb.min_margin);
    report.check("no_collision_margin", m > r.r_guard, m, r.r_guard);
    const auto events = ma.guard_events + mb.guard_events;
    report.check("guard_events", events == 0, static_cast<double>(events), 0.0);
  }
  if (config.perturbation == Perturbation::vortex_offset && !config.vortices.empty()) {
    const double err = std::abs(out.r.value.front() - config.eta * config.eta);
    report.check("initial_r_equals_eta_squared", err <= 1e-12, err, 1e-12);
  }
  if (config.eta == 0.0) {
    const double worst = *std::max_element(out.r.value.begin(), out.r.value.end());
    report.check("identical_twins", worst == 0.0, worst, 0.0);
  }
  if (config.diagnostics.constancy && !config.vortices.empty() && has_markers) {
    const auto targets = constancy_targets(config);
    out.harmonic = diagnostics::harmonic_difference(out.a, out.b, r.grid, targets[0].alpha,
                                                    config.diagnostics.constancy_tol);
    double worst = 0.0;
    for (const auto& s : out.harmonic) worst = std::max(worst, s.defect / (1e-3 * s.velocity_l2 + 1e-8));
    report.check("harmonic_mean_value", worst < 1.0, worst, 1.0);
  }

  if (out_dir) {
    fs::create_directories(*out_dir);
    write_timeseries(flatten(out.a, config), *out_dir / "series_a.csv");
    write_timeseries(flatten(out.b, config), *out_dir / "series_b.csv");
    TimeSeriesTable t;
    t.columns = {"time", "r"};
    if (!out.harmonic.empty()) {
      t.columns.insert(t.columns.end(), {"harmonic_radius", "harmonic_defect", "velocity_diff_l2"});
    }
    for (std::size_t k = 0; k < out.r.size(); ++k) {
      std::vector<double> row{out.r.t[k], out.r.value[k]};
      if (!out.harmonic.empty()) {
        const auto& h = out.harmonic[k];
        row.insert(row.end(), {h.radius, std::isfinite(h.defect) ? h.defect : -1.0, h.velocity_l2});
      }
      t.rows.push_back(std::move(row));
    }
    write_timeseries(t, *out_dir / "twin.csv");
    write_run_files(*out_dir, config, "twin", report);
  }
  return out;
}

// ---------------------------------------------------------------------------
// convergence

ConvergenceOutcome convergence(const ScenarioConfig& config, std::size_t levels,
                               const std::optional<fs::path>& out_dir) {
  validate(config);
  if (levels < 2) throw ConfigError("levels", 0, "levels: convergence needs at least two levels");
  const ScenarioConfig base = with_resolved_defaults(config);
  const ResolvedNumerics r0 = resolve_numerics(base);
  const auto& bumps = base.diagnostics.bumps;

  ConvergenceOutcome out;
  Report& report = out.report;
  report.note("command", "convergence");
  report.note("version", std::string(kVersionTag));
  report.note("scenario", config.name);
  report.note("levels", std::to_string(levels));
  report.note("test_functions", std::to_string(bumps.size()));

  for (std::size_t level = 0; level < levels; ++level) {
    const double f = std::ldexp(1.0, -static_cast<int>(level));
    ScenarioConfig cfg = base;
    cfg.numerics.h = r0.h * f;
    cfg.numerics.dt = r0.dt * f;
    cfg.numerics.blob_delta = r0.blob_delta * f;
    cfg.numerics.r_guard = r0.r_guard * f;
    const dynamics::Trajectory traj = dynamics::run(cfg);
    ConvergenceLevel lv;
    lv.h = *cfg.numerics.h;
    lv.dt = traj.dt;
    lv.markers = traj.snapshots.front().state.cloud.size();
    for (const auto& psi : bumps) lv.residuals.push_back(diagnostics::weak_residual(traj, psi, r0.grid));
    if (!cfg.vortices.empty() && lv.markers > 0) {
      const auto margin = diagnostics::collision_margin(traj, *cfg.numerics.r_guard);
      report.check("guard_events_level_" + std::to_string(level), margin.pass,
                   static_cast<double>(margin.guard_events), 0.0);
    }
    out.levels.push_back(std::move(lv));
  }

  const double factor = config.diagnostics.convergence_factor;
  for (std::size_t k = 0; k < bumps.size(); ++k) {
    for (std::size_t level = 1; level < levels; ++level) {
      const double prev = out.levels[level - 1].residuals[k];
      const double cur = out.levels[level].residuals[k];
      const double ratio = cur > 0.0 ? prev / cur : std::numeric_limits<double>::infinity();
      report.check("residual_" + std::to_string(k) + "_level_" + std::to_string(level), ratio >= factor, ratio,
                   factor);
    }
  }

  if (out_dir) {
    fs::create_directories(*out_dir);
    TimeSeriesTable t;
    t.columns = {"level", "h", "dt", "markers"};
    for (std::size_t k = 0; k < bumps.size(); ++k) t.columns.push_back("residual_" + std::to_string(k));
    for (std::size_t level = 0; level < levels; ++level) {
      const auto& lv = out.levels[level];
      std::vector<double> row{static_cast<double>(level), lv.h, lv.dt, static_cast<double>(lv.markers)};
      row.insert(row.end(), lv.residuals.begin(), lv.residuals.end());
      t.rows.push_back(std::move(row));
    }
    write_timeseries(t, *out_dir / "convergence.csv");
    write_run_files(*out_dir, base, "convergence", report);
  }
  return out;
}

// ---------------------------------------------------------------------------

CommandResult run_command(const CommandOptions& options) {
  CommandResult result;
  auto fail = [&](int code, const std::string& message) {
    result.exit_code = code;
    result.error = message;
    result.report.note("error", message);
    result.report.note("status", code == kExitConfigError ? "CONFIG_ERROR" : "RUNTIME_ERROR");
    if (options.out_dir) {
      try {
        fs::create_directories(*options.out_dir);
        std::string text;
        for (const auto& [k, v] : result.report.info) text += k + ": " + v + "\n";
        write_file_atomic(*options.out_dir / "report", text);
      } catch (...) {
        // the error is still reported through the exit code
      }
    }
    return result;
  };

  ScenarioConfig config;
  try {
    if (options.config_path) {
      config = load_config(*options.config_path);
    } else if (options.kind != CommandKind::check_kernels) {
      throw ConfigError("--config", 0, "--config is required for this command");
    }
    if (options.eta) {
      config.eta = *options.eta;
      validate(config);
    }
  } catch (const ConfigError& e) {
    return fail(kExitConfigError, e.what());
  }

  try {
    switch (options.kind) {
      case CommandKind::check_kernels: {
        kernels::KernelParams params;
        if (options.config_path) {
          const ResolvedNumerics r = resolve_numerics(config);
          params.blob_delta = r.blob_delta;
          params.eps = r.r_guard;
        }
        result.report = check_kernels(params);
        if (options.out_dir) {
          fs::create_directories(*options.out_dir);
          write_file_atomic(*options.out_dir / "report", result.report.text());
        }
        break;
      }
      case CommandKind::simulate: result.report = simulate(config, options.out_dir).report; break;
      case CommandKind::fixed: result.report = fixed(config, options.out_dir).report; break;
      case CommandKind::twin: result.report = twin(config, options.out_dir).report; break;
      case CommandKind::convergence:
        result.report = convergence(config, options.levels, options.out_dir).report;
        break;
    }
  } catch (const ConfigError& e) {
    return fail(kExitConfigError, e.what());
  } catch (const std::exception& e) {
    return fail(kExitRuntimeError, e.what());
  }
  result.exit_code = result.report.passed() ? kExitPass : kExitCheckFailure;
  return result;
}

}  // namespace vw::harness
