#include "vortexwave/config_io.hpp"

#include "vortexwave/error.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace vw::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

class LineContext {
 public:
  LineContext(std::string key, std::size_t line) : key_(std::move(key)), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(key_, line_, "line " + std::to_string(line_) + ": " + key_ + ": " + message);
  }

  double real(std::string_view word) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc() || ptr != word.data() + word.size()) fail("expected a real number, got '" + std::string(word) + "'");
    return v;
  }

  template <class Int>
  Int integer(std::string_view word) const {
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc() || ptr != word.data() + word.size()) fail("expected an integer, got '" + std::string(word) + "'");
    return v;
  }

  bool boolean(std::string_view word) const {
    if (word == "true") return true;
    if (word == "false") return false;
    fail("expected true or false, got '" + std::string(word) + "'");
  }

  std::vector<double> reals(std::string_view value, std::size_t min_count, std::size_t max_count) const {
    const auto words = split_words(value);
    if (words.size() < min_count || words.size() > max_count)
      fail("expected " + std::to_string(min_count) +
           (min_count == max_count ? "" : " to " + std::to_string(max_count)) + " values");
    std::vector<double> out;
    for (auto w : words) out.push_back(real(w));
    return out;
  }

  std::string_view single(std::string_view value) const {
    const auto words = split_words(value);
    if (words.size() != 1) fail("expected a single value");
    return words.front();
  }

 private:
  std::string key_;
  std::size_t line_;
};

Patch parse_patch(const LineContext& ctx, std::string_view value) {
  const auto words = split_words(value);
  if (words.empty()) ctx.fail("missing patch kind");
  const std::string_view kind = words.front();
  std::vector<double> v;
  for (std::size_t i = 1; i < words.size(); ++i) v.push_back(ctx.real(words[i]));
  Patch p;
  if (kind == "disk") {
    if (v.size() != 4) ctx.fail("disk takes: c1 c2 radius alpha");
    p.kind = PatchKind::disk;
    p.center = {v[0], v[1]};
    p.r_outer = v[2];
    p.alpha = v[3];
  } else if (kind == "annulus") {
    if (v.size() != 5) ctx.fail("annulus takes: c1 c2 r_in r_out alpha");
    p.kind = PatchKind::annulus;
    p.center = {v[0], v[1]};
    p.r_inner = v[2];
    p.r_outer = v[3];
    p.alpha = v[4];
  } else if (kind == "profile") {
    if (v.size() != 8) ctx.fail("profile takes: c1 c2 r_in r_out alpha slope amplitude wavenumber");
    p.kind = PatchKind::profile;
    p.center = {v[0], v[1]};
    p.r_inner = v[2];
    p.r_outer = v[3];
    p.alpha = v[4];
    p.slope = v[5];
    p.amplitude = v[6];
    p.wavenumber = ctx.integer<int>(words[8]);
  } else {
    ctx.fail("unknown patch kind '" + std::string(kind) + "'");
  }
  return p;
}

const std::set<std::string, std::less<>>& keys_for(std::string_view section) {
  static const std::set<std::string, std::less<>> scenario{"name", "mode", "patch", "eta", "perturbation", "seed"};
  static const std::set<std::string, std::less<>> vortices{"vortex"};
  static const std::set<std::string, std::less<>> numerics{"h",      "blob_delta",   "r_guard",
                                                          "dt",     "t_end",        "grid_spacing",
                                                          "grid_half_width", "grid_center"};
  static const std::set<std::string, std::less<>> diagnostics{
      "constancy", "constancy_tol", "support_tol", "norms", "hole_tol",
      "lp_drift_tol", "pair_ratio", "convergence_factor", "bump"};
  static const std::set<std::string, std::less<>> output{"stride"};
  static const std::set<std::string, std::less<>> none;
  if (section == "scenario") return scenario;
  if (section == "vortices") return vortices;
  if (section == "numerics") return numerics;
  if (section == "diagnostics") return diagnostics;
  if (section == "output") return output;
  return none;
}

bool is_repeatable(std::string_view key) { return key == "patch" || key == "vortex" || key == "bump"; }

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (keys_for(section).empty())
        throw ConfigError(section, line_no, "line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(key, line_no, "line " + std::to_string(line_no) + ": key '" + key + "' outside any section");
    const std::string full_key = section + "." + key;
    const LineContext ctx(full_key, line_no);
    if (!keys_for(section).contains(key)) ctx.fail("unknown key '" + key + "'");
    if (!is_repeatable(key) && !seen.insert(full_key).second) ctx.fail("duplicate key");
    if (value.empty()) ctx.fail("missing value");

    auto& n = config.numerics;
    auto& d = config.diagnostics;
    if (section == "scenario") {
      if (key == "name") {
        config.name = std::string(ctx.single(value));
      } else if (key == "mode") {
        const auto m = ctx.single(value);
        if (m == "moving") config.mode = Mode::moving;
        else if (m == "fixed") config.mode = Mode::fixed;
        else if (m == "multi") config.mode = Mode::multi;
        else ctx.fail("mode must be moving, fixed or multi");
      } else if (key == "patch") {
        config.patches.push_back(parse_patch(ctx, value));
      } else if (key == "eta") {
        config.eta = ctx.real(ctx.single(value));
      } else if (key == "perturbation") {
        const auto p = ctx.single(value);
        if (p == "vortex") config.perturbation = Perturbation::vortex_offset;
        else if (p == "jitter") config.perturbation = Perturbation::marker_jitter;
        else ctx.fail("perturbation must be vortex or jitter");
      } else if (key == "seed") {
        config.seed = ctx.integer<std::uint64_t>(ctx.single(value));
      }
    } else if (section == "vortices") {
      const auto v = ctx.reals(value, 3, 3);
      config.vortices.push_back({{v[0], v[1]}, v[2]});
    } else if (section == "numerics") {
      if (key == "grid_center") {
        const auto v = ctx.reals(value, 2, 2);
        n.grid_center = PlanePoint{v[0], v[1]};
      } else {
        const double v = ctx.real(ctx.single(value));
        if (key == "h") n.h = v;
        else if (key == "blob_delta") n.blob_delta = v;
        else if (key == "r_guard") n.r_guard = v;
        else if (key == "dt") n.dt = v;
        else if (key == "t_end") n.t_end = v;
        else if (key == "grid_spacing") n.grid_spacing = v;
        else if (key == "grid_half_width") n.grid_half_width = v;
      }
    } else if (section == "diagnostics") {
      if (key == "constancy") d.constancy = ctx.boolean(ctx.single(value));
      else if (key == "norms") d.norms = ctx.boolean(ctx.single(value));
      else if (key == "bump") {
        const auto v = ctx.reals(value, 5, 6);
        d.bumps.push_back({{v[0], v[1]}, v[2], v[3], v[4], v.size() == 6 ? v[5] : 1.0});
      } else {
        const double v = ctx.real(ctx.single(value));
        if (key == "constancy_tol") d.constancy_tol = v;
        else if (key == "support_tol") d.support_tol = v;
        else if (key == "hole_tol") d.hole_tol = v;
        else if (key == "lp_drift_tol") d.lp_drift_tol = v;
        else if (key == "pair_ratio") d.pair_ratio = v;
        else if (key == "convergence_factor") d.convergence_factor = v;
      }
    } else if (section == "output") {
      config.output_stride = ctx.integer<std::size_t>(ctx.single(value));
    }
    if (eol == text.size()) break;
  }
  validate(config);
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string emit_config(const ScenarioConfig& config) {
  std::ostringstream out;
  auto r = format_real;
  out << "[scenario]\n";
  out << "name = " << config.name << "\n";
  out << "mode = " << to_string(config.mode) << "\n";
  for (const Patch& p : config.patches) {
    out << "patch = " << to_string(p.kind) << ' ' << r(p.center.x1) << ' ' << r(p.center.x2) << ' ';
    switch (p.kind) {
      case PatchKind::disk: out << r(p.r_outer) << ' ' << r(p.alpha); break;
      case PatchKind::annulus: out << r(p.r_inner) << ' ' << r(p.r_outer) << ' ' << r(p.alpha); break;
      case PatchKind::profile:
        out << r(p.r_inner) << ' ' << r(p.r_outer) << ' ' << r(p.alpha) << ' ' << r(p.slope) << ' '
            << r(p.amplitude) << ' ' << p.wavenumber;
        break;
    }
    out << "\n";
  }
  out << "eta = " << r(config.eta) << "\n";
  out << "perturbation = " << to_string(config.perturbation) << "\n";
  out << "seed = " << config.seed << "\n";

  out << "\n[vortices]\n";
  for (const auto& v : config.vortices)
    out << "vortex = " << r(v.pos.x1) << ' ' << r(v.pos.x2) << ' ' << r(v.intensity) << "\n";

  const auto& n = config.numerics;
  out << "\n[numerics]\n";
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << r(*v) << "\n";
  };
  opt("h", n.h);
  opt("blob_delta", n.blob_delta);
  opt("r_guard", n.r_guard);
  opt("dt", n.dt);
  out << "t_end = " << r(n.t_end) << "\n";
  opt("grid_spacing", n.grid_spacing);
  opt("grid_half_width", n.grid_half_width);
  if (n.grid_center) out << "grid_center = " << r(n.grid_center->x1) << ' ' << r(n.grid_center->x2) << "\n";

  const auto& d = config.diagnostics;
  out << "\n[diagnostics]\n";
  out << "constancy = " << (d.constancy ? "true" : "false") << "\n";
  out << "constancy_tol = " << r(d.constancy_tol) << "\n";
  out << "support_tol = " << r(d.support_tol) << "\n";
  out << "norms = " << (d.norms ? "true" : "false") << "\n";
  out << "hole_tol = " << r(d.hole_tol) << "\n";
  out << "lp_drift_tol = " << r(d.lp_drift_tol) << "\n";
  out << "pair_ratio = " << r(d.pair_ratio) << "\n";
  out << "convergence_factor = " << r(d.convergence_factor) << "\n";
  for (const auto& b : d.bumps)
    out << "bump = " << r(b.center.x1) << ' ' << r(b.center.x2) << ' ' << r(b.half_width) << ' '
        << r(b.t_center) << ' ' << r(b.t_half) << ' ' << r(b.amplitude) << "\n";

  out << "\n[output]\n";
  out << "stride = " << config.output_stride << "\n";
  return out.str();
}

}  // namespace vw::harness
