#include "biharm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace biharm {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt_double(v[i]);
  return out;
}

struct Parser {
  std::string source;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(source, line, msg); }

  double to_double(const std::string& v) const {
    double out = 0.0;
    const auto* b = v.data();
    const auto* e = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e || !std::isfinite(out)) fail(fmt::format("'{}' is not a finite number", v));
    return out;
  }

  long long to_int(const std::string& v) const {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail(fmt::format("'{}' is not an integer", v));
    return out;
  }

  std::size_t to_count(const std::string& v) const {
    const long long n = to_int(v);
    if (n <= 0) fail(fmt::format("'{}' must be a positive integer", v));
    return static_cast<std::size_t>(n);
  }

  std::vector<double> to_list(const std::string& v) const {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail("empty list element");
      out.push_back(to_double(item));
    }
    if (out.empty()) fail("empty list");
    return out;
  }

  std::string one_of(const std::string& v, std::initializer_list<const char*> allowed) const {
    for (const char* a : allowed) {
      if (v == a) return v;
    }
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    fail(fmt::format("'{}' is not one of {{{}}}", v, list));
  }
};

using Setter = std::function<void(RunConfig&, const Parser&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s = {
      {"nonlinearity",
       {
           {"kind", [](RunConfig& c, const Parser& p, const std::string& v) {
              c.nonlinearity.kind = p.one_of(v, {"PureExp", "ExpPoly", "PowerExp", "LogPowerExp", "Constant"});
            }},
           {"gamma", [](RunConfig& c, const Parser& p, const std::string& v) { c.nonlinearity.gamma = p.to_double(v); }},
           {"q", [](RunConfig& c, const Parser& p, const std::string& v) { c.nonlinearity.q = p.to_double(v); }},
           {"p", [](RunConfig& c, const Parser& p, const std::string& v) { c.nonlinearity.p = p.to_double(v); }},
           {"alpha", [](RunConfig& c, const Parser& p, const std::string& v) { c.nonlinearity.alpha = p.to_double(v); }},
           {"theta", [](RunConfig& c, const Parser& p, const std::string& v) { c.nonlinearity.theta = p.to_double(v); }},
           {"scale", [](RunConfig& c, const Parser& p, const std::string& v) { c.nonlinearity.scale = p.to_double(v); }},
           {"potential.kind", [](RunConfig& c, const Parser& p, const std::string& v) {
              c.nonlinearity.potential_kind = p.one_of(v, {"constant", "radial_polynomial"});
            }},
           {"potential.coeffs", [](RunConfig& c, const Parser& p, const std::string& v) {
              c.nonlinearity.potential_coeffs = p.to_list(v);
            }},
       }},
      {"solver",
       {
           {"n", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.n = p.to_count(v); }},
           {"grid", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.grid = p.one_of(v, {"uniform", "graded"}); }},
           {"stretch0", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.stretch0 = p.to_double(v); }},
           {"stretch1", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.stretch1 = p.to_double(v); }},
           {"width", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.width = p.to_double(v); }},
           {"newton_tol", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.newton_tol = p.to_double(v); }},
           {"max_iters", [](RunConfig& c, const Parser& p, const std::string& v) {
              c.solver.max_iters = static_cast<int>(p.to_count(v));
            }},
           {"damping", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.damping = p.one_of(v, {"none", "halving"}); }},
           {"bc", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.bc = p.one_of(v, {"dirichlet", "navier"}); }},
           {"lambda", [](RunConfig& c, const Parser& p, const std::string& v) { c.solver.lambda = p.to_double(v); }},
       }},
      {"branch",
       {
           {"M_start", [](RunConfig& c, const Parser& p, const std::string& v) { c.branch.M_start = p.to_double(v); }},
           {"M_end", [](RunConfig& c, const Parser& p, const std::string& v) { c.branch.M_end = p.to_double(v); }},
           {"dM", [](RunConfig& c, const Parser& p, const std::string& v) { c.branch.dM = p.to_double(v); }},
       }},
      {"blowup",
       {
           {"at_M", [](RunConfig& c, const Parser& p, const std::string& v) { c.blowup.at_M = p.to_list(v); }},
           {"R_max", [](RunConfig& c, const Parser& p, const std::string& v) { c.blowup.R_max = p.to_double(v); }},
           {"samples", [](RunConfig& c, const Parser& p, const std::string& v) { c.blowup.samples = p.to_count(v); }},
       }},
      {"pohozaev",
       {
           {"y_offset", [](RunConfig& c, const Parser& p, const std::string& v) { c.pohozaev.y_offset = p.to_double(v); }},
           {"x0_offset", [](RunConfig& c, const Parser& p, const std::string& v) { c.pohozaev.x0_offset = p.to_double(v); }},
           {"r_inner", [](RunConfig& c, const Parser& p, const std::string& v) { c.pohozaev.r_inner = p.to_double(v); }},
       }},
      {"green",
       {
           {"samples", [](RunConfig& c, const Parser& p, const std::string& v) { c.green.samples = p.to_count(v); }},
           {"fd_step", [](RunConfig& c, const Parser& p, const std::string& v) { c.green.fd_step = p.to_double(v); }},
           {"seed", [](RunConfig& c, const Parser& p, const std::string& v) {
              const long long s = p.to_int(v);
              if (s < 0) p.fail("seed must be >= 0");
              c.green.seed = static_cast<std::uint64_t>(s);
            }},
       }},
      {"counterexample",
       {
           {"alpha", [](RunConfig& c, const Parser& p, const std::string& v) { c.counterexample.alpha = p.to_double(v); }},
           {"ell_rho", [](RunConfig& c, const Parser& p, const std::string& v) { c.counterexample.ell_rho = p.to_double(v); }},
           {"ell_max", [](RunConfig& c, const Parser& p, const std::string& v) { c.counterexample.ell_max = p.to_double(v); }},
           {"grid_points", [](RunConfig& c, const Parser& p, const std::string& v) {
              c.counterexample.grid_points = p.to_count(v);
            }},
       }},
      {"output",
       {
           {"dir", [](RunConfig& c, const Parser& p, const std::string& v) {
              if (v.empty()) p.fail("output dir must not be empty");
              c.output.dir = v;
            }},
           {"formats", [](RunConfig& c, const Parser& p, const std::string& v) {
              c.output.csv = false;
              c.output.json = false;
              std::stringstream ss(v);
              std::string item;
              while (std::getline(ss, item, ',')) {
                item = p.one_of(trim(item), {"csv", "json"});
                (item == "csv" ? c.output.csv : c.output.json) = true;
              }
              if (!c.output.csv && !c.output.json) p.fail("formats must name csv and/or json");
            }},
       }},
  };
  return s;
}

// Cross-key checks that need the whole document.
void validate(const RunConfig& c) {
  auto fail = [&](const std::string& m) { throw ConfigError(c.source, 0, m); };
  try {
    (void)c.nonlinearity.build();
    (void)c.solver.build_grid();
    c.solver.build_config().validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
  if (!(c.solver.lambda >= 0.0)) fail("[solver] lambda must be >= 0");
  if (!(c.branch.dM > 0.0)) fail("[branch] dM must be > 0");
  if (!(c.branch.M_start <= c.branch.M_end)) {
    fail(fmt::format("[branch] M_start = {} exceeds M_end = {}", c.branch.M_start, c.branch.M_end));
  }
  if (!(c.blowup.R_max > 0.0)) fail("[blowup] R_max must be > 0");
  if (c.blowup.samples < 2) fail("[blowup] samples must be >= 2");
  if (!(c.green.fd_step > 0.0 && c.green.fd_step <= 1e-3)) fail("[green] fd_step must lie in (0, 1e-3]");
  if (c.green.samples < 1000) fail("[green] samples must be >= 1000");
  if (!(c.counterexample.alpha > 1.0 && c.counterexample.alpha < 2.0)) fail("[counterexample] alpha must lie in (1, 2)");
  if (!(c.counterexample.ell_rho > 1.0 && c.counterexample.ell_max > c.counterexample.ell_rho)) {
    fail("[counterexample] need 1 < ell_rho < ell_max");
  }
  if (c.counterexample.grid_points < 2) fail("[counterexample] grid_points must be >= 2");
  if (c.pohozaev.r_inner < 0.0) fail("[pohozaev] r_inner must be >= 0");
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", source, line, message)
                                  : fmt::format("{}: {}", source, message)),
      line_(line) {}

NonlinearitySpec NonlinearityConfig::build() const {
  Potential pot = potential_kind == "constant" ? Potential::constant(potential_coeffs.at(0))
                                               : Potential::radial_polynomial(potential_coeffs);
  NonlinearityParams params;
  params.gamma = gamma;
  params.q = q;
  params.p = p;
  params.alpha = alpha;
  params.theta = theta;
  params.scale = scale;
  return NonlinearitySpec(nonlinearity_kind_from_string(kind), params, std::move(pot));
}

RadialGrid SolverSection::build_grid() const {
  return grid == "uniform" ? RadialGrid::uniform(n) : RadialGrid::graded(n, stretch0, stretch1, width);
}

SolverConfig SolverSection::build_config() const {
  SolverConfig c;
  c.newton_tol = newton_tol;
  c.max_iters = max_iters;
  c.damping = damping_from_string(damping);
  return c;
}

BoundaryCondition SolverSection::boundary() const { return boundary_condition_from_string(bc); }

std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> RunConfig::resolved() const {
  const auto& n = nonlinearity;
  std::string formats;
  if (output.csv) formats = "csv";
  if (output.json) formats += formats.empty() ? "json" : ", json";
  return {
      {"nonlinearity",
       {{"kind", n.kind},
        {"gamma", fmt_double(n.gamma)},
        {"q", fmt_double(n.q)},
        {"p", fmt_double(n.p)},
        {"alpha", fmt_double(n.alpha)},
        {"theta", fmt_double(n.theta)},
        {"scale", fmt_double(n.scale)},
        {"potential.kind", n.potential_kind},
        {"potential.coeffs", join(n.potential_coeffs)}}},
      {"solver",
       {{"n", std::to_string(solver.n)},
        {"grid", solver.grid},
        {"stretch0", fmt_double(solver.stretch0)},
        {"stretch1", fmt_double(solver.stretch1)},
        {"width", fmt_double(solver.width)},
        {"newton_tol", fmt_double(solver.newton_tol)},
        {"max_iters", std::to_string(solver.max_iters)},
        {"damping", solver.damping},
        {"bc", solver.bc},
        {"lambda", fmt_double(solver.lambda)}}},
      {"branch",
       {{"M_start", fmt_double(branch.M_start)}, {"M_end", fmt_double(branch.M_end)}, {"dM", fmt_double(branch.dM)}}},
      {"blowup",
       {{"at_M", join(blowup.at_M)}, {"R_max", fmt_double(blowup.R_max)}, {"samples", std::to_string(blowup.samples)}}},
      {"pohozaev",
       {{"y_offset", fmt_double(pohozaev.y_offset)},
        {"x0_offset", fmt_double(pohozaev.x0_offset)},
        {"r_inner", fmt_double(pohozaev.r_inner)}}},
      {"green",
       {{"samples", std::to_string(green.samples)},
        {"fd_step", fmt_double(green.fd_step)},
        {"seed", std::to_string(green.seed)}}},
      {"counterexample",
       {{"alpha", fmt_double(counterexample.alpha)},
        {"ell_rho", fmt_double(counterexample.ell_rho)},
        {"ell_max", fmt_double(counterexample.ell_max)},
        {"grid_points", std::to_string(counterexample.grid_points)}}},
      {"output", {{"dir", output.dir.generic_string()}, {"formats", formats}}},
  };
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  Parser p{source, 0};
  const auto& sch = schema();
  const std::map<std::string, Setter>* section = nullptr;
  std::string section_name;
  std::map<std::string, int> seen_sections;
  std::map<std::string, int> seen_keys;
  std::stringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') p.fail(fmt::format("malformed section header '{}'", s));
      section_name = trim(std::string_view(s).substr(1, s.size() - 2));
      auto it = sch.find(section_name);
      if (it == sch.end()) p.fail(fmt::format("unknown section [{}]", section_name));
      if (auto prev = seen_sections.find(section_name); prev != seen_sections.end()) {
        p.fail(fmt::format("section [{}] repeated (first at line {})", section_name, prev->second));
      }
      seen_sections[section_name] = p.line;
      section = &it->second;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) p.fail(fmt::format("expected 'key = value', got '{}'", s));
    const std::string key = trim(std::string_view(s).substr(0, eq));
    std::string value = std::string(std::string_view(s).substr(eq + 1));
    if (const auto hash = value.find_first_of("#;"); hash != std::string::npos) value.resize(hash);
    value = trim(value);
    if (!section) p.fail(fmt::format("key '{}' outside of any section", key));
    auto kit = section->find(key);
    if (kit == section->end()) p.fail(fmt::format("unknown key '{}' in [{}]", key, section_name));
    const std::string full = section_name + "." + key;
    if (auto prev = seen_keys.find(full); prev != seen_keys.end()) {
      p.fail(fmt::format("duplicate key '{}' in [{}] (first at line {})", key, section_name, prev->second));
    }
    seen_keys[full] = p.line;
    if (value.empty()) p.fail(fmt::format("empty value for '{}'", key));
    kit->second(cfg, p, value);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace biharm
