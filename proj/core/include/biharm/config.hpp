#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biharm/nonlinearity.hpp"
#include "biharm/radial_grid.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm {

/// Parse or validation failure; `line` is 0 when the error is not tied to
/// a line (missing file, cross-key checks).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct NonlinearityConfig {
  std::string kind = "PureExp";
  double gamma = 1.0;
  double q = 0.0;
  double p = 2.0;
  double alpha = 0.5;
  double theta = 0.0;
  double scale = 1.0;
  std::string potential_kind = "constant";
  std::vector<double> potential_coeffs{1.0};

  [[nodiscard]] NonlinearitySpec build() const;
};

struct SolverSection {
  std::size_t n = 513;
  std::string grid = "graded";
  double stretch0 = 1.0;
  double stretch1 = 3.0;
  double width = 0.3;
  double newton_tol = 1e-10;
  int max_iters = 50;
  std::string damping = "halving";
  std::string bc = "dirichlet";
  double lambda = 1.0;

  [[nodiscard]] RadialGrid build_grid() const;
  [[nodiscard]] SolverConfig build_config() const;
  [[nodiscard]] BoundaryCondition boundary() const;
};

struct BranchSection {
  double M_start = 0.25;
  double M_end = 25.0;
  double dM = 0.25;
};

struct BlowupSection {
  std::vector<double> at_M{20.0, 22.5, 25.0};
  double R_max = 5.0;
  std::size_t samples = 501;
};

struct PohozaevSection {
  double y_offset = 0.0;
  double x0_offset = 0.0;
  double r_inner = 0.0;  // 0: whole ball only
};

struct GreenSection {
  std::size_t samples = 10000;
  double fd_step = 1e-4;
  std::uint64_t seed = 42;
};

struct CounterexampleSection {
  double alpha = 1.5;
  double ell_rho = 1000.0;
  double ell_max = 1e6;
  std::size_t grid_points = 2001;
};

struct OutputSection {
  std::filesystem::path dir = "out";
  bool csv = true;
  bool json = true;
};

struct RunConfig {
  std::string source;
  NonlinearityConfig nonlinearity;
  SolverSection solver;
  BranchSection branch;
  BlowupSection blowup;
  PohozaevSection pohozaev;
  GreenSection green;
  CounterexampleSection counterexample;
  OutputSection output;

  /// Every key with its resolved value, in section order, as text.
  [[nodiscard]] std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
  resolved() const;
};

/// Strict INI: `[section]`, `key = value`, `#` or `;` comments. Unknown
/// sections or keys, duplicates and malformed values are errors carrying the
/// line number. Missing keys keep their defaults.
RunConfig parse_config(const std::string& text, const std::string& source = "<string>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace biharm
