#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biharm/acceptance.hpp"
#include "biharm/config.hpp"
#include "biharm/report_io.hpp"
#include "doctest.h"

using namespace biharm;

namespace {

int error_line(const std::string& text) {
  try {
    (void)parse_config(text, "t.ini");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("defaults and overrides") {
  const auto d = parse_config("");
  CHECK(d.solver.n == 513);
  CHECK(d.green.seed == 42);
  const auto c = parse_config(
      "# comment\n[solver]\nn = 1025 ; trailing\nbc = navier\n\n[nonlinearity]\nkind = ExpPoly\ngamma = 2\nq = 1\n"
      "potential.kind = radial_polynomial\npotential.coeffs = 1, 0, -0.5\n[output]\nformats = csv\n");
  CHECK(c.solver.n == 1025);
  CHECK(c.solver.boundary() == BoundaryCondition::Navier);
  CHECK(c.nonlinearity.potential_coeffs == std::vector<double>{1.0, 0.0, -0.5});
  CHECK(c.nonlinearity.build().beta() == 2.0);
  CHECK(c.output.csv);
  CHECK_FALSE(c.output.json);
}

TEST_CASE("strict parsing reports line numbers") {
  CHECK(error_line("[solver]\nn = 513\nbogus = 1\n") == 3);
  CHECK(error_line("[solver]\nn = 513\nn = 257\n") == 3);
  CHECK(error_line("[nowhere]\n") == 1);
  CHECK(error_line("n = 5\n") == 1);
  CHECK(error_line("[solver]\n\nn = five\n") == 3);
  CHECK(error_line("[solver]\nnewton_tol = 1e-10x\n") == 2);
  CHECK(error_line("[solver]\ngrid = spiral\n") == 2);
  CHECK(error_line("[solver]\nn\n") == 2);
  CHECK(error_line("[solver\n") == 1);
  CHECK(error_line("[solver]\n[branch]\n[solver]\n") == 3);
  CHECK(error_line("[output]\nformats = xml\n") == 2);
  // cross-key checks are not tied to a line
  CHECK(error_line("[branch]\nM_start = 5\nM_end = 1\n") == 0);
  CHECK(error_line("[solver]\nn = 7\n") == 0);
  CHECK_THROWS_WITH_AS(parse_config("[branch]\nM_start = 5\nM_end = 1\n", "x.ini"),
                       doctest::Contains("exceeds M_end"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.ini"), ConfigError);
}

TEST_CASE("resolved config lists every key") {
  const auto c = parse_config("[green]\nseed = 7\n");
  std::size_t keys = 0;
  bool seed_seen = false;
  for (const auto& [section, kv] : c.resolved()) {
    keys += kv.size();
    for (const auto& [k, v] : kv) {
      if (section == "green" && k == "seed") seed_seen = v == "7";
    }
  }
  CHECK(seed_seen);
  CHECK(keys == 37);
  // resolved values parse back to the same configuration
  std::string text;
  for (const auto& [section, kv] : c.resolved()) {
    text += "[" + section + "]\n";
    for (const auto& [k, v] : kv) text += k + " = " + v + "\n";
  }
  const auto again = parse_config(text);
  CHECK(again.resolved() == c.resolved());
}

TEST_CASE("shipped configs parse") {
  for (const char* name : {"default.ini", "clamped_plate.ini"}) {
    const auto path = std::filesystem::path(BIHARM_CONFIG_DIR) / name;
    CHECK_NOTHROW((void)load_config(path));
  }
}

TEST_CASE("17 significant digits round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 631.65468557208933}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / "biharm_atomic_test";
  std::filesystem::remove_all(dir);
  const auto f = dir / "sub" / "a.csv";
  write_file_atomic(f, "x\n1\n");
  CHECK(read(f) == "x\n1\n");
  write_file_atomic(f, "y\n");
  CHECK(read(f) == "y\n");
  CHECK_FALSE(std::filesystem::exists(dir / "sub" / "a.csv.tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("payload formats") {
  const auto s = solve(NonlinearitySpec::constant(1.0), 192.0, BoundaryCondition::Dirichlet, RadialGrid::uniform(33));
  const auto csv = solution_csv(s);
  CHECK(csv.rfind("r,u,du,lap_u,dlap_u\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 34);
  CHECK(csv == solution_csv(s));
  SolutionBranch b;
  CHECK(branch_csv(b) == "M,lambda,energy,mu,fold\n");
  CHECK(blowup_file_name(25.0) == "blowup_25.json");
  CHECK(blowup_file_name(22.5) == "blowup_22.5.json");
  const auto cfg = parse_config("");
  const auto j = solution_json(s, cfg);
  CHECK(j.find("\"config\"") != std::string::npos);
  CHECK(j.find("\"newton_tol\"") != std::string::npos);
  const auto m = run_manifest_json("solve", cfg, {{"solution.csv", csv.size()}}, 0.5, 0);
  CHECK(m.find("wall_seconds") != std::string::npos);
  CHECK(j.find("wall_seconds") == std::string::npos);
}

TEST_CASE("acceptance result lines") {
  CriterionResult r{7, "pohozaev_balance", true, "residual 1e-7", 0.25};
  CHECK(format_result_line(r) == "PASS  7 pohozaev_balance: residual 1e-7");
  const auto j = acceptance_json({r}, parse_config(""));
  CHECK(j.find("\"all_passed\": true") != std::string::npos);
  CHECK(j.find("0.25") == std::string::npos);
}
