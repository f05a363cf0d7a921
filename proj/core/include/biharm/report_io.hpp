#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "biharm/blowup_analysis.hpp"
#include "biharm/branch_continuation.hpp"
#include "biharm/config.hpp"
#include "biharm/counterexample.hpp"
#include "biharm/green_kernels.hpp"
#include "biharm/pohozaev.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm {

/// 17 significant digits, '.' decimal, round-trip exact.
std::string format_double(double v);

/// Writes to `<path>.tmp` and renames over `path`. Parent dirs are created.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Data payloads. All of them are pure functions of their inputs, so reruns
// are byte-identical; wall-clock data only ever goes into run.json.

std::string solution_csv(const RadialSolution& sol);
std::string solution_json(const RadialSolution& sol, const RunConfig& cfg);
std::string branch_csv(const SolutionBranch& branch);
std::string branch_json(const SolutionBranch& branch, const BranchEnergy& energy, const RunConfig& cfg);
std::string blowup_json(const BlowupReport& report, const GradientLpCheck* gradient, const RunConfig& cfg);
std::string pohozaev_json(const std::vector<std::pair<std::string, PohozaevReport>>& reports,
                          const RunConfig& cfg);
std::string green_samples_csv(const std::vector<GreenSample>& samples);
std::string green_json(const TwoSidedReport& two_sided, const GradientEstimateReport& gradient,
                       const RunConfig& cfg);
std::string counterexample_csv(const CounterexampleParams& p, const std::vector<double>& ell_grid);
std::string counterexample_json(const CounterexampleParams& p, const CounterexampleCertificate& cert,
                                const RunConfig& cfg);

/// "blowup_25.json"; integral M drop the fraction, others keep it ("blowup_22.5.json").
std::string blowup_file_name(double M);

struct ManifestEntry {
  std::string file;
  std::size_t bytes = 0;
};

/// run.json: command, resolved config, library versions, files and timings.
std::string run_manifest_json(const std::string& command, const RunConfig& cfg,
                              const std::vector<ManifestEntry>& files, double wall_seconds,
                              int exit_code);

}  // namespace biharm
