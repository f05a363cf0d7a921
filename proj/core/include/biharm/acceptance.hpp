#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "biharm/config.hpp"

namespace biharm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Deterministic: measured numbers only, never timings.
  std::string detail;
  double seconds = 0.0;
};

/// File name -> byte payload, as `verify-all` would write it.
using Payloads = std::map<std::string, std::string>;

struct AcceptanceOptions {
  RunConfig config;  // embedded in payloads; criteria use their own fixed parameters
  std::uint64_t seed = 42;
  /// Criterion 11 reruns 1-10 and compares payloads byte for byte.
  bool determinism = true;
};

struct AcceptanceRun {
  std::vector<CriterionResult> results;
  Payloads payloads;
  [[nodiscard]] bool all_passed() const;
};

CriterionResult criterion_clamped_plate(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_green_representation(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_kernel_properties(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_bubble_residual(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_energy_quantization(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_polyharmonic_constants(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_pohozaev_balance(const AcceptanceOptions& opt, Payloads& out);
/// 8 and 9 share one branch trace.
std::vector<CriterionResult> criteria_blowup(const AcceptanceOptions& opt, Payloads& out);
CriterionResult criterion_counterexample(const AcceptanceOptions& opt, Payloads& out);

/// Criteria 1-10 in order (no determinism rerun).
AcceptanceRun run_core_criteria(const AcceptanceOptions& opt);
/// Full suite, 1-11. Payloads are those of the first pass.
AcceptanceRun run_acceptance(const AcceptanceOptions& opt);

/// "PASS  7 pohozaev_balance: ..." (no timing).
std::string format_result_line(const CriterionResult& r);
/// Results without timings, so it is itself a deterministic payload.
std::string acceptance_json(const std::vector<CriterionResult>& results, const RunConfig& cfg);

}  // namespace biharm
