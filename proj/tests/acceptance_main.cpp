// Runs every acceptance criterion once (plus the determinism rerun) and
// prints one line per criterion. Exit status 1 if any criterion fails.
#include <cstdio>

#include "biharm/acceptance.hpp"

int main() {
  biharm::AcceptanceOptions opt;
  opt.config = biharm::parse_config("", "<built-in defaults>");
  const auto run = biharm::run_acceptance(opt);
  int failed = 0;
  for (const auto& r : run.results) {
    std::printf("%s  (%.2f s)\n", biharm::format_result_line(r).c_str(), r.seconds);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%zu/%zu acceptance criteria passed\n", run.results.size() - failed, run.results.size());
  return failed == 0 ? 0 : 1;
}
