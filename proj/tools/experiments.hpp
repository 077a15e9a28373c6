#pragma once

#include "report.hpp"

namespace pinball::cli {

/// Execute the configured experiment.  Deterministic: identical configs give
/// byte-identical tables and plots.
RunReport run_experiment(const ExperimentConfig& cfg);

/// Full pipeline: parse, run, write outputs, print verdicts and timing.
/// Exit status: 0 all assertions passed, 1 an assertion failed, 2 usage or
/// config error, 3 runtime error.
int run_cli(int argc, const char* const* argv);

}  // namespace pinball::cli
