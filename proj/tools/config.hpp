#pragma once

#include <string>
#include <vector>

#include "alpha_expr.hpp"
#include "pinball/types.hpp"

namespace pinball::cli {

enum class ExperimentKind {
    kSimulate,
    kReturnMap,
    kIntervals,
    kRenormCheck,
    kEscape,
    kKesten,
    kFigure1,
};

const char* experiment_name(ExperimentKind k);

/// Fully validated run description.  Every numeric field has been checked
/// against the module preconditions before run_experiment starts.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kSimulate;

    AlphaSpec alpha;
    double z = -1.0;
    double circle_len = 2.0;
    SignVariant variant = SignVariant::kPinballProofs;
    SingularPolicy singular = SingularPolicy::kHalt;
    NumericPolicy policy = NumericPolicy::kCompensatedDouble;
    bool policy_given = false;

    // simulate / figure1
    double phi0 = 0.01;
    double i0 = 50.0;
    long long steps = 1000000;
    long long decimation = 100;

    // return-map / intervals / renorm-check
    std::vector<long long> actions;
    long long seeds = 10000;
    long long grid = 100000;
    unsigned long long rng_seed = 0x5eed5eed5eedULL;

    // escape
    int m = 1;
    long long n0 = 1000;
    long long returns = 10000;
    bool require_monotone = false;

    // kesten
    double x0 = 0.1;
    double y0 = 0.0;
    long long period_grid = 0;  // 0: skip the period scan

    std::string out_dir;

    MapParams map_params() const;
};

/// Thrown when --help is requested; carries the help text.
struct HelpRequested {
    std::string text;
};

/// Parse command-line arguments (without the program name).  Flag values
/// override config-file values.  Throws UsageError on any problem, naming the
/// offending key.
ExperimentConfig parse_config(const std::vector<std::string>& args);

}  // namespace pinball::cli
