#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "svg.hpp"

namespace pinball::cli {

inline constexpr const char* kToolName = "pinball";
inline constexpr const char* kToolVersion = "1.0.0";

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Everything one experiment produced.  Wall-clock time is console-only: the
/// emitted files must be byte-identical across reruns of the same config.
struct RunReport {
    ExperimentConfig config;
    nlohmann::ordered_json config_echo;
    nlohmann::ordered_json results;
    std::vector<Verdict> verdicts;
    std::vector<std::string> escalations;
    std::vector<std::pair<std::string, CsvTable>> tables;   // basename -> table
    std::vector<std::pair<std::string, ScatterPlot>> plots; // basename -> plot
    double wall_ms = 0.0;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
};

/// Write data tables, plots, and report.json under out_dir; returns the paths.
std::vector<std::string> write_outputs(const RunReport& report, const std::string& out_dir);

}  // namespace pinball::cli
