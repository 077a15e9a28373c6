#include "report.hpp"

#include <filesystem>
#include <fstream>

namespace pinball::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::vector<std::string> write_outputs(const RunReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    for (const auto& [name, table] : report.tables) {
        const fs::path p = fs::path(out_dir) / (name + ".csv");
        write_file(p, table.to_string());
        written.push_back(p.string());
    }
    for (const auto& [name, plot] : report.plots) {
        const fs::path p = fs::path(out_dir) / (name + ".svg");
        write_file(p, plot.to_string());
        written.push_back(p.string());
    }

    nlohmann::ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["experiment"] = experiment_name(report.config.kind);
    j["config"] = report.config_echo;
    j["results"] = report.results;
    auto verdicts = nlohmann::ordered_json::array();
    for (const auto& v : report.verdicts)
        verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["verdicts"] = verdicts;
    j["policy_escalations"] = report.escalations;

    const fs::path p = fs::path(out_dir) / "report.json";
    write_file(p, j.dump(2) + "\n");
    written.push_back(p.string());
    return written;
}

}  // namespace pinball::cli
