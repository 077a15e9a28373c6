#include "config.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "pinball/renorm.hpp"
#include "pinball/return_map.hpp"

namespace pinball::cli {

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::kSimulate: return "simulate";
        case ExperimentKind::kReturnMap: return "return-map";
        case ExperimentKind::kIntervals: return "intervals";
        case ExperimentKind::kRenormCheck: return "renorm-check";
        case ExperimentKind::kEscape: return "escape";
        case ExperimentKind::kKesten: return "kesten";
        case ExperimentKind::kFigure1: return "figure1";
    }
    return "?";
}

MapParams ExperimentConfig::map_params() const {
    MapParams p;
    p.alpha = alpha.value;
    p.z = z;
    p.circle_len = circle_len;
    p.sign_variant = variant;
    p.singular_policy = singular;
    p.numeric_policy = policy;
    p.exact_mu = alpha.exact_mu;
    return p;
}

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("PINBALL_OUT_DIR")) return env;
    return "pinball_out";
}

struct RawOptions {
    std::string alpha;
    std::string variant = "proofs";
    std::string singular = "halt";
    std::string policy;
    std::string config_file;
    std::vector<long long> actions;
};

void add_common(CLI::App* sub, ExperimentConfig& cfg, RawOptions& raw) {
    sub->add_option("--config", raw.config_file, "flat key=value config file; flags override");
    sub->add_option("--out-dir", cfg.out_dir, "output directory (env PINBALL_OUT_DIR)");
    sub->add_option("--policy", raw.policy, "double | compensated | dd");
    sub->add_option("--singular", raw.singular, "halt | plus | minus");
}

// Flat key=value lines ('#' comments); returned as option tokens to splice in
// right after the subcommand name, so later command-line flags take priority.
std::vector<std::string> load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot open '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip_ws = [](std::string s) {
            size_t a = 0, b = s.size();
            while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
            while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
            return s.substr(a, b - a);
        };
        const std::string t = strip_ws(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("--config: line " + std::to_string(lineno) +
                             " is not key=value: '" + t + "'");
        const std::string key = strip_ws(t.substr(0, eq));
        const std::string value = strip_ws(t.substr(eq + 1));
        if (key.empty())
            throw UsageError("--config: empty key on line " + std::to_string(lineno));
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

void finish_common(const CLI::App* sub, ExperimentConfig& cfg, const RawOptions& raw,
                   NumericPolicy default_policy) {
    if (!raw.alpha.empty()) cfg.alpha = parse_alpha(raw.alpha);

    static const std::map<std::string, SingularPolicy> singular_names{
        {"halt", SingularPolicy::kHalt},
        {"plus", SingularPolicy::kTreatAsPlus},
        {"minus", SingularPolicy::kTreatAsMinus}};
    auto si = singular_names.find(raw.singular);
    if (si == singular_names.end())
        throw UsageError("--singular: expected halt|plus|minus, got '" + raw.singular + "'");
    cfg.singular = si->second;

    if (raw.policy.empty()) {
        cfg.policy = default_policy;
    } else {
        cfg.policy_given = true;
        static const std::map<std::string, NumericPolicy> policy_names{
            {"double", NumericPolicy::kDouble},
            {"compensated", NumericPolicy::kCompensatedDouble},
            {"dd", NumericPolicy::kDoubleDouble}};
        auto pi = policy_names.find(raw.policy);
        if (pi == policy_names.end())
            throw UsageError("--policy: expected double|compensated|dd, got '" + raw.policy + "'");
        cfg.policy = pi->second;
    }

    static const std::map<std::string, SignVariant> variant_names{
        {"azhalf", SignVariant::kAzHalf}, {"proofs", SignVariant::kPinballProofs}};
    auto vi = variant_names.find(raw.variant);
    if (vi == variant_names.end())
        throw UsageError("--variant: expected azhalf|proofs, got '" + raw.variant + "'");
    cfg.variant = vi->second;

    if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
    (void)sub;
}

void validate_actions(const ExperimentConfig& cfg, const char* key) {
    if (cfg.actions.empty()) throw UsageError(std::string(key) + ": at least one action level required");
    const double imin = min_return_action(cfg.map_params());
    for (long long a : cfg.actions)
        if (static_cast<double>(a) < imin)
            throw UsageError(std::string(key) + ": level " + std::to_string(a) +
                             " is below the analysis threshold " + std::to_string(imin));
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"discontinuous twist-map laboratory"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    RawOptions raw;

    auto* simulate = app.add_subcommand("simulate", "iterate one orbit and record the trace");
    simulate->add_option("--alpha", raw.alpha, "twist amplitude (decimal, p/q, 1/ln(x))");
    simulate->add_option("--z", cfg.z, "twist exponent");
    simulate->add_option("--circle-len", cfg.circle_len, "base circle length, 1 or 2");
    simulate->add_option("--variant", raw.variant, "azhalf | proofs");
    simulate->add_option("--phi0", cfg.phi0, "initial angle");
    simulate->add_option("--i0", cfg.i0, "initial action");
    simulate->add_option("--steps", cfg.steps, "iterations");
    simulate->add_option("--decimation", cfg.decimation, "record every k-th state");
    add_common(simulate, cfg, raw);

    auto* retmap = app.add_subcommand("return-map", "bounded-increment check over random seeds");
    retmap->add_option("--alpha", raw.alpha, "twist amplitude");
    retmap->add_option("--I", cfg.actions, "action levels")->delimiter(',');
    retmap->add_option("--seeds", cfg.seeds, "random seeds per level");
    retmap->add_option("--rng-seed", cfg.rng_seed, "sampling seed");
    add_common(retmap, cfg, raw);

    auto* intervals = app.add_subcommand("intervals", "fiber decomposition, analytic vs brute force");
    intervals->add_option("--alpha", raw.alpha, "twist amplitude");
    intervals->add_option("--I", cfg.actions, "action levels")->delimiter(',');
    intervals->add_option("--grid", cfg.grid, "fiber scan resolution");
    add_common(intervals, cfg, raw);

    auto* renorm = app.add_subcommand("renorm-check", "case-prediction error decay in the action");
    renorm->add_option("--alpha", raw.alpha, "twist amplitude, mu = exp(1/alpha) in (1,3)");
    renorm->add_option("--I", cfg.actions, "action levels")->delimiter(',');
    renorm->add_option("--grid", cfg.grid, "fiber points per level");
    add_common(renorm, cfg, raw);

    auto* escape = app.add_subcommand("escape", "resonant uphill orbit at alpha = 1/ln(2m)");
    escape->add_option("--m", cfg.m, "mu = 2m");
    escape->add_option("--N0", cfg.n0, "starting action");
    escape->add_option("--returns", cfg.returns, "first returns to follow");
    escape->add_flag("--require-monotone", cfg.require_monotone,
                     "assert that every return gains action");
    add_common(escape, cfg, raw);

    auto* kesten = app.add_subcommand("kesten", "zero-twist skew product discrepancy");
    kesten->add_option("--alpha", raw.alpha, "rotation number (p/q enables exact arithmetic)");
    kesten->add_option("--x0", cfg.x0, "initial angle");
    kesten->add_option("--y0", cfg.y0, "initial level");
    kesten->add_option("--steps", cfg.steps, "iterations");
    kesten->add_option("--decimation", cfg.decimation, "record every k-th y");
    kesten->add_option("--period-grid", cfg.period_grid,
                       "also assert exact period 2 on this grid (rational alpha only)");
    add_common(kesten, cfg, raw);

    auto* figure1 = app.add_subcommand("figure1", "long pinball trace and its return fiber");
    figure1->add_option("--alpha", raw.alpha, "twist amplitude (default 1)");
    figure1->add_option("--steps", cfg.steps, "iterations");
    figure1->add_option("--decimation", cfg.decimation, "trace decimation");
    add_common(figure1, cfg, raw);

    // later occurrences win, so config-file tokens spliced in ahead of the
    // user's flags are overridden by them
    for (CLI::App* sub : app.get_subcommands({}))
        for (CLI::Option* opt : sub->get_options())
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<std::string> tokens = args;
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i] == "--config") {
            // command-line keys shadow their config-file counterparts entirely
            // (list options would otherwise concatenate)
            std::set<std::string> user_keys;
            for (const auto& t : tokens)
                if (t.rfind("--", 0) == 0) user_keys.insert(t.substr(0, t.find('=')));
            const std::vector<std::string> file_tokens = load_flat_config(tokens[i + 1]);
            std::vector<std::string> kept;
            for (size_t j = 0; j + 1 < file_tokens.size(); j += 2) {
                if (user_keys.count(file_tokens[j])) continue;
                kept.push_back(file_tokens[j]);
                kept.push_back(file_tokens[j + 1]);
            }
            // insert right after the subcommand name (the first bare token)
            size_t at = 1;
            for (size_t j = 0; j < tokens.size(); ++j)
                if (!tokens[j].empty() && tokens[j][0] != '-') {
                    at = j + 1;
                    break;
                }
            tokens.insert(tokens.begin() + static_cast<long>(at), kept.begin(), kept.end());
            break;
        }
    }

    std::vector<const char*> argv;
    argv.push_back("pinball");
    for (const auto& a : tokens) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (app.get_subcommands().empty()) {
            msg += "\nexperiments: simulate return-map intervals renorm-check escape kesten figure1";
        }
        throw UsageError(msg);
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    if (name == "simulate") {
        cfg.kind = ExperimentKind::kSimulate;
        if (raw.alpha.empty()) raw.alpha = "1";
        finish_common(sub, cfg, raw, NumericPolicy::kCompensatedDouble);
        if (cfg.steps < 0) throw UsageError("--steps: must be >= 0");
        if (cfg.decimation < 1) throw UsageError("--decimation: must be >= 1");
        if (cfg.circle_len != 1.0 && cfg.circle_len != 2.0)
            throw UsageError("--circle-len: must be 1 or 2");
    } else if (name == "return-map") {
        cfg.kind = ExperimentKind::kReturnMap;
        if (raw.alpha.empty()) raw.alpha = "1/ln(2)";
        if (cfg.actions.empty()) cfg.actions = {101};
        finish_common(sub, cfg, raw, NumericPolicy::kCompensatedDouble);
        cfg.z = -1.0;
        cfg.circle_len = 2.0;
        if (cfg.seeds < 1) throw UsageError("--seeds: must be >= 1");
        validate_actions(cfg, "--I");
    } else if (name == "intervals") {
        cfg.kind = ExperimentKind::kIntervals;
        if (raw.alpha.empty()) raw.alpha = "1/ln(2)";
        if (cfg.actions.empty()) cfg.actions = {101};
        finish_common(sub, cfg, raw, NumericPolicy::kCompensatedDouble);
        cfg.z = -1.0;
        cfg.circle_len = 2.0;
        if (cfg.grid < 1000) throw UsageError("--grid: must be >= 1000");
        validate_actions(cfg, "--I");
    } else if (name == "renorm-check") {
        cfg.kind = ExperimentKind::kRenormCheck;
        if (raw.alpha.empty()) raw.alpha = "1/ln(2)";
        if (cfg.actions.empty()) cfg.actions = {100, 200, 400, 800, 1600};
        if (cfg.grid == 100000) cfg.grid = 2000;  // experiment-specific default
        finish_common(sub, cfg, raw, NumericPolicy::kCompensatedDouble);
        cfg.z = -1.0;
        cfg.circle_len = 2.0;
        const double mu = cfg.map_params().mu();
        if (!(mu > 1.0 && mu < 3.0))
            throw UsageError("--alpha: renorm-check needs mu = exp(1/alpha) in (1,3); got mu = " +
                             std::to_string(mu));
        if (cfg.grid < 1) throw UsageError("--grid: must be >= 1");
        validate_actions(cfg, "--I");
    } else if (name == "escape") {
        cfg.kind = ExperimentKind::kEscape;
        if (cfg.m < 1) throw UsageError("--m: must be >= 1");
        if (cfg.n0 < 100) throw UsageError("--N0: must be >= 100");
        if (cfg.returns < 0) throw UsageError("--returns: must be >= 0");
        char buf[32];
        std::snprintf(buf, sizeof buf, "1/ln(%d)", 2 * cfg.m);
        raw.alpha = buf;
        finish_common(sub, cfg, raw, NumericPolicy::kDoubleDouble);
        cfg.z = -1.0;
        cfg.circle_len = 2.0;
    } else if (name == "kesten") {
        cfg.kind = ExperimentKind::kKesten;
        if (raw.alpha.empty()) raw.alpha = "1/2";
        finish_common(sub, cfg, raw, NumericPolicy::kCompensatedDouble);
        cfg.z = 0.0;
        cfg.circle_len = 1.0;
        cfg.variant = SignVariant::kAzHalf;
        if (cfg.steps < 0) throw UsageError("--steps: must be >= 0");
        if (cfg.decimation < 1) throw UsageError("--decimation: must be >= 1");
        if (cfg.period_grid != 0) {
            if (cfg.period_grid < 2) throw UsageError("--period-grid: must be >= 2");
            if (!cfg.alpha.rational)
                throw UsageError("--period-grid: needs a rational alpha (p/q)");
        }
    } else if (name == "figure1") {
        cfg.kind = ExperimentKind::kFigure1;
        if (raw.alpha.empty()) raw.alpha = "1";
        raw.singular = sub->count("--singular") ? raw.singular : "plus";
        finish_common(sub, cfg, raw, NumericPolicy::kCompensatedDouble);
        cfg.z = -1.0;
        cfg.circle_len = 2.0;
        cfg.phi0 = 0.01;
        cfg.i0 = 50.0;
        if (cfg.steps < 1) throw UsageError("--steps: must be >= 1");
        if (cfg.decimation < 1) throw UsageError("--decimation: must be >= 1");
    }
    return cfg;
}

}  // namespace pinball::cli
