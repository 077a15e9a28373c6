#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "pinball/escape.hpp"
#include "pinball/kesten.hpp"
#include "pinball/maps.hpp"
#include "pinball/renorm.hpp"
#include "pinball/return_map.hpp"

namespace pinball::cli {

namespace {

const char* variant_name(SignVariant v) {
    return v == SignVariant::kAzHalf ? "azhalf" : "proofs";
}
const char* singular_name(SingularPolicy p) {
    switch (p) {
        case SingularPolicy::kHalt: return "halt";
        case SingularPolicy::kTreatAsPlus: return "plus";
        case SingularPolicy::kTreatAsMinus: return "minus";
    }
    return "?";
}
const char* policy_name(NumericPolicy p) {
    switch (p) {
        case NumericPolicy::kDouble: return "double";
        case NumericPolicy::kCompensatedDouble: return "compensated";
        case NumericPolicy::kDoubleDouble: return "dd";
    }
    return "?";
}
const char* stop_name(StopReason r) {
    switch (r) {
        case StopReason::kCompleted: return "completed";
        case StopReason::kSingularHalt: return "singular-halt";
        case StopReason::kDomainError: return "domain-error";
    }
    return "?";
}

nlohmann::ordered_json echo_config(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["experiment"] = experiment_name(cfg.kind);
    j["alpha"] = cfg.alpha.text;
    j["alpha_value"] = cfg.alpha.value;
    if (cfg.alpha.exact_mu) j["exact_mu"] = *cfg.alpha.exact_mu;
    j["z"] = cfg.z;
    j["circle_len"] = cfg.circle_len;
    j["variant"] = variant_name(cfg.variant);
    j["singular"] = singular_name(cfg.singular);
    j["policy"] = policy_name(cfg.policy);
    switch (cfg.kind) {
        case ExperimentKind::kSimulate:
        case ExperimentKind::kFigure1:
            j["phi0"] = cfg.phi0;
            j["i0"] = cfg.i0;
            j["steps"] = cfg.steps;
            j["decimation"] = cfg.decimation;
            break;
        case ExperimentKind::kReturnMap:
            j["I"] = cfg.actions;
            j["seeds"] = cfg.seeds;
            j["rng_seed"] = cfg.rng_seed;
            break;
        case ExperimentKind::kIntervals:
        case ExperimentKind::kRenormCheck:
            j["I"] = cfg.actions;
            j["grid"] = cfg.grid;
            break;
        case ExperimentKind::kEscape:
            j["m"] = cfg.m;
            j["N0"] = cfg.n0;
            j["returns"] = cfg.returns;
            j["require_monotone"] = cfg.require_monotone;
            break;
        case ExperimentKind::kKesten:
            j["x0"] = cfg.x0;
            j["y0"] = cfg.y0;
            j["steps"] = cfg.steps;
            j["decimation"] = cfg.decimation;
            j["period_grid"] = cfg.period_grid;
            break;
    }
    return j;
}

bool action_on_lattice(double action, double action0) {
    const double d = action - action0;
    return d == std::nearbyint(d);
}

// ---- simulate ---------------------------------------------------------

RunReport run_simulate(const ExperimentConfig& cfg) {
    RunReport rep;
    const MapParams params = cfg.map_params();
    const OrbitTrace tr = iterate(params, {cfg.phi0, cfg.i0}, cfg.steps, cfg.decimation);

    CsvTable table({"step", "angle", "action"});
    for (size_t i = 0; i < tr.states.size(); ++i) {
        const long long step = i == 0 ? 0 : static_cast<long long>(i) * cfg.decimation;
        table.row() << step << tr.states[i].angle << tr.states[i].action;
    }

    ScatterPlot plot;
    plot.title = "orbit trace";
    plot.xlabel = "angle";
    plot.ylabel = "action";
    auto& ser = plot.add_series("", "#1f6fb2");
    for (const auto& s : tr.states) {
        ser.x.push_back(s.angle);
        ser.y.push_back(s.action);
    }

    bool lattice = true, range = true;
    for (const auto& s : tr.states) {
        lattice = lattice && action_on_lattice(s.action, cfg.i0);
        range = range && s.angle >= 0.0 && s.angle < cfg.circle_len;
    }
    rep.verdicts.push_back({"action-lattice", lattice, "recorded actions on i0 + Z"});
    rep.verdicts.push_back({"angle-range", range, "recorded angles in [0, circle_len)"});

    rep.results["step_count"] = tr.step_count;
    rep.results["stop"] = stop_name(tr.stop);
    if (!tr.stop_detail.empty()) rep.results["stop_detail"] = tr.stop_detail;
    rep.results["action_min"] = tr.action_min;
    rep.results["action_max"] = tr.action_max;
    rep.results["singular_hits"] = tr.singular_hits.size();
    rep.tables.emplace_back("simulate_trace", std::move(table));
    rep.plots.emplace_back("simulate_trace", std::move(plot));
    return rep;
}

// ---- return-map --------------------------------------------------------

RunReport run_return_map(const ExperimentConfig& cfg) {
    RunReport rep;
    const MapParams params = cfg.map_params();

    CsvTable table({"alpha", "I", "seeds", "minus", "zero", "plus", "violations", "errors",
                    "max_total_steps"});
    for (size_t idx = 0; idx < cfg.actions.size(); ++idx) {
        const long long I = cfg.actions[idx];
        const double R = params.alpha / (static_cast<double>(I) - 1.0);
        std::mt19937_64 rng(cfg.rng_seed + 0x9e3779b97f4a7c15ULL * idx);
        long long minus = 0, zero = 0, plus = 0, violations = 0, errors = 0;
        long long max_steps = 0;
        for (long long s = 0; s < cfg.seeds; ++s) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            const double phi = R * u;
            if (!(phi > 0.0) || !(phi < R)) {
                ++errors;
                continue;
            }
            try {
                const ReturnEvent ev = first_return(params, {phi, static_cast<double>(I)});
                const double di = ev.action_out - ev.action_in;
                if (std::abs(di) > 1.0 + 1e-12) ++violations;
                if (di > 0.5) ++plus;
                else if (di < -0.5) ++minus;
                else ++zero;
                if (ev.total_steps > max_steps) max_steps = ev.total_steps;
            } catch (const MapError&) {
                ++errors;
            }
        }
        table.row() << params.alpha << I << cfg.seeds << minus << zero << plus << violations
                    << errors << max_steps;
        char detail[160];
        std::snprintf(detail, sizeof detail, "I=%lld: %lld seeds, %lld violations, %lld errors",
                      I, cfg.seeds, violations, errors);
        rep.verdicts.push_back(
            {"bounded-increment-I" + std::to_string(I), violations == 0 && errors == 0, detail});
    }
    rep.tables.emplace_back("return_map", std::move(table));
    return rep;
}

// ---- intervals ---------------------------------------------------------

RunReport run_intervals(const ExperimentConfig& cfg) {
    RunReport rep;
    const MapParams params = cfg.map_params();
    const double mu = params.mu();

    CsvTable table({"I", "alpha", "mu", "iplus_lo", "iplus_hi", "iminus_lo", "iminus_hi",
                    "bf_iplus_lo", "bf_iplus_hi", "bf_iminus_lo", "bf_iminus_hi", "delta1_0",
                    "delta2_0", "delta1_00", "delta2_00", "plus_cells", "minus_cells",
                    "plus_gap_cells", "minus_gap_cells", "unclassified", "cell_width",
                    "analytic_mismatch"});
    for (long long I : cfg.actions) {
        const IntervalReport r = classify_fiber(params, static_cast<double>(I), cfg.grid);
        table.row() << static_cast<double>(I) << r.alpha << r.mu << r.i_plus.lo << r.i_plus.hi
                    << r.i_minus.lo << r.i_minus.hi << r.bf_i_plus.lo << r.bf_i_plus.hi
                    << r.bf_i_minus.lo << r.bf_i_minus.hi << r.delta1_0 << r.delta2_0
                    << r.delta1_00 << r.delta2_00 << r.bf_plus_cells << r.bf_minus_cells
                    << r.bf_plus_gap_cells << r.bf_minus_gap_cells << r.unclassified_cells
                    << r.cell_width << r.analytic_mismatch;

        const std::string tag = "-I" + std::to_string(I);
        char detail[200];

        const bool single = r.bf_plus_gap_cells <= 2 && r.bf_minus_gap_cells <= 2;
        std::snprintf(detail, sizeof detail, "gap cells: plus %lld, minus %lld",
                      r.bf_plus_gap_cells, r.bf_minus_gap_cells);
        rep.verdicts.push_back({"single-interval" + tag, single, detail});

        const long long dm = r.bf_plus_cells - r.bf_minus_cells;
        std::snprintf(detail, sizeof detail, "plus %lld cells vs minus %lld cells (diff %+lld)",
                      r.bf_plus_cells, r.bf_minus_cells, dm);
        rep.verdicts.push_back({"equal-measure" + tag, std::llabs(dm) <= 2, detail});

        const double R = params.alpha / (static_cast<double>(I) - 1.0);
        const double half = r.cell_width / 2.0;
        const bool contain = r.bf_i_plus.lo + half > 0.0 &&
                             r.bf_i_plus.hi - half < params.alpha / (mu * (I - 1.0)) &&
                             r.bf_i_minus.lo + half > params.alpha * (1.0 - 1.0 / mu) / (I - 1.0) &&
                             r.bf_i_minus.hi - half < R;
        std::snprintf(detail, sizeof detail,
                      "plus centers in (0, R/mu), minus centers in (R(1-1/mu), R)");
        rep.verdicts.push_back({"containment" + tag, contain, detail});

        std::snprintf(detail, sizeof detail, "analytic vs brute-force endpoints within 2 cells");
        rep.verdicts.push_back({"analytic-endpoints" + tag, !r.analytic_mismatch, detail});
    }
    rep.tables.emplace_back("intervals", std::move(table));
    return rep;
}

// ---- renorm-check ------------------------------------------------------

RunReport run_renorm_check(const ExperimentConfig& cfg) {
    RunReport rep;
    const MapParams params = cfg.map_params();
    const RenormScan scan = renorm_error_scan(params, cfg.actions, cfg.grid);

    CsvTable table({"I", "max_abs_error", "err_plus", "err_minus", "err_zero_left",
                    "err_zero_middle", "err_zero_right", "pts_plus", "pts_minus",
                    "pts_zero_left", "pts_zero_middle", "pts_zero_right", "skipped"});
    ScatterPlot plot;
    plot.title = "case-prediction error vs action";
    plot.xlabel = "action";
    plot.ylabel = "max |error|";
    plot.log_x = plot.log_y = true;
    auto& ser = plot.add_series("max error", "#b2351f", 3.0);
    for (const auto& row : scan.rows) {
        table.row() << row.action << row.max_abs_error
                    << row.max_error_by_case[0] << row.max_error_by_case[1]
                    << row.max_error_by_case[3] << row.max_error_by_case[2]
                    << row.max_error_by_case[4]
                    << row.points_by_case[0] << row.points_by_case[1]
                    << row.points_by_case[3] << row.points_by_case[2]
                    << row.points_by_case[4] << row.skipped_points;
        ser.x.push_back(row.action);
        ser.y.push_back(row.max_abs_error);
    }
    rep.results["slope"] = scan.slope;
    rep.results["intercept"] = scan.intercept;

    char detail[120];
    std::snprintf(detail, sizeof detail, "log-log slope %.4f, required in [-1.5, -0.5]",
                  scan.slope);
    rep.verdicts.push_back(
        {"error-decay", scan.slope >= -1.5 && scan.slope <= -0.5, detail});
    rep.tables.emplace_back("renorm_errors", std::move(table));
    rep.plots.emplace_back("renorm_errors", std::move(plot));
    return rep;
}

// ---- escape ------------------------------------------------------------

RunReport run_escape_experiment(const ExperimentConfig& cfg) {
    RunReport rep;
    const EscapeSeed seed = make_seed(cfg.m, cfg.n0);

    const long long track_decim = std::max(1LL, cfg.returns / 20000);
    GrowthReport gr;
    if (cfg.policy_given) {
        gr = run_escape(seed, cfg.returns, cfg.policy, track_decim);
    } else {
        const EscalationReport esc = run_escape_escalating(seed, cfg.returns, track_decim);
        gr = esc.report;
        for (const auto& step : esc.ladder) {
            char line[96];
            std::snprintf(line, sizeof line, "%s: monotone prefix %lld of %lld",
                          policy_name(step.policy), step.prefix, cfg.returns);
            rep.escalations.emplace_back(line);
        }
    }

    CsvTable table({"return_index", "action", "phi_tilde"});
    for (const auto& tp : gr.phi_tilde_track)
        table.row() << tp.return_index << tp.action << tp.phi_tilde;

    ScatterPlot plot;
    plot.title = "rescaled angle along the escape orbit";
    plot.xlabel = "return index";
    plot.ylabel = "phi_tilde";
    auto& ser = plot.add_series("", "#1f6fb2", 1.6);
    for (const auto& tp : gr.phi_tilde_track) {
        ser.x.push_back(static_cast<double>(tp.return_index));
        ser.y.push_back(tp.phi_tilde);
    }

    rep.results["m"] = seed.m;
    rep.results["mu"] = seed.mu;
    rep.results["alpha"] = seed.alpha;
    rep.results["phi_tilde0"] = seed.phi_tilde0;
    rep.results["phi0"] = seed.phi0;
    rep.results["closed_form_seed"] = seed.closed_form;
    rep.results["policy"] = policy_name(gr.policy);
    rep.results["returns_completed"] = gr.returns_completed;
    rep.results["gains"] = gr.gains;
    rep.results["zeros"] = gr.zeros;
    rep.results["losses"] = gr.losses;
    rep.results["longest_monotone_prefix"] = gr.longest_monotone_prefix;
    rep.results["final_action"] = gr.final_action;
    rep.results["precision_warning"] = gr.precision_warning;
    if (!gr.stop_detail.empty()) rep.results["stop_detail"] = gr.stop_detail;

    char detail[160];
    const bool books = gr.final_action - static_cast<double>(seed.n0) ==
                       static_cast<double>(gr.gains - gr.losses);
    std::snprintf(detail, sizeof detail, "final %g - N0 %lld == gains %lld - losses %lld",
                  gr.final_action, seed.n0, gr.gains, gr.losses);
    rep.verdicts.push_back({"bookkeeping", books, detail});

    std::snprintf(detail, sizeof detail, "crossing certificate failures: %lld of %lld",
                  gr.certificate_failures, gr.certificate_checked);
    rep.verdicts.push_back({"crossing-certificate", gr.certificate_failures == 0, detail});

    if (cfg.require_monotone) {
        std::snprintf(detail, sizeof detail, "monotone prefix %lld of %lld returns",
                      gr.longest_monotone_prefix, cfg.returns);
        rep.verdicts.push_back(
            {"monotone-growth", gr.longest_monotone_prefix >= cfg.returns, detail});
    }
    rep.tables.emplace_back("escape_track", std::move(table));
    rep.plots.emplace_back("escape_track", std::move(plot));
    return rep;
}

// ---- kesten ------------------------------------------------------------

RunReport run_kesten(const ExperimentConfig& cfg) {
    RunReport rep;
    DiscrepancySeries series;
    if (cfg.alpha.rational)
        series = ek_orbit(*cfg.alpha.rational, cfg.x0, cfg.y0, cfg.steps, cfg.decimation,
                          cfg.singular);
    else
        series = ek_orbit(cfg.alpha.value, cfg.x0, cfg.y0, cfg.steps, cfg.decimation,
                          cfg.singular);

    CsvTable table({"step", "y"});
    ScatterPlot plot;
    plot.title = "discrepancy walk";
    plot.xlabel = "step";
    plot.ylabel = "y";
    auto& ser = plot.add_series("", "#1f6fb2", 1.2);
    for (const auto& [k, y] : series.y_values) {
        table.row() << k << y;
        ser.x.push_back(static_cast<double>(k));
        ser.y.push_back(y);
    }

    rep.results["steps_completed"] = series.steps;
    rep.results["y_min"] = series.y_min;
    rep.results["y_max"] = series.y_max;
    rep.results["zero_crossings"] = series.zero_crossings;
    rep.results["singular_hits"] = series.singular_hits;
    rep.results["halted"] = series.halted;

    if (cfg.period_grid > 0) {
        const PeriodScanResult ps = period_scan(*cfg.alpha.rational, cfg.period_grid);
        rep.results["period_scan"] = {{"grid", ps.grid},
                                      {"tested", ps.tested},
                                      {"singular_skipped", ps.singular_skipped},
                                      {"all_period_two", ps.all_period_two}};
        char detail[120];
        std::snprintf(detail, sizeof detail, "%lld of %lld grid points, %lld singular skips",
                      ps.tested, ps.grid, ps.singular_skipped);
        rep.verdicts.push_back({"period-two", ps.all_period_two, detail});
    }
    rep.tables.emplace_back("kesten_walk", std::move(table));
    rep.plots.emplace_back("kesten_walk", std::move(plot));
    return rep;
}

// ---- figure1 -----------------------------------------------------------

RunReport run_figure1(const ExperimentConfig& cfg) {
    RunReport rep;
    const MapParams params = cfg.map_params();

    const OrbitTrace tr = iterate(params, {cfg.phi0, cfg.i0}, cfg.steps, cfg.decimation);

    CsvTable trace_table({"step", "angle", "action"});
    ScatterPlot trace_plot;
    trace_plot.title = "pinball trace";
    trace_plot.xlabel = "angle";
    trace_plot.ylabel = "action";
    auto& tser = trace_plot.add_series("", "#1f6fb2", 1.0);
    for (size_t i = 0; i < tr.states.size(); ++i) {
        const long long step = i == 0 ? 0 : static_cast<long long>(i) * cfg.decimation;
        trace_table.row() << step << tr.states[i].angle << tr.states[i].action;
        tser.x.push_back(tr.states[i].angle);
        tser.y.push_back(tr.states[i].action);
    }

    // first-return fiber within the same step budget
    CsvTable return_table({"visit", "action", "phi_tilde_in", "phi_tilde_out", "delta_I"});
    ScatterPlot return_plot;
    return_plot.title = "first-return map on the fundamental domain";
    return_plot.xlabel = "phi_tilde in";
    return_plot.ylabel = "phi_tilde out";
    auto& rser = return_plot.add_series("", "#b2351f", 1.6);
    CylState s{cfg.phi0, cfg.i0};
    long long used = 0, visit = 0;
    std::string chain_stop;
    while (used < cfg.steps) {
        if (s.action < min_return_action(params)) {
            chain_stop = "action fell below the analysis threshold";
            break;
        }
        ReturnEvent ev;
        try {
            ev = first_return(params, s);
        } catch (const MapError& e) {
            chain_stop = e.what();
            break;
        }
        ++visit;
        used += ev.total_steps + 2;
        return_table.row() << visit << ev.action_in << ev.phi_tilde_in << ev.phi_tilde_out
                           << static_cast<long long>(ev.action_out - ev.action_in);
        rser.x.push_back(ev.phi_tilde_in);
        rser.y.push_back(ev.phi_tilde_out);
        s = {ev.phi_out, ev.action_out};
    }

    rep.results["alpha_note"] =
        "the published figure does not state alpha; this reproduction fixes the value in "
        "config.alpha";
    rep.results["step_count"] = tr.step_count;
    rep.results["stop"] = stop_name(tr.stop);
    rep.results["action_min"] = tr.action_min;
    rep.results["action_max"] = tr.action_max;
    rep.results["singular_hits"] = tr.singular_hits.size();
    rep.results["return_visits"] = visit;
    if (!chain_stop.empty()) rep.results["return_chain_stop"] = chain_stop;

    char detail[120];
    std::snprintf(detail, sizeof detail, "%lld of %lld steps", tr.step_count, cfg.steps);
    rep.verdicts.push_back({"trace-completed", tr.step_count == cfg.steps, detail});
    bool lattice = true;
    for (const auto& st : tr.states) lattice = lattice && action_on_lattice(st.action, cfg.i0);
    rep.verdicts.push_back({"action-lattice", lattice, "recorded actions on i0 + Z"});

    rep.tables.emplace_back("figure1_trace", std::move(trace_table));
    rep.tables.emplace_back("figure1_returns", std::move(return_table));
    rep.plots.emplace_back("figure1_trace", std::move(trace_plot));
    rep.plots.emplace_back("figure1_return_map", std::move(return_plot));
    return rep;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    switch (cfg.kind) {
        case ExperimentKind::kSimulate: rep = run_simulate(cfg); break;
        case ExperimentKind::kReturnMap: rep = run_return_map(cfg); break;
        case ExperimentKind::kIntervals: rep = run_intervals(cfg); break;
        case ExperimentKind::kRenormCheck: rep = run_renorm_check(cfg); break;
        case ExperimentKind::kEscape: rep = run_escape_experiment(cfg); break;
        case ExperimentKind::kKesten: rep = run_kesten(cfg); break;
        case ExperimentKind::kFigure1: rep = run_figure1(cfg); break;
    }
    rep.config = cfg;
    rep.config_echo = echo_config(cfg);
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

int run_cli(int argc, const char* const* argv) {
    ExperimentConfig cfg;
    try {
        cfg = parse_config(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const HelpRequested& h) {
        std::fputs(h.text.c_str(), stdout);
        return 0;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }

    try {
        const RunReport rep = run_experiment(cfg);
        const auto written = write_outputs(rep, cfg.out_dir);
        for (const auto& v : rep.verdicts)
            std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(),
                        v.detail.c_str());
        for (const auto& e : rep.escalations) std::printf("[policy] %s\n", e.c_str());
        std::printf("%s: %zu files in %s (%.1f ms)\n", experiment_name(cfg.kind), written.size(),
                    cfg.out_dir.c_str(), rep.wall_ms);
        return rep.all_pass() ? 0 : 1;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

}  // namespace pinball::cli
