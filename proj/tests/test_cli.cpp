#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiments.hpp"

using namespace pinball;
using namespace pinball::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("pinball_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("alpha expressions") {
    const AlphaSpec ln2 = parse_alpha("1/ln(2)");
    CHECK(ln2.value == doctest::Approx(1.4426950408889634));
    REQUIRE(ln2.exact_mu.has_value());
    CHECK(*ln2.exact_mu == 2.0);

    const AlphaSpec ln4 = parse_alpha("1/ln(4)");
    CHECK(*ln4.exact_mu == 4.0);

    const AlphaSpec dec = parse_alpha("0.5");
    CHECK(dec.value == 0.5);
    CHECK_FALSE(dec.exact_mu.has_value());
    CHECK_FALSE(dec.rational.has_value());

    const AlphaSpec rat = parse_alpha("3/7");
    REQUIRE(rat.rational.has_value());
    CHECK(rat.rational->num == 3);
    CHECK(rat.rational->den == 7);
    CHECK(rat.value == doctest::Approx(3.0 / 7.0));

    CHECK(parse_alpha("ln(4)").value == doctest::Approx(std::log(4.0)));
    CHECK(parse_alpha(" 1/ln(2.5) ").exact_mu.value() == 2.5);

    CHECK_THROWS_AS(parse_alpha("banana"), UsageError);
    CHECK_THROWS_AS(parse_alpha("1/ln(1)"), UsageError);
    CHECK_THROWS_AS(parse_alpha("-0.5"), UsageError);
    CHECK_THROWS_AS(parse_alpha("1/0"), UsageError);
    CHECK_THROWS_AS(parse_alpha(""), UsageError);
}

TEST_CASE("escape flags parse to an exact multiplier") {
    const ExperimentConfig cfg =
        parse_config({"escape", "--m", "1", "--N0", "1000", "--returns", "10000"});
    CHECK(cfg.kind == ExperimentKind::kEscape);
    CHECK(cfg.m == 1);
    CHECK(cfg.n0 == 1000);
    CHECK(cfg.returns == 10000);
    CHECK(cfg.alpha.value == doctest::Approx(1.0 / std::log(2.0)));
    REQUIRE(cfg.alpha.exact_mu.has_value());
    CHECK(*cfg.alpha.exact_mu == 2.0);
    CHECK_FALSE(cfg.policy_given);  // ladder by default
}

TEST_CASE("renorm-check rejects multipliers outside the proven regime") {
    CHECK_THROWS_WITH_AS(parse_config({"renorm-check", "--alpha", "1/ln(3)"}),
                         doctest::Contains("mu"), UsageError);
}

TEST_CASE("a missing experiment name lists the experiments") {
    CHECK_THROWS_WITH_AS(parse_config({}), doctest::Contains("simulate"), UsageError);
    CHECK_THROWS_AS(parse_config({"no-such-experiment"}), UsageError);
}

TEST_CASE("numeric preconditions are checked before any run") {
    CHECK_THROWS_AS(parse_config({"intervals", "--grid", "10"}), UsageError);
    CHECK_THROWS_AS(parse_config({"intervals", "--I", "2"}), UsageError);
    CHECK_THROWS_AS(parse_config({"escape", "--m", "0"}), UsageError);
    CHECK_THROWS_AS(parse_config({"escape", "--N0", "10"}), UsageError);
    CHECK_THROWS_AS(parse_config({"kesten", "--alpha", "0.3", "--period-grid", "10"}),
                    UsageError);
    CHECK_THROWS_AS(parse_config({"simulate", "--circle-len", "3"}), UsageError);
    CHECK_THROWS_AS(parse_config({"simulate", "--policy", "quad"}), UsageError);
}

TEST_CASE("config file values are overridden by flags") {
    const fs::path dir = fresh_dir("cfg");
    const fs::path cfgfile = dir / "escape.cfg";
    {
        std::ofstream out(cfgfile);
        out << "m=2\nN0=500\nreturns=123\n";
    }
    const ExperimentConfig from_file =
        parse_config({"escape", "--config", cfgfile.string()});
    CHECK(from_file.m == 2);
    CHECK(from_file.n0 == 500);
    CHECK(from_file.returns == 123);

    const ExperimentConfig overridden =
        parse_config({"escape", "--config", cfgfile.string(), "--m", "1"});
    CHECK(overridden.m == 1);
    CHECK(overridden.n0 == 500);
}

TEST_CASE("csv cells round-trip binary64") {
    CsvTable t({"a", "b"});
    t.row() << (0.1 + 0.2) << 7LL;
    const std::string s = t.to_string();
    CHECK(s == "a,b\n0.30000000000000004,7\n");

    CsvTable empty({"x", "y"});
    CHECK(empty.to_string() == "x,y\n");
    CHECK(empty.row_count() == 0);
}

TEST_CASE("svg plots are self-contained") {
    ScatterPlot plot;
    plot.title = "t";
    plot.xlabel = "x";
    plot.ylabel = "y";
    auto& s = plot.add_series("points", "#123456");
    s.x = {1.0, 2.0, 3.0};
    s.y = {2.0, 4.0, 8.0};
    const std::string svg = plot.to_string();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);  // no external references
}

TEST_CASE("identical configs produce byte-identical outputs") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const std::vector<std::string> args = {"figure1", "--steps", "5000",
                                           "--decimation", "50"};
    ExperimentConfig cfg = parse_config(args);

    cfg.out_dir = a.string();
    write_outputs(run_experiment(cfg), cfg.out_dir);
    cfg.out_dir = b.string();
    write_outputs(run_experiment(cfg), cfg.out_dir);

    size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const fs::path other = b / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
        ++compared;
    }
    CHECK(compared == 5);  // two tables, two plots, report.json
}

TEST_CASE("exit codes encode the verdicts") {
    const fs::path dir = fresh_dir("exit");

    const std::string out = (dir / "ok").string();
    const char* ok_argv[] = {"pinball", "kesten", "--alpha", "1/2", "--steps", "100",
                             "--period-grid", "50", "--out-dir", out.c_str()};
    CHECK(run_cli(10, ok_argv) == 0);

    // period two fails for alpha = 1/3: assertion failure
    const std::string bad = (dir / "bad").string();
    const char* bad_argv[] = {"pinball", "kesten", "--alpha", "1/3", "--steps", "100",
                              "--period-grid", "50", "--out-dir", bad.c_str()};
    CHECK(run_cli(10, bad_argv) == 1);

    const char* usage_argv[] = {"pinball", "escape", "--m", "0"};
    CHECK(run_cli(4, usage_argv) == 2);

    const char* help_argv[] = {"pinball", "--help"};
    CHECK(run_cli(2, help_argv) == 0);
}

TEST_CASE("return-map experiment asserts the bounded increment") {
    ExperimentConfig cfg = parse_config(
        {"return-map", "--alpha", "1/ln(2)", "--I", "101,501", "--seeds", "500"});
    REQUIRE(cfg.actions.size() == 2);
    cfg.out_dir = fresh_dir("rm").string();
    const RunReport rep = run_experiment(cfg);
    CHECK(rep.all_pass());
    REQUIRE(rep.tables.size() == 1);
    CHECK(rep.tables[0].second.row_count() == 2);
    CHECK(rep.verdicts.size() == 2);
}

TEST_CASE("table headers keep the documented column contracts") {
    ExperimentConfig iv = parse_config({"intervals", "--I", "101", "--grid", "2000"});
    iv.out_dir = fresh_dir("hdr_iv").string();
    const RunReport riv = run_experiment(iv);
    REQUIRE(riv.tables.size() == 1);
    CHECK(riv.tables[0].second.to_string().rfind(
              "I,alpha,mu,iplus_lo,iplus_hi,iminus_lo,iminus_hi,bf_iplus_lo", 0) == 0);

    ExperimentConfig es = parse_config({"escape", "--m", "1", "--N0", "1000", "--returns",
                                        "10", "--policy", "compensated"});
    es.out_dir = fresh_dir("hdr_es").string();
    const RunReport res = run_experiment(es);
    REQUIRE(res.tables.size() == 1);
    CHECK(res.tables[0].second.to_string().rfind("return_index,action,phi_tilde", 0) == 0);
}

TEST_CASE("simulate produces a trace table with the requested decimation") {
    const fs::path dir = fresh_dir("sim");
    ExperimentConfig cfg = parse_config({"simulate", "--alpha", "1", "--z", "-1",
                                         "--circle-len", "2", "--phi0", "0.01", "--i0", "50",
                                         "--steps", "1000", "--decimation", "10"});
    cfg.out_dir = dir.string();
    const RunReport rep = run_experiment(cfg);
    REQUIRE(rep.tables.size() == 1);
    CHECK(rep.tables[0].second.row_count() == 101);
    CHECK(rep.all_pass());
    const auto files = write_outputs(rep, cfg.out_dir);
    CHECK(files.size() == 3);
    for (const auto& f : files) CHECK(fs::exists(f));
}
