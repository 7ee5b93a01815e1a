#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcf/common.hpp"
#include "gcf/config.hpp"
#include "gcf/diagnostics.hpp"
#include "gcf/soliton.hpp"
#include "gcf/verify.hpp"

namespace fs = std::filesystem;
using namespace gcf;

static std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

static diag::RunReport tiny_closed_report() {
    closed::ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.alpha = 1.0;
    cfg.grid_size = 64;
    cfg.sample_dt = 1e-3;
    cfg.stop_time = 2e-3;  // 3 samples
    cfg.snapshot_times = {};
    auto res = closed::run_closed(cfg);
    Tolerances tol;
    return verify::closed_report(cfg, res, tol, "tiny", {{"mode", "closed"}});
}

TEST_CASE("series CSV: schema, row count, determinism") {
    auto rep = tiny_closed_report();
    fs::path dir = fs::temp_directory_path() / "gcf_diag_test";
    fs::create_directories(dir);
    diag::write_series(rep, (dir / "a.csv").string());
    diag::write_series(rep, (dir / "b.csv").string());

    std::string a = slurp(dir / "a.csv");
    CHECK(a == slurp(dir / "b.csv"));  // byte-identical on identical input
    CHECK(a.find("\r") == std::string::npos);

    std::istringstream is(a);
    std::string line;
    std::getline(is, line);
    CHECK(line ==
          "t,N,J,D2,harnack_slack,mono_slack1,mono_slack2,concavity_dd,min_ut,max_ut,"
          "inv_lambda_min,osc");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);  // header + one line per sample

    // closed runs leave the interior columns empty
    std::istringstream is2(a);
    std::getline(is2, line);
    std::getline(is2, line);
    CHECK(line.substr(line.size() - 4) == ",,,,");

    auto rows_back = diag::read_series_csv((dir / "a.csv").string());
    REQUIRE(rows_back.size() == 3);
    CHECK(rows_back[1].N.has_value());
    CHECK(!rows_back[1].min_ut.has_value());
    fs::remove_all(dir);
}

TEST_CASE("summary JSON: fixed key order, decimal strings, pass flags") {
    auto rep = tiny_closed_report();
    fs::path dir = fs::temp_directory_path() / "gcf_diag_test2";
    fs::create_directories(dir);
    diag::write_summary(rep, (dir / "s.json").string());
    std::string s = slurp(dir / "s.json");
    CHECK(s.find("\"run_id\": \"tiny\"") != std::string::npos);
    CHECK(s.find("\"checks\"") != std::string::npos);
    CHECK(s.find("\"gauss_bonnet\"") != std::string::npos);
    CHECK(s.find("\"pass\": true") != std::string::npos);
    // numbers are serialized as strings
    CHECK(s.find("\"tolerance\": \"1e-06\"") != std::string::npos);
    CHECK(s.find("\"run_id\"") < s.find("\"config\""));
    CHECK(s.find("\"config\"") < s.find("\"checks\""));
    CHECK(s.find("\"checks\"") < s.find("\"terminal_status\""));
    diag::write_summary(rep, (dir / "s2.json").string());
    CHECK(s == slurp(dir / "s2.json"));
    fs::remove_all(dir);
}

TEST_CASE("SVG plots: markup, tolerance band, unknown series") {
    auto rep = tiny_closed_report();
    fs::path dir = fs::temp_directory_path() / "gcf_diag_test3";
    fs::create_directories(dir);
    diag::emit_plot(rep, "N", (dir / "n.svg").string());
    std::string svg = slurp(dir / "n.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find(">N</text>") != std::string::npos);

    diag::emit_plot(rep, "mono_slack2", (dir / "m.svg").string());
    CHECK(slurp(dir / "m.svg").find("#e8f0e8") != std::string::npos);  // tolerance band

    CHECK_THROWS_WITH_AS(diag::emit_plot(rep, "bogus", (dir / "x.svg").string()),
                         doctest::Contains("UnknownSeries"), FlowError);
    fs::remove_all(dir);
}

TEST_CASE("config parser: values, comments, rejection of unknown keys") {
    FlowConfig c = parse_config_text(
        "# closed-flow demo\n"
        "mode=closed\n"
        "n=1\n"
        "alpha = 1.5   # inline comment\n"
        "shape=ellipse\n"
        "axis_b=0.6\n"
        "grid_size=128\n"
        "tol_harnack=2e-3\n");
    CHECK(c.mode == "closed");
    CHECK(c.alpha == 1.5);
    CHECK(c.axis_b == 0.6);
    CHECK(c.grid_size == 128);
    CHECK(c.tol.harnack == 2e-3);
    CHECK(c.echo.size() == 7);

    CHECK_THROWS_WITH_AS(parse_config_text("mode=closed\nbanana=1\n"),
                         doctest::Contains("unknown key"), FlowError);
    CHECK_THROWS_WITH_AS(parse_config_text("mode=closed\nalpha=fast\n"),
                         doctest::Contains("bad number"), FlowError);
    CHECK_THROWS_WITH_AS(parse_config_text("mode=warp\n"), doctest::Contains("ConfigInvalid"),
                         FlowError);
    CHECK_THROWS_WITH_AS(parse_config_text("mode=graph\nalpha=0.4\n"),
                         doctest::Contains("alpha"), FlowError);
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), FlowError);
}

TEST_CASE("config to run configs") {
    FlowConfig c = parse_config_text(
        "mode=graph\nn=1\nalpha=1\ndomain=interval\nhalf_width=1\n"
        "boundary=barrier\ninitial=dented_translator\nt_end=2\n");
    auto gc = c.to_graph();
    CHECK(gc.domain.shape == DomainShape::interval);
    CHECK(gc.mode == graph::BoundaryMode::barrier);
    CHECK(gc.t_end == 2.0);

    FlowConfig p = parse_config_text(
        "mode=graph\nn=2\nalpha=1\ndomain=polygon\n"
        "polygon=-1,-1;1,-1;1,1;-1,1\nmargin=0.3\n");
    CHECK(p.domain_spec().area() == doctest::Approx(4.0));
}

TEST_CASE("shipped example configs parse") {
    for (const char* name :
         {"configs/example_closed.cfg", "configs/example_graph.cfg",
          "configs/example_soliton.cfg"}) {
        fs::path p = fs::path(GCF_SOURCE_DIR) / name;
        REQUIRE(fs::exists(p));
        CHECK_NOTHROW(load_config(p.string()));
    }
}

TEST_CASE("summary pass flags are recomputable from the CSV rows") {
    // run long enough that interior mono/Harnack samples exist
    closed::ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.alpha = 1.3;
    cfg.shape = closed::ClosedShape::ellipse;
    cfg.axis_a = 1.0;
    cfg.axis_b = 0.7;
    cfg.grid_size = 128;
    cfg.sample_dt = 1e-3;
    cfg.stop_time = 0.04;
    cfg.snapshot_times = {};
    auto res = closed::run_closed(cfg);
    Tolerances tol;
    auto rep = verify::closed_report(cfg, res, tol, "recheck", {});

    fs::path dir = fs::temp_directory_path() / "gcf_diag_test4";
    fs::create_directories(dir);
    diag::write_series(rep, (dir / "s.csv").string());
    auto rows = diag::read_series_csv((dir / "s.csv").string());
    REQUIRE(rows.size() == rep.rows.size());

    // recompute the monotonicity minimum slack from t, N, J columns alone
    double mn = 1e300;
    for (const auto& r : rows) {
        if (!r.mono_slack2 || !r.N || !r.J) continue;
        double scale = (*r.J) * (*r.J) / (*r.N);
        mn = std::min(mn, *r.mono_slack2 / scale);
    }
    const diag::CheckSummary* mono = nullptr;
    for (const auto& c : rep.checks)
        if (c.name == "monotonicity") mono = &c;
    REQUIRE(mono != nullptr);
    CHECK(mn == doctest::Approx(mono->min_slack).epsilon(1e-12));
    CHECK((mn >= -mono->tolerance) == mono->pass);

    // and the first-derivative residual from the same columns
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
        double dndt = (*rows[k + 1].N - *rows[k - 1].N) / (rows[k + 1].t - rows[k - 1].t);
        worst = std::max(worst, std::abs(dndt - (cfg.alpha - 1.0) * *rows[k].J) /
                                    std::max(std::abs(*rows[k].J), 1e-6));
    }
    const diag::CheckSummary* fd = nullptr;
    for (const auto& c : rep.checks)
        if (c.name == "first_derivative") fd = &c;
    REQUIRE(fd != nullptr);
    CHECK(worst == doctest::Approx(fd->max_slack).epsilon(1e-9));
    fs::remove_all(dir);
}

TEST_CASE("graph report fills interior columns and leaves entropy columns empty") {
    graph::GraphRunConfig g;
    g.domain = DomainSpec::interval(1.0, 0.25);
    g.alpha = 1.0;
    g.delta = 2.0 / 64.0;
    g.mode = graph::BoundaryMode::pinned_translator;
    g.initial = graph::InitialData::translator;
    g.t_end = 0.1;
    g.sample_dt = 0.05;
    g.reference = soliton::grim_reaper(1.0);
    g.have_reference = true;
    auto res = graph::run_graph(g);
    Tolerances tol;
    auto rep = verify::graph_report(g, res, tol, "g", {});
    REQUIRE(!rep.rows.empty());
    CHECK(!rep.rows[1].N.has_value());  // tech entropies off
    CHECK(rep.rows[1].min_ut.has_value());
    CHECK(rep.rows[1].osc.has_value());
    CHECK(rep.lambda_measured.has_value());
    CHECK(rep.lambda_target.has_value());
}
