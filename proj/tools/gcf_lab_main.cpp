// gcf-lab: numerical laboratory for alpha-Gauss curvature flows.
//
// Subcommands: closed, graph, soliton, lambda, verify, report.
// Exit codes: 0 all enabled checks passed, 2 a check failed, 1 error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcf/common.hpp"
#include "gcf/config.hpp"
#include "gcf/decimal.hpp"
#include "gcf/diagnostics.hpp"
#include "gcf/soliton.hpp"
#include "gcf/verify.hpp"

namespace fs = std::filesystem;
using namespace gcf;

namespace {

std::string resolve_out(const std::string& configured) {
    const char* env = std::getenv("GCF_LAB_OUT");
    return env && *env ? env : configured;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

int finish_run(const FlowConfig& cfg, const diag::RunReport& rep) {
    fs::path dir = fs::path(resolve_out(cfg.out_dir)) / cfg.run_id;
    fs::create_directories(dir);
    diag::write_series(rep, (dir / "series.csv").string());
    diag::write_summary(rep, (dir / "summary.json").string());
    for (const auto& p : split_list(cfg.plots))
        diag::emit_plot(rep, p, (dir / ("plot_" + p + ".svg")).string());
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "  pass " : "  FAIL ") << c.name << " (slack ["
                  << format_shortest(c.min_slack) << ", " << format_shortest(c.max_slack)
                  << "], tol " << format_shortest(c.tolerance) << ")\n";
    std::cout << "artifacts: " << dir.string() << "\n";
    return rep.all_pass() ? 0 : 2;
}

soliton::SolitonProfile reference_for(const FlowConfig& cfg) {
    DomainSpec dom = cfg.domain_spec();
    double extent = dom.shape == DomainShape::interval ? dom.half_width : dom.radius;
    if (dom.shape == DomainShape::polygon)
        fail("ConfigInvalid", "graph runs on polygons need a precomputed profile");
    if (dom.n == 1 && cfg.alpha == 1.0) return soliton::grim_reaper(extent);
    return soliton::radial_translator(dom.n, cfg.alpha, extent);
}

int cmd_closed(const std::string& config_path) {
    FlowConfig cfg = load_config(config_path);
    if (cfg.mode != "closed") fail("ConfigInvalid", "config mode must be 'closed'");
    auto rc = cfg.to_closed();
    auto res = closed::run_closed(rc);
    std::cout << "closed run '" << cfg.run_id << "': " << res.status << " at t="
              << format_shortest(res.final_state.t) << " after " << res.steps << " steps\n";
    return finish_run(cfg, verify::closed_report(rc, res, cfg.tol, cfg.run_id, cfg.echo));
}

int cmd_graph(const std::string& config_path) {
    FlowConfig cfg = load_config(config_path);
    if (cfg.mode != "graph") fail("ConfigInvalid", "config mode must be 'graph'");
    auto gc = cfg.to_graph();
    gc.reference = reference_for(cfg);
    gc.have_reference = true;
    auto res = graph::run_graph(gc);
    std::cout << "graph run '" << cfg.run_id << "': " << res.status << " at t="
              << format_shortest(res.final_state.t) << " after " << res.steps << " steps\n"
              << "  center speed " << format_shortest(res.convergence.back().center_speed)
              << " (target " << format_shortest(res.lambda_target) << ")\n";
    return finish_run(cfg, verify::graph_report(gc, res, cfg.tol, cfg.run_id, cfg.echo));
}

int cmd_soliton(const std::string& config_path) {
    FlowConfig cfg = load_config(config_path);
    if (cfg.mode != "soliton") fail("ConfigInvalid", "config mode must be 'soliton'");
    DomainSpec dom = cfg.domain_spec();
    double extent = dom.shape == DomainShape::interval ? dom.half_width : dom.radius;
    auto prof = soliton::radial_translator(dom.n, cfg.alpha, extent);
    auto check = soliton::translator_residual(prof);
    double target = soliton::lambda_omega(dom, cfg.alpha);

    fs::path dir = fs::path(resolve_out(cfg.out_dir)) / cfg.run_id;
    fs::create_directories(dir);
    std::ofstream os(dir / "profile.txt", std::ios::binary);
    soliton::write_profile(os, prof);

    diag::RunReport rep;
    rep.run_id = cfg.run_id;
    rep.config_echo = cfg.echo;
    rep.terminal_status = "ok";
    rep.lambda_measured = prof.lambda;
    rep.lambda_target = target;
    rep.checks.push_back({"shooting_residual", 0.0, check.residual_sup, 1e-3,
                          check.residual_sup <= 1e-3});
    rep.checks.push_back({"t_constancy", 0.0, check.t_deviation / prof.lambda, 1e-3,
                          check.t_deviation <= 1e-3 * prof.lambda});
    double lam_rel = std::abs(prof.lambda - target) / target;
    rep.checks.push_back({"lambda_vs_formula", 0.0, lam_rel, 5e-3, lam_rel <= 5e-3});
    diag::write_summary(rep, (dir / "summary.json").string());

    std::cout << "soliton lambda=" << format_shortest(prof.lambda) << " target="
              << format_shortest(target) << " residual=" << format_shortest(check.residual_sup)
              << " |P|=" << format_shortest(check.p_sup) << "\n";
    std::cout << "profile: " << (dir / "profile.txt").string() << "\n";
    return rep.all_pass() ? 0 : 2;
}

int cmd_lambda(int n, double alpha, double area) {
    double lam_cap = soliton::capital_lambda(n, alpha);
    if (area <= 0.0) area = (n == 1) ? 2.0 : pi;  // interval (-1,1) or unit disk
    DomainSpec dom = (n == 1) ? DomainSpec::interval(0.5 * area, 0.1 * area)
                              : DomainSpec::disk(std::sqrt(area / pi), 0.1);
    double lam = soliton::lambda_omega(dom, alpha);
    std::cout << "Lambda(" << n << ", " << format_shortest(alpha)
              << ") = " << format_shortest(lam_cap) << "\n";
    std::cout << "lambda_Omega (|Omega| = " << format_shortest(area)
              << ") = " << format_shortest(lam) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out) {
    auto results = verify::run_suite(suite, resolve_out(out), std::cout);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::cout << (all ? "verify: all criteria passed" : "verify: CRITERIA FAILED") << "\n";
    return all ? 0 : 2;
}

int cmd_report(const std::string& dir, const std::string& series) {
    diag::RunReport rep;
    rep.rows = diag::read_series_csv((fs::path(dir) / "series.csv").string());
    rep.run_id = "report";
    std::string path = (fs::path(dir) / ("plot_" + series + ".svg")).string();
    diag::emit_plot(rep, series, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gcf-lab: alpha-Gauss curvature flow laboratory"};
    app.require_subcommand(1);

    std::string config_path, suite = "core", out = "out", report_dir, series;
    int n = 2;
    double alpha = 1.0, area = 0.0;

    auto* c_closed = app.add_subcommand("closed", "evolve a closed convex hypersurface");
    c_closed->add_option("--config", config_path, "key=value config file")->required();

    auto* c_graph = app.add_subcommand("graph", "evolve a complete convex graph");
    c_graph->add_option("--config", config_path, "key=value config file")->required();

    auto* c_soliton = app.add_subcommand("soliton", "construct a translating soliton");
    c_soliton->add_option("--config", config_path, "key=value config file")->required();

    auto* c_lambda = app.add_subcommand("lambda", "translator speed constants");
    c_lambda->add_option("--n", n, "dimension");
    c_lambda->add_option("--alpha", alpha, "curvature power")->required();
    c_lambda->add_option("--area", area, "|Omega| (default: unit disk / interval (-1,1))");

    auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
    c_verify->add_option("--suite", suite, "core or smoke");
    c_verify->add_option("--out", out, "artifact directory");

    auto* c_report = app.add_subcommand("report", "re-render a plot from a run directory");
    c_report->add_option("--dir", report_dir, "run directory with series.csv")->required();
    c_report->add_option("--series", series, "column to plot")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_closed->parsed()) return cmd_closed(config_path);
        if (c_graph->parsed()) return cmd_graph(config_path);
        if (c_soliton->parsed()) return cmd_soliton(config_path);
        if (c_lambda->parsed()) return cmd_lambda(n, alpha, area);
        if (c_verify->parsed()) return cmd_verify(suite, out);
        if (c_report->parsed()) return cmd_report(report_dir, series);
    } catch (const FlowError& e) {
        std::cerr << "gcf-lab: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "gcf-lab: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
