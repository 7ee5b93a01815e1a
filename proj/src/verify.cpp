#include "gcf/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gcf/common.hpp"
#include "gcf/decimal.hpp"
#include "gcf/soliton.hpp"

namespace fs = std::filesystem;

namespace gcf::verify {

using closed::ClosedRunConfig;
using closed::ClosedRunResult;
using closed::ClosedShape;
using graph::GraphRunConfig;
using graph::GraphRunResult;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

bool is_round(const ClosedRunConfig& cfg) {
    return cfg.shape == ClosedShape::circle || cfg.shape == ClosedShape::sphere;
}

double round_radius(double r0, int n, double alpha, double t) {
    double e = 1.0 + n * alpha;
    return std::pow(std::pow(r0, e) - e * t, 1.0 / e);
}

}  // namespace

diag::RunReport closed_report(const ClosedRunConfig& cfg, const ClosedRunResult& res,
                              const Tolerances& tol, const std::string& run_id,
                              const std::vector<std::pair<std::string, std::string>>& echo) {
    diag::RunReport rep;
    rep.run_id = run_id;
    rep.config_echo = echo;
    rep.terminal_status = res.status;
    rep.steps = res.steps;
    const auto& recs = res.records;
    const double omega = sphere_area(cfg.n);
    const double na = cfg.n * cfg.alpha;

    closed::MonotonicityCheck mono;
    if (recs.size() >= 3) mono = closed::check_monotonicity(recs, cfg.alpha, cfg.n);
    closed::ConcavityCheck conc;
    if (cfg.alpha != 1.0 && recs.size() >= 3) conc = closed::check_concavity(recs, cfg.alpha);

    for (std::size_t k = 0; k < recs.size(); ++k) {
        diag::SeriesRow row;
        row.t = recs[k].t;
        row.N = recs[k].N;
        row.J = recs[k].J;
        row.D2 = recs[k].D2;
        if (k > 0 && recs[k - 1].t >= 0.01) {
            const auto& f1 = res.speed_snapshots[k - 1];
            const auto& f2 = res.speed_snapshots[k];
            double bound = std::pow(recs[k - 1].t / recs[k].t, na / (1.0 + na));
            double slack = 1e300;
            for (std::size_t i = 0; i < f1.size(); ++i)
                slack = std::min(slack, f2[i] / f1[i] - bound);
            row.harnack_slack = slack;
        }
        if (k >= 1 && k + 1 < recs.size()) {
            row.mono_slack1 = mono.slack1[k - 1];
            row.mono_slack2 = mono.slack2[k - 1];
            if (cfg.alpha != 1.0) row.concavity_dd = conc.dd[k - 1];
        }
        rep.rows.push_back(row);
    }

    auto add_check = [&](const std::string& name, double mn, double mx, double tolerance,
                         bool pass) {
        rep.checks.push_back({name, mn, mx, tolerance, pass});
    };

    {  // dN/dt = (alpha-1) J, residual against max(|J|, 1e-6)
        double worst = 0.0;
        const double dt = recs.size() > 1 ? recs[1].t - recs[0].t : 1.0;
        for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
            double dndt = (recs[k + 1].N - recs[k - 1].N) / (2.0 * dt);
            double resid = std::abs(dndt - (cfg.alpha - 1.0) * recs[k].J) /
                           std::max(std::abs(recs[k].J), 1e-6);
            worst = std::max(worst, resid);
        }
        add_check("first_derivative", 0.0, worst, tol.first_derivative,
                  worst <= tol.first_derivative);
    }
    if (!mono.slack2.empty()) {
        double mn = 1e300;
        for (std::size_t k = 0; k < mono.slack2.size(); ++k)
            mn = std::min(mn, mono.slack2[k] / mono.scale[k]);
        add_check("monotonicity", mn, 0.0, tol.monotonicity, mn >= -tol.monotonicity);
        if (is_round(cfg)) {
            double mx = 0.0;
            for (std::size_t k = 0; k < mono.slack2.size(); ++k)
                mx = std::max(mx, std::abs(mono.slack2[k]) / mono.scale[k]);
            add_check("round_equality", 0.0, mx, tol.equality, mx <= tol.equality);
        }
    }
    if (cfg.alpha != 1.0 && !conc.dd.empty()) {
        double mx = -1e300;
        for (double dd : conc.dd) mx = std::max(mx, dd / conc.scale);
        add_check("concavity", 0.0, mx, tol.concavity, mx <= tol.concavity);
    }
    if (res.snapshots.size() >= 2) {
        double slack = closed::check_harnack(res.snapshots[0], res.snapshots[1]);
        add_check("harnack_pair", slack, slack, tol.harnack, slack >= -tol.harnack);
    }
    if (cfg.n == 1 && recs.size() >= 3) {
        double worst = 0.0;
        const double dt = recs[1].t - recs[0].t;
        for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
            double djdt = (recs[k + 1].J - recs[k - 1].J) / (2.0 * dt);
            worst = std::max(worst,
                             std::abs(djdt - 2.0 * cfg.alpha * recs[k].D2) / std::abs(djdt));
        }
        add_check("dissipation_identity", 0.0, worst, tol.dissipation,
                  worst <= tol.dissipation);
    }
    if (cfg.alpha == 1.0) {
        double worst = 0.0;
        for (const auto& r : recs) worst = std::max(worst, std::abs(r.N - omega) / omega);
        add_check("gauss_bonnet", 0.0, worst, tol.gauss_bonnet, worst <= tol.gauss_bonnet);
    }
    if (is_round(cfg)) {
        double hmin = 1e300, hmax = -1e300;
        for (double h : res.final_state.h) {
            hmin = std::min(hmin, h);
            hmax = std::max(hmax, h);
        }
        double want = round_radius(cfg.radius, cfg.n, cfg.alpha, res.final_state.t);
        double err = std::abs(hmax - want) / want;
        add_check("round_law", 0.0, err, tol.round_law, err <= tol.round_law);
        add_check("flatness", 0.0, hmax - hmin, tol.flatness, hmax - hmin <= tol.flatness);
    }
    return rep;
}

diag::RunReport graph_report(const GraphRunConfig& cfg, const GraphRunResult& res,
                             const Tolerances& tol, const std::string& run_id,
                             const std::vector<std::pair<std::string, std::string>>& echo) {
    diag::RunReport rep;
    rep.run_id = run_id;
    rep.config_echo = echo;
    rep.terminal_status = res.status;
    rep.steps = res.steps;
    rep.lambda_target = res.lambda_target;
    rep.lambda_measured = res.convergence.back().center_speed;

    for (std::size_t k = 0; k < res.interior.size(); ++k) {
        diag::SeriesRow row;
        row.t = res.interior[k].t;
        row.min_ut = res.interior[k].min_ut;
        row.max_ut = res.interior[k].max_ut;
        row.inv_lambda_min = res.interior[k].max_inv_kmin;
        row.osc = res.interior[k].osc;
        if (std::isfinite(res.harnack_slack[k])) row.harnack_slack = res.harnack_slack[k];
        if (cfg.tech_entropies && k >= 1 && k - 1 < res.tech.size()) {
            row.N = res.tech[k - 1].speed_mass;
            row.J = res.tech[k - 1].accel_mass;
            row.D2 = res.tech[k - 1].dissipation;
        }
        rep.rows.push_back(row);
    }

    auto add_check = [&](const std::string& name, double mn, double mx, double tolerance,
                         bool pass) {
        rep.checks.push_back({name, mn, mx, tolerance, pass});
    };

    if (res.have_barriers) {
        double worst = 0.0;
        for (std::size_t k = 0; k < res.comparison.size(); ++k) {
            double scale = 1.0 + res.lambda_target * res.sample_times[k];
            worst = std::max(worst, std::max(res.comparison[k].lower_violation,
                                             res.comparison[k].upper_violation) /
                                        scale);
        }
        add_check("comparison", 0.0, worst, tol.comparison, worst <= tol.comparison);
    }
    {
        double mn = 1e300;
        for (double s : res.harnack_slack)
            if (std::isfinite(s)) mn = std::min(mn, s);
        if (mn < 1e300)
            add_check("time_harnack", mn, 0.0, tol.time_harnack, mn >= -tol.time_harnack);
    }
    {
        const auto& last = res.convergence.back();
        double rel = last.speed_err / res.lambda_target;
        add_check("speed", 0.0, rel, tol.speed_rel, rel <= tol.speed_rel);
        if (std::isfinite(last.profile_err))
            add_check("profile", 0.0, last.profile_err, tol.profile_sup,
                      last.profile_err <= tol.profile_sup);
    }
    {
        double mn = 1e300;
        for (const auto& r : res.interior)
            if (r.t >= 1.0) mn = std::min(mn, r.min_ut);
        if (mn < 1e300) add_check("interior_speed_positive", mn, 0.0, 0.0, mn > 0.0);
    }
    if (res.interior.back().t >= 2.0) {
        double worst_rel_inc = 0.0, prev = 1e300;
        for (const auto& r : res.interior) {
            if (r.t < 2.0) continue;
            if (prev < 1e300 && r.max_inv_nu > prev)
                worst_rel_inc = std::max(worst_rel_inc, (r.max_inv_nu - prev) / prev);
            prev = r.max_inv_nu;
        }
        add_check("gradient_monotone", 0.0, worst_rel_inc, tol.gradient_monotone,
                  worst_rel_inc <= tol.gradient_monotone);
    }
    {
        double k1 = 0.0, kmin = 1e300;
        for (const auto& r : res.interior) {
            if (std::abs(r.t - 1.0) <= 0.5 * cfg.sample_dt) k1 = 1.0 / r.max_inv_kmin;
            if (r.t >= 1.0) kmin = std::min(kmin, 1.0 / r.max_inv_kmin);
        }
        if (k1 > 0.0)
            add_check("convexity_floor", kmin / k1, kmin / k1, 0.5, kmin >= 0.5 * k1);
    }
    if (cfg.tech_entropies && cfg.t_end > 2.0) {
        double d1 = 0.0, tail = 0.0;
        for (const auto& te : res.tech) {
            if (std::abs(te.t - 1.0) <= 0.5 * cfg.sample_dt) d1 = te.dissipation;
            if (te.t >= cfg.t_end - 5.0) tail = std::max(tail, te.dissipation);
        }
        if (d1 > 0.0)
            add_check("dissipation_decay", tail / d1, tail / d1, tol.dissipation_tail,
                      tail <= tol.dissipation_tail * d1);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// acceptance suite
// ---------------------------------------------------------------------------

namespace {

struct ClosedCase {
    ClosedRunConfig cfg;
    ClosedRunResult res;
    double seconds = 0.0;
};

struct GraphCase {
    GraphRunConfig cfg;
    GraphRunResult res;
    double seconds = 0.0;
};

struct Bundle {
    std::map<std::string, ClosedCase> closed;
    std::map<std::string, GraphCase> graph;
    soliton::SolitonProfile grim, reaper_shot, disk_shot;
    soliton::TranslatorCheck grim_check, disk_check, control_check;
    double lambda_grid_worst = 0.0;
    bool lambda_grid_ok = false;
};

std::vector<std::pair<std::string, std::string>> echo_closed(const ClosedRunConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("mode", "closed");
    e.emplace_back("n", std::to_string(c.n));
    e.emplace_back("alpha", format_shortest(c.alpha));
    const char* names[] = {"circle", "ellipse", "sphere", "spheroid"};
    e.emplace_back("shape", names[static_cast<int>(c.shape)]);
    if (c.shape == ClosedShape::ellipse || c.shape == ClosedShape::spheroid) {
        e.emplace_back("axis_a", format_shortest(c.axis_a));
        e.emplace_back("axis_b", format_shortest(c.axis_b));
    } else {
        e.emplace_back("radius", format_shortest(c.radius));
    }
    e.emplace_back("grid_size", std::to_string(c.grid_size));
    e.emplace_back("sample_dt", format_shortest(c.sample_dt));
    e.emplace_back("stop_time", format_shortest(c.stop_time));
    return e;
}

std::vector<std::pair<std::string, std::string>> echo_graph(const GraphRunConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("mode", "graph");
    e.emplace_back("n", std::to_string(c.domain.n));
    e.emplace_back("alpha", format_shortest(c.alpha));
    e.emplace_back("domain", c.domain.shape == DomainShape::interval ? "interval" : "disk");
    e.emplace_back("extent", format_shortest(c.domain.shape == DomainShape::interval
                                                 ? c.domain.half_width
                                                 : c.domain.radius));
    e.emplace_back("delta", format_shortest(c.delta));
    e.emplace_back("boundary",
                   c.mode == graph::BoundaryMode::barrier ? "barrier" : "pinned");
    e.emplace_back("eps0", format_shortest(c.eps0));
    e.emplace_back("seed", std::to_string(c.seed));
    e.emplace_back("perturb_amp", format_shortest(c.perturb_amp));
    e.emplace_back("t_end", format_shortest(c.t_end));
    return e;
}

void write_artifacts(const fs::path& dir, const diag::RunReport& rep,
                     const std::vector<std::string>& plots) {
    fs::create_directories(dir);
    diag::write_series(rep, (dir / "series.csv").string());
    diag::write_summary(rep, (dir / "summary.json").string());
    for (const auto& p : plots) diag::emit_plot(rep, p, (dir / ("plot_" + p + ".svg")).string());
}

void run_closed_case(Bundle& b, const fs::path& out, const std::string& id,
                     const ClosedRunConfig& cfg, const Tolerances& tol,
                     const std::vector<std::string>& plots) {
    double t0 = now_seconds();
    ClosedCase c;
    c.cfg = cfg;
    c.res = closed::run_closed(cfg);
    c.seconds = now_seconds() - t0;
    write_artifacts(out / id, closed_report(cfg, c.res, tol, id, echo_closed(cfg)), plots);
    b.closed.emplace(id, std::move(c));
}

void run_graph_case(Bundle& b, const fs::path& out, const std::string& id,
                    const GraphRunConfig& cfg, const Tolerances& tol,
                    const std::vector<std::string>& plots) {
    double t0 = now_seconds();
    GraphCase g;
    g.cfg = cfg;
    g.res = graph::run_graph(cfg);
    g.seconds = now_seconds() - t0;
    write_artifacts(out / id, graph_report(cfg, g.res, tol, id, echo_graph(cfg)), plots);
    b.graph.emplace(id, std::move(g));
}

ClosedRunConfig base_closed(int n, double alpha, ClosedShape shape) {
    ClosedRunConfig c;
    c.n = n;
    c.alpha = alpha;
    c.shape = shape;
    c.grid_size = (n == 1) ? 512 : 256;
    c.sample_dt = 1e-3;
    c.stop_time = 0.12;
    c.snapshot_times = {0.05, 0.1};
    return c;
}

Bundle run_cases(const std::string& suite, const fs::path& out, const Tolerances& tol) {
    Bundle b;
    fs::create_directories(out);

    {
        ClosedRunConfig c = base_closed(1, 1.0, ClosedShape::circle);
        c.stop_time = 0.3;
        run_closed_case(b, out, "closed_circle_a1", c, tol, {"N", "J"});
    }
    if (suite == "core") {
        ClosedRunConfig c = base_closed(2, 1.0, ClosedShape::sphere);
        c.stop_time = 0.2;
        run_closed_case(b, out, "closed_sphere_a1", c, tol, {"N", "J"});

        for (double alpha : {0.7, 1.5}) {
            ClosedRunConfig e = base_closed(1, alpha, ClosedShape::ellipse);
            e.axis_a = 1.0;
            e.axis_b = 0.6;
            e.sample_dt = 2.5e-4;
            std::string tag = alpha == 0.7 ? "a07" : "a15";
            run_closed_case(b, out, "closed_ellipse_" + tag, e, tol, {"J", "mono_slack2"});
            e.grid_size = 256;
            e.sample_dt = 5e-4;
            run_closed_case(b, out, "closed_ellipse_" + tag + "_coarse", e, tol, {});
        }
        {
            ClosedRunConfig c = base_closed(1, 2.0, ClosedShape::circle);
            run_closed_case(b, out, "closed_circle_a2", c, tol, {"concavity_dd"});
        }
        {
            ClosedRunConfig c = base_closed(1, 0.7, ClosedShape::circle);
            run_closed_case(b, out, "closed_circle_a07", c, tol, {"concavity_dd"});
        }
        {
            ClosedRunConfig c = base_closed(1, 2.0, ClosedShape::ellipse);
            c.axis_a = 1.0;
            c.axis_b = 0.6;
            c.grid_size = 256;
            c.sample_dt = 5e-4;
            c.stop_time = 0.05;  // the alpha=2 ellipse is extinct before t ~ 0.07
            c.snapshot_times = {};
            run_closed_case(b, out, "closed_ellipse_a2", c, tol, {});
        }
    }

    b.grim = soliton::grim_reaper(1.0);
    b.grim_check = soliton::translator_residual(b.grim);
    b.lambda_grid_ok = true;
    for (int n : {1, 2, 3})
        for (double alpha : {0.6, 0.75, 1.0, 1.5, 2.0, 5.0}) {
            double q = soliton::capital_lambda_quadrature(n, alpha);
            double g = soliton::capital_lambda(n, alpha);  // throws if routes disagree
            double rel = std::abs(q - g) / g;
            b.lambda_grid_worst = std::max(b.lambda_grid_worst, rel);
            if (rel > 1e-8) b.lambda_grid_ok = false;
        }
    if (suite == "core") {
        b.reaper_shot = soliton::radial_translator(1, 1.0, pi / 2.0);
        b.disk_shot = soliton::radial_translator(2, 1.0, 1.0);
        b.disk_check = soliton::translator_residual(b.disk_shot);

        // paraboloid negative control: u = r^2/2 declared with lambda = 1
        soliton::SolitonProfile fake;
        fake.rep = soliton::SolitonProfile::Rep::radial_table;
        fake.n = 2;
        fake.alpha = 1.0;
        fake.lambda = 1.0;
        fake.radius = 1.0 / 0.9;
        fake.declared_tol = 1.0;
        const std::size_t rows = 8192;
        for (std::size_t i = 0; i < rows; ++i) {
            double r = fake.radius * 0.97 * static_cast<double>(i) / (rows - 1);
            fake.r.push_back(r);
            fake.u.push_back(0.5 * r * r);
            fake.du.push_back(r);
        }
        fake.finalize();
        b.control_check = soliton::translator_residual(fake);

        fs::create_directories(out / "soliton");
        {
            std::ofstream os(out / "soliton" / "grim_reaper.txt", std::ios::binary);
            soliton::write_profile(os, b.grim);
        }
        {
            std::ofstream os(out / "soliton" / "disk_shooting.txt", std::ios::binary);
            soliton::write_profile(os, b.disk_shot);
        }
        diag::RunReport srep;
        srep.run_id = "soliton";
        srep.config_echo = {{"mode", "soliton"}, {"n", "2"}, {"alpha", "1"},
                            {"disk_radius", "1"}};
        srep.terminal_status = "ok";
        srep.lambda_measured = b.disk_shot.lambda;
        srep.lambda_target = soliton::lambda_omega(DomainSpec::disk(1.0, 0.25), 1.0);
        srep.checks.push_back({"shooting_residual", 0.0, b.disk_check.residual_sup, 1e-3,
                               b.disk_check.residual_sup <= 1e-3});
        srep.checks.push_back({"t_constancy", 0.0,
                               b.disk_check.t_deviation / b.disk_shot.lambda, 1e-3,
                               b.disk_check.t_deviation <= 1e-3 * b.disk_shot.lambda});
        double control_err = std::abs(b.control_check.residual_sup -
                                      std::abs(0.25 - 1.0 / std::sqrt(2.0)));
        srep.checks.push_back(
            {"paraboloid_control", 0.0, control_err, 1e-3, control_err <= 1e-3});
        diag::write_summary(srep, (out / "soliton" / "summary.json").string());
    }

    {
        GraphRunConfig g;
        g.domain = DomainSpec::interval(1.0, 0.25);
        g.alpha = 1.0;
        g.delta = 2.0 / 256.0;
        g.mode = graph::BoundaryMode::barrier;
        g.initial = graph::InitialData::dented_translator;
        g.perturb_amp = 0.3;
        g.seed = 1;
        g.t_end = (suite == "core") ? 15.0 : 1.0;
        g.sample_dt = 0.05;
        g.profile_margin = 0.1;  // criterion window [-0.9, 0.9]
        g.tech_entropies = true;
        g.reference = b.grim;
        g.have_reference = true;
        run_graph_case(b, out, "graph_reaper_A", g, tol, {"min_ut", "D2"});

        if (suite == "core") {
            g.seed = 42;
            g.perturb_amp = 0.15;
            g.tech_entropies = false;
            run_graph_case(b, out, "graph_reaper_B", g, tol, {"min_ut"});
        }
    }
    if (suite == "core") {
        GraphRunConfig g;
        g.domain = DomainSpec::disk(1.0, 0.25);
        g.alpha = 1.0;
        g.delta = 1.0 / 24.0;
        g.mode = graph::BoundaryMode::barrier;
        g.initial = graph::InitialData::dented_translator;
        g.perturb_amp = 0.3;
        g.seed = 1;
        g.t_end = 6.0;
        g.sample_dt = 0.1;
        g.reference = b.disk_shot;
        g.have_reference = true;
        run_graph_case(b, out, "graph_disk", g, tol, {"min_ut"});
    }
    return b;
}

bool tree_equal(const fs::path& a, const fs::path& c, std::string& why) {
    std::vector<fs::path> fa, fc;
    for (auto& p : fs::recursive_directory_iterator(a))
        if (p.is_regular_file()) fa.push_back(fs::relative(p.path(), a));
    for (auto& p : fs::recursive_directory_iterator(c))
        if (p.is_regular_file()) fc.push_back(fs::relative(p.path(), c));
    std::sort(fa.begin(), fa.end());
    std::sort(fc.begin(), fc.end());
    if (fa != fc) {
        why = "file lists differ";
        return false;
    }
    for (const auto& rel : fa) {
        std::ifstream ia(a / rel, std::ios::binary), ic(c / rel, std::ios::binary);
        std::ostringstream sa, sc;
        sa << ia.rdbuf();
        sc << ic.rdbuf();
        if (sa.str() != sc.str()) {
            why = "content differs: " + rel.string();
            return false;
        }
    }
    return true;
}

struct Criteria {
    std::vector<CriterionResult> out;
    std::ostream& log;
    explicit Criteria(std::ostream& l) : log(l) {}
    void add(int id, const std::string& name, bool pass, const std::string& detail,
             double secs = 0.0) {
        out.push_back({id, name, pass, detail, secs});
        log << "[" << (pass ? "PASS" : "FAIL") << "] criterion " << id << ": " << name << " ("
            << detail << ")\n";
        log.flush();
    }
};

std::string pct(double x) {
    std::ostringstream ss;
    ss.precision(3);
    ss << 100.0 * x << "%";
    return ss.str();
}

std::string sci(double x) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << x;
    return ss.str();
}

}  // namespace

std::vector<CriterionResult> run_suite(const std::string& suite, const std::string& out_dir,
                                       std::ostream& log) {
    if (suite != "core" && suite != "smoke")
        fail("ConfigInvalid", "unknown suite '" + suite + "' (use core or smoke)");
    Tolerances tol;
    fs::path out(out_dir);
    fs::create_directories(out);
    fs::path pass1 = out / "run";
    fs::remove_all(pass1);
    Bundle b = run_cases(suite, pass1, tol);
    Criteria cr(log);

    if (suite == "core") {
        {  // 1. shrinking round oracle
            const auto& c1 = b.closed.at("closed_circle_a1");
            const auto& c2 = b.closed.at("closed_sphere_a1");
            double w1 = round_radius(1.0, 1, 1.0, 0.3), w2 = round_radius(1.0, 2, 1.0, 0.2);
            double e1 = std::abs(c1.res.final_state.h[0] - w1) / w1;
            double e2 = std::abs(c2.res.final_state.h[0] - w2) / w2;
            bool pass = e1 <= 1e-3 && e2 <= 1e-3 && c1.seconds <= 30.0 && c2.seconds <= 30.0;
            cr.add(1, "shrinking sphere oracle", pass,
                   "circle err " + sci(e1) + ", sphere err " + sci(e2) + ", " +
                       sci(c1.seconds) + "s/" + sci(c2.seconds) + "s",
                   c1.seconds + c2.seconds);
        }
        {  // 2. Gauss-Bonnet invariant
            double worst = 0.0;
            for (const auto* id : {"closed_circle_a1", "closed_sphere_a1"}) {
                const auto& c = b.closed.at(id);
                double omega = sphere_area(c.cfg.n);
                for (const auto& r : c.res.records)
                    worst = std::max(worst, std::abs(r.N - omega) / omega);
            }
            cr.add(2, "Gauss-Bonnet invariant", worst <= 1e-6, "worst rel dev " + sci(worst));
        }
        {  // 3. first-derivative identity with refinement
            bool pass = true;
            std::string detail;
            for (const char* tag : {"a07", "a15"}) {
                auto worst_of = [&](const ClosedCase& c) {
                    const auto& recs = c.res.records;
                    double dt = recs[1].t - recs[0].t, worst = 0.0;
                    for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
                        double dndt = (recs[k + 1].N - recs[k - 1].N) / (2.0 * dt);
                        worst = std::max(worst,
                                         std::abs(dndt - (c.cfg.alpha - 1.0) * recs[k].J) /
                                             std::max(std::abs(recs[k].J), 1e-6));
                    }
                    return worst;
                };
                double fine = worst_of(b.closed.at(std::string("closed_ellipse_") + tag));
                double coarse =
                    worst_of(b.closed.at(std::string("closed_ellipse_") + tag + "_coarse"));
                pass = pass && fine <= 1e-2 && fine < coarse;
                detail += std::string(tag) + ": fine " + sci(fine) + " < coarse " +
                          sci(coarse) + "; ";
            }
            cr.add(3, "first-derivative identity", pass, detail);
        }
        {  // 4. monotonicity and its equality cases
            double worst_sign = 0.0, worst_eq = 0.0;
            for (const auto* id : {"closed_ellipse_a07", "closed_ellipse_a15",
                                   "closed_circle_a1", "closed_circle_a2",
                                   "closed_sphere_a1"}) {
                const auto& c = b.closed.at(id);
                auto mc = closed::check_monotonicity(c.res.records, c.cfg.alpha, c.cfg.n);
                for (std::size_t k = 0; k < mc.slack2.size(); ++k) {
                    double rel = mc.slack2[k] / mc.scale[k];
                    worst_sign = std::min(worst_sign, rel);
                    if (is_round(c.cfg)) worst_eq = std::max(worst_eq, std::abs(rel));
                }
            }
            bool pass = worst_sign >= -1e-3 && worst_eq <= 1e-3;
            cr.add(4, "acceleration monotonicity", pass,
                   "min slack " + sci(worst_sign) + ", round equality dev " + sci(worst_eq));
        }
        {  // 5. n=1 dissipation identity on the ellipse runs
            double worst = 0.0;
            for (const auto* id : {"closed_ellipse_a07", "closed_ellipse_a15"}) {
                const auto& recs = b.closed.at(id).res.records;
                double dt = recs[1].t - recs[0].t;
                double alpha = b.closed.at(id).cfg.alpha;
                for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
                    double djdt = (recs[k + 1].J - recs[k - 1].J) / (2.0 * dt);
                    worst = std::max(worst, std::abs(djdt - 2.0 * alpha * recs[k].D2) /
                                                std::abs(djdt));
                }
            }
            cr.add(5, "dissipation identity (n=1)", worst <= 1e-2,
                   "worst rel dev " + sci(worst));
        }
        {  // 6. concavity of N^(a/(1-a))
            double worst = -1e300;
            for (const auto* id :
                 {"closed_circle_a07", "closed_circle_a2", "closed_ellipse_a2"}) {
                const auto& c = b.closed.at(id);
                auto cc = closed::check_concavity(c.res.records, c.cfg.alpha);
                for (double dd : cc.dd) worst = std::max(worst, dd / cc.scale);
            }
            cr.add(6, "entropy power concavity", worst <= 1e-6, "max scaled dd " + sci(worst));
        }
        {  // 7. normal-wise Harnack at t1=0.05, t2=0.1
            double worst = 1e300;
            for (const auto& [id, c] : b.closed) {
                if (c.res.snapshots.size() < 2) continue;
                worst = std::min(worst, closed::check_harnack(c.res.snapshots[0],
                                                              c.res.snapshots[1]));
            }
            cr.add(7, "Harnack lower bound", worst >= -1e-3, "min slack " + sci(worst));
        }
        {  // 8. grim-reaper convergence
            const auto& g = b.graph.at("graph_reaper_A");
            const auto& last = g.res.convergence.back();
            double rel = last.speed_err / g.res.lambda_target;
            bool pass = rel <= 0.02 && last.profile_err <= 1e-2 && g.seconds <= 120.0;
            cr.add(8, "grim-reaper convergence", pass,
                   "speed err " + pct(rel) + ", profile " + sci(last.profile_err) + ", " +
                       sci(g.seconds) + "s",
                   g.seconds);
        }
        {  // 9. speed formula: Lambda routes, shooting, flow
            const auto& gd = b.graph.at("graph_disk");
            double flow_rel = std::abs(gd.res.convergence.back().center_speed - 2.0) / 2.0;
            double shoot_rel = std::abs(b.disk_shot.lambda - 2.0) / 2.0;
            bool pass = b.lambda_grid_ok && shoot_rel <= 0.005 && flow_rel <= 0.02;
            cr.add(9, "speed formula", pass,
                   "Lambda grid worst " + sci(b.lambda_grid_worst) + ", shooting " +
                       pct(shoot_rel) + ", flow " + pct(flow_rel));
        }
        {  // 10. translator characterization
            double want = std::abs(0.25 - 1.0 / std::sqrt(2.0));
            double control_err = std::abs(b.control_check.residual_sup - want);
            bool pass = b.disk_check.residual_sup <= 1e-3 &&
                        b.disk_check.t_deviation <= 1e-3 * b.disk_shot.lambda &&
                        b.grim_check.residual_sup <= 1e-3 &&
                        b.grim_check.t_deviation <= 1e-3 * b.grim.lambda &&
                        control_err <= 1e-3;
            cr.add(10, "translator characterization", pass,
                   "residuals " + sci(b.grim_check.residual_sup) + "/" +
                       sci(b.disk_check.residual_sup) + ", T dev " +
                       sci(b.disk_check.t_deviation) + ", control err " + sci(control_err));
        }
        {  // 11. uniqueness of the limit up to vertical shift
            const auto& A = b.graph.at("graph_reaper_A").res.final_state;
            const auto& B = b.graph.at("graph_reaper_B").res.final_state;
            const DomainGrid& grid = *A.grid;
            double mean = 0.0;
            int cnt = 0;
            for (std::size_t k = 0; k < grid.size(); ++k)
                if (std::abs(grid.x[k]) <= 0.5) {
                    mean += A.u[k] - B.u[k];
                    ++cnt;
                }
            mean /= cnt;
            double dev = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k)
                if (std::abs(grid.x[k]) <= 0.5)
                    dev = std::max(dev, std::abs(A.u[k] - B.u[k] - mean));
            cr.add(11, "uniqueness of the limit", dev <= 1e-2, "sup dev " + sci(dev));
        }
        {  // 12. interior estimates, qualitative
            const auto& g = b.graph.at("graph_reaper_A").res;
            double min_ut = 1e300, k1 = 0.0, kmin = 1e300, worst_inc = 0.0, prev = 1e300;
            for (const auto& r : g.interior) {
                if (r.t >= 1.0) {
                    min_ut = std::min(min_ut, r.min_ut);
                    kmin = std::min(kmin, 1.0 / r.max_inv_kmin);
                }
                if (std::abs(r.t - 1.0) <= 0.025) k1 = 1.0 / r.max_inv_kmin;
                if (r.t >= 2.0) {
                    if (prev < 1e300 && r.max_inv_nu > prev)
                        worst_inc = std::max(worst_inc, (r.max_inv_nu - prev) / prev);
                    prev = r.max_inv_nu;
                }
            }
            bool pass = min_ut > 0.0 && worst_inc <= 1e-9 && kmin >= 0.5 * k1;
            cr.add(12, "interior estimates", pass,
                   "min u_t " + sci(min_ut) + ", grad uptick " + sci(worst_inc) +
                       ", kmin ratio " + sci(kmin / k1));
        }
        {  // 13. dissipation vanishing
            const auto& g = b.graph.at("graph_reaper_A");
            double d1 = 0.0, tail = 0.0;
            for (const auto& te : g.res.tech) {
                if (std::abs(te.t - 1.0) <= 0.025) d1 = te.dissipation;
                if (te.t >= 10.0) tail = std::max(tail, te.dissipation);
            }
            bool pass = d1 > 0.0 && tail <= 0.1 * d1;
            cr.add(13, "dissipation vanishing", pass,
                   "t=1: " + sci(d1) + ", tail max " + sci(tail));
        }
    }
    {  // 14. determinism: rerun the whole artifact tree and compare bytes
        fs::path pass2 = out / "rerun";
        fs::remove_all(pass2);
        run_cases(suite, pass2, tol);
        std::string why;
        bool same = tree_equal(pass1, pass2, why);
        fs::remove_all(pass2);
        cr.add(14, "determinism", same, same ? "byte-identical artifact trees" : why);
    }
    return cr.out;
}

}  // namespace gcf::verify
