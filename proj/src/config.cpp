#include "gcf/config.hpp"

#include <fstream>
#include <sstream>

#include "gcf/common.hpp"

namespace gcf {

static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

static double to_num(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        fail("ConfigInvalid", "key '" + key + "': bad number '" + v + "'");
    }
}

static bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true") return true;
    if (v == "0" || v == "false") return false;
    fail("ConfigInvalid", "key '" + key + "': expected 0/1, got '" + v + "'");
}

FlowConfig parse_config_text(const std::string& text) {
    FlowConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail("ConfigInvalid", "expected key=value: '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        c.echo.emplace_back(key, val);

        if (key == "mode") c.mode = val;
        else if (key == "run_id") c.run_id = val;
        else if (key == "out") c.out_dir = val;
        else if (key == "n") c.n = static_cast<int>(to_num(key, val));
        else if (key == "alpha") c.alpha = to_num(key, val);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_num(key, val));
        else if (key == "shape") c.shape = val;
        else if (key == "radius") c.radius = to_num(key, val);
        else if (key == "axis_a") c.axis_a = to_num(key, val);
        else if (key == "axis_b") c.axis_b = to_num(key, val);
        else if (key == "grid_size") c.grid_size = static_cast<std::size_t>(to_num(key, val));
        else if (key == "c_safe") c.c_safe = to_num(key, val);
        else if (key == "dt_cap") c.dt_cap = to_num(key, val);
        else if (key == "sample_dt") c.sample_dt = to_num(key, val);
        else if (key == "stop_time") c.stop_time = to_num(key, val);
        else if (key == "w_floor") c.w_floor = to_num(key, val);
        else if (key == "harnack_t1") c.harnack_t1 = to_num(key, val);
        else if (key == "harnack_t2") c.harnack_t2 = to_num(key, val);
        else if (key == "domain") c.domain = val;
        else if (key == "half_width") c.half_width = to_num(key, val);
        else if (key == "disk_radius") c.disk_radius = to_num(key, val);
        else if (key == "polygon") c.polygon = val;
        else if (key == "delta") c.delta = to_num(key, val);
        else if (key == "boundary") c.boundary = val;
        else if (key == "eps0") c.eps0 = to_num(key, val);
        else if (key == "initial") c.initial = val;
        else if (key == "perturb_amp") c.perturb_amp = to_num(key, val);
        else if (key == "offset") c.offset = to_num(key, val);
        else if (key == "margin") c.margin = to_num(key, val);
        else if (key == "t_end") c.t_end = to_num(key, val);
        else if (key == "graph_sample_dt") c.graph_sample_dt = to_num(key, val);
        else if (key == "tech_entropies") c.tech_entropies = to_bool(key, val);
        else if (key == "plots") c.plots = val;
        else if (key == "tol_first_derivative") c.tol.first_derivative = to_num(key, val);
        else if (key == "tol_monotonicity") c.tol.monotonicity = to_num(key, val);
        else if (key == "tol_equality") c.tol.equality = to_num(key, val);
        else if (key == "tol_concavity") c.tol.concavity = to_num(key, val);
        else if (key == "tol_harnack") c.tol.harnack = to_num(key, val);
        else if (key == "tol_dissipation") c.tol.dissipation = to_num(key, val);
        else if (key == "tol_comparison") c.tol.comparison = to_num(key, val);
        else if (key == "tol_time_harnack") c.tol.time_harnack = to_num(key, val);
        else if (key == "tol_speed") c.tol.speed_rel = to_num(key, val);
        else if (key == "tol_profile") c.tol.profile_sup = to_num(key, val);
        else fail("ConfigInvalid", "unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

FlowConfig load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail("ConfigInvalid", "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

void FlowConfig::validate() const {
    if (mode != "closed" && mode != "graph" && mode != "soliton" && mode != "lambda")
        fail("ConfigInvalid", "mode must be closed|graph|soliton|lambda, got '" + mode + "'");
    if (mode == "closed") {
        if (alpha <= 0.0) fail("ConfigInvalid", "closed mode needs alpha > 0");
    } else if (alpha <= 0.5) {
        fail("ConfigInvalid", mode + " mode needs alpha > 1/2");
    }
    if (n != 1 && n != 2) fail("ConfigInvalid", "n must be 1 or 2");
    auto pos = [&](double v, const char* name) {
        if (v <= 0.0) fail("ConfigInvalid", std::string(name) + " must be positive");
    };
    pos(tol.first_derivative, "tol_first_derivative");
    pos(tol.monotonicity, "tol_monotonicity");
    pos(tol.equality, "tol_equality");
    pos(tol.concavity, "tol_concavity");
    pos(tol.harnack, "tol_harnack");
    pos(tol.dissipation, "tol_dissipation");
    pos(tol.comparison, "tol_comparison");
    pos(tol.time_harnack, "tol_time_harnack");
    pos(tol.speed_rel, "tol_speed");
    pos(tol.profile_sup, "tol_profile");
    if (grid_size < 16) fail("ConfigInvalid", "grid_size must be >= 16");
    pos(sample_dt, "sample_dt");
    pos(c_safe, "c_safe");
}

DomainSpec FlowConfig::domain_spec() const {
    if (domain == "interval") return DomainSpec::interval(half_width, margin);
    if (domain == "disk") return DomainSpec::disk(disk_radius, margin);
    if (domain == "polygon") {
        std::vector<std::array<double, 2>> verts;
        std::istringstream ss(polygon);
        std::string pair;
        while (std::getline(ss, pair, ';')) {
            std::size_t comma = pair.find(',');
            if (comma == std::string::npos) fail("ConfigInvalid", "polygon: expected x,y pairs");
            verts.push_back({to_num("polygon", trim(pair.substr(0, comma))),
                             to_num("polygon", trim(pair.substr(comma + 1)))});
        }
        return DomainSpec::polygon(verts, margin);
    }
    fail("ConfigInvalid", "domain must be interval|disk|polygon, got '" + domain + "'");
}

closed::ClosedRunConfig FlowConfig::to_closed() const {
    closed::ClosedRunConfig r;
    r.n = n;
    r.alpha = alpha;
    if (shape == "circle" || shape == "sphere")
        r.shape = (n == 1) ? closed::ClosedShape::circle : closed::ClosedShape::sphere;
    else if (shape == "ellipse") r.shape = closed::ClosedShape::ellipse;
    else if (shape == "spheroid") r.shape = closed::ClosedShape::spheroid;
    else fail("ConfigInvalid", "shape must be circle|ellipse|sphere|spheroid");
    r.radius = radius;
    r.axis_a = axis_a;
    r.axis_b = axis_b;
    r.grid_size = grid_size;
    r.c_safe = c_safe;
    r.dt_cap = dt_cap;
    r.sample_dt = sample_dt;
    r.stop_time = stop_time;
    r.w_floor = w_floor;
    r.snapshot_times = {harnack_t1, harnack_t2};
    return r;
}

graph::GraphRunConfig FlowConfig::to_graph() const {
    graph::GraphRunConfig r;
    r.domain = domain_spec();
    r.alpha = alpha;
    r.delta = delta;
    if (boundary == "pinned") r.mode = graph::BoundaryMode::pinned_translator;
    else if (boundary == "barrier") r.mode = graph::BoundaryMode::barrier;
    else fail("ConfigInvalid", "boundary must be pinned|barrier");
    r.eps0 = eps0;
    if (initial == "translator") r.initial = graph::InitialData::translator;
    else if (initial == "dented_translator") r.initial = graph::InitialData::dented_translator;
    else if (initial == "steep_cap") r.initial = graph::InitialData::steep_cap;
    else if (initial == "paraboloid_cap") r.initial = graph::InitialData::paraboloid_cap;
    else
        fail("ConfigInvalid",
             "initial must be translator|dented_translator|steep_cap|paraboloid_cap");
    r.perturb_amp = perturb_amp;
    r.seed = seed;
    r.offset = offset;
    r.c_safe = c_safe;
    r.dt_cap = dt_cap;
    r.sample_dt = graph_sample_dt;
    r.t_end = t_end;
    r.tech_entropies = tech_entropies;
    return r;
}

}  // namespace gcf
