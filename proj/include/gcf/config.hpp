#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gcf/closed_flow.hpp"
#include "gcf/graph_flow.hpp"

namespace gcf {

// Check tolerances with their defaults. Every value is pinned here and echoed
// into the summary artifacts so pass/fail stays recomputable.
struct Tolerances {
    double first_derivative = 1e-2;   // |dN/dt - (a-1)J| <= tol * max(|J|, 1e-6)
    double monotonicity = 1e-3;       // slack2 >= -tol * (J^2/N)
    double equality = 1e-3;           // round shapes: |slack2| <= tol * (J^2/N)
    double concavity = 1e-6;          // dd <= tol * max|M| / span^2
    double harnack = 1e-3;            // min ratio slack >= -tol
    double dissipation = 1e-2;        // n=1: |dJ/dt - 2a D2| <= tol * |dJ/dt|
    double comparison = 1e-3;         // violations <= tol * (1 + lambda t)
    double time_harnack = 1e-3;       // graph u_t harnack slack >= -tol
    double speed_rel = 0.02;          // |u_t(x0) - lambda| <= tol * lambda
    double profile_sup = 1e-2;        // shifted profile sup error
    double gauss_bonnet = 1e-6;       // alpha=1: |N - omega_n| / omega_n
    double round_law = 1e-3;          // round shapes: radius-law relative error
    double flatness = 1e-12;          // round shapes: spatial sup - inf of h
    double dissipation_tail = 0.1;    // graph: tail max / value at t=1
    double gradient_monotone = 1e-9;  // allowed relative uptick after t=2
};

// Flat key=value run configuration: one schema for every subcommand,
// unknown keys rejected. See configs/example_closed.cfg.
struct FlowConfig {
    std::string mode = "closed";  // closed | graph | soliton | lambda
    std::string run_id = "run";
    std::string out_dir = "out";
    int n = 1;
    double alpha = 1.0;
    std::uint64_t seed = 1;

    // closed flow
    std::string shape = "circle";  // circle | ellipse | sphere | spheroid
    double radius = 1.0;
    double axis_a = 1.0, axis_b = 0.6;
    std::size_t grid_size = 512;
    double c_safe = 0.2;
    double dt_cap = 1e-3;
    double sample_dt = 1e-3;
    double stop_time = 0.12;
    double w_floor = 1e-3;
    double harnack_t1 = 0.05, harnack_t2 = 0.1;

    // graph flow / soliton
    std::string domain = "interval";  // interval | disk | polygon
    double half_width = 1.0;
    double disk_radius = 1.0;
    std::string polygon;  // "x1,y1;x2,y2;..."
    double delta = 1.0 / 128.0;
    std::string boundary = "barrier";  // pinned | barrier
    double eps0 = 0.01;
    std::string initial = "steep_cap";  // translator | steep_cap | paraboloid_cap
    double perturb_amp = 0.2;
    double offset = 0.0;
    double margin = 0.25;
    double t_end = 15.0;
    double graph_sample_dt = 0.05;
    bool tech_entropies = false;

    std::string plots;  // comma-separated series names to render

    Tolerances tol;

    std::vector<std::pair<std::string, std::string>> echo;  // parsed lines, file order

    void validate() const;
    DomainSpec domain_spec() const;
    closed::ClosedRunConfig to_closed() const;
    graph::GraphRunConfig to_graph() const;  // reference profile left empty
};

FlowConfig parse_config_text(const std::string& text);
FlowConfig load_config(const std::string& path);

}  // namespace gcf
