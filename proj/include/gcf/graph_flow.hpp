#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gcf/curvature.hpp"
#include "gcf/domain.hpp"
#include "gcf/soliton.hpp"

namespace gcf::graph {

// Boundary handling for the truncated complete graph. The ring carries
// Dirichlet data transported linearly in time:
//   pinned_translator: ring = u_Omega + offset + lambda * t
//   barrier:           ring = u0|ring + lambda_Omega * t, with the
//                      eps0-scaled barrier pair built for monitoring.
enum class BoundaryMode { pinned_translator, barrier };

struct GraphFlowState {
    std::shared_ptr<const DomainGrid> grid;
    std::vector<double> u;
    double t = 0.0;
    double alpha = 1.0;
    BoundaryMode mode = BoundaryMode::pinned_translator;
    double eps0 = 0.0;
    std::vector<double> ring_base;  // per-node; meaningful on the ring
    double ring_speed = 0.0;

    int n() const { return grid->spec.n; }
};

// Scaled translators sandwiching the solution (comparison principle):
// lower = ubar - L + (1-eps0) lambda t, upper = uhat + L + (1+eps0) lambda t,
// where uhat/ubar are u_Omega rescaled by (1 +- eps0)^(1/(n alpha)).
struct BarrierPair {
    soliton::SolitonProfile base;
    double eps0 = 0.0;
    double lambda = 0.0;
    double L = 0.0;
    double scale_up = 1.0;  // (1+eps0)^(1/(n alpha))
    double scale_dn = 1.0;  // (1-eps0)^(1/(n alpha))

    double upper(double r, double t) const;
    double lower(double r, double t) const;
    double upper_speed() const { return (1.0 + eps0) * lambda; }
    double lower_speed() const { return (1.0 - eps0) * lambda; }
};

BarrierPair make_barriers(const DomainSpec& domain, double eps0,
                          const soliton::SolitonProfile& u_omega,
                          const DomainGrid& grid, const std::vector<double>& u0);

struct ComparisonCheck {
    double lower_violation = 0.0;  // max over Omega' of (lower - u)+
    double upper_violation = 0.0;  // max over Omega' of (u - upper)+
    std::int32_t worst_node = -1;
};
ComparisonCheck check_comparison(const GraphFlowState& s, const BarrierPair& b);

struct InteriorEstimateRecord {
    double t = 0.0;
    double min_ut = 0.0, max_ut = 0.0;
    double max_inv_nu = 0.0;    // max of <-nu,e>^{-1}
    double max_inv_kmin = 0.0;  // max of lambda_min^{-1}
    double max_kmax = 0.0;
    double osc = 0.0;  // sup - inf of u over Omega'
};
InteriorEstimateRecord interior_monitor(const GraphFlowState& s, const GraphCurvature& c);

// min over Omega' of ut2 - (t1/t2)^(na/(1+na)) * ut1; requires t1 >= 0.01.
double check_time_harnack(const DomainGrid& grid, const std::vector<double>& ut1, double t1,
                          const std::vector<double>& ut2, double t2, double alpha);

struct TechnicalEntropies {
    double t = 0.0;
    double speed_mass = 0.0;    // int over Omega' of K^a dg
    double accel_mass = 0.0;    // int over Omega' of P K^a dg
    double accel_scaled = 0.0;  // (alpha-1) * accel_mass
    double dissipation = 0.0;   // int over Omega' of P^2 K^a dg
    int matched = 0;
    int failed = 0;
};
// P from the Gauss-map time difference between two states at spacing
// next.t - prev.t, with normals matched by inverting the gradient map.
TechnicalEntropies graph_technical_entropies(const GraphFlowState& prev,
                                             const GraphFlowState& next);

// Per-node P between two states (NaN where matching failed or skipped).
std::vector<double> match_normals_p(const GraphFlowState& prev, const GraphFlowState& next,
                                    int& matched, int& failed);

struct ConvergenceRow {
    double t = 0.0;
    double center_speed = 0.0;
    double speed_err = 0.0;    // |u_t(x0) - lambda_Omega|
    double profile_err = 0.0;  // sup over Omega' of shifted profile mismatch
};

double dt_stable_graph(const DomainGrid& g, const GraphCurvature& c, double alpha,
                       double c_safe = 0.2);
GraphFlowState step_graph(const GraphFlowState& s, double dt);

enum class InitialData {
    translator,          // exact soliton + offset
    dented_translator,   // soliton minus an interior Gaussian dent
    steep_cap,           // tangent-extended steepened soliton + bump
    paraboloid_cap,      // quadratic cap
};

// lambda_hint sizes the paraboloid cap when no soliton is available
// (polygon domains); the soliton-based kinds ignore it.
std::vector<double> make_initial(const DomainGrid& grid, const soliton::SolitonProfile& sol,
                                 InitialData kind, double perturb_amp, std::uint64_t seed,
                                 double offset = 0.0, double lambda_hint = 0.0);

struct GraphRunConfig {
    DomainSpec domain = DomainSpec::interval(1.0, 0.25);
    double alpha = 1.0;
    double delta = 1.0 / 128.0;
    BoundaryMode mode = BoundaryMode::barrier;
    double eps0 = 0.01;
    InitialData initial = InitialData::steep_cap;
    double perturb_amp = 0.2;
    std::uint64_t seed = 1;
    double offset = 0.0;  // pinned mode vertical offset
    double c_safe = 0.2;
    double dt_cap = 1e-2;
    double sample_dt = 0.05;
    double t_end = 15.0;
    double edge_trim_cells = -1.0;  // <0: auto (0 for n=1, 3 cells for n=2)
    double profile_margin = -1.0;   // window for profile/speed rows; <0: domain margin
    bool tech_entropies = false;
    soliton::SolitonProfile reference;  // u_Omega for barriers/targets
    bool have_reference = false;
};

struct GraphRunResult {
    std::vector<InteriorEstimateRecord> interior;
    std::vector<ConvergenceRow> convergence;
    std::vector<TechnicalEntropies> tech;
    std::vector<double> harnack_slack;  // per sample vs previous sample (NaN early)
    std::vector<ComparisonCheck> comparison;
    std::vector<double> sample_times;
    std::vector<std::vector<double>> ut_snapshots;
    GraphFlowState final_state;
    std::string status;
    long steps = 0;
    double lambda_target = 0.0;
    BarrierPair barriers;
    bool have_barriers = false;
};

GraphRunResult run_graph(const GraphRunConfig& cfg);

}  // namespace gcf::graph
