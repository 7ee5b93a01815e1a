#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "gcf/curvature.hpp"
#include "gcf/sphere_grid.hpp"

namespace gcf::closed {

// Closed strictly convex hypersurface in Gauss-map coordinates: the flow
// acts on the support function as dh/dt = -Kbar^alpha.
struct ClosedFlowState {
    SphereGrid grid;
    std::vector<double> h;
    double t = 0.0;
    double alpha = 1.0;

    int n() const { return grid.n; }
    void validate() const;  // h > 0 and strictly convex
};

// Initial shapes (support functions).
std::vector<double> support_round(const SphereGrid& g, double r);
std::vector<double> support_ellipse(const SphereGrid& g, double a, double b);   // n=1
std::vector<double> support_spheroid(const SphereGrid& g, double eq, double pol);  // n=2

// Chow's Harnack quantity P = b^{ij}P_ij evaluated spatially on the
// sphere grid: P = W^{ij} (Kbar^a)_{;ij} + Kbar^a H, which for n=1 reduces
// to ((K^a)'' + K^a)/W. In one dimension the full tensor norm equals P^2.
struct PFields {
    std::vector<double> p;
    std::vector<double> tensor_sq;  // |P_ij|^2 pullback; n=1 only (= p^2)
    std::vector<double> speed;      // Kbar^alpha per node
    SupportCurvature curv;
};

PFields p_scalar_field(const ClosedFlowState& s);

// Time-difference route to P at fixed normals (Gauss-map coordinates make
// the matching trivial): P ~= (Kbar^a(nu,t+dt) - Kbar^a(nu,t))/(a Kbar^a dt).
std::vector<double> p_time_difference(const ClosedFlowState& s, double dt);

struct EntropyRecord {
    double t = 0.0;
    double N = 0.0;   // total speed  = int K^a dg
    double J = 0.0;   // total accel  = int P K^a dg
    double D2 = 0.0;  // dissipation  = int P^2 K^a dg
    double DT = 0.0;  // tensor dissipation (n=1 only, equals D2)
    double speed_min = 0.0, speed_max = 0.0;
};

EntropyRecord entropies(const ClosedFlowState& s);

double dt_stable(const ClosedFlowState& s, double c_safe = 0.2);
ClosedFlowState step_closed(const ClosedFlowState& s, double dt);

// Series checks. All derivatives are centered differences on a uniform
// sampling grid; the end samples are dropped.
std::vector<double> check_first_derivative(std::span<const EntropyRecord> recs, double alpha);

struct MonotonicityCheck {
    std::vector<double> t;
    std::vector<double> slack1;  // dJ/dt - (1/n + 2a - 1) * D2
    std::vector<double> slack2;  // dJ/dt - (1/n + 2a - 1) * J^2/N
    std::vector<double> scale;   // J^2/N at the same samples
    bool alpha_in_range = true;  // alpha >= (n-1)/(2n)
};
MonotonicityCheck check_monotonicity(std::span<const EntropyRecord> recs, double alpha, int n);

struct ConcavityCheck {
    std::vector<double> t;
    std::vector<double> dd;  // divided second differences of N^(a/(1-a))
    double scale = 0.0;      // max |N^(a/(1-a))| / span^2
};
ConcavityCheck check_concavity(std::span<const EntropyRecord> recs, double alpha);

// min over normals of Kbar^a(nu,t2)/Kbar^a(nu,t1) - (t1/t2)^(na/(1+na))
double check_harnack(const ClosedFlowState& s1, const ClosedFlowState& s2);

enum class ClosedShape { circle, ellipse, sphere, spheroid };

struct ClosedRunConfig {
    int n = 1;
    double alpha = 1.0;
    ClosedShape shape = ClosedShape::circle;
    double radius = 1.0;
    double axis_a = 1.0, axis_b = 1.0;
    std::size_t grid_size = 512;
    double c_safe = 0.2;
    double dt_cap = 1e-3;
    double sample_dt = 1e-3;
    double stop_time = 0.3;
    double w_floor = 1e-3;
    std::vector<double> snapshot_times;  // multiples of sample_dt
};

struct ClosedRunResult {
    std::vector<EntropyRecord> records;
    std::vector<ClosedFlowState> snapshots;
    std::vector<std::vector<double>> speed_snapshots;  // Kbar^a field per sample
    ClosedFlowState final_state;
    std::string status;  // "time_reached" or "extinction"
    long steps = 0;
};

ClosedRunResult run_closed(const ClosedRunConfig& cfg);

// speed helper: pow with fast paths for the common exponents
inline double pow_alpha(double x, double a) {
    if (a == 1.0) return x;
    if (a == 2.0) return x * x;
    if (a == 0.5) return std::sqrt(x);
    return std::pow(x, a);
}

}  // namespace gcf::closed
