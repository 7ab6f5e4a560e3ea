#include "srlnc/region.hpp"

#include <cmath>

#include "srlnc/ray.hpp"

namespace srlnc {

RaySolve solve_rate_ray(const RegionProblem& p, double r1, double r2) {
    if (r1 < 0 || r2 < 0 || (r1 <= 0 && r2 <= 0))
        throw SolverError("ray direction must be non-negative and nonzero");
    RaySolve out;
    out.lp = p.lp;
    int tau = out.lp.add_variable("tau");
    out.lp.add_constraint("ray_r1", {{p.r1_var, 1.0}, {tau, -r1}}, Relation::eq, 0.0);
    out.lp.add_constraint("ray_r2", {{p.r2_var, 1.0}, {tau, -r2}}, Relation::eq, 0.0);
    out.lp.clear_objective();
    out.lp.set_objective(tau, 1.0);
    out.sol = solve(out.lp);
    if (out.sol.status != LpStatus::optimal)
        throw SolverError("ray LP not optimal for tag " + p.tag);
    out.tau = out.sol.x[tau];
    return out;
}

SupportSolve solve_with_support(const RegionProblem& p, double r1, double r2,
                                double support_cap) {
    // Pass 1: the largest uniform frequency floor the rates allow.
    SupportSolve out;
    out.lp = p.lp;
    const int n = p.lp.num_variables();
    int delta = out.lp.add_variable("delta");
    out.lp.add_constraint("fix_r1", {{p.r1_var, 1.0}}, Relation::eq, r1);
    out.lp.add_constraint("fix_r2", {{p.r2_var, 1.0}}, Relation::eq, r2);
    for (int j = 0; j < n; ++j) {
        if (j == p.r1_var || j == p.r2_var) continue;
        out.lp.add_constraint("sup_" + out.lp.variable_name(j), {{delta, 1.0}, {j, -1.0}},
                              Relation::le, 0.0);
    }
    out.lp.clear_objective();
    out.lp.set_objective(delta, 1.0);
    // Channels with a starved resource make the floor LP badly scaled
    // (its optimum can sit at ~1e-8); degrade to a floor of zero when the
    // solver reports instability there.
    out.min_support = 0;
    try {
        LpSolution pass1 = solve(out.lp);
        if (pass1.status != LpStatus::optimal) {
            out.sol = std::move(pass1);
            return out;
        }
        out.min_support = std::min(pass1.x[delta], support_cap);
    } catch (const LpNumericalError&) {
    }
    // Pass 2: keep a capped floor and spend as few slots as possible, so
    // the slot budget retains slack for straggler deliveries.
    out.lp.add_constraint("floor_delta", {{delta, 1.0}}, Relation::eq, out.min_support);
    out.lp.clear_objective();
    int ts = out.lp.variable("t_s"), tr = out.lp.variable("t_r");
    if (ts >= 0) out.lp.set_objective(ts, -1.0);
    if (tr >= 0) out.lp.set_objective(tr, -1.0);
    try {
        out.sol = solve(out.lp);
    } catch (const LpNumericalError&) {
        out.sol = {};
        return out;  // reported as not feasible; callers fall back
    }
    out.feasible = out.sol.status == LpStatus::optimal;
    return out;
}

std::vector<std::pair<double, double>> weight_grid(int count) {
    std::vector<std::pair<double, double>> w;
    if (count <= 0) return w;
    if (count == 1) {
        w.push_back({1.0, 0.0});
        return w;
    }
    const double half_pi = std::acos(0.0);
    for (int k = 0; k < count; ++k) {
        double theta = half_pi * double(k) / double(count - 1);
        double w1 = std::cos(theta), w2 = std::sin(theta);
        if (std::fabs(w1) < 1e-15) w1 = 0;
        if (std::fabs(w2) < 1e-15) w2 = 0;
        w.push_back({w1, w2});
    }
    return w;
}

BoundaryPoint maximize_weighted(const RegionProblem& p, double w1, double w2) {
    if (w1 < 0 || w2 < 0 || (w1 == 0 && w2 == 0))
        throw SolverError("weights must be non-negative and not both zero");
    LinearProgram lp = p.lp;
    lp.clear_objective();
    lp.set_objective(p.r1_var, w1);
    lp.set_objective(p.r2_var, w2);
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::optimal)
        throw SolverError("region LP not optimal for tag " + p.tag);
    return {w1, w2, sol.x[p.r1_var], sol.x[p.r2_var], sol.objective};
}

RegionBoundary sweep_boundary(const RegionProblem& p,
                              const std::vector<std::pair<double, double>>& weights) {
    RegionBoundary out;
    out.reserve(weights.size());
    for (auto [w1, w2] : weights) out.push_back(maximize_weighted(p, w1, w2));
    return out;
}

}  // namespace srlnc
