#pragma once

#include "srlnc/region.hpp"

namespace srlnc {

struct RaySolve {
    double tau = 0;       // boundary scale along the requested direction
    LinearProgram lp;     // region LP extended with the ray variable
    LpSolution sol;
};

// Finds the boundary of a region LP along the ray through (r1, r2):
// maximizes tau subject to R1 = tau*r1, R2 = tau*r2. The solved operation
// frequencies form a schedule whose per-stage capacity exceeds the
// requested rates by the factor tau.
RaySolve solve_rate_ray(const RegionProblem& p, double r1, double r2);

struct SupportSolve {
    double min_support = 0;  // smallest operation frequency in the schedule
    LinearProgram lp;
    LpSolution sol;
    bool feasible = false;
};

// Picks a schedule for fixed rates that keeps every operation frequency
// above a floor (the largest feasible one, capped) while spending as
// little of the time budget as possible. The universal support lets the
// simulator mop up straggler packets whose planned consumers are
// pair-blocked near the end of a run; the saved budget supplies the slots.
SupportSolve solve_with_support(const RegionProblem& p, double r1, double r2,
                                double support_cap = 2e-4);

}  // namespace srlnc
