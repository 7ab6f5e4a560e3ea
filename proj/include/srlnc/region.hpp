#pragma once

#include <string>
#include <vector>

#include "srlnc/lp.hpp"

namespace srlnc {

struct RatePoint {
    double r1 = 0, r2 = 0;
};

struct BoundaryPoint {
    double w1, w2;     // sweep direction
    double r1, r2;     // maximizing rate point
    double objective;  // w1*r1 + w2*r2
};

using RegionBoundary = std::vector<BoundaryPoint>;

// A rate-region LP: every feasible (R1,R2) projection of the program is in
// the region. The two rate variables are identified by index.
struct RegionProblem {
    LinearProgram lp;
    int r1_var = -1;
    int r2_var = -1;
    std::string tag;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// count >= 2 spans the closed positive quadrant by angle; count == 1 gives
// the single direction (1,0).
std::vector<std::pair<double, double>> weight_grid(int count);

// Maximizes w1*R1 + w2*R2 over the problem. Throws SolverError unless optimal.
BoundaryPoint maximize_weighted(const RegionProblem& p, double w1, double w2);

RegionBoundary sweep_boundary(const RegionProblem& p,
                              const std::vector<std::pair<double, double>>& weights);

}  // namespace srlnc
