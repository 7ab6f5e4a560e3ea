#pragma once

#include "srlnc/channel.hpp"
#include "srlnc/region.hpp"

namespace srlnc {

struct OuterOptions {
    // Decodability ties y8 with y10 and y9 with y11 (delivering M1 makes
    // A10 collapse onto A8, and M2 collapses A11 onto A9). An alternative
    // pairing of y8 with y11 is kept behind this flag for comparison; it
    // ties ranks of unrelated subspaces and is not a sound upper bound.
    bool literal_eq45 = false;
};

// Capacity outer bound: one frequency variable per feasible source type
// (154) and per relay type (18), fourteen rank variables tied by the
// rank-conversion equalities, the time-sharing budget, and the
// decodability equalities.
RegionProblem build_outer_lp(const ChannelSpec& ch, const OuterOptions& opt = {});

RatePoint outer_max(const ChannelSpec& ch, double w1, double w2,
                    const OuterOptions& opt = {});
RegionBoundary outer_region(const ChannelSpec& ch, int weight_count,
                            const OuterOptions& opt = {});

}  // namespace srlnc
