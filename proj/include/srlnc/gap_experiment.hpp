#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srlnc/channel.hpp"

namespace srlnc {

enum class GapMode { strong_prop2, arbitrary_prop3 };

struct GapRecord {
    int index = 0;
    std::string channel_json;
    double outer = 0, inner = 0;
    double gap = 0;  // (outer - inner) / outer
    bool skipped = false;  // zero-capacity channel or solver failure
};

struct GapSummary {
    int samples = 0, solved = 0, skipped = 0;
    double frac_below_008pct = 0;  // relative gap < 0.0008
    double frac_below_004pct = 0;  // relative gap < 0.0004
    std::vector<double> sorted_gaps;
};

// Per-sample seeds are derived from the base seed and the sample index, so
// the output is independent of the thread count and reproducible.
GapSummary run_gap_experiment(int samples, GapMode mode, uint64_t seed, int threads,
                              std::vector<GapRecord>* records = nullptr);

// Sum-rate optima used by the experiment; exposed for tests.
double outer_sum_rate(const ChannelSpec& ch);
double inner_sum_rate(const ChannelSpec& ch, bool general);

}  // namespace srlnc
