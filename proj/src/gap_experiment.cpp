#include "srlnc/gap_experiment.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "srlnc/inner_bound.hpp"
#include "srlnc/outer_bound.hpp"

namespace srlnc {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double outer_sum_rate(const ChannelSpec& ch) {
    return maximize_weighted(build_outer_lp(ch), 1.0, 1.0).objective;
}

double inner_sum_rate(const ChannelSpec& ch, bool general) {
    RegionProblem p = general ? build_inner_general_lp(ch) : build_inner_strong_lp(ch);
    return maximize_weighted(p, 1.0, 1.0).objective;
}

GapSummary run_gap_experiment(int samples, GapMode mode, uint64_t seed, int threads,
                              std::vector<GapRecord>* records) {
    if (samples < 1) throw std::invalid_argument("gap experiment needs at least one sample");
    std::vector<GapRecord> recs(samples);

    auto work = [&](int index) {
        GapRecord& rec = recs[index];
        rec.index = index;
        std::mt19937_64 rng(splitmix64(seed + uint64_t(index)));
        try {
            ChannelSpec ch = sample_channel(rng, SampleMode::uniform_independent,
                                            mode == GapMode::strong_prop2
                                                ? SampleConstraint::strong_relaying
                                                : SampleConstraint::none);
            rec.channel_json = channel_to_json(ch);
            rec.outer = outer_sum_rate(ch);
            if (rec.outer < 1e-9) {
                rec.skipped = true;  // relative gap undefined
                return;
            }
            rec.inner = inner_sum_rate(ch, mode == GapMode::arbitrary_prop3);
            rec.gap = (rec.outer - rec.inner) / rec.outer;
        } catch (const std::exception&) {
            rec.skipped = true;
        }
    };

    threads = std::max(1, threads);
    if (threads == 1) {
        for (int i = 0; i < samples; ++i) work(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next++; i < samples; i = next++) work(i);
            });
        for (auto& th : pool) th.join();
    }

    GapSummary s;
    s.samples = samples;
    for (const GapRecord& r : recs) {
        if (r.skipped) {
            ++s.skipped;
            continue;
        }
        ++s.solved;
        s.sorted_gaps.push_back(r.gap);
    }
    std::sort(s.sorted_gaps.begin(), s.sorted_gaps.end());
    if (s.solved > 0) {
        auto frac_below = [&](double thr) {
            return double(std::lower_bound(s.sorted_gaps.begin(), s.sorted_gaps.end(), thr) -
                          s.sorted_gaps.begin()) /
                   double(s.solved);
        };
        s.frac_below_008pct = frac_below(0.0008);
        s.frac_below_004pct = frac_below(0.0004);
    }
    if (records) *records = std::move(recs);
    return s;
}

}  // namespace srlnc
