// Acceptance suite: one line per criterion, measured against the stated
// tolerances and runtime budgets. Exits with the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rational_simplex.hpp"
#include "srlnc/coding_types.hpp"
#include "srlnc/gap_experiment.hpp"
#include "srlnc/inner_bound.hpp"
#include "srlnc/outer_bound.hpp"
#include "srlnc/ray.hpp"
#include "srlnc/simulator.hpp"

using namespace srlnc;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int index, bool ok, const std::string& what, double secs, double budget) {
    bool in_budget = secs <= budget;
    if (!ok || !in_budget) ++failures;
    std::printf("criterion %d: %s  %s (%.1fs of %.0fs budget)\n", index,
                ok && in_budget ? "PASS" : "FAIL", what.c_str(), secs, budget);
    std::fflush(stdout);
}

ChannelSpec paper_channel() { return ChannelSpec::independent(0.15, 0.25, 0.8, 0.75, 0.85); }

void criterion1_type_lists() {
    Timer t;
    const auto& lambda = feasible_types();
    const auto& lambda_r = feasible_types_relay();
    bool ok = lambda.size() == 154 && lambda_r.size() == 18;
    ok = ok && check_feasibility_derivation().matches;
    // the CLI prints the same strings in the same order
    std::vector<std::string> printed;
    for (CodingType ct : lambda) printed.push_back(encode_type(ct));
    ok = ok && std::is_sorted(printed.begin(), printed.end());
    ok = ok && printed.front() == "00000" && printed.back() == "F7F71";
    std::set<std::string> relay;
    for (CodingType ct : lambda_r) relay.insert(encode_type(ct));
    for (const auto& s : printed)
        if (s.back() == '1' && !relay.count(s)) ok = false;
    report(1, ok, "coding-type lists consistent with the lattice closure (154 + 18)", t.seconds(),
           1.0);
}

void criterion2_witness_oracle() {
    Timer t;
    auto seen = feasibility_witness_oracle(100000, 4, 4, 20240814);
    std::set<CodingType> lambda(feasible_types().begin(), feasible_types().end());
    bool inside = true;
    for (CodingType ct : seen) inside = inside && lambda.count(ct) == 1;
    bool ok = inside && int(seen.size()) >= 150;
    std::ostringstream what;
    what << "witness oracle: " << seen.size() << " distinct types, all feasible";
    report(2, ok, what.str(), t.seconds(), 60.0);
}

void criterion_gap(int index, GapMode mode, const char* label) {
    Timer t;
    GapSummary s = run_gap_experiment(1000, mode, 424242, 1);
    double frac = mode == GapMode::strong_prop2 ? s.frac_below_008pct : s.frac_below_004pct;
    bool ok = s.solved >= 990 && frac >= 0.80;
    bool nonneg = s.sorted_gaps.empty() || s.sorted_gaps.front() >= -1e-9;
    std::ostringstream what;
    what << label << ": fraction " << frac << " (need >= 0.80), " << s.solved
         << " solved, min gap " << (s.sorted_gaps.empty() ? 0.0 : s.sorted_gaps.front());
    report(index, ok && nonneg, what.str(), t.seconds(), 600.0);
}

void criterion5_region_ordering() {
    Timer t;
    ChannelSpec ch = paper_channel();
    auto weights = weight_grid(32);
    std::vector<RegionBoundary> schemes;
    for (int s = 1; s <= 6; ++s)
        schemes.push_back(sweep_boundary(baseline_region_lp(Scheme(s), ch), weights));
    RegionBoundary inner = sweep_boundary(build_inner_strong_lp(ch), weights);
    RegionBoundary outer = sweep_boundary(build_outer_lp(ch), weights);
    bool ok = true;
    for (size_t k = 0; k < weights.size(); ++k) {
        ok = ok && schemes[0][k].objective <= schemes[1][k].objective + 1e-9;
        ok = ok && schemes[2][k].objective <= schemes[3][k].objective + 1e-9;
        for (int s = 0; s < 6; ++s)
            ok = ok && schemes[s][k].objective <= inner[k].objective + 1e-9;
        ok = ok && inner[k].objective <= outer[k].objective + 1e-9;
    }
    double margin = maximize_weighted(build_inner_strong_lp(ch), 1, 1).objective -
                    maximize_weighted(baseline_region_lp(Scheme::butterfly_only, ch), 1, 1)
                        .objective;
    ok = ok && std::fabs(margin - 0.010985902956719) < 1e-6 && margin > 0;
    std::ostringstream what;
    what << "evaluation-channel orderings at 32 angles; butterfly-only shortfall " << margin;
    report(5, ok, what.str(), t.seconds(), 30.0);
}

void criterion6_dominance() {
    Timer t;
    bool ok = true;
    for (int k = 0; k < 200; ++k) {
        std::mt19937_64 rng(5000 + k);
        ChannelSpec ch = sample_channel(rng, SampleMode::uniform_independent,
                                        SampleConstraint::strong_relaying);
        double outer = outer_sum_rate(ch);
        double strong = inner_sum_rate(ch, false);
        double general = inner_sum_rate(ch, true);
        ok = ok && strong <= outer + 1e-9 && general >= strong - 1e-9;
    }
    for (int k = 0; k < 200; ++k) {
        std::mt19937_64 rng(6000 + k);
        ChannelSpec ch = sample_channel(rng, SampleMode::uniform_independent);
        ok = ok && inner_sum_rate(ch, true) <= outer_sum_rate(ch) + 1e-9;
    }
    report(6, ok, "outer dominates the matching inner bound on 200 + 200 channels",
           t.seconds(), 600.0);
}

void criterion7_simulator() {
    Timer t;
    ChannelSpec ch = paper_channel();
    RegionProblem p = build_inner_strong_lp(ch);
    BoundaryPoint best = maximize_weighted(p, 1, 1);
    SupportSolve sched = solve_with_support(p, 0.98 * best.r1, 0.98 * best.r2);
    bool ok = sched.feasible;
    int full = 0, agree = 0, runs = 0;
    for (uint64_t seed = 1; ok && seed <= 20; ++seed) {
        SimConfig cfg = config_from_lp_solution(ch, sched.lp, sched.sol.x, 200000, 1.0,
                                                seed, 20000);
        SimReport rep = run(cfg);  // throws if any periodic audit fails
        ++runs;
        if (rep.bookkeeping_complete && rep.rank_complete) ++full;
        if (rep.views_agree) ++agree;
    }
    ok = ok && runs == 20 && full >= 19 && agree == 20;
    std::ostringstream what;
    what << "achievability runs at 98% of the strong bound: " << full
         << "/20 fully decoded, rank view agreed in " << agree << "/20, all audits clean";
    report(7, ok, what.str(), t.seconds(), 300.0);
}

void criterion8_lp_oracle() {
    Timer t;
    std::mt19937_64 rng(303030);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53;
    };
    int compared = 0;
    bool ok = true;
    for (int k = 0; k < 50; ++k) {
        LinearProgram lp;
        const int n = 3 + int(rng() % 12);
        for (int j = 0; j < n; ++j) lp.add_variable("v" + std::to_string(j));
        const int m = 2 + int(rng() % 8);
        for (int i = 0; i < m; ++i) {
            std::vector<std::pair<int, double>> terms;
            for (int j = 0; j < n; ++j)
                if (rng() % 3) terms.push_back({j, uni(-1.0, 2.0)});
            if (terms.empty()) terms.push_back({int(rng() % n), 1.0});
            lp.add_constraint("c" + std::to_string(i), std::move(terms), Relation::le,
                              uni(0.0, 4.0));
        }
        std::vector<std::pair<int, double>> box;
        for (int j = 0; j < n; ++j) box.push_back({j, 1.0});
        lp.add_constraint("box", std::move(box), Relation::le, uni(1.0, 6.0));
        for (int j = 0; j < n; ++j) lp.set_objective(j, uni(-0.5, 1.5));

        LpSolution mine = solve(lp);
        srlnc_test::RationalSolution ref = srlnc_test::rational_solve(lp);
        if (mine.status != ref.status) {
            ok = false;
            continue;
        }
        if (mine.status == LpStatus::optimal) {
            ++compared;
            if (std::fabs(mine.objective - ref.objective.get_d()) > 1e-7) ok = false;
        }
    }
    std::ostringstream what;
    what << "simplex vs exact reference on " << compared << " random feasible programs";
    report(8, ok && compared >= 45, what.str(), t.seconds(), 120.0);
}

}  // namespace

int main() {
    criterion1_type_lists();
    criterion2_witness_oracle();
    criterion_gap(3, GapMode::strong_prop2,
                  "strong-relaying gap CDF, prop-2 inner, gaps under 0.08%");
    criterion_gap(4, GapMode::arbitrary_prop3,
                  "arbitrary-channel gap CDF, prop-3 inner, gaps under 0.04%");
    criterion5_region_ordering();
    criterion6_dominance();
    criterion7_simulator();
    criterion8_lp_oracle();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
