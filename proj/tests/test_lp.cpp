#include <random>
#include <sstream>

#include "doctest.h"
#include "rational_simplex.hpp"
#include "srlnc/lp.hpp"

using namespace srlnc;

namespace {

// Random bounded-feasible LP: non-negative right-hand sides keep the origin
// feasible, a box row keeps it bounded; a few equality rows exercise phase 1.
LinearProgram random_lp(std::mt19937_64& rng, int max_vars = 14, int max_rows = 10) {
    LinearProgram lp;
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53;
    };
    const int n = 2 + int(rng() % max_vars);
    for (int j = 0; j < n; ++j) lp.add_variable("v" + std::to_string(j));
    const int m = 1 + int(rng() % max_rows);
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < n; ++j)
            if (rng() % 3) terms.push_back({j, uni(-1.0, 2.0)});
        if (terms.empty()) terms.push_back({int(rng() % n), 1.0});
        lp.add_constraint("c" + std::to_string(i), std::move(terms), Relation::le,
                          uni(0.0, 3.0));
    }
    if (rng() % 2) {
        // equality through a feasible point: sum of a few vars equals a
        // reachable small value
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < std::min(n, 3); ++j) terms.push_back({j, 1.0});
        lp.add_constraint("eq", std::move(terms), Relation::eq, 0.0);
    }
    std::vector<std::pair<int, double>> box;
    for (int j = 0; j < n; ++j) box.push_back({j, 1.0});
    lp.add_constraint("box", std::move(box), Relation::le, uni(1.0, 5.0));
    for (int j = 0; j < n; ++j) lp.set_objective(j, uni(-0.5, 1.5));
    return lp;
}

}  // namespace

TEST_CASE("trivial programs") {
    LinearProgram empty;
    empty.add_variable("x");
    LpSolution s0 = solve(empty);
    CHECK(s0.status == LpStatus::optimal);
    CHECK(s0.objective == 0.0);

    LinearProgram lp;
    int x = lp.add_variable("x");
    lp.add_constraint("cap", {{x, 1.0}}, Relation::le, 1.0);
    lp.set_objective(x, 1.0);
    LpSolution s = solve(lp);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infeasible and unbounded detection") {
    LinearProgram inf;
    int x = inf.add_variable("x");
    inf.add_constraint("neg", {{x, 1.0}}, Relation::le, -1.0);
    CHECK(solve(inf).status == LpStatus::infeasible);

    LinearProgram unb;
    int y = unb.add_variable("y");
    unb.set_objective(y, 1.0);
    CHECK(solve(unb).status == LpStatus::unbounded);
}

TEST_CASE("equalities via phase one") {
    LinearProgram lp;
    int x = lp.add_variable("x");
    int y = lp.add_variable("y");
    lp.add_constraint("sum", {{x, 1.0}, {y, 1.0}}, Relation::eq, 1.0);
    lp.set_objective(x, 1.0);
    LpSolution s = solve(lp);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.x[y] == doctest::Approx(0.0));
}

TEST_CASE("determinism: identical programs give identical solutions") {
    std::mt19937_64 rng(404);
    for (int t = 0; t < 20; ++t) {
        LinearProgram lp = random_lp(rng);
        LpSolution a = solve(lp), b = solve(lp);
        CHECK(a.objective == b.objective);
        CHECK(a.x == b.x);
    }
}

TEST_CASE("reference solver agreement on random feasible programs") {
    std::mt19937_64 rng(2024);
    int optimal = 0;
    for (int t = 0; t < 50; ++t) {
        LinearProgram lp = random_lp(rng);
        LpSolution mine = solve(lp);
        srlnc_test::RationalSolution ref = srlnc_test::rational_solve(lp);
        REQUIRE(mine.status == ref.status);
        if (mine.status == LpStatus::optimal) {
            ++optimal;
            CHECK(mine.objective == doctest::Approx(ref.objective.get_d()).epsilon(1e-7));
        }
    }
    CHECK(optimal >= 45);  // the generator keeps the origin feasible
}

TEST_CASE("weak duality spot check") {
    std::mt19937_64 rng(505);
    for (int t = 0; t < 20; ++t) {
        LinearProgram lp = random_lp(rng);
        LpSolution s = solve(lp);
        REQUIRE(s.status == LpStatus::optimal);
        // random feasible points by scaling the optimum toward the origin
        for (double lambda : {0.0, 0.25, 0.5, 0.99}) {
            double value = 0;
            for (int j = 0; j < lp.num_variables(); ++j)
                value += lp.objective()[j] * s.x[j] * lambda;
            bool feasible = true;
            for (const auto& c : lp.constraints()) {
                double v = 0;
                for (auto [var, coeff] : c.terms) v += coeff * s.x[var] * lambda;
                if (c.rel == Relation::le ? v > c.rhs + 1e-9 : std::fabs(v - c.rhs) > 1e-9)
                    feasible = false;
            }
            if (feasible) CHECK(value <= s.objective + 1e-9);
        }
    }
}

TEST_CASE("lp format writer") {
    LinearProgram lp;
    int x = lp.add_variable("x");
    int y = lp.add_variable("y");
    lp.add_constraint("cap", {{x, 1.0}, {y, -2.5}}, Relation::le, 1.0);
    lp.add_constraint("tie", {{x, 1.0}, {y, 1.0}}, Relation::eq, 0.5);
    lp.set_objective(x, 1.0);
    lp.set_objective(y, 1.0);
    std::ostringstream out;
    write_lp_format(lp, out, "demo");
    std::string text = out.str();
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("cap: x - 2.5 y <= 1") != std::string::npos);
    CHECK(text.find("tie: x + y = 0.5") != std::string::npos);
    CHECK(text.find("0 <= y") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
