#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "rational_bounds.hpp"
#include "srlnc/gap_experiment.hpp"
#include "srlnc/inner_bound.hpp"
#include "srlnc/outer_bound.hpp"

using namespace srlnc;

namespace {

ChannelSpec paper_channel() { return ChannelSpec::independent(0.15, 0.25, 0.8, 0.75, 0.85); }

double sum_rate(const RegionProblem& p) { return maximize_weighted(p, 1, 1).objective; }

std::set<std::string> names_with_sign(const RegionProblem& p, const std::string& con,
                                      int sign) {
    std::set<std::string> out;
    for (const auto& c : p.lp.constraints()) {
        if (c.name != con) continue;
        for (auto [v, coeff] : c.terms)
            if ((sign > 0 && coeff > 0) || (sign < 0 && coeff < 0))
                out.insert(p.lp.variable_name(v));
    }
    return out;
}

}  // namespace

TEST_CASE("variable and constraint counts") {
    RegionProblem strong = build_inner_strong_lp(paper_channel());
    CHECK(strong.lp.num_variables() == 2 + 20 + 9 + 2);
    CHECK(strong.lp.constraints().size() == 19);
    RegionProblem general = build_inner_general_lp(paper_channel());
    CHECK(general.lp.num_variables() == 2 + 26 + 18 + 2);
    CHECK(general.lp.constraints().size() == 19);
    // the strict time-sharing inequality takes its closed form
    for (const RegionProblem* p : {&strong, &general}) {
        const auto& ts1 = p->lp.constraints().front();
        CHECK(ts1.name == "TS1");
        CHECK(ts1.rel == Relation::le);
        CHECK(ts1.rhs == 1.0);
    }
}

TEST_CASE("gap experiment is deterministic for a fixed seed") {
    GapSummary a = run_gap_experiment(12, GapMode::strong_prop2, 99, 1);
    GapSummary b = run_gap_experiment(12, GapMode::strong_prop2, 99, 2);
    CHECK(a.sorted_gaps == b.sorted_gaps);  // thread count must not matter
    CHECK(a.solved == b.solved);
}

TEST_CASE("zero channel supports no rate") {
    ChannelSpec zero;
    zero.s_joint[0] = 1.0;
    zero.r_joint[0] = 1.0;
    CHECK(sum_rate(build_inner_strong_lp(zero)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sum_rate(build_inner_general_lp(zero)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("evaluation-channel fixtures, exact oracle agreement") {
    ChannelSpec ch = paper_channel();
    double strong = sum_rate(build_inner_strong_lp(ch));
    double general = sum_rate(build_inner_general_lp(ch));
    double outer = sum_rate(build_outer_lp(ch));
    CHECK(strong == doctest::Approx(0.529956766586734).epsilon(1e-9));
    CHECK(general == doctest::Approx(0.530028822971030).epsilon(1e-9));
    CHECK(strong <= outer + 1e-9);
    CHECK(general <= outer + 1e-9);

    for (bool g : {false, true}) {
        auto rr = srlnc_test::rational_inner_lp(ch, g);
        rr.lp.obj[rr.r1] = 1;
        rr.lp.obj[rr.r2] = 1;
        auto exact = srlnc_test::rational_solve(rr.lp);
        REQUIRE(exact.status == LpStatus::optimal);
        CHECK((g ? general : strong) ==
              doctest::Approx(exact.objective.get_d()).epsilon(1e-9));
    }
}

TEST_CASE("every constraint coefficient matches the movement tables") {
    // The exact reference LP is assembled by enumerating each operation's
    // packet movements per reception; the production coefficients must
    // agree with those rates bit-for-double-rounding.
    std::mt19937_64 rng(9119);
    ChannelSpec ch = sample_channel(rng, SampleMode::dirichlet_joint);
    srlnc_test::RatChannel rc = srlnc_test::RatChannel::from(ch);
    const char* qname[16] = {"E1", "E2", "A1", "A2", "B1", "B2", "M", "S1",
                             "T1", "S2", "T2", "X0", "X1", "X2", "D1", "D2"};
    for (bool general : {false, true}) {
        RegionProblem prod = general ? build_inner_general_lp(ch) : build_inner_strong_lp(ch);
        for (int q = 0; q < 16; ++q) {
            std::map<std::string, double> want, got;
            for (int k = 0; k < kNumOps; ++k) {
                OpKind op = OpKind(k);
                bool mimic = k >= int(OpKind::m_uc1);
                bool selfmix = k >= int(OpKind::s_sx1_1) && k <= int(OpKind::s_sx2_3);
                if (!general && (mimic || selfmix)) continue;
                mpq_class net = srlnc_test::movement_rates(op, rc)[q];
                if (net == 0) continue;
                std::string name = op_info(op).name;
                if (general && name[0] == 'r') name = "w_r_" + name.substr(2);
                if (general && name[0] == 'm') name = "w_s_" + name.substr(2);
                want[name] = -net.get_d();
            }
            if (q == 14) want["R1"] = 1;
            if (q == 15) want["R2"] = 1;
            if (q == 0) want["R1"] = -1;
            if (q == 1) want["R2"] = -1;
            for (const auto& c : prod.lp.constraints())
                if (c.name == qname[q])
                    for (auto [v, coeff] : c.terms) got[prod.lp.variable_name(v)] += coeff;
            for (const auto& [name, coeff] : want)
                CHECK(got[name] == doctest::Approx(coeff).epsilon(1e-12));
            for (const auto& [name, coeff] : got)
                if (!want.count(name)) CHECK(coeff == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("each queue constraint uses exactly the operations that touch it") {
    RegionProblem p = build_inner_strong_lp(paper_channel());
    using S = std::set<std::string>;
    auto in = [&](const std::string& c) { return names_with_sign(p, c, -1); };
    auto out = [&](const std::string& c) { return names_with_sign(p, c, +1); };

    CHECK(in("E1") == S{"R1"});
    CHECK(out("E1") == S{"s_uc1", "s_pm1"});
    CHECK(in("A1") == S{"s_uc1", "s_pm1"});
    CHECK(out("A1") == S{"s_pm2", "s_am1", "r_uc1"});
    CHECK(in("B1") == S{"s_pm1"});
    CHECK(out("B1") == S{"s_rc1"});
    CHECK(in("M") == S{"s_pm1", "s_pm2", "s_am1", "s_am2", "s_rc1", "s_rc2"});
    CHECK(out("M") == S{"r_rc"});
    CHECK(in("S1") == S{"s_uc1", "s_rc1"});
    CHECK(out("S1") == S{"s_am2", "s_dx1", "s_cx1", "s_cx2", "s_cx5"});
    CHECK(in("T1") == S{"s_rc2"});
    CHECK(out("T1") == S{"s_dxe1", "s_cx3", "s_cx4", "s_cx7", "r_dxe1"});
    CHECK(in("X0") == S{"s_cx1", "s_cx2", "s_cx3", "s_cx4"});
    CHECK(out("X0") == S{"r_ox"});
    CHECK(in("X1") == S{"s_uc1", "s_am2", "s_rc1", "s_rc2", "s_dx1", "s_dxe1", "s_cx1",
                        "s_cx2", "s_cx3", "s_cx4", "s_cx5", "s_cx7", "r_uc1", "r_dxe1",
                        "r_rc", "r_ox"});
    CHECK(out("X1") == S{"s_cx6", "s_cx8", "r_dxx1", "r_cx"});
    CHECK(in("D1") == S{"s_uc1", "s_am1", "s_rc1", "s_rc2", "s_dx1", "s_dxe1", "s_cx1",
                        "s_cx2", "s_cx3", "s_cx4", "s_cx5", "s_cx6", "s_cx7", "s_cx8",
                        "r_uc1", "r_dxe1", "r_dxx1", "r_rc", "r_ox", "r_cx"});
    CHECK(out("D1") == S{"R1"});
    // session-2 rows mirror by the same swap as the operation tables
    CHECK(in("S2") == S{"s_uc2", "s_rc2"});
    CHECK(out("S2") == S{"s_am1", "s_dx2", "s_cx1", "s_cx3", "s_cx6"});
    CHECK(out("T2") == S{"s_dxe2", "s_cx2", "s_cx4", "s_cx8", "r_dxe2"});
}

TEST_CASE("baseline schemes on the evaluation channel") {
    ChannelSpec ch = paper_channel();
    RegionProblem s1 = baseline_region_lp(Scheme::uncoded_no_relay, ch);
    BoundaryPoint only1 = maximize_weighted(s1, 1, 0);
    BoundaryPoint only2 = maximize_weighted(s1, 0, 1);
    CHECK(only1.r1 == doctest::Approx(0.15).epsilon(1e-9));
    CHECK(only2.r2 == doctest::Approx(0.25).epsilon(1e-9));
    for (auto& pt : sweep_boundary(s1, weight_grid(7)))
        CHECK(pt.r1 / 0.15 + pt.r2 / 0.25 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scheme tags resolve and unknown tags throw") {
    CHECK(scheme_from_tag("scheme3") == Scheme::route_all_relay_uncoded);
    CHECK(scheme_from_tag("butterfly-only") == Scheme::butterfly_only);
    CHECK_THROWS_AS(scheme_from_tag("scheme9"), std::invalid_argument);
}

TEST_CASE("scheme three on a dead relay pins the origin") {
    ChannelSpec ch = ChannelSpec::independent(0.3, 0.4, 0.5, 0.0, 0.0);
    BoundaryPoint b = maximize_weighted(baseline_region_lp(Scheme::route_all_relay_uncoded, ch), 1, 1);
    CHECK(b.objective == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("scheme two collapses to scheme one under full correlation") {
    // one physical receiver: both destinations hear exactly together
    ChannelSpec ch;
    ch.s_joint = {0.6, 0, 0, 0.4, 0, 0, 0, 0};  // d1d2 together w.p. 0.4
    ch.r_joint = {1.0, 0, 0, 0};
    for (auto [w1, w2] : weight_grid(9)) {
        double a = maximize_weighted(baseline_region_lp(Scheme::uncoded_no_relay, ch), w1, w2).objective;
        double b = maximize_weighted(baseline_region_lp(Scheme::bc_lnc_no_relay, ch), w1, w2).objective;
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("scheme five equals the reduced closed form") {
    ChannelSpec ch = paper_channel();
    RegionProblem reduced;
    int r1 = reduced.lp.add_variable("R1");
    int r2 = reduced.lp.add_variable("R2");
    reduced.r1_var = r1;
    reduced.r2_var = r2;
    std::vector<int> v;
    for (const char* n : {"s_uc1", "s_uc2", "s_dx1", "s_dx2", "r_uc1", "r_uc2", "r_dxx1",
                          "r_dxx2"})
        v.push_back(reduced.lp.add_variable(n));
    enum { UC1, UC2, DX1, DX2, RUC1, RUC2, RDX1, RDX2 };
    std::vector<std::pair<int, double>> budget;
    for (int var : v) budget.push_back({var, 1.0});
    reduced.lp.add_constraint("budget", budget, Relation::le, 1.0);
    for (int i = 1; i <= 2; ++i) {
        Node di = i == 1 ? D1 : D2, dj = i == 1 ? D2 : D1;
        int uc = v[i == 1 ? UC1 : UC2], dx = v[i == 1 ? DX1 : DX2];
        int ruc = v[i == 1 ? RUC1 : RUC2], rdx = v[i == 1 ? RDX1 : RDX2];
        int ri = i == 1 ? r1 : r2;
        reduced.lp.add_constraint(
            "supply", {{uc, p_s(ch, {{pos(di)}, {pos(dj)}, {pos(R)}})}, {ri, -1.0}},
            Relation::le, 0.0);
        reduced.lp.add_constraint(
            "relay", {{ruc, p_r(ch, {{pos(di)}, {pos(dj)}})},
                      {uc, -p_s(ch, {{neg(di), neg(dj), pos(R)}})}},
            Relation::le, 0.0);
        reduced.lp.add_constraint(
            "overheard", {{dx, p_s(ch, {{pos(di)}, {pos(R)}})},
                          {uc, -p_s(ch, {{neg(di), pos(dj), neg(R)}})}},
            Relation::le, 0.0);
        reduced.lp.add_constraint(
            "cross", {{rdx, p_r(ch, {{pos(di)}})},
                      {uc, -p_s(ch, {{neg(di), pos(dj), pos(R)}})},
                      {dx, -p_s(ch, {{neg(di), pos(R)}})},
                      {ruc, -p_r(ch, {{neg(di), pos(dj)}})}},
            Relation::le, 0.0);
        reduced.lp.add_constraint(
            "decode", {{ri, 1.0}, {uc, -p_s(ch, {{pos(di)}})}, {dx, -p_s(ch, {{pos(di)}})},
                       {ruc, -p_r(ch, {{pos(di)}})}, {rdx, -p_r(ch, {{pos(di)}})}},
            Relation::le, 0.0);
    }
    for (auto [w1, w2] : weight_grid(9)) {
        double a = maximize_weighted(baseline_region_lp(Scheme::timeshare_intraflow, paper_channel()), w1, w2).objective;
        double b = maximize_weighted(reduced, w1, w2).objective;
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("butterfly-only scheme is strictly below the strong bound") {
    ChannelSpec ch = paper_channel();
    double butterfly = sum_rate(baseline_region_lp(Scheme::butterfly_only, ch));
    double strong = sum_rate(build_inner_strong_lp(ch));
    CHECK(butterfly == doctest::Approx(0.518970863630015).epsilon(1e-9));
    CHECK(strong - butterfly == doctest::Approx(0.010985902956719).epsilon(1e-6));
    CHECK(strong - butterfly > 1e-3);
}

TEST_CASE("region nesting at every swept angle") {
    ChannelSpec ch = paper_channel();
    auto weights = weight_grid(16);
    std::map<std::string, RegionBoundary> bounds;
    for (int s = 1; s <= 6; ++s)
        bounds["scheme" + std::to_string(s)] =
            sweep_boundary(baseline_region_lp(Scheme(s), ch), weights);
    bounds["inner"] = sweep_boundary(build_inner_strong_lp(ch), weights);
    bounds["outer"] = sweep_boundary(build_outer_lp(ch), weights);
    for (size_t k = 0; k < weights.size(); ++k) {
        double inner = bounds["inner"][k].objective;
        CHECK(bounds["scheme1"][k].objective <= bounds["scheme2"][k].objective + 1e-9);
        CHECK(bounds["scheme3"][k].objective <= bounds["scheme4"][k].objective + 1e-9);
        for (int s = 1; s <= 6; ++s)
            CHECK(bounds["scheme" + std::to_string(s)][k].objective <= inner + 1e-9);
        CHECK(inner <= bounds["outer"][k].objective + 1e-9);
    }
}

TEST_CASE("general bound dominates the strong bound on strong-relaying channels") {
    std::mt19937_64 rng(808);
    for (int k = 0; k < 25; ++k) {
        ChannelSpec ch = sample_channel(rng, SampleMode::uniform_independent,
                                        SampleConstraint::strong_relaying);
        double outer = outer_sum_rate(ch);
        double strong = inner_sum_rate(ch, false);
        double general = inner_sum_rate(ch, true);
        CHECK(general >= strong - 1e-9);
        CHECK(strong <= outer + 1e-9);
        CHECK(general <= outer + 1e-9);
    }
}
