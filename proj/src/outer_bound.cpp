#include "srlnc/outer_bound.hpp"

#include "srlnc/coding_types.hpp"

namespace srlnc {

namespace {

struct RankRow {
    int l;                       // y-index and tested bit position
    std::vector<Term> query;    // p-arguments shared by source and relay sums
    bool relay_sum;              // rows 1..7 only
    int rate_offset;             // 0 none, 1 -> +R1, 2 -> +R2
};

std::vector<RankRow> rank_rows() {
    const Term d1{pos(D1)}, d2{pos(D2)}, r{pos(R)};
    std::vector<RankRow> rows;
    rows.push_back({1, {d1}, true, 0});
    rows.push_back({2, {d2}, true, 0});
    rows.push_back({3, {d1}, true, 1});
    rows.push_back({4, {d2}, true, 2});
    rows.push_back({5, {d1, d2}, true, 0});
    rows.push_back({6, {d1, d2}, true, 1});
    rows.push_back({7, {d1, d2}, true, 2});
    rows.push_back({8, {d1, r}, false, 0});
    rows.push_back({9, {d2, r}, false, 0});
    rows.push_back({10, {d1, r}, false, 1});
    rows.push_back({11, {d2, r}, false, 2});
    rows.push_back({12, {d1, d2, r}, false, 0});
    rows.push_back({13, {d1, d2, r}, false, 1});
    rows.push_back({14, {d1, d2, r}, false, 2});
    return rows;
}

}  // namespace

RegionProblem build_outer_lp(const ChannelSpec& ch, const OuterOptions& opt) {
    ch.validate();
    const auto& lambda = feasible_types();
    const auto& lambda_r = feasible_types_relay();

    RegionProblem p;
    p.tag = "outer";
    LinearProgram& lp = p.lp;

    std::vector<int> xs, xr;
    xs.reserve(lambda.size());
    xr.reserve(lambda_r.size());
    for (CodingType t : lambda) xs.push_back(lp.add_variable("x_s_" + encode_type(t)));
    for (CodingType t : lambda_r) xr.push_back(lp.add_variable("x_r_" + encode_type(t)));
    int y[15];
    for (int l = 1; l <= 14; ++l) y[l] = lp.add_variable("y" + std::to_string(l));
    p.r1_var = lp.add_variable("R1");
    p.r2_var = lp.add_variable("R2");

    // Time-sharing: total scheduling frequency at most one.
    {
        std::vector<std::pair<int, double>> terms;
        for (int v : xs) terms.push_back({v, 1.0});
        for (int v : xr) terms.push_back({v, 1.0});
        lp.add_constraint("ts", std::move(terms), Relation::le, 1.0);
    }

    // Rank-conversion equalities: the final normalized rank of A_l equals the
    // reception-weighted frequency of coding vectors outside A_l, plus the
    // initial rank (R1, R2 or 0).
    for (const RankRow& row : rank_rows()) {
        std::vector<std::pair<int, double>> terms;
        terms.push_back({y[row.l], 1.0});
        const double ps = p_s(ch, row.query);
        for (size_t k = 0; k < lambda.size(); ++k)
            if (!lambda[k].get(row.l)) terms.push_back({xs[k], -ps});
        if (row.relay_sum) {
            const double pr = p_r(ch, row.query);
            for (size_t k = 0; k < lambda_r.size(); ++k)
                if (!lambda_r[k].get(row.l)) terms.push_back({xr[k], -pr});
        }
        if (row.rate_offset == 1) terms.push_back({p.r1_var, -1.0});
        if (row.rate_offset == 2) terms.push_back({p.r2_var, -1.0});
        lp.add_constraint("rank_y" + std::to_string(row.l), std::move(terms), Relation::eq, 0.0);
    }

    // Decodability equalities.
    auto tie = [&](const std::string& name, int a, int b) {
        lp.add_constraint(name, {{a, 1.0}, {b, -1.0}}, Relation::eq, 0.0);
    };
    tie("dec_y1_y3", y[1], y[3]);
    tie("dec_y2_y4", y[2], y[4]);
    if (opt.literal_eq45)
        tie("dec_y8_y11", y[8], y[11]);
    else
        tie("dec_y8_y10", y[8], y[10]);
    tie("dec_y9_y11", y[9], y[11]);
    tie("dec_y5_y6", y[5], y[6]);
    tie("dec_y6_y7", y[6], y[7]);
    tie("dec_y7_y12", y[7], y[12]);
    tie("dec_y12_y13", y[12], y[13]);
    tie("dec_y13_y14", y[13], y[14]);
    lp.add_constraint("dec_y14_rsum", {{y[14], 1.0}, {p.r1_var, -1.0}, {p.r2_var, -1.0}},
                      Relation::eq, 0.0);
    return p;
}

RatePoint outer_max(const ChannelSpec& ch, double w1, double w2, const OuterOptions& opt) {
    BoundaryPoint b = maximize_weighted(build_outer_lp(ch, opt), w1, w2);
    return {b.r1, b.r2};
}

RegionBoundary outer_region(const ChannelSpec& ch, int weight_count, const OuterOptions& opt) {
    return sweep_boundary(build_outer_lp(ch, opt), weight_grid(weight_count));
}

}  // namespace srlnc
