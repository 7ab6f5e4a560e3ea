#include "srlnc/inner_bound.hpp"

#include <stdexcept>

namespace srlnc {

namespace {

Node dest(int k) { return k == 1 ? D1 : D2; }

// Variable handles of the achievability LPs; session index 1 or 2.
struct Vars {
    int t_s = -1, t_r = -1;
    int s_uc[3], s_pm[3], s_am[3], s_rc[3], s_dx[3], s_dxe[3];
    int s_cx[9];     // 1..8
    int s_sx[3][4];  // [k][l], general bound only
    // w[h][...] with h = 0 the source performer, h = 1 the relay performer.
    // The strong-relaying bound has relay-performed operations only (h = 1).
    int w_uc[2][3], w_dxe[2][3], w_dxx[2][3];
    int w_rc[2], w_ox[2], w_cx[2];
    int r1 = -1, r2 = -1;
};

struct Builder {
    LinearProgram& lp;
    const ChannelSpec& ch;
    bool general;
    Vars v;

    double ph(int h, const std::vector<Term>& terms) const {
        return h == 0 ? p_s(ch, terms) : p_r(ch, terms);
    }
    // Performers present in the h-indexed sums.
    std::vector<int> performers() const { return general ? std::vector<int>{0, 1} : std::vector<int>{1}; }

    void declare() {
        v.t_s = lp.add_variable("t_s");
        v.t_r = lp.add_variable("t_r");
        for (int k = 1; k <= 2; ++k) {
            auto n = std::to_string(k);
            v.s_uc[k] = lp.add_variable("s_uc" + n);
            v.s_pm[k] = lp.add_variable("s_pm" + n);
            v.s_am[k] = lp.add_variable("s_am" + n);
            v.s_rc[k] = lp.add_variable("s_rc" + n);
            v.s_dx[k] = lp.add_variable("s_dx" + n);
            v.s_dxe[k] = lp.add_variable("s_dxe" + n);
        }
        for (int l = 1; l <= 8; ++l) v.s_cx[l] = lp.add_variable("s_cx" + std::to_string(l));
        if (general)
            for (int k = 1; k <= 2; ++k)
                for (int l = 1; l <= 3; ++l)
                    v.s_sx[k][l] =
                        lp.add_variable("s_sx" + std::to_string(k) + "_" + std::to_string(l));
        for (int h : performers()) {
            std::string hp = general ? (h == 0 ? "w_s_" : "w_r_") : "r_";
            for (int k = 1; k <= 2; ++k) {
                auto n = std::to_string(k);
                v.w_uc[h][k] = lp.add_variable(hp + "uc" + n);
                v.w_dxe[h][k] = lp.add_variable(hp + "dxe" + n);
                v.w_dxx[h][k] = lp.add_variable(hp + "dxx" + n);
            }
            v.w_rc[h] = lp.add_variable(hp + "rc");
            v.w_ox[h] = lp.add_variable(hp + "ox");
            v.w_cx[h] = lp.add_variable(hp + "cx");
        }
        v.r1 = lp.add_variable("R1");
        v.r2 = lp.add_variable("R2");
    }

    int rate(int k) const { return k == 1 ? v.r1 : v.r2; }

    void build(const InnerOptions& opt) {
        declare();
        using TermList = std::vector<std::pair<int, double>>;

        // Time sharing.
        lp.add_constraint("TS1", {{v.t_s, 1.0}, {v.t_r, 1.0}}, Relation::le, 1.0);
        {
            TermList t{{v.t_s, -1.0}};
            for (int k = 1; k <= 2; ++k)
                for (int var : {v.s_uc[k], v.s_pm[k], v.s_am[k], v.s_rc[k], v.s_dx[k], v.s_dxe[k]})
                    t.push_back({var, 1.0});
            for (int l = 1; l <= 8; ++l) t.push_back({v.s_cx[l], 1.0});
            if (general) {
                for (int k = 1; k <= 2; ++k)
                    for (int l = 1; l <= 3; ++l) t.push_back({v.s_sx[k][l], 1.0});
                for (int k = 1; k <= 2; ++k)
                    for (int var : {v.w_uc[0][k], v.w_dxe[0][k], v.w_dxx[0][k]})
                        t.push_back({var, 1.0});
                for (int var : {v.w_rc[0], v.w_ox[0], v.w_cx[0]}) t.push_back({var, 1.0});
            }
            lp.add_constraint("TS2", std::move(t), Relation::le, 0.0);
        }
        {
            TermList t{{v.t_r, -1.0}};
            for (int k = 1; k <= 2; ++k)
                for (int var : {v.w_uc[1][k], v.w_dxe[1][k], v.w_dxx[1][k]})
                    t.push_back({var, 1.0});
            for (int var : {v.w_rc[1], v.w_ox[1], v.w_cx[1]}) t.push_back({var, 1.0});
            lp.add_constraint("TS3", std::move(t), Relation::le, 0.0);
        }

        for (int i = 1; i <= 2; ++i) {
            const int j = 3 - i;
            const Node di = dest(i), dj = dest(j);
            const Term Di{pos(di)}, Dj{pos(dj)}, Rr{pos(R)};

            // Packets originating: uncoded/premixing use is limited by the
            // session-i supply.
            {
                double c = p_s(ch, {Di, Dj, Rr});
                lp.add_constraint("E" + std::to_string(i),
                                  {{v.s_uc[i], c}, {v.s_pm[i], c}, {rate(i), -1.0}},
                                  Relation::le, 0.0);
            }

            // Packets mixing, queue of session-i packets held by the relay.
            {
                TermList t;
                double c_out = p_s(ch, {Di, Dj});
                t.push_back({v.s_pm[j], c_out});
                t.push_back({v.s_am[i], c_out});
                if (general) {
                    t.push_back({v.s_sx[i][1], c_out});
                    t.push_back({v.s_sx[i][2], c_out});
                }
                for (int h : performers()) t.push_back({v.w_uc[h][i], ph(h, {Di, Dj})});
                double c_in = p_s(ch, {{neg(di), neg(dj), pos(R)}});
                t.push_back({v.s_uc[i], -c_in});
                t.push_back({v.s_pm[i], -c_in});
                lp.add_constraint("A" + std::to_string(i), std::move(t), Relation::le, 0.0);
            }

            // Premixed-pair queue drained by the reduced-coding operation.
            lp.add_constraint("B" + std::to_string(i),
                              {{v.s_rc[i], p_s(ch, {Di, Dj, Rr})},
                               {v.s_pm[i], -p_s(ch, {{neg(di), pos(dj), neg(R)}})}},
                              Relation::le, 0.0);
        }

        // All-happy mixture queue feeding the relay's reduced-coding op.
        {
            TermList t;
            for (int h : performers())
                t.push_back({v.w_rc[h], ph(h, {{pos(D1)}, {pos(D2)}})});
            t.push_back({v.s_pm[1], -p_s(ch, {{pos(D1)}, {pos(D2), pos(R)}})});
            t.push_back({v.s_pm[2], -p_s(ch, {{pos(D2)}, {pos(D1), pos(R)}})});
            t.push_back({v.s_am[1], -p_s(ch, {{neg(D1), pos(D2)}})});
            t.push_back({v.s_am[2], -p_s(ch, {{pos(D1), neg(D2)}})});
            double c = p_s(ch, {{neg(D1), neg(D2), pos(R)}});
            t.push_back({v.s_rc[1], -c});
            t.push_back({v.s_rc[2], -c});
            lp.add_constraint("M", std::move(t), Relation::le, 0.0);
        }

        for (int i = 1; i <= 2; ++i) {
            const int j = 3 - i;
            const Node di = dest(i), dj = dest(j);
            const Term Di{pos(di)}, Dj{pos(dj)}, Rr{pos(R)};

            // Classic XOR condition by source only: overheard session-i queue.
            {
                TermList t;
                double c_out = p_s(ch, {Di, Rr});
                for (int var : {v.s_am[j], v.s_dx[i], v.s_cx[1], v.s_cx[1 + i], v.s_cx[4 + i]})
                    t.push_back({var, c_out});
                if (general) {
                    t.push_back({v.s_sx[i][1], c_out});
                    t.push_back({v.s_sx[i][3], c_out});
                }
                double c_in = p_s(ch, {{neg(di), pos(dj), neg(R)}});
                t.push_back({v.s_uc[i], -c_in});
                t.push_back({v.s_rc[i], -c_in});
                lp.add_constraint("S" + std::to_string(i), std::move(t), Relation::le, 0.0);
            }

            // Information-equivalent queue.
            {
                TermList t;
                double c_sr = p_s(ch, {Di, Rr});
                t.push_back({v.s_dxe[i], c_sr});
                for (int h : performers()) t.push_back({v.w_dxe[h][i], ph(h, {Di, Dj})});
                t.push_back({v.s_cx[1 + j], c_sr});
                t.push_back({v.s_cx[4], c_sr});
                t.push_back({v.s_cx[6 + i], c_sr});
                if (general) {
                    t.push_back({v.s_sx[i][2], p_s(ch, {{pos(di), pos(dj)}, Rr})});
                    t.push_back({v.s_sx[i][3], p_s(ch, {{pos(di), pos(R)}, Dj})});
                }
                t.push_back({v.s_rc[j], -p_s(ch, {{neg(di), pos(dj), neg(R)}})});
                if (general)
                    t.push_back({v.s_sx[i][1], -p_s(ch, {{pos(di), neg(dj), neg(R)}})});
                lp.add_constraint("T" + std::to_string(i), std::move(t), Relation::le, 0.0);
            }
        }

        // XOR condition, relay-sum queue.
        {
            TermList t;
            for (int h : performers())
                t.push_back({v.w_ox[h], ph(h, {{pos(D1)}, {pos(D2)}})});
            double c = p_s(ch, {{neg(D1), neg(D2), pos(R)}});
            for (int l = 1; l <= 4; ++l) t.push_back({v.s_cx[l], -c});
            lp.add_constraint("X0", std::move(t), Relation::le, 0.0);
        }

        for (int i = 1; i <= 2; ++i) {
            const int j = 3 - i;
            const Node di = dest(i), dj = dest(j);
            const Term Di{pos(di)}, Dj{pos(dj)}, Rr{pos(R)};

            // XOR condition: cross queue toward d_i.
            {
                TermList t;
                double c_di = p_s(ch, {Di});
                t.push_back({v.s_cx[7 - i], c_di});
                t.push_back({v.s_cx[9 - i], c_di});
                for (int h : performers()) {
                    double c = ph(h, {Di});
                    t.push_back({v.w_cx[h], c});
                    t.push_back({v.w_dxx[h][i], c});
                }
                t.push_back({v.s_am[j], -p_s(ch, {{pos(di), pos(dj)}, {neg(di), pos(R)}})});
                double c_in = p_s(ch, {{neg(di), pos(dj), pos(R)}});
                for (int var : {v.s_uc[i], v.s_rc[i], v.s_rc[j], v.s_cx[1], v.s_cx[2], v.s_cx[3],
                                v.s_cx[4]})
                    t.push_back({var, -c_in});
                double c_nr = p_s(ch, {{neg(di), pos(R)}});
                for (int var : {v.s_cx[4 + i], v.s_cx[6 + i], v.s_dx[i], v.s_dxe[i]})
                    t.push_back({var, -c_nr});
                if (general) {
                    double c_sx = p_s(ch, {Dj}) + p_s(ch, {Rr}) -
                                  p_s(ch, {{pos(D1), pos(D2), pos(R)}});
                    for (int l = 1; l <= 3; ++l) t.push_back({v.s_sx[i][l], -c_sx});
                }
                for (int h : performers()) {
                    double c = ph(h, {{neg(di), pos(dj)}});
                    for (int var : {v.w_uc[h][i], v.w_rc[h], v.w_dxe[h][i], v.w_ox[h]})
                        t.push_back({var, -c});
                }
                lp.add_constraint("X" + std::to_string(i), std::move(t), Relation::le, 0.0);
            }

            // Decodability.
            {
                TermList t{{rate(i), 1.0}};
                double c_di = p_s(ch, {Di});
                int am = opt.literal_d ? v.s_am[j] : v.s_am[i];
                for (int var : {v.s_uc[i], am, v.s_rc[1], v.s_rc[2], v.s_dx[i], v.s_dxe[i]})
                    t.push_back({var, -c_di});
                for (int l = 1; l <= 8; ++l) t.push_back({v.s_cx[l], -c_di});
                if (general)
                    for (int l = 1; l <= 3; ++l) t.push_back({v.s_sx[i][l], -c_di});
                for (int h : performers()) {
                    double c = ph(h, {Di});
                    for (int var : {v.w_uc[h][i], v.w_rc[h], v.w_ox[h], v.w_cx[h], v.w_dxe[h][i],
                                    v.w_dxx[h][i]})
                        t.push_back({var, -c});
                }
                lp.add_constraint("D" + std::to_string(i), std::move(t), Relation::le, 0.0);
            }
        }

        for (const std::string& name : opt.hardwire_zero) {
            int var = lp.variable(name);
            if (var < 0) throw std::invalid_argument("hardwire of unknown variable " + name);
            lp.add_constraint("zero_" + name, {{var, 1.0}}, Relation::eq, 0.0);
        }
    }
};

RegionProblem build_inner(const ChannelSpec& ch, bool general, const InnerOptions& opt,
                          const std::string& tag) {
    ch.validate();
    RegionProblem p;
    p.tag = tag;
    Builder b{p.lp, ch, general, {}};
    b.build(opt);
    p.r1_var = b.v.r1;
    p.r2_var = b.v.r2;
    return p;
}

// Adds var/prob to a reciprocal-form constraint, forcing var to zero when
// the probability vanishes.
void add_ratio(std::vector<std::pair<int, double>>& terms, int var, double prob,
               std::vector<int>& forced_zero) {
    if (prob > 1e-15)
        terms.push_back({var, 1.0 / prob});
    else
        forced_zero.push_back(var);
}

RegionProblem closed_form_region(const std::string& tag,
                                 const std::vector<std::vector<std::pair<char, double>>>& rows) {
    // Each row is a list of ('1' -> R1, '2' -> R2, 's' -> R1+R2) with the
    // divisor probability; the row sums to at most one.
    RegionProblem p;
    p.tag = tag;
    p.r1_var = p.lp.add_variable("R1");
    p.r2_var = p.lp.add_variable("R2");
    std::vector<int> forced;
    int idx = 0;
    for (const auto& row : rows) {
        std::vector<std::pair<int, double>> terms;
        for (auto [which, prob] : row) {
            if (which == '1' || which == 's') add_ratio(terms, p.r1_var, prob, forced);
            if (which == '2' || which == 's') add_ratio(terms, p.r2_var, prob, forced);
        }
        p.lp.add_constraint("row" + std::to_string(idx++), std::move(terms), Relation::le, 1.0);
    }
    for (int var : forced)
        p.lp.add_constraint("zero_" + p.lp.variable_name(var), {{var, 1.0}}, Relation::eq, 0.0);
    return p;
}

}  // namespace

RegionProblem build_inner_strong_lp(const ChannelSpec& ch, const InnerOptions& opt) {
    return build_inner(ch, false, opt, "inner-strong");
}

RegionProblem build_inner_general_lp(const ChannelSpec& ch, const InnerOptions& opt) {
    return build_inner(ch, true, opt, "inner-general");
}

Scheme scheme_from_tag(const std::string& tag) {
    if (tag == "scheme1" || tag == "uncoded-no-relay") return Scheme::uncoded_no_relay;
    if (tag == "scheme2" || tag == "bc-lnc-no-relay") return Scheme::bc_lnc_no_relay;
    if (tag == "scheme3" || tag == "route-all-relay-uncoded")
        return Scheme::route_all_relay_uncoded;
    if (tag == "scheme4" || tag == "route-all-relay-bclnc") return Scheme::route_all_relay_bclnc;
    if (tag == "scheme5" || tag == "timeshare-intraflow") return Scheme::timeshare_intraflow;
    if (tag == "scheme6" || tag == "butterfly-only") return Scheme::butterfly_only;
    throw std::invalid_argument("unknown scheme tag: " + tag);
}

RegionProblem baseline_region_lp(Scheme scheme, const ChannelSpec& ch) {
    ch.validate();
    const Term d1{pos(D1)}, d2{pos(D2)}, r{pos(R)};
    const double s1 = p_s(ch, {d1}), s2 = p_s(ch, {d2}), s12 = p_s(ch, {d1, d2});
    const double sr = p_s(ch, {r});
    const double r1 = p_r(ch, {d1}), r2 = p_r(ch, {d2}), r12 = p_r(ch, {d1, d2});

    switch (scheme) {
        case Scheme::uncoded_no_relay:
            return closed_form_region("scheme1", {{{'1', s1}, {'2', s2}}});
        case Scheme::bc_lnc_no_relay:
            return closed_form_region("scheme2",
                                      {{{'1', s1}, {'2', s12}}, {{'1', s12}, {'2', s2}}});
        case Scheme::route_all_relay_uncoded:
            return closed_form_region("scheme3", {{{'1', r1}, {'2', r2}, {'s', sr}}});
        case Scheme::route_all_relay_bclnc:
            return closed_form_region("scheme4", {{{'1', r1}, {'2', r12}, {'s', sr}},
                                                      {{'1', r12}, {'2', r2}, {'s', sr}}});
        case Scheme::timeshare_intraflow: {
            InnerOptions opt;
            opt.hardwire_zero = {"s_pm1", "s_pm2", "s_am1", "s_am2", "s_rc1", "s_rc2",
                                 "s_cx1", "s_cx2", "s_cx3", "s_cx4", "s_cx5", "s_cx6",
                                 "s_cx7", "s_cx8", "r_rc",  "r_ox",  "r_cx"};
            RegionProblem p = build_inner_strong_lp(ch, opt);
            p.tag = "scheme5";
            return p;
        }
        case Scheme::butterfly_only: {
            InnerOptions opt;
            opt.hardwire_zero = {"s_pm1", "s_pm2", "s_am1", "s_am2",
                                 "s_rc1", "s_rc2", "r_rc"};
            RegionProblem p = build_inner_strong_lp(ch, opt);
            p.tag = "scheme6";
            return p;
        }
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace srlnc
