#include "srlnc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace srlnc {

namespace {

const OpInfo kOps[kNumOps] = {
    {"s_uc1", true, false},  {"s_uc2", true, false},  {"s_pm1", true, false},
    {"s_pm2", true, false},  {"s_am1", true, false},  {"s_am2", true, false},
    {"s_rc1", true, false},  {"s_rc2", true, false},  {"s_dx1", true, false},
    {"s_dx2", true, false},  {"s_dxe1", true, false}, {"s_dxe2", true, false},
    {"s_cx1", true, false},  {"s_cx2", true, false},  {"s_cx3", true, false},
    {"s_cx4", true, false},  {"s_cx5", true, false},  {"s_cx6", true, false},
    {"s_cx7", true, false},  {"s_cx8", true, false},
    {"s_sx1_1", true, false}, {"s_sx1_2", true, false}, {"s_sx1_3", true, false},
    {"s_sx2_1", true, false}, {"s_sx2_2", true, false}, {"s_sx2_3", true, false},
    {"r_uc1", false, true},  {"r_uc2", false, true},  {"r_dxe1", false, true},
    {"r_dxe2", false, true}, {"r_rc", false, true},   {"r_ox", false, true},
    {"r_dxx1", false, true}, {"r_dxx2", false, true}, {"r_cx", false, true},
    {"m_uc1", true, false},  {"m_uc2", true, false},  {"m_dxe1", true, false},
    {"m_dxe2", true, false}, {"m_rc", true, false},   {"m_ox", true, false},
    {"m_dxx1", true, false}, {"m_dxx2", true, false}, {"m_cx", true, false},
};

// The general bound realizes the relay operation frequencies as w_r_*.
const char* alt_quota_name(OpKind op) {
    switch (op) {
        case OpKind::r_uc1: return "w_r_uc1";
        case OpKind::r_uc2: return "w_r_uc2";
        case OpKind::r_dxe1: return "w_r_dxe1";
        case OpKind::r_dxe2: return "w_r_dxe2";
        case OpKind::r_rc: return "w_r_rc";
        case OpKind::r_ox: return "w_r_ox";
        case OpKind::r_dxx1: return "w_r_dxx1";
        case OpKind::r_dxx2: return "w_r_dxx2";
        case OpKind::r_cx: return "w_r_cx";
        case OpKind::m_uc1: return "w_s_uc1";
        case OpKind::m_uc2: return "w_s_uc2";
        case OpKind::m_dxe1: return "w_s_dxe1";
        case OpKind::m_dxe2: return "w_s_dxe2";
        case OpKind::m_rc: return "w_s_rc";
        case OpKind::m_ox: return "w_s_ox";
        case OpKind::m_dxx1: return "w_s_dxx1";
        case OpKind::m_dxx2: return "w_s_dxx2";
        case OpKind::m_cx: return "w_s_cx";
        default: return nullptr;
    }
}

const char* kQueueNames[16] = {"q1_empty", "q2_empty", "q1_relay", "q2_relay",
                               "q1_mix",   "q2_mix",   "q_m",      "q1_heard2",
                               "q1_equiv", "q2_heard1", "q2_equiv", "q_star",
                               "q1_cross", "q2_cross", "q1_dec",   "q2_dec"};

SparseVec sv1(int32_t a) { return {a}; }
SparseVec sv2(int32_t a, int32_t b) {
    if (a == b) throw SimError("degenerate two-packet mixture");
    return a < b ? SparseVec{a, b} : SparseVec{b, a};
}

void log_move(SimState& st, const std::string& what) {
    if (st.movement_log) st.movement_log->push_back(what);
}

void receive(SimState& st, const SparseVec& v, int mask, bool source_pec) {
    const int receivers = source_pec ? 3 : 2;
    for (int h = 0; h < receivers; ++h) {
        if (!(mask >> h & 1)) continue;
        NodeState& node = st.nodes[h];
        ++node.receptions;
        for (int32_t c : v) node.flagged[c] = 1;
        if (node.span.insert(v)) ++node.out_of_span_receptions;
    }
}

void dec_insert(SimState& st, int k, int32_t coord) {
    if (st.session_of(coord) != k) throw SimError("decoded queue got a foreign-session packet");
    if (st.in_dec[k][coord]) throw SimError("packet decoded twice");
    st.in_dec[k][coord] = 1;
    st.dec_q[k].push_back(coord);
    const int node = k - 1;
    if (!st.nodes[node].knows(coord)) st.pending_credit[k].insert(coord);
    log_move(st, std::to_string(coord) + "->q" + std::to_string(k) + "_dec");
}

void cross_insert(SimState& st, int k, CrossEntry e) {
    if (e.payload.empty()) throw SimError("empty cross payload");
    log_move(st, "cross" + std::to_string(k) + "#" + std::to_string(e.case_tag));
    st.cross_q[k].push_back(std::move(e));
}

template <class T>
T pop_front(std::deque<T>& q) {
    T v = q.front();
    q.pop_front();
    return v;
}

// ---- source operations ---------------------------------------------------

void apply_s_uc(SimState& st, int i, bool gi, bool gj, bool gr) {
    int32_t x = st.empty_q[i].front();
    receive(st, sv1(x), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (2 - i) : 0) | (gr ? 4 : 0), true);
    if (!(gi || gj || gr)) return;
    st.empty_q[i].pop_front();
    if (gi)
        dec_insert(st, i, x);
    else if (gj && gr)
        cross_insert(st, i, {sv1(x), x, 1});
    else if (gj)
        st.heard_q[i].push_back(x);
    else
        st.relay_q[i].push_back(x);
}

void apply_s_pm(SimState& st, int i, bool gi, bool gj, bool gr) {
    const int j = 3 - i;
    int32_t x = st.empty_q[i].front();
    int32_t y = st.relay_q[j].front();
    receive(st, sv2(x, y), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (j - 1) : 0) | (gr ? 4 : 0),
            true);
    if (!(gi || gj || gr)) return;
    st.empty_q[i].pop_front();
    if (gi || gj) st.relay_q[j].pop_front();

    auto happy = [&](int32_t w) {
        int32_t s1 = i == 1 ? x : y, s2 = i == 1 ? y : x;
        st.happy_q.push_back({s1, s2, w});
        log_move(st, "q_m");
    };
    if (!gi && !gj) {  // only r: it extracts the fresh packet
        st.relay_q[i].push_back(x);
    } else if (!gi && gj && !gr) {
        st.mixb_q[i].push_back({x, y});
        log_move(st, "q" + std::to_string(i) + "_mix");
    } else if (gi && !gj && !gr) {
        happy(y);
    } else if (!gi && gj && gr) {
        happy(x);
    } else if (gi && !gj && gr) {
        happy(y);
    } else if (gi && gj && !gr) {
        happy(y);
    } else {  // all three received: either side works as the designated send
        int64_t need1 = st.m1 - int64_t(st.dec_q[1].size());
        int64_t need2 = st.m2 - int64_t(st.dec_q[2].size());
        int32_t own = x, other = y;
        bool own_first = i == 1 ? need1 >= need2 : need2 > need1;
        happy(own_first ? own : other);
    }
}

void apply_s_am(SimState& st, int i, bool gi, bool gj, bool gr) {
    const int j = 3 - i;
    int32_t x = st.relay_q[i].front();
    int32_t y = st.heard_q[j].front();
    receive(st, sv2(x, y), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (j - 1) : 0) | (gr ? 4 : 0),
            true);
    if (gi || gj) st.relay_q[i].pop_front();
    if (gj || gr) st.heard_q[j].pop_front();

    auto happy_w_own = [&] {
        int32_t s1 = i == 1 ? x : y, s2 = i == 1 ? y : x;
        st.happy_q.push_back({s1, s2, x});
        log_move(st, "q_m");
    };
    if (!gi && !gj && gr) {
        cross_insert(st, j, {sv1(y), y, 1});
    } else if (!gi && gj && !gr) {
        happy_w_own();
    } else if (gi && !gj && !gr) {
        dec_insert(st, i, x);
    } else if (!gi && gj && gr) {
        happy_w_own();
    } else if (gi && !gj && gr) {
        dec_insert(st, i, x);
        cross_insert(st, j, {sv1(y), y, 1});
    } else if (gi && gj && !gr) {
        dec_insert(st, i, x);
        cross_insert(st, j, {sv1(x), y, 2});
    } else if (gi && gj && gr) {
        dec_insert(st, i, x);
        cross_insert(st, j, {sv1(y), y, 1});
    }
}

void apply_s_rc(SimState& st, int i, bool gi, bool gj, bool gr) {
    const int j = 3 - i;
    MixPairEntry e = st.mixb_q[i].front();
    const int32_t x = e.own, y = e.other;
    receive(st, sv1(x), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (j - 1) : 0) | (gr ? 4 : 0), true);
    if (!(gi || gj || gr)) return;
    st.mixb_q[i].pop_front();

    if (!gi && !gj && gr) {
        int32_t s1 = i == 1 ? x : y, s2 = i == 1 ? y : x;
        st.happy_q.push_back({s1, s2, x});
        log_move(st, "q_m");
    } else if (!gi && gj && !gr) {
        st.heard_q[i].push_back(x);
        dec_insert(st, j, y);
    } else if (gi && !gj && !gr) {
        dec_insert(st, i, x);
        st.equiv_q[j].push_back({x, y});
        log_move(st, "q" + std::to_string(j) + "_equiv");
    } else if (!gi && gj && gr) {
        cross_insert(st, i, {sv1(x), x, 1});
        dec_insert(st, j, y);
    } else if (gi && !gj && gr) {
        dec_insert(st, i, x);
        cross_insert(st, j, {sv1(x), y, 2});
    } else {  // d_i and d_j both received
        dec_insert(st, i, x);
        dec_insert(st, j, y);
    }
}

void apply_s_dx(SimState& st, int i, bool gi, bool gj, bool gr) {
    int32_t x = st.heard_q[i].front();
    receive(st, sv1(x), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (2 - i) : 0) | (gr ? 4 : 0), true);
    if (!(gi || gr)) return;
    st.heard_q[i].pop_front();
    if (gi)
        dec_insert(st, i, x);
    else
        cross_insert(st, i, {sv1(x), x, 1});
}

void apply_s_dxe(SimState& st, int i, bool gi, bool gj, bool gr) {
    EquivEntry t = st.equiv_q[i].front();
    receive(st, sv1(t.entry), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (2 - i) : 0) | (gr ? 4 : 0),
            true);
    if (!(gi || gr)) return;
    st.equiv_q[i].pop_front();
    if (gi)
        dec_insert(st, i, t.partner);
    else
        cross_insert(st, i, {sv1(t.entry), t.partner, 2});
}

// cx1..cx4: both sides come from heard/equivalence queues.
void apply_s_cx_basic(SimState& st, bool side1_equiv, bool side2_equiv, bool g1, bool g2,
                      bool gr) {
    int32_t u1, d1v, u2, d2v;
    if (side1_equiv) {
        EquivEntry t = st.equiv_q[1].front();
        u1 = t.entry;
        d1v = t.partner;
    } else {
        u1 = d1v = st.heard_q[1].front();
    }
    if (side2_equiv) {
        EquivEntry t = st.equiv_q[2].front();
        u2 = t.entry;
        d2v = t.partner;
    } else {
        u2 = d2v = st.heard_q[2].front();
    }
    receive(st, sv2(u1, u2), (g1 ? 1 : 0) | (g2 ? 2 : 0) | (gr ? 4 : 0), true);
    bool depart1 = g1 || gr, depart2 = g2 || gr;
    if (depart1) {
        if (side1_equiv)
            st.equiv_q[1].pop_front();
        else
            st.heard_q[1].pop_front();
    }
    if (depart2) {
        if (side2_equiv)
            st.equiv_q[2].pop_front();
        else
            st.heard_q[2].pop_front();
    }
    if (!g1 && !g2 && gr) {
        st.star_q.push_back({u1, u2, d1v, d2v});
        log_move(st, "q_star");
        return;
    }
    if (g1) dec_insert(st, 1, d1v);
    if (g2) dec_insert(st, 2, d2v);
    if (!g1 && g2 && gr) cross_insert(st, 1, {sv2(u1, u2), d1v, 3});
    if (g1 && !g2 && gr) cross_insert(st, 2, {sv2(u1, u2), d2v, 3});
}

// cx5..cx8: a heard/equivalence packet of session i mixed with a cross
// entry serving the other destination.
void apply_s_cx_cross(SimState& st, int i, bool own_equiv, bool gi, bool gj, bool gr) {
    const int j = 3 - i;
    int32_t u, du;
    if (own_equiv) {
        EquivEntry t = st.equiv_q[i].front();
        u = t.entry;
        du = t.partner;
    } else {
        u = du = st.heard_q[i].front();
    }
    const CrossEntry& c = st.cross_q[j].front();
    SparseVec tx = sparse_xor(sv1(u), c.payload);
    if (tx.empty()) throw SimError("cross mixture cancelled out");
    receive(st, tx, (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (j - 1) : 0) | (gr ? 4 : 0), true);

    int32_t deliver_j = c.deliver;
    SparseVec cross_payload = c.payload;
    (void)cross_payload;
    if (gi || gr) {
        if (own_equiv)
            st.equiv_q[i].pop_front();
        else
            st.heard_q[i].pop_front();
    }
    if (gj) st.cross_q[j].pop_front();

    if (gi) dec_insert(st, i, du);
    if (gj) dec_insert(st, j, deliver_j);
    if (!gi && gr)
        cross_insert(st, i, own_equiv ? CrossEntry{sv1(u), du, 2} : CrossEntry{sv1(u), u, 1});
}

void apply_s_sx1(SimState& st, int i, bool gi, bool gj, bool gr) {
    int32_t x = st.relay_q[i].front();
    int32_t xi = st.heard_q[i].front();
    receive(st, sv2(x, xi), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (2 - i) : 0) | (gr ? 4 : 0),
            true);
    if (!(gi || gj || gr)) return;
    if (gi || gj) st.relay_q[i].pop_front();
    if (gi || gr) st.heard_q[i].pop_front();

    if (!gi && !gj && gr) {
        cross_insert(st, i, {sv1(xi), xi, 1});
    } else if (!gi && gj && !gr) {
        cross_insert(st, i, {sv1(x), x, 1});
    } else if (gi && !gj && !gr) {
        dec_insert(st, i, xi);
        st.equiv_q[i].push_back({xi, x});
        log_move(st, "q" + std::to_string(i) + "_equiv");
    } else if (!gi && gj && gr) {
        cross_insert(st, i, {sv1(x), x, 1});
        cross_insert(st, i, {sv1(xi), xi, 1});
    } else if (gi && !gj && gr) {
        dec_insert(st, i, xi);
        cross_insert(st, i, {sv1(xi), x, 2});
    } else if (gi && gj && !gr) {
        dec_insert(st, i, x);
        cross_insert(st, i, {sv1(x), xi, 2});
    } else {
        dec_insert(st, i, x);
        cross_insert(st, i, {sv1(x), xi, 2});
    }
}

void apply_s_sx2(SimState& st, int i, bool gi, bool gj, bool gr) {
    int32_t x = st.relay_q[i].front();
    EquivEntry t = st.equiv_q[i].front();
    receive(st, sv2(x, t.entry), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (2 - i) : 0) | (gr ? 4 : 0),
            true);
    if (!(gi || gj || gr)) return;
    if (gi || gj) st.relay_q[i].pop_front();
    if (gr || (gi && gj)) st.equiv_q[i].pop_front();

    if (!gi && !gj && gr) {
        cross_insert(st, i, {sv1(t.entry), t.partner, 2});
    } else if (!gi && gj && !gr) {
        cross_insert(st, i, {sv1(x), x, 1});
    } else if (gi && !gj && !gr) {
        dec_insert(st, i, x);
    } else if (!gi && gj && gr) {
        cross_insert(st, i, {sv1(x), x, 1});
        cross_insert(st, i, {sv1(t.entry), t.partner, 2});
    } else if (gi && !gj && gr) {
        dec_insert(st, i, x);
        cross_insert(st, i, {sv1(t.entry), t.partner, 2});
    } else if (gi && gj && !gr) {
        dec_insert(st, i, x);
        cross_insert(st, i, {sv1(x), t.partner, 2});
    } else {
        dec_insert(st, i, x);
        cross_insert(st, i, {sv1(t.entry), t.partner, 2});
    }
}

void apply_s_sx3(SimState& st, int i, bool gi, bool gj, bool gr) {
    int32_t xi = st.heard_q[i].front();
    EquivEntry t = st.equiv_q[i].front();
    const int32_t xs = t.partner;
    receive(st, sv2(xi, xs), (gi ? 1 << (i - 1) : 0) | (gj ? 1 << (2 - i) : 0) | (gr ? 4 : 0),
            true);
    if (!(gi || gj || gr)) return;
    if (gi || gr) st.heard_q[i].pop_front();
    if (gj || (gi && gr)) st.equiv_q[i].pop_front();

    if (!gi && !gj && gr) {
        cross_insert(st, i, {sv1(xi), xi, 1});
    } else if (!gi && gj && !gr) {
        cross_insert(st, i, {sv1(xs), xs, 1});
    } else if (gi && !gj && !gr) {
        dec_insert(st, i, xi);
    } else if (!gi && gj && gr) {
        cross_insert(st, i, {sv1(xi), xi, 1});
        cross_insert(st, i, {sv1(xs), xs, 1});
    } else if (gi && !gj && gr) {
        dec_insert(st, i, xi);
        cross_insert(st, i, {sv1(xi), xs, 2});
    } else if (gi && gj && !gr) {
        dec_insert(st, i, xi);
        cross_insert(st, i, {sv1(xs), xs, 1});
    } else {
        dec_insert(st, i, xi);
        cross_insert(st, i, {sv1(xs), xs, 1});
    }
}

// ---- relay-style operations (performed by r, or mimicked by s) -----------

void check_relay_knows(SimState& st, const SparseVec& v) {
    if (!st.nodes[R].span.contains(v))
        throw SimError("relay transmitted a vector outside its knowledge space");
}

void apply_uc_relay(SimState& st, int i, bool g1, bool g2, bool relay, int full_mask) {
    int32_t x = st.relay_q[i].front();
    if (relay) check_relay_knows(st, sv1(x));
    receive(st, sv1(x), full_mask, !relay);
    bool gi = i == 1 ? g1 : g2, gj = i == 1 ? g2 : g1;
    if (!(gi || gj)) return;
    st.relay_q[i].pop_front();
    if (gi)
        dec_insert(st, i, x);
    else
        cross_insert(st, i, {sv1(x), x, 1});
}

void apply_dxe_relay(SimState& st, int i, bool g1, bool g2, bool relay, int full_mask) {
    EquivEntry t = st.equiv_q[i].front();
    if (relay) check_relay_knows(st, sv1(t.partner));
    receive(st, sv1(t.partner), full_mask, !relay);
    bool gi = i == 1 ? g1 : g2, gj = i == 1 ? g2 : g1;
    if (!(gi || gj)) return;
    st.equiv_q[i].pop_front();
    if (gi)
        dec_insert(st, i, t.partner);
    else
        cross_insert(st, i, {sv1(t.partner), t.partner, 1});
}

void apply_rc_relay(SimState& st, bool g1, bool g2, bool relay, int full_mask) {
    AllHappyEntry e = st.happy_q.front();
    if (relay) check_relay_knows(st, sv1(e.w));
    receive(st, sv1(e.w), full_mask, !relay);
    if (!(g1 || g2)) return;
    st.happy_q.pop_front();
    if (g1 && g2) {
        dec_insert(st, 1, e.x1);
        dec_insert(st, 2, e.x2);
    } else if (g1) {
        dec_insert(st, 1, e.x1);
        if (e.w == e.x2)
            cross_insert(st, 2, {sv1(e.x2), e.x2, 1});
        else
            cross_insert(st, 2, {sv1(e.x1), e.x2, 2});
    } else {
        dec_insert(st, 2, e.x2);
        if (e.w == e.x1)
            cross_insert(st, 1, {sv1(e.x1), e.x1, 1});
        else
            cross_insert(st, 1, {sv1(e.x2), e.x1, 2});
    }
}

void apply_ox_relay(SimState& st, bool g1, bool g2, bool relay, int full_mask) {
    StarEntry e = st.star_q.front();
    SparseVec tx = sv2(e.a, e.b);
    if (relay) check_relay_knows(st, tx);
    receive(st, tx, full_mask, !relay);
    if (!(g1 || g2)) return;
    st.star_q.pop_front();
    if (g1) dec_insert(st, 1, e.deliver1);
    if (g2) dec_insert(st, 2, e.deliver2);
    if (g1 && !g2) cross_insert(st, 2, {tx, e.deliver2, 3});
    if (!g1 && g2) cross_insert(st, 1, {tx, e.deliver1, 3});
}

void apply_dxx_relay(SimState& st, int i, bool g1, bool g2, bool relay, int full_mask) {
    const CrossEntry& c = st.cross_q[i].front();
    if (relay) check_relay_knows(st, c.payload);
    receive(st, c.payload, full_mask, !relay);
    bool gi = i == 1 ? g1 : g2;
    if (!gi) return;
    int32_t deliver = c.deliver;
    st.cross_q[i].pop_front();
    dec_insert(st, i, deliver);
}

void apply_cx_relay(SimState& st, bool g1, bool g2, bool relay, int full_mask) {
    const CrossEntry& c1 = st.cross_q[1].front();
    const CrossEntry& c2 = st.cross_q[2].front();
    SparseVec tx = sparse_xor(c1.payload, c2.payload);
    if (tx.empty()) throw SimError("cross mixture cancelled out");
    if (relay) check_relay_knows(st, tx);
    receive(st, tx, full_mask, !relay);
    int32_t d1v = c1.deliver, d2v = c2.deliver;
    if (g1) {
        st.cross_q[1].pop_front();
        dec_insert(st, 1, d1v);
    }
    if (g2) {
        st.cross_q[2].pop_front();
        dec_insert(st, 2, d2v);
    }
}

}  // namespace

const OpInfo& op_info(OpKind op) { return kOps[int(op)]; }

const char* queue_name(QueueId q) { return kQueueNames[int(q)]; }

SimState init_state(const SimConfig& cfg) {
    cfg.ch.validate();
    if (cfg.slots < 0 || cfg.rate1 < 0 || cfg.rate2 < 0)
        throw SimError("bad simulation config");
    SimState st;
    st.cfg = cfg;
    st.m1 = int(std::floor(double(cfg.slots) * cfg.rate1 + 1e-9));
    st.m2 = int(std::floor(double(cfg.slots) * cfg.rate2 + 1e-9));
    int64_t total_quota = 0;
    for (int64_t q : cfg.quotas) {
        if (q < 0) throw SimError("negative quota");
        total_quota += q;
    }
    if (total_quota > cfg.slots) throw SimError("quotas exceed the slot budget");
    st.quota_left = cfg.quotas;
    const int d = st.m1 + st.m2;
    st.nodes.assign(3, NodeState(d));
    for (int k = 1; k <= 2; ++k) {
        st.in_dec[k].assign(d, 0);
        st.pending_credit[k].clear();
    }
    for (int32_t c = 0; c < st.m1; ++c) st.empty_q[1].push_back(c);
    for (int32_t c = st.m1; c < d; ++c) st.empty_q[2].push_back(c);
    st.rng.seed(cfg.seed);
    return st;
}

namespace {

bool has_inputs(const SimState& st, OpKind op) {
    using K = OpKind;
    auto ne = [](const auto& q) { return !q.empty(); };
    switch (op) {
        case K::s_uc1: return ne(st.empty_q[1]);
        case K::s_uc2: return ne(st.empty_q[2]);
        case K::s_pm1: return ne(st.empty_q[1]) && ne(st.relay_q[2]);
        case K::s_pm2: return ne(st.empty_q[2]) && ne(st.relay_q[1]);
        case K::s_am1: return ne(st.relay_q[1]) && ne(st.heard_q[2]);
        case K::s_am2: return ne(st.relay_q[2]) && ne(st.heard_q[1]);
        case K::s_rc1: return ne(st.mixb_q[1]);
        case K::s_rc2: return ne(st.mixb_q[2]);
        case K::s_dx1: return ne(st.heard_q[1]);
        case K::s_dx2: return ne(st.heard_q[2]);
        case K::s_dxe1: return ne(st.equiv_q[1]);
        case K::s_dxe2: return ne(st.equiv_q[2]);
        case K::s_cx1: return ne(st.heard_q[1]) && ne(st.heard_q[2]);
        case K::s_cx2: return ne(st.heard_q[1]) && ne(st.equiv_q[2]);
        case K::s_cx3: return ne(st.equiv_q[1]) && ne(st.heard_q[2]);
        case K::s_cx4: return ne(st.equiv_q[1]) && ne(st.equiv_q[2]);
        case K::s_cx5: return ne(st.heard_q[1]) && ne(st.cross_q[2]);
        case K::s_cx6: return ne(st.cross_q[1]) && ne(st.heard_q[2]);
        case K::s_cx7: return ne(st.equiv_q[1]) && ne(st.cross_q[2]);
        case K::s_cx8: return ne(st.cross_q[1]) && ne(st.equiv_q[2]);
        case K::s_sx1_1: return ne(st.relay_q[1]) && ne(st.heard_q[1]);
        case K::s_sx1_2: return ne(st.relay_q[1]) && ne(st.equiv_q[1]);
        case K::s_sx1_3: return ne(st.heard_q[1]) && ne(st.equiv_q[1]);
        case K::s_sx2_1: return ne(st.relay_q[2]) && ne(st.heard_q[2]);
        case K::s_sx2_2: return ne(st.relay_q[2]) && ne(st.equiv_q[2]);
        case K::s_sx2_3: return ne(st.heard_q[2]) && ne(st.equiv_q[2]);
        case K::r_uc1: case K::m_uc1: return ne(st.relay_q[1]);
        case K::r_uc2: case K::m_uc2: return ne(st.relay_q[2]);
        case K::r_dxe1: case K::m_dxe1: return ne(st.equiv_q[1]);
        case K::r_dxe2: case K::m_dxe2: return ne(st.equiv_q[2]);
        case K::r_rc: case K::m_rc: return ne(st.happy_q);
        case K::r_ox: case K::m_ox: return ne(st.star_q);
        case K::r_dxx1: case K::m_dxx1: return ne(st.cross_q[1]);
        case K::r_dxx2: case K::m_dxx2: return ne(st.cross_q[2]);
        case K::r_cx: case K::m_cx: return ne(st.cross_q[1]) && ne(st.cross_q[2]);
        default: return false;
    }
}

}  // namespace

std::optional<OpKind> select_operation(const SimState& st) {
    int best = -1;
    int64_t best_quota = 0;
    for (int k = 0; k < kNumOps; ++k) {
        if (st.quota_left[k] <= 0) continue;
        if (!has_inputs(st, OpKind(k))) continue;
        if (st.quota_left[k] > best_quota) {
            best = k;
            best_quota = st.quota_left[k];
        }
    }
    if (best >= 0) return OpKind(best);
    // Every operation holding quota is input-blocked: re-assign the slot to
    // the next scheduled operation (one the plan uses at all) that can run.
    for (int k = 0; k < kNumOps; ++k)
        if (st.cfg.quotas[k] > 0 && has_inputs(st, OpKind(k))) return OpKind(k);
    return std::nullopt;
}

void apply_operation(SimState& st, OpKind op, int reception) {
    using K = OpKind;
    const bool g1 = reception & 1, g2 = reception & 2, gr = reception & 4;
    auto gij = [&](int i) { return i == 1 ? std::pair{g1, g2} : std::pair{g2, g1}; };
    switch (op) {
        case K::s_uc1: case K::s_uc2: {
            int i = op == K::s_uc1 ? 1 : 2;
            auto [gi, gj] = gij(i);
            apply_s_uc(st, i, gi, gj, gr);
            break;
        }
        case K::s_pm1: case K::s_pm2: {
            int i = op == K::s_pm1 ? 1 : 2;
            auto [gi, gj] = gij(i);
            apply_s_pm(st, i, gi, gj, gr);
            break;
        }
        case K::s_am1: case K::s_am2: {
            int i = op == K::s_am1 ? 1 : 2;
            auto [gi, gj] = gij(i);
            apply_s_am(st, i, gi, gj, gr);
            break;
        }
        case K::s_rc1: case K::s_rc2: {
            int i = op == K::s_rc1 ? 1 : 2;
            auto [gi, gj] = gij(i);
            apply_s_rc(st, i, gi, gj, gr);
            break;
        }
        case K::s_dx1: case K::s_dx2: {
            int i = op == K::s_dx1 ? 1 : 2;
            auto [gi, gj] = gij(i);
            apply_s_dx(st, i, gi, gj, gr);
            break;
        }
        case K::s_dxe1: case K::s_dxe2: {
            int i = op == K::s_dxe1 ? 1 : 2;
            auto [gi, gj] = gij(i);
            apply_s_dxe(st, i, gi, gj, gr);
            break;
        }
        case K::s_cx1: apply_s_cx_basic(st, false, false, g1, g2, gr); break;
        case K::s_cx2: apply_s_cx_basic(st, false, true, g1, g2, gr); break;
        case K::s_cx3: apply_s_cx_basic(st, true, false, g1, g2, gr); break;
        case K::s_cx4: apply_s_cx_basic(st, true, true, g1, g2, gr); break;
        case K::s_cx5: apply_s_cx_cross(st, 1, false, g1, g2, gr); break;
        case K::s_cx6: apply_s_cx_cross(st, 2, false, g2, g1, gr); break;
        case K::s_cx7: apply_s_cx_cross(st, 1, true, g1, g2, gr); break;
        case K::s_cx8: apply_s_cx_cross(st, 2, true, g2, g1, gr); break;
        case K::s_sx1_1: apply_s_sx1(st, 1, g1, g2, gr); break;
        case K::s_sx2_1: apply_s_sx1(st, 2, g2, g1, gr); break;
        case K::s_sx1_2: apply_s_sx2(st, 1, g1, g2, gr); break;
        case K::s_sx2_2: apply_s_sx2(st, 2, g2, g1, gr); break;
        case K::s_sx1_3: apply_s_sx3(st, 1, g1, g2, gr); break;
        case K::s_sx2_3: apply_s_sx3(st, 2, g2, g1, gr); break;
        case K::r_uc1: apply_uc_relay(st, 1, g1, g2, true, reception & 3); break;
        case K::r_uc2: apply_uc_relay(st, 2, g1, g2, true, reception & 3); break;
        case K::m_uc1: apply_uc_relay(st, 1, g1, g2, false, reception); break;
        case K::m_uc2: apply_uc_relay(st, 2, g1, g2, false, reception); break;
        case K::r_dxe1: apply_dxe_relay(st, 1, g1, g2, true, reception & 3); break;
        case K::r_dxe2: apply_dxe_relay(st, 2, g1, g2, true, reception & 3); break;
        case K::m_dxe1: apply_dxe_relay(st, 1, g1, g2, false, reception); break;
        case K::m_dxe2: apply_dxe_relay(st, 2, g1, g2, false, reception); break;
        case K::r_rc: apply_rc_relay(st, g1, g2, true, reception & 3); break;
        case K::m_rc: apply_rc_relay(st, g1, g2, false, reception); break;
        case K::r_ox: apply_ox_relay(st, g1, g2, true, reception & 3); break;
        case K::m_ox: apply_ox_relay(st, g1, g2, false, reception); break;
        case K::r_dxx1: apply_dxx_relay(st, 1, g1, g2, true, reception & 3); break;
        case K::r_dxx2: apply_dxx_relay(st, 2, g1, g2, true, reception & 3); break;
        case K::m_dxx1: apply_dxx_relay(st, 1, g1, g2, false, reception); break;
        case K::m_dxx2: apply_dxx_relay(st, 2, g1, g2, false, reception); break;
        case K::r_cx: apply_cx_relay(st, g1, g2, true, reception & 3); break;
        case K::m_cx: apply_cx_relay(st, g1, g2, false, reception); break;
        default: throw SimError("unknown operation");
    }
}

namespace {

struct Auditor {
    const SimState& st;
    AuditReport rep;

    bool knows(int node, int32_t c) const { return st.nodes[node].knows(c); }
    bool flagged(int node, int32_t c) const { return st.nodes[node].flagged[c]; }
    bool in_span(int node, const SparseVec& v) const { return st.nodes[node].span.contains(v); }

    bool fail(QueueId q, const std::string& msg) {
        rep.ok = false;
        rep.queue = queue_name(q);
        rep.message = msg;
        return false;
    }

    bool check_all() {
        for (int k = 1; k <= 2; ++k)
            if (!check_session(k)) return false;
        if (!check_happy() || !check_star()) return false;
        return check_conservation() && check_rank_counters();
    }

    bool check_session(int k) {
        const int di = k - 1, dj = 2 - k;
        const QueueId q_empty = k == 1 ? QueueId::q1_empty : QueueId::q2_empty;
        const QueueId q_relay = k == 1 ? QueueId::q1_relay : QueueId::q2_relay;
        const QueueId q_heard = k == 1 ? QueueId::q1_heard2 : QueueId::q2_heard1;
        const QueueId q_equiv = k == 1 ? QueueId::q1_equiv : QueueId::q2_equiv;
        const QueueId q_mix = k == 1 ? QueueId::q1_mix : QueueId::q2_mix;
        const QueueId q_cross = k == 1 ? QueueId::q1_cross : QueueId::q2_cross;
        const QueueId q_dec = k == 1 ? QueueId::q1_dec : QueueId::q2_dec;

        for (int32_t x : st.empty_q[k])
            if (flagged(di, x) || flagged(dj, x) || flagged(R, x))
                return fail(q_empty, "packet " + std::to_string(x) + " is flagged somewhere");
        for (int32_t x : st.relay_q[k]) {
            if (!knows(R, x)) return fail(q_relay, "packet not known by r");
            if (flagged(di, x) || flagged(dj, x))
                return fail(q_relay, "packet flagged at a destination");
        }
        for (int32_t x : st.heard_q[k]) {
            if (!knows(dj, x)) return fail(q_heard, "packet not known by the overhearing side");
            if (flagged(di, x) || flagged(R, x))
                return fail(q_heard, "packet flagged at its destination or r");
        }
        for (const EquivEntry& t : st.equiv_q[k]) {
            if (!in_span(di, sv2(t.entry, t.partner)))
                return fail(q_equiv, "pair mixture missing from the destination list");
            if (!knows(R, t.partner) || knows(di, t.partner) || knows(dj, t.partner))
                return fail(q_equiv, "partner knowledge pattern wrong");
            if (!knows(dj, t.entry) || knows(di, t.entry) || flagged(R, t.entry))
                return fail(q_equiv, "entry knowledge pattern wrong");
        }
        for (const MixPairEntry& e : st.mixb_q[k]) {
            if (!in_span(dj, sv2(e.own, e.other)))
                return fail(q_mix, "mixture not held by the overhearing destination");
            if (flagged(di, e.own) || flagged(R, e.own) || knows(dj, e.own))
                return fail(q_mix, "own component not fresh");
            if (!knows(R, e.other) || knows(di, e.other) || knows(dj, e.other) ||
                flagged(di, e.other))
                return fail(q_mix, "partner component pattern wrong");
        }
        for (const CrossEntry& c : st.cross_q[k]) {
            if (!in_span(R, c.payload) || !in_span(dj, c.payload))
                return fail(q_cross, "payload not known by r and the other destination");
            if (in_span(di, c.payload)) return fail(q_cross, "payload already known by target");
            if (!in_span(di, sparse_xor(c.payload, sv1(c.deliver))))
                return fail(q_cross, "payload does not decode the promised packet");
            if (knows(di, c.deliver)) return fail(q_cross, "promised packet already known");
        }
        for (int32_t x : st.dec_q[k]) {
            if (!knows(di, x) && !st.pending_credit[k].count(x))
                return fail(q_dec, "decoded packet " + std::to_string(x) +
                                       " is neither in the span nor a pending credit");
        }
        return true;
    }

    bool check_happy() {
        for (const AllHappyEntry& e : st.happy_q) {
            if (!knows(R, e.w)) return fail(QueueId::q_m, "designated send unknown to r");
            if (knows(D1, e.x1) || knows(D2, e.x2))
                return fail(QueueId::q_m, "component already delivered");
            bool cond_a = in_span(D1, sv2(e.x1, e.x2)) && knows(R, e.x2);
            bool cond_b = in_span(D2, sv2(e.x1, e.x2)) && knows(R, e.x1);
            if (e.w == e.x2 ? !cond_a : !cond_b)
                return fail(QueueId::q_m, "all-happy condition violated for the designated send");
        }
        return true;
    }

    bool check_star() {
        for (const StarEntry& e : st.star_q) {
            SparseVec mix = sv2(e.a, e.b);
            if (!in_span(R, mix)) return fail(QueueId::q_star, "sum not in r's list");
            if (!knows(D2, e.a) || knows(D1, e.a) || knows(R, e.a))
                return fail(QueueId::q_star, "side a knowledge pattern wrong");
            if (!knows(D1, e.b) || knows(D2, e.b) || knows(R, e.b))
                return fail(QueueId::q_star, "side b knowledge pattern wrong");
            if (!in_span(D1, sparse_xor(mix, sv1(e.deliver1))) || knows(D1, e.deliver1))
                return fail(QueueId::q_star, "delivery promise to d1 broken");
            if (!in_span(D2, sparse_xor(mix, sv1(e.deliver2))) || knows(D2, e.deliver2))
                return fail(QueueId::q_star, "delivery promise to d2 broken");
        }
        return true;
    }

    // Every session coordinate occupies exactly one owed slot: its pure
    // queue, a mixture role, a promised delivery, or the decoded queue.
    bool check_conservation() {
        const int d = st.m1 + st.m2;
        std::vector<int> count(d, 0);
        auto bump = [&](int32_t c) { ++count[c]; };
        for (int k = 1; k <= 2; ++k) {
            for (int32_t x : st.empty_q[k]) bump(x);
            for (int32_t x : st.relay_q[k]) bump(x);
            for (int32_t x : st.heard_q[k]) bump(x);
            for (const MixPairEntry& e : st.mixb_q[k]) {
                bump(e.own);
                bump(e.other);
            }
            for (const EquivEntry& t : st.equiv_q[k]) bump(t.partner);
            for (const CrossEntry& c : st.cross_q[k]) bump(c.deliver);
            for (int32_t x : st.dec_q[k]) bump(x);
        }
        for (const AllHappyEntry& e : st.happy_q) {
            bump(e.x1);
            bump(e.x2);
        }
        for (const StarEntry& e : st.star_q) {
            bump(e.deliver1);
            bump(e.deliver2);
        }
        for (int c = 0; c < d; ++c)
            if (count[c] != 1)
                return fail(QueueId::q1_empty, "coordinate " + std::to_string(c) +
                                                   " has " + std::to_string(count[c]) +
                                                   " owed occurrences");
        return true;
    }

    bool check_rank_counters() {
        for (int h = 0; h < 3; ++h)
            if (st.nodes[h].span.rank() != st.nodes[h].out_of_span_receptions)
                return fail(QueueId::q1_dec, "rank / out-of-span reception count mismatch");
        return true;
    }
};

int sample_mask(SimState& st, bool source_pec) {
    const double* p = source_pec ? st.cfg.ch.s_joint.data() : st.cfg.ch.r_joint.data();
    const int n = source_pec ? 8 : 4;
    double u = double(st.rng() >> 11) * 0x1.0p-53;
    double acc = 0;
    for (int mask = 0; mask < n; ++mask) {
        acc += p[mask];
        if (u < acc) return mask;
    }
    return n - 1;
}

void resolve_pending(SimState& st) {
    for (int k = 1; k <= 2; ++k) {
        auto& pending = st.pending_credit[k];
        for (auto it = pending.begin(); it != pending.end();) {
            if (st.nodes[k - 1].knows(*it))
                it = pending.erase(it);
            else
                ++it;
        }
    }
}

}  // namespace

AuditReport audit_invariants(const SimState& st) {
    SimState& mut = const_cast<SimState&>(st);
    resolve_pending(mut);
    Auditor a{st, {}};
    a.check_all();
    return a.rep;
}

SimReport run(const SimConfig& cfg, std::ostream* trace) {
    SimState st = init_state(cfg);
    std::vector<std::string> log;
    if (trace) {
        st.movement_log = &log;
        *trace << "slot,op,reception,movements\n";
    }
    SimReport rep;
    rep.m1 = st.m1;
    rep.m2 = st.m2;

    auto audit_or_throw = [&](const char* when) {
        AuditReport a = audit_invariants(st);
        if (!a.ok)
            throw SimError(std::string("audit failed (") + when + ", slot " +
                           std::to_string(st.slot) + ", queue " + a.queue + "): " + a.message);
        ++rep.audits_passed;
    };

    audit_or_throw("initial");
    for (st.slot = 0; st.slot < cfg.slots; ++st.slot) {
        std::optional<OpKind> op = select_operation(st);
        if (op) {
            const OpInfo& info = op_info(*op);
            int mask = sample_mask(st, info.source_pec);
            log.clear();
            apply_operation(st, *op, info.source_pec ? mask : (mask & 3));
            if (st.quota_left[int(*op)] > 0) --st.quota_left[int(*op)];
            ++st.used_slots;
            if (trace) {
                *trace << st.slot << ',' << info.name << ',';
                for (int h = 0; h < (info.source_pec ? 3 : 2); ++h)
                    if (mask >> h & 1) *trace << (h == 0 ? "d1" : h == 1 ? "d2" : "r");
                if (!mask) *trace << '-';
                *trace << ',';
                for (size_t i = 0; i < log.size(); ++i) *trace << (i ? ";" : "") << log[i];
                *trace << '\n';
            }
        } else {
            ++st.idle_slots;
        }
        if (cfg.audit_period > 0 && (st.slot + 1) % cfg.audit_period == 0)
            audit_or_throw("periodic");
    }
    audit_or_throw("final");

    rep.decoded1 = int(st.dec_q[1].size());
    rep.decoded2 = int(st.dec_q[2].size());
    for (int32_t c = 0; c < st.m1; ++c)
        if (st.nodes[D1].knows(c)) ++rep.rank_decoded1;
    for (int32_t c = st.m1; c < st.m1 + st.m2; ++c)
        if (st.nodes[D2].knows(c)) ++rep.rank_decoded2;
    rep.bookkeeping_complete = rep.decoded1 == st.m1 && rep.decoded2 == st.m2;
    rep.rank_complete = rep.rank_decoded1 == st.m1 && rep.rank_decoded2 == st.m2;
    resolve_pending(st);
    rep.views_agree = st.pending_credit[1].empty() && st.pending_credit[2].empty();
    rep.used_slots = st.used_slots;
    rep.idle_slots = st.idle_slots;
    return rep;
}

SimConfig config_from_lp_solution(const ChannelSpec& ch, const LinearProgram& lp,
                                  const std::vector<double>& x, int64_t slots,
                                  double rate_fraction, uint64_t seed, int64_t audit_period) {
    SimConfig cfg;
    cfg.ch = ch;
    cfg.slots = slots;
    cfg.seed = seed;
    cfg.audit_period = audit_period;
    int r1 = lp.variable("R1"), r2 = lp.variable("R2");
    if (r1 < 0 || r2 < 0) throw SimError("LP lacks rate variables");
    cfg.rate1 = x[r1] * rate_fraction;
    cfg.rate2 = x[r2] * rate_fraction;
    int64_t total = 0;
    for (int k = 0; k < kNumOps; ++k) {
        int var = lp.variable(op_info(OpKind(k)).name);
        if (var < 0 && alt_quota_name(OpKind(k))) var = lp.variable(alt_quota_name(OpKind(k)));
        if (var >= 0 && x[var] > 1e-12) {
            // every scheduled operation keeps at least one slot so the
            // end-of-run re-assignment can reach it
            cfg.quotas[k] = std::max<int64_t>(1, int64_t(std::floor(x[var] * double(slots))));
            total += cfg.quotas[k];
        }
    }
    while (total > slots) {
        int big = 0;
        for (int k = 1; k < kNumOps; ++k)
            if (cfg.quotas[k] > cfg.quotas[big]) big = k;
        --cfg.quotas[big];
        --total;
    }
    return cfg;
}

}  // namespace srlnc
