#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "srlnc/channel.hpp"
#include "srlnc/gf2.hpp"
#include "srlnc/lp.hpp"

namespace srlnc {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Packet-level coding operations. The first block mirrors the operation
// variables of the strong-relaying bound, s_sx* the self-packets-XOR
// additions, and the m_* block the source-performed copies of the relay
// operations used by the general bound.
enum class OpKind : int {
    s_uc1, s_uc2, s_pm1, s_pm2, s_am1, s_am2, s_rc1, s_rc2,
    s_dx1, s_dx2, s_dxe1, s_dxe2,
    s_cx1, s_cx2, s_cx3, s_cx4, s_cx5, s_cx6, s_cx7, s_cx8,
    s_sx1_1, s_sx1_2, s_sx1_3, s_sx2_1, s_sx2_2, s_sx2_3,
    r_uc1, r_uc2, r_dxe1, r_dxe2, r_rc, r_ox, r_dxx1, r_dxx2, r_cx,
    m_uc1, m_uc2, m_dxe1, m_dxe2, m_rc, m_ox, m_dxx1, m_dxx2, m_cx,
    count
};

constexpr int kNumOps = int(OpKind::count);

struct OpInfo {
    const char* name;       // matches the LP variable of the operation
    bool source_pec;        // reception drawn from the s-PEC (else r-PEC)
    bool relay_performed;   // transmitted vector must lie in r's knowledge
};

const OpInfo& op_info(OpKind op);

// The sixteen queues, one per inequality of the achievability LP.
enum class QueueId : int {
    q1_empty, q2_empty, q1_relay, q2_relay, q1_mix, q2_mix, q_m,
    q1_heard2, q1_equiv, q2_heard1, q2_equiv, q_star, q1_cross, q2_cross,
    q1_dec, q2_dec
};

const char* queue_name(QueueId q);

struct MixPairEntry {   // B queues: [own + other] overheard by the other destination
    int32_t own, other;
};
struct AllHappyEntry {  // Q_m: [x1 + x2] with the designated relay send w
    int32_t x1, x2, w;
};
struct EquivEntry {     // equivalence queues: entry packet standing in for partner
    int32_t entry, partner;
};
struct CrossEntry {     // cross queues: payload whose delivery decodes `deliver`
    SparseVec payload;
    int32_t deliver;
    int8_t case_tag;    // 1, 2 or 3
};
struct StarEntry {      // relay-known sums benefiting both destinations
    int32_t a, b;       // a heard by d2, b heard by d1
    int32_t deliver1, deliver2;
};

struct NodeState {
    SparseSpan span;
    std::vector<uint8_t> flagged;
    int64_t receptions = 0;
    int64_t out_of_span_receptions = 0;

    explicit NodeState(int dim) : span(dim), flagged(dim, 0) {}
    bool knows(int32_t coord) const { return span.contains_unit(coord); }
};

struct SimConfig {
    ChannelSpec ch;
    int64_t slots = 0;
    double rate1 = 0, rate2 = 0;          // packets per slot
    std::array<int64_t, kNumOps> quotas{};
    uint64_t seed = 0;
    int64_t audit_period = 0;             // 0 = initial and final audits only
};

struct SimState {
    SimConfig cfg;
    int m1 = 0, m2 = 0;  // session packet counts; dimension m1 + m2

    std::array<std::deque<int32_t>, 3> empty_q, relay_q, heard_q;  // index 1..2
    std::array<std::deque<MixPairEntry>, 3> mixb_q;
    std::deque<AllHappyEntry> happy_q;
    std::array<std::deque<EquivEntry>, 3> equiv_q;
    std::deque<StarEntry> star_q;
    std::array<std::deque<CrossEntry>, 3> cross_q;
    std::array<std::vector<int32_t>, 3> dec_q;
    std::array<std::vector<uint8_t>, 3> in_dec;

    std::vector<NodeState> nodes;  // D1, D2, R
    // Coordinates credited as decoded ahead of physical decodability
    // (self-packets-XOR bookkeeping); resolved lazily.
    std::array<std::unordered_set<int32_t>, 3> pending_credit;

    std::array<int64_t, kNumOps> quota_left{};
    std::mt19937_64 rng;
    int64_t slot = 0, used_slots = 0, idle_slots = 0;
    std::vector<std::string>* movement_log = nullptr;  // set while tracing

    int dim() const { return m1 + m2; }
    int session_of(int32_t coord) const { return coord < m1 ? 1 : 2; }
};

struct AuditReport {
    bool ok = true;
    std::string queue;    // first offending queue
    std::string message;
    operator bool() const { return ok; }
};

struct SimReport {
    int m1 = 0, m2 = 0;
    int decoded1 = 0, decoded2 = 0;          // queue bookkeeping
    int rank_decoded1 = 0, rank_decoded2 = 0;  // from reception lists alone
    bool bookkeeping_complete = false;
    bool rank_complete = false;
    bool views_agree = false;  // every bookkept coordinate is in the span
    int64_t used_slots = 0, idle_slots = 0;
    int audits_passed = 0;
};

SimState init_state(const SimConfig& cfg);

// Largest remaining quota among operations whose inputs are available;
// ties broken by enum order. nullopt when no operation can run.
std::optional<OpKind> select_operation(const SimState& st);

// Applies one transmission with the given realized reception subset
// (bit 0 = d1, bit 1 = d2, bit 2 = r; r ignored for relay receptions).
void apply_operation(SimState& st, OpKind op, int reception);

AuditReport audit_invariants(const SimState& st);

SimReport run(const SimConfig& cfg, std::ostream* trace = nullptr);

// Builds a config from an achievability LP solution: quotas are the
// operation frequencies times the slot count, rates the solved rates
// scaled by rate_fraction.
SimConfig config_from_lp_solution(const ChannelSpec& ch, const LinearProgram& lp,
                                  const std::vector<double>& x, int64_t slots,
                                  double rate_fraction, uint64_t seed,
                                  int64_t audit_period);

}  // namespace srlnc
