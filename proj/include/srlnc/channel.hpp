#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace srlnc {

// Receivers of the two broadcast PECs. Reception subsets are bitmasks with
// bit 0 = d1, bit 1 = d2, bit 2 = r.
enum Node : int { D1 = 0, D2 = 1, R = 2 };

enum class Sender { source, relay };

struct ChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Joint reception distributions of the s-PEC (8 subsets of {d1,d2,r}) and
// r-PEC (4 subsets of {d1,d2}). Spatial correlation across receivers is
// allowed; only the per-slot draws are independent over time.
struct ChannelSpec {
    std::array<double, 8> s_joint{};  // indexed by reception mask over {d1,d2,r}
    std::array<double, 4> r_joint{};  // indexed by reception mask over {d1,d2}

    static constexpr double kProbTol = 1e-12;

    void validate() const;

    static ChannelSpec independent(double s_d1, double s_d2, double s_r,
                                   double r_d1, double r_d2);
};

// One literal of a compatibility query: a receiver required to have
// received (neg = false) or erased (neg = true) the packet.
struct Lit {
    Node node;
    bool neg = false;
};

inline Lit pos(Node n) { return {n, false}; }
inline Lit neg(Node n) { return {n, true}; }

// A term is a conjunction of literals over distinct nodes; a query is
// satisfied when the realized reception subset is compatible with at least
// one term.
using Term = std::vector<Lit>;

struct CompatQuery {
    Sender sender;
    std::vector<Term> terms;
};

double compat_prob(const ChannelSpec& ch, const CompatQuery& q);

inline double p_s(const ChannelSpec& ch, std::vector<Term> terms) {
    return compat_prob(ch, {Sender::source, std::move(terms)});
}
inline double p_r(const ChannelSpec& ch, std::vector<Term> terms) {
    return compat_prob(ch, {Sender::relay, std::move(terms)});
}

// True iff the r-PEC strictly dominates the s-PEC on every non-empty
// subset of {d1,d2}: p_r(T and not-complement) > p_s(same) for all T.
bool is_strong_relaying(const ChannelSpec& ch);

enum class SampleMode { uniform_independent, dirichlet_joint };
enum class SampleConstraint { none, strong_relaying };

// Draws a random channel; under the strong-relaying constraint rejection
// samples (budget 1e5 attempts, then throws).
ChannelSpec sample_channel(std::mt19937_64& rng, SampleMode mode,
                           SampleConstraint constraint = SampleConstraint::none);

// Plain-text channel document (JSON): either
//   {"marginals": {"s": {"d1":..,"d2":..,"r":..}, "r": {"d1":..,"d2":..}},
//    "independent": true}
// or explicit joints with comma-joined sorted subset keys, "-" for the
// empty subset:
//   {"joint": {"s": {"-":..,"d1":..,...,"d1,d2,r":..}, "r": {...}}}
ChannelSpec load_channel(const std::string& text);
ChannelSpec load_channel_file(const std::string& path);
std::string channel_to_json(const ChannelSpec& ch);

}  // namespace srlnc
