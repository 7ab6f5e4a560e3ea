#pragma once

#include "srlnc/channel.hpp"
#include "srlnc/region.hpp"

namespace srlnc {

struct InnerOptions {
    // Decodability (D): an alternative form credits s_am of the opposite
    // session, but the movement tables credit the own session (only the
    // own-session variant actually delivers on a d_i reception). Default is
    // the table-consistent form; the flag builds the alternative.
    bool literal_d = false;
    // Variables forced to zero (baseline schemes).
    std::vector<std::string> hardwire_zero;
};

// Achievability LP of the strong-relaying scheme: 31 operation variables,
// 19 constraints (time sharing, packets originating, packets mixing,
// classic XOR by source, XOR, decodability). Well-defined for any channel;
// capacity-approaching under strong relaying.
RegionProblem build_inner_strong_lp(const ChannelSpec& ch, const InnerOptions& opt = {});

// General achievability LP: adds the six self-packets-XOR operations and
// lets the source mimic every relay operation (46 variables, 19
// constraints), valid for arbitrary channel distributions.
RegionProblem build_inner_general_lp(const ChannelSpec& ch, const InnerOptions& opt = {});

enum class Scheme {
    uncoded_no_relay = 1,     // source routes, relay unused
    bc_lnc_no_relay = 2,      // 2-user broadcast LNC from the source only
    route_all_relay_uncoded = 3,  // everything through r, r routes
    route_all_relay_bclnc = 4,    // everything through r, r does broadcast LNC
    timeshare_intraflow = 5,  // strong-relaying LP without cross-packet mixing
    butterfly_only = 6,       // classic XOR operations only
};

Scheme scheme_from_tag(const std::string& tag);  // "scheme1".."scheme6" or long names

RegionProblem baseline_region_lp(Scheme scheme, const ChannelSpec& ch);

}  // namespace srlnc
