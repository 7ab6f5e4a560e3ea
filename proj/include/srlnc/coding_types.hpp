#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "srlnc/gf2.hpp"

namespace srlnc {

// Membership pattern of a coding vector against the 15 A-subspaces.
// Bit l (1-based) is stored at position l-1.
struct CodingType {
    uint16_t bits = 0;  // 15 bits used

    bool get(int l) const { return bits >> (l - 1) & 1; }
    void set(int l, bool b) {
        if (b)
            bits |= uint16_t(1) << (l - 1);
        else
            bits &= ~(uint16_t(1) << (l - 1));
    }
    auto operator<=>(const CodingType&) const = default;
};

// 5-digit textual index of a 15-bit type: hex(b1..b4) oct(b5..b7)
// hex(b8..b11) oct(b12..b14) bin(b15), most significant bit first.
std::string encode_type(CodingType t);
CodingType decode_type(const std::string& s);

// All ordered pairs (l,m) with A_l contained in A_m for every realizable
// context, including reflexive pairs and the transitive closure.
const std::set<std::pair<int, int>>& containment_lattice();

// 15-bit strings that are upward closed under the containment lattice,
// sorted by encoded string. Derivation used as a consistency check only.
std::vector<CodingType> derive_closure_types();

// The reference feasible-type lists: Lambda (154 types the source can use)
// and Lambda_r (the 18 with b15 = 1 available to the relay), both sorted by
// encoded string.
const std::vector<CodingType>& feasible_types();
const std::vector<CodingType>& feasible_types_relay();

struct FeasibilityReport {
    bool matches = false;
    std::vector<std::string> missing;  // in reference but not derived
    std::vector<std::string> extra;    // derived but not in reference
};

// Compares derive_closure_types() against the reference lists.
FeasibilityReport check_feasibility_derivation();

// Snapshot of the three knowledge spaces that define the A-subspaces.
struct SubspaceContext {
    Gf2Subspace s1, s2, sr;
    int n_r1 = 0, n_r2 = 0;  // message dimensions; total dim = n_r1 + n_r2

    int dim() const { return n_r1 + n_r2; }
    // A_l for l in 1..15.
    std::array<Gf2Subspace, 15> a_subspaces() const;
};

CodingType classify_vector(const SubspaceContext& ctx, const Gf2Vector& c);

// Randomized witness search: draws random knowledge spaces and classifies
// every vector of the ambient space, collecting the observed types. Every
// witnessed type is feasible by construction, independently of the
// containment-closure derivation.
std::set<CodingType> feasibility_witness_oracle(int trials, int n_r1, int n_r2,
                                                uint64_t seed);

}  // namespace srlnc
