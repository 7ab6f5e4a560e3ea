#include "srlnc/coding_types.hpp"

#include <algorithm>
#include <stdexcept>

namespace srlnc {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

char hex_char(int v) { return v < 10 ? char('0' + v) : char('A' + v - 10); }

// Packs bits first..first+count-1 (1-based), most significant first.
int pack_bits(CodingType t, int first, int count) {
    int v = 0;
    for (int k = 0; k < count; ++k) v = v << 1 | (t.get(first + k) ? 1 : 0);
    return v;
}

void unpack_bits(CodingType& t, int first, int count, int v) {
    for (int k = 0; k < count; ++k) t.set(first + k, v >> (count - 1 - k) & 1);
}

}  // namespace

std::string encode_type(CodingType t) {
    std::string s(5, '0');
    s[0] = hex_char(pack_bits(t, 1, 4));
    s[1] = char('0' + pack_bits(t, 5, 3));
    s[2] = hex_char(pack_bits(t, 8, 4));
    s[3] = char('0' + pack_bits(t, 12, 3));
    s[4] = char('0' + pack_bits(t, 15, 1));
    return s;
}

CodingType decode_type(const std::string& s) {
    if (s.size() != 5) throw std::invalid_argument("type index must have 5 digits");
    int d1 = hex_digit(s[0]), d3 = hex_digit(s[2]);
    int d2 = s[1] - '0', d4 = s[3] - '0', d5 = s[4] - '0';
    if (d1 < 0 || d3 < 0 || d2 < 0 || d2 > 7 || d4 < 0 || d4 > 7 || d5 < 0 || d5 > 1)
        throw std::invalid_argument("invalid digit for its radix in type index: " + s);
    CodingType t;
    unpack_bits(t, 1, 4, d1);
    unpack_bits(t, 5, 3, d2);
    unpack_bits(t, 8, 4, d3);
    unpack_bits(t, 12, 3, d4);
    unpack_bits(t, 15, 1, d5);
    return t;
}

const std::set<std::pair<int, int>>& containment_lattice() {
    static const std::set<std::pair<int, int>> lattice = [] {
        bool le[16][16] = {};
        auto add = [&](int a, int b) { le[a][b] = true; };
        // Base containments among A_1..A_7 from the sum-space definitions.
        const std::pair<int, int> base[] = {{1, 3}, {1, 5}, {2, 4}, {2, 5},
                                            {3, 6}, {4, 7}, {5, 6}, {5, 7}};
        for (auto [a, b] : base) {
            add(a, b);
            add(a + 7, b + 7);  // same containment after adjoining S^(r)
        }
        for (int i = 1; i <= 7; ++i) add(i, i + 7);  // A_i in A_i + S^(r)
        for (int j = 8; j <= 14; ++j) add(15, j);    // S^(r) in every A_{8..14}
        for (int l = 1; l <= 15; ++l) add(l, l);
        for (int k = 1; k <= 15; ++k)
            for (int a = 1; a <= 15; ++a)
                for (int b = 1; b <= 15; ++b)
                    if (le[a][k] && le[k][b]) le[a][b] = true;
        std::set<std::pair<int, int>> out;
        for (int a = 1; a <= 15; ++a)
            for (int b = 1; b <= 15; ++b)
                if (le[a][b]) out.insert({a, b});
        return out;
    }();
    return lattice;
}

std::vector<CodingType> derive_closure_types() {
    const auto& lat = containment_lattice();
    std::vector<std::pair<int, int>> strict;
    for (auto [a, b] : lat)
        if (a != b) strict.push_back({a, b});
    std::vector<CodingType> out;
    for (int bits = 0; bits < (1 << 15); ++bits) {
        CodingType t{uint16_t(bits)};
        bool closed = true;
        for (auto [a, b] : strict)
            if (t.get(a) && !t.get(b)) {
                closed = false;
                break;
            }
        if (closed) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [](CodingType a, CodingType b) {
        return encode_type(a) < encode_type(b);
    });
    return out;
}

namespace {

// Feasible coding types (154 entries) and the relay subset (18 entries),
// as enumerated for the 15-subspace partition.
const char* const kLambda[154] = {
    "00000", "00010", "00020", "00030", "00070", "00110", "00130", "00170", "00220",
    "00230", "00270", "00330", "00370", "00570", "00770", "00A70", "00B70", "00F70",
    "00F71", "01010", "01030", "01070", "01110", "01130", "01170", "01230", "01270",
    "01330", "01370", "01570", "01770", "01A70", "01B70", "01F70", "01F71", "02020",
    "02030", "02070", "02130", "02170", "02220", "02230", "02270", "02330", "02370",
    "02570", "02770", "02A70", "02B70", "02F70", "02F71", "03030", "03070", "03130",
    "03170", "03230", "03270", "03330", "03370", "03570", "03770", "03A70", "03B70",
    "03F70", "03F71", "07070", "07170", "07270", "07370", "07570", "07770", "07A70",
    "07B70", "07F70", "07F71", "11110", "11130", "11170", "11330", "11370", "11570",
    "11770", "11B70", "11F70", "11F71", "13130", "13170", "13330", "13370", "13570",
    "13770", "13B70", "13F70", "13F71", "17170", "17370", "17570", "17770", "17B70",
    "17F70", "17F71", "22220", "22230", "22270", "22330", "22370", "22770", "22A70",
    "22B70", "22F70", "22F71", "23230", "23270", "23330", "23370", "23770", "23A70",
    "23B70", "23F70", "23F71", "27270", "27370", "27770", "27A70", "27B70", "27F70",
    "27F71", "33330", "33370", "33770", "33B70", "33F70", "33F71", "37370", "37770",
    "37B70", "37F70", "37F71", "57570", "57770", "57F70", "57F71", "77770", "77F70",
    "77F71", "A7A70", "A7B70", "A7F70", "A7F71", "B7B70", "B7F70", "B7F71", "F7F70",
    "F7F71"};

}  // namespace

const std::vector<CodingType>& feasible_types() {
    static const std::vector<CodingType> lambda = [] {
        std::vector<CodingType> v;
        v.reserve(154);
        for (const char* s : kLambda) v.push_back(decode_type(s));
        return v;
    }();
    return lambda;
}

const std::vector<CodingType>& feasible_types_relay() {
    static const std::vector<CodingType> lambda_r = [] {
        std::vector<CodingType> v;
        for (CodingType t : feasible_types())
            if (t.get(15)) v.push_back(t);
        return v;
    }();
    return lambda_r;
}

FeasibilityReport check_feasibility_derivation() {
    FeasibilityReport rep;
    std::set<std::string> derived, reference;
    for (CodingType t : derive_closure_types()) derived.insert(encode_type(t));
    for (CodingType t : feasible_types()) reference.insert(encode_type(t));
    for (const auto& s : reference)
        if (!derived.count(s)) rep.missing.push_back(s);
    for (const auto& s : derived)
        if (!reference.count(s)) rep.extra.push_back(s);
    rep.matches = rep.missing.empty() && rep.extra.empty();
    return rep;
}

std::array<Gf2Subspace, 15> SubspaceContext::a_subspaces() const {
    const int d = dim();
    Gf2Subspace m1(d), m2(d);
    for (int l = 0; l < n_r1; ++l) m1.insert(Gf2Vector::unit(d, l));
    for (int l = 0; l < n_r2; ++l) m2.insert(Gf2Vector::unit(d, n_r1 + l));

    std::array<Gf2Subspace, 15> a;
    a[0] = s1;
    a[1] = s2;
    a[2] = sum_space(s1, m1);
    a[3] = sum_space(s2, m2);
    a[4] = sum_space(s1, s2);
    a[5] = sum_space(a[4], m1);
    a[6] = sum_space(a[4], m2);
    for (int i = 0; i < 7; ++i) a[i + 7] = sum_space(a[i], sr);
    a[14] = sr;
    return a;
}

CodingType classify_vector(const SubspaceContext& ctx, const Gf2Vector& c) {
    if (c.dim() != ctx.dim()) throw std::invalid_argument("classify_vector: dimension mismatch");
    const auto a = ctx.a_subspaces();
    CodingType t;
    for (int l = 1; l <= 15; ++l) t.set(l, a[l - 1].contains(c));
    return t;
}

std::set<CodingType> feasibility_witness_oracle(int trials, int n_r1, int n_r2,
                                                uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int d = n_r1 + n_r2;
    if (d <= 0 || d > 20) throw std::invalid_argument("witness oracle: bad dimensions");
    std::set<CodingType> seen;
    for (int trial = 0; trial < trials; ++trial) {
        SubspaceContext ctx;
        ctx.n_r1 = n_r1;
        ctx.n_r2 = n_r2;
        for (Gf2Subspace* sp : {&ctx.s1, &ctx.s2, &ctx.sr}) {
            *sp = Gf2Subspace(d);
            int want = int(rng() % uint64_t(d + 1));
            for (int k = 0; k < want; ++k) {
                Gf2Vector v(d);
                for (int b = 0; b < d; ++b) v.set(b, rng() & 1);
                sp->insert(v);
            }
        }
        const auto a = ctx.a_subspaces();
        // Expand each A_l into a membership table over the 2^d ambient vectors,
        // then classify exhaustively by lookup.
        const uint32_t n = uint32_t(1) << d;
        std::vector<uint16_t> type_of(n, 0);
        std::vector<uint32_t> span;
        for (int l = 0; l < 15; ++l) {
            span.assign(1, 0);
            for (const Gf2Vector& row : a[l].basis()) {
                uint32_t packed = 0;
                for (int b = 0; b < d; ++b)
                    if (row.get(b)) packed |= uint32_t(1) << b;
                size_t sz = span.size();
                for (size_t k = 0; k < sz; ++k) span.push_back(span[k] ^ packed);
            }
            for (uint32_t x : span) type_of[x] |= uint16_t(1) << l;
        }
        for (uint32_t x = 0; x < n; ++x) seen.insert(CodingType{type_of[x]});
    }
    return seen;
}

}  // namespace srlnc
