#include "srlnc/gf2.hpp"

namespace srlnc {

Gf2Subspace sum_space(const Gf2Subspace& a, const Gf2Subspace& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("gf2: dimension mismatch");
    Gf2Subspace r = a;
    for (const auto& row : b.basis()) r.insert(row);
    return r;
}

SparseVec sparse_xor(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else
            ++i, ++j;
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

}  // namespace srlnc
