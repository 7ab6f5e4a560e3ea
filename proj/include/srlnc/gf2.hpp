#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace srlnc {

// Bit-packed vector over GF(2). Coordinate order is the session-1 interval
// followed by the session-2 interval of the message space.
class Gf2Vector {
  public:
    Gf2Vector() = default;
    explicit Gf2Vector(int dim) : dim_(dim), w_((dim + 63) / 64, 0) {}

    static Gf2Vector unit(int dim, int coord) {
        Gf2Vector v(dim);
        v.set(coord, true);
        return v;
    }

    int dim() const { return dim_; }

    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(int i, bool b) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (b)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void operator^=(const Gf2Vector& o) {
        if (o.dim_ != dim_) throw std::invalid_argument("gf2: dimension mismatch");
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }

    Gf2Vector operator^(const Gf2Vector& o) const {
        Gf2Vector r = *this;
        r ^= o;
        return r;
    }

    bool is_zero() const {
        for (uint64_t x : w_)
            if (x) return false;
        return true;
    }

    // Index of the lowest set bit, or -1 for the zero vector.
    int leading() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k) * 64 + __builtin_ctzll(w_[k]);
        return -1;
    }

    bool operator==(const Gf2Vector& o) const { return dim_ == o.dim_ && w_ == o.w_; }

  private:
    int dim_ = 0;
    std::vector<uint64_t> w_;
};

// Row space in reduced row echelon form; rank = number of basis rows.
class Gf2Subspace {
  public:
    Gf2Subspace() = default;
    explicit Gf2Subspace(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return int(basis_.size()); }
    const std::vector<Gf2Vector>& basis() const { return basis_; }

    bool contains(const Gf2Vector& v) const {
        if (v.dim() != dim_) throw std::invalid_argument("gf2: dimension mismatch");
        return reduce(v).is_zero();
    }

    // Inserts v; returns true iff the rank grew (v was outside the span).
    bool insert(const Gf2Vector& v) {
        if (v.dim() != dim_) throw std::invalid_argument("gf2: dimension mismatch");
        Gf2Vector r = reduce(v);
        int p = r.leading();
        if (p < 0) return false;
        for (auto& row : basis_)
            if (row.get(p)) row ^= r;
        size_t pos = 0;
        while (pos < basis_.size() && basis_[pos].leading() < p) ++pos;
        basis_.insert(basis_.begin() + pos, r);
        return true;
    }

    bool operator==(const Gf2Subspace& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }

  private:
    Gf2Vector reduce(Gf2Vector v) const {
        for (const auto& row : basis_) {
            int p = row.leading();
            if (v.get(p)) v ^= row;
        }
        return v;
    }

    int dim_ = 0;
    std::vector<Gf2Vector> basis_;  // sorted by leading coordinate
};

Gf2Subspace sum_space(const Gf2Subspace& a, const Gf2Subspace& b);

// Sparse counterpart used where the ambient dimension is large and every
// vector has a handful of nonzero coordinates (packet mixtures). Rows are
// sorted coordinate lists kept in row echelon (not fully reduced) form; the
// membership/insert semantics match Gf2Subspace.
using SparseVec = std::vector<int32_t>;  // sorted, distinct coordinates

SparseVec sparse_xor(const SparseVec& a, const SparseVec& b);

class SparseSpan {
  public:
    explicit SparseSpan(int dim) : pivot_row_(dim) {}

    int rank() const { return rank_; }

    bool contains(SparseVec v) const {
        reduce(v);
        return v.empty();
    }

    bool contains_unit(int32_t coord) const { return contains(SparseVec{coord}); }

    bool insert(SparseVec v) {
        reduce(v);
        if (v.empty()) return false;
        int32_t p = v.front();
        pivot_row_[p] = std::move(v);
        ++rank_;
        return true;
    }

  private:
    void reduce(SparseVec& v) const {
        while (!v.empty()) {
            const SparseVec& row = pivot_row_[v.front()];
            if (row.empty()) return;
            v = sparse_xor(v, row);
        }
    }

    std::vector<SparseVec> pivot_row_;  // indexed by pivot coordinate; empty = no pivot
    int rank_ = 0;
};

}  // namespace srlnc
