#include <algorithm>
#include <random>

#include "doctest.h"
#include "srlnc/gf2.hpp"

using namespace srlnc;

namespace {

Gf2Subspace span_of(int dim, std::initializer_list<Gf2Vector> rows) {
    Gf2Subspace s(dim);
    for (const auto& r : rows) s.insert(r);
    return s;
}

}  // namespace

TEST_CASE("contains: zero vector, hand-reduced spans") {
    Gf2Subspace sp(4);
    CHECK(sp.contains(Gf2Vector(4)));

    auto d1 = Gf2Vector::unit(4, 0), d2 = Gf2Vector::unit(4, 1);
    auto mixed = span_of(4, {d1 ^ d2, d2});
    CHECK(mixed.contains(d1));  // eliminate by hand: (d1+d2) + d2
    CHECK(span_of(4, {d2}).contains(d1) == false);
    CHECK_THROWS(sp.contains(Gf2Vector(5)));
}

TEST_CASE("sum_space identity and rank growth") {
    auto d1 = Gf2Vector::unit(3, 0), d2 = Gf2Vector::unit(3, 1);
    auto a = span_of(3, {d1});
    CHECK(sum_space(a, Gf2Subspace(3)) == a);
    CHECK(sum_space(span_of(3, {d1}), span_of(3, {d2})).rank() == 2);
    auto s = sum_space(span_of(3, {d1}), span_of(3, {d1 ^ d2}));
    CHECK(s.rank() == 2);
    CHECK(s.contains(d2));
}

TEST_CASE("insert rank semantics") {
    Gf2Subspace sp(4);
    auto d1 = Gf2Vector::unit(4, 0), d2 = Gf2Vector::unit(4, 1);
    CHECK(sp.insert(d1));
    CHECK(sp.rank() == 1);
    CHECK(sp.insert(d1) == false);
    CHECK(sp.insert(d2));
    CHECK(sp.insert(d1 ^ d2) == false);
}

TEST_CASE("row reduction invariants on random spaces") {
    std::mt19937_64 rng(11);
    const int dim = 12;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Gf2Vector> rows;
        for (int k = 0; k < 6; ++k) {
            Gf2Vector v(dim);
            for (int b = 0; b < dim; ++b) v.set(b, rng() & 1);
            rows.push_back(v);
        }
        Gf2Subspace a(dim), b(dim);
        for (const auto& r : rows) a.insert(r);
        // permuted insertion order gives the same reduced basis and rank
        std::shuffle(rows.begin(), rows.end(), rng);
        for (const auto& r : rows) b.insert(r);
        CHECK(a == b);
        // re-inserting anything in the span never changes it
        Gf2Subspace c = a;
        for (const auto& r : rows) CHECK(c.insert(r) == false);
        CHECK(c == a);

        Gf2Vector probe(dim);
        for (int bit = 0; bit < dim; ++bit) probe.set(bit, rng() & 1);
        Gf2Subspace u = sum_space(a, b);
        if (a.contains(probe) || b.contains(probe)) CHECK(u.contains(probe));
    }
}

TEST_CASE("sparse span matches the dense subspace on random data") {
    std::mt19937_64 rng(23);
    const int dim = 20;
    for (int trial = 0; trial < 100; ++trial) {
        Gf2Subspace dense(dim);
        SparseSpan sparse(dim);
        for (int k = 0; k < 12; ++k) {
            SparseVec sv;
            Gf2Vector dv(dim);
            for (int b = 0; b < dim; ++b)
                if (rng() % 5 == 0) {
                    sv.push_back(b);
                    dv.set(b, true);
                }
            CHECK(dense.insert(dv) == sparse.insert(sv));
            CHECK(dense.rank() == sparse.rank());
        }
        for (int q = 0; q < 10; ++q) {
            SparseVec sv;
            Gf2Vector dv(dim);
            for (int b = 0; b < dim; ++b)
                if (rng() % 4 == 0) {
                    sv.push_back(b);
                    dv.set(b, true);
                }
            CHECK(dense.contains(dv) == sparse.contains(sv));
        }
    }
}

TEST_CASE("sparse xor is symmetric difference") {
    CHECK(sparse_xor({1, 3, 5}, {3, 4}) == SparseVec{1, 4, 5});
    CHECK(sparse_xor({}, {2}) == SparseVec{2});
    CHECK(sparse_xor({2, 7}, {2, 7}).empty());
}
