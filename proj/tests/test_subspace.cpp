#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "charspace/subspace.hpp"

using namespace charspace;

namespace {

// Independent oracle: the literal vector set of a subspace, produced by
// enumerating all coefficient tuples over the stored rows with plain
// modular arithmetic. No reduction or pivot logic involved.
std::set<Vec> vector_set(const Subspace& s) {
    const u32 p = s.field().p();
    const u32 d = s.ambient();
    std::set<Vec> out;
    std::vector<u32> coeff(s.rank(), 0);
    while (true) {
        Vec v(d, 0);
        for (u32 r = 0; r < s.rank(); ++r) {
            for (u32 c = 0; c < d; ++c) {
                v[c] = (v[c] + static_cast<u64>(coeff[r]) * s.rows()[r][c]) % p;
            }
        }
        out.insert(v);
        u32 i = 0;
        while (i < coeff.size()) {
            if (++coeff[i] < p) break;
            coeff[i] = 0;
            ++i;
        }
        if (i == coeff.size()) break;
    }
    return out;
}

std::set<Vec> oracle_sum(const Fp& f, const std::set<Vec>& a, const std::set<Vec>& b) {
    std::set<Vec> out;
    for (const Vec& u : a) {
        for (const Vec& v : b) {
            Vec w(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) w[i] = f.add(u[i], v[i]);
            out.insert(w);
        }
    }
    return out;
}

Subspace random_subspace(const Fp& f, u32 d, std::mt19937& rng) {
    std::uniform_int_distribution<u32> nrows(0, d);
    std::uniform_int_distribution<u32> entry(0, f.p() - 1);
    Mat rows(nrows(rng), Vec(d));
    for (Vec& r : rows) {
        for (u32& x : r) x = entry(rng);
    }
    return Subspace(f, d, rows);
}

} // namespace

TEST_CASE("rref canonical examples") {
    Fp f2(2);
    Subspace a(f2, 3, {{1, 1, 0}, {0, 1, 0}});
    CHECK(a.rows() == Mat{{1, 0, 0}, {0, 1, 0}});

    Subspace empty(f2, 3, {});
    CHECK(empty.rank() == 0);
    CHECK(empty.is_zero());

    Fp f5(5);
    Subspace b(f5, 2, {{2, 4}, {1, 2}});
    CHECK(b.rows() == Mat{{1, 2}});
}

TEST_CASE("rref is idempotent on random input") {
    std::mt19937 rng(42);
    for (u32 p : {2u, 3u, 5u}) {
        Fp f(p);
        for (int trial = 0; trial < 200; ++trial) {
            Subspace s = random_subspace(f, 4, rng);
            Subspace again(f, 4, s.rows());
            CHECK(s == again);
        }
    }
}

TEST_CASE("row length mismatch rejected") {
    Fp f2(2);
    CHECK_THROWS_AS(Subspace(f2, 3, {{1, 0}}), DimensionError);
    CHECK_THROWS_AS(Subspace(f2, 2, {{1, 5}}), ValidationError);
}

TEST_CASE("sum and intersect examples") {
    Fp f2(2);
    Subspace e1(f2, 3, {{1, 0, 0}});
    Subspace e2(f2, 3, {{0, 1, 0}});
    CHECK(subspace_sum(e1, e2).rows() == Mat{{1, 0, 0}, {0, 1, 0}});
    CHECK(subspace_sum(e1, e1) == e1);

    Subspace diag(f2, 3, {{1, 0, 1}});
    CHECK(subspace_sum(e1, diag).rows() == Mat{{1, 0, 0}, {0, 0, 1}});

    Subspace ab(f2, 3, {{1, 0, 0}, {0, 1, 0}});
    Subspace bc(f2, 3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(subspace_intersect(ab, bc) == e2);
    CHECK(subspace_intersect(ab, Subspace::full(f2, 3)) == ab);
}

TEST_CASE("membership and comparison examples") {
    Fp f2(2);
    Subspace ab(f2, 3, {{1, 0, 0}, {0, 1, 0}});
    CHECK(subspace_contains(ab, {1, 1, 0}));
    CHECK_FALSE(subspace_contains(ab, {1, 0, 1}));
    CHECK(subspace_leq(Subspace::zero(f2, 3), ab));
    CHECK_FALSE(subspace_leq(Subspace(f2, 3, {{1, 0, 1}}), ab));
}

TEST_CASE("codim") {
    Fp f2(2);
    CHECK(Subspace::full(f2, 3).codim() == 0);
    CHECK(Subspace::zero(f2, 3).codim() == 3);
    CHECK(Subspace(f2, 3, {{1, 0, 0}, {0, 1, 0}}).codim() == 1);
}

TEST_CASE("lattice laws on random pairs") {
    std::mt19937 rng(7);
    for (u32 p : {2u, 5u}) {
        Fp f(p);
        for (int trial = 0; trial < 150; ++trial) {
            Subspace a = random_subspace(f, 4, rng);
            Subspace b = random_subspace(f, 4, rng);
            Subspace c = random_subspace(f, 4, rng);
            CHECK(subspace_sum(a, b) == subspace_sum(b, a));
            CHECK(subspace_intersect(a, b) == subspace_intersect(b, a));
            CHECK(subspace_sum(subspace_sum(a, b), c) == subspace_sum(a, subspace_sum(b, c)));
            CHECK(subspace_intersect(subspace_intersect(a, b), c) ==
                  subspace_intersect(a, subspace_intersect(b, c)));
            CHECK(subspace_sum(a, a) == a);
            CHECK(subspace_intersect(a, a) == a);
            CHECK(subspace_sum(a, subspace_intersect(a, b)) == a);
            CHECK(subspace_intersect(a, subspace_sum(a, b)) == a);
            // codimension laws 1 and 3
            if (subspace_leq(a, b)) CHECK(a.codim() >= b.codim());
            CHECK(subspace_intersect(a, b).codim() <= a.codim() + b.codim());
        }
    }
}

TEST_CASE("oracle equivalence against full enumeration") {
    std::mt19937 rng(11);
    // p = 2 up to dim 4, and the odd primes at dim <= 3
    const std::pair<u32, u32> shapes[] = {{2, 1}, {2, 2}, {2, 3}, {2, 4},
                                          {3, 2}, {3, 3}, {5, 2}, {5, 3}};
    for (auto [p, d] : shapes) {
        Fp f(p);
        for (int trial = 0; trial < 60; ++trial) {
            Subspace a = random_subspace(f, d, rng);
            Subspace b = random_subspace(f, d, rng);
            std::set<Vec> sa = vector_set(a);
            std::set<Vec> sb = vector_set(b);

            CHECK(vector_set(subspace_sum(a, b)) == oracle_sum(f, sa, sb));

            std::set<Vec> meet;
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::inserter(meet, meet.begin()));
            CHECK(vector_set(subspace_intersect(a, b)) == meet);

            CHECK(subspace_leq(a, b) ==
                  std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
        }
    }
}

TEST_CASE("subspace enumeration matches the Galois counts") {
    Fp f2(2);
    CHECK(enumerate_all_subspaces(f2, 1).size() == 2);
    CHECK(enumerate_all_subspaces(f2, 2).size() == 5);
    CHECK(enumerate_all_subspaces(f2, 3).size() == 16);
    CHECK(enumerate_all_subspaces(f2, 4).size() == 67);
    Fp f3(3);
    CHECK(enumerate_all_subspaces(f3, 2).size() == 6);  // 1 + 4 + 1
    Fp f5(5);
    CHECK(enumerate_all_subspaces(f5, 3).size() == 64); // 1 + 31 + 31 + 1

    // all distinct, all canonical
    std::set<std::string> keys;
    for (const Subspace& s : enumerate_all_subspaces(f2, 4)) {
        CHECK(Subspace(f2, 4, s.rows()) == s);
        keys.insert(s.key());
    }
    CHECK(keys.size() == 67);
}

TEST_CASE("cross-field and cross-ambient operations are rejected") {
    Fp f2(2), f3(3);
    Subspace a(f2, 2, {{1, 0}});
    Subspace b(f3, 2, {{1, 0}});
    Subspace c(f2, 3, {{1, 0, 0}});
    CHECK_THROWS_AS(subspace_sum(a, b), DimensionError);
    CHECK_THROWS_AS(subspace_intersect(a, c), DimensionError);
    CHECK_THROWS_AS(subspace_leq(a, c), DimensionError);
    CHECK_THROWS_AS(subspace_contains(a, Vec{1, 0, 0}), DimensionError);
}

TEST_CASE("subspace enumeration cap") {
    Fp f5(5);
    CHECK_THROWS_AS(enumerate_all_subspaces(f5, 4, 100), CapExceeded);
}

TEST_CASE("arithmetic at the largest allowed prime") {
    Fp f(2147483647);
    CHECK(f.mul(2147483646, 2147483646) == 1); // (-1)^2
    CHECK(f.inv(2) == 1073741824);             // 2 * 2^30 = 2^31 = 1 mod p
    Subspace s(f, 2, {{2147483646, 2}, {1073741823, 1}});
    CHECK(s.rank() == 1); // second row is a scalar multiple of the first
}

TEST_CASE("field rejects composite moduli") {
    CHECK_THROWS_AS(Fp(1), ValidationError);
    CHECK_THROWS_AS(Fp(4), ValidationError);
    CHECK_THROWS_AS(Fp(91), ValidationError);
    CHECK(Fp(2147483647).p() == 2147483647u); // 2^31 - 1 is prime
}
