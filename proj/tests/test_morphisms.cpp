#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"

using namespace charspace;
using namespace fixtures;

TEST_CASE("identity is always a valid automorphism") {
    for (const StructureAlgebra& a : {tri2(), strict3(), heisenberg(), sl2()}) {
        Mat id(a.dim(), Vec(a.dim(), 0));
        for (u32 i = 0; i < a.dim(); ++i) id[i][i] = 1;
        CHECK(validate_morphism(a, id, MorphKind::automorphism).ok);
    }
}

TEST_CASE("the worked tri2 automorphism validates and has order 2") {
    StructureAlgebra t = tri2();
    MorphismValidation v = validate_morphism(t, tri2_phi_matrix(), MorphKind::automorphism);
    REQUIRE(v.ok);
    Morphism phi = *v.morphism;
    CHECK(phi.apply_vec({1, 0, 0}) == Vec{1, 0, 1}); // e1 -> e1 + e3
    CHECK(phi.apply_vec({0, 1, 0}) == Vec{0, 1, 1}); // e2 -> e2 + e3
    CHECK(phi.apply_vec({0, 0, 1}) == Vec{0, 0, 1});
    Morphism sq = compose(phi, phi);
    CHECK(sq == identity_morphism(t.field(), 3, MorphKind::automorphism));
}

TEST_CASE("swap e1<->e3 on tri2 is not multiplicative") {
    StructureAlgebra t = tri2();
    Mat swap = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    MorphismValidation v = validate_morphism(t, swap, MorphKind::automorphism);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("basis pair") != std::string::npos);
}

TEST_CASE("singular matrices cannot be automorphisms") {
    StructureAlgebra z = zero_algebra(2, 2);
    Mat sing = {{1, 1}, {1, 1}};
    CHECK_FALSE(validate_morphism(z, sing, MorphKind::automorphism).ok);
    // but any matrix is a valid endomorphism of the zero algebra
    CHECK(validate_morphism(z, sing, MorphKind::endomorphism).ok);
}

TEST_CASE("closure sizes") {
    StructureAlgebra t = tri2();
    Morphism phi = must_validate_morphism(t, tri2_phi_matrix(), MorphKind::automorphism);
    MorphismSet only_id = morphism_closure(
        {identity_morphism(t.field(), 3, MorphKind::automorphism)});
    CHECK(only_id.size() == 1);

    MorphismSet two = morphism_closure({phi});
    CHECK(two.size() == 2);
    CHECK(two.contains_identity);

    // GL(d, p) on the zero algebra
    auto gl_closure = [](u32 p, u32 d) {
        StructureAlgebra z = zero_algebra(p, d);
        std::vector<Morphism> gens;
        for (const Mat& m : gl_generators(z.field(), d)) {
            gens.push_back(must_validate_morphism(z, m, MorphKind::automorphism));
        }
        return morphism_closure(gens);
    };
    CHECK(gl_closure(2, 2).size() == 6);    // |GL(2,2)|
    CHECK(gl_closure(3, 2).size() == 48);   // |GL(2,3)|
    CHECK(gl_closure(2, 3).size() == 168);  // |GL(3,2)|

    // transvection + basis cycle generate more than 20 elements
    MorphismSet gl32 = gl_closure(2, 3);
    CHECK_THROWS_AS(morphism_closure({gl32.elements[1], gl32.elements[3]}, 20),
                    CapExceeded);
}

TEST_CASE("closure of automorphisms is a group") {
    StructureAlgebra z = zero_algebra(2, 3);
    std::vector<Morphism> gens;
    for (const Mat& m : gl_generators(z.field(), 3)) {
        gens.push_back(must_validate_morphism(z, m, MorphKind::automorphism));
    }
    MorphismSet gl = morphism_closure(gens);
    std::set<std::string> keys;
    for (const Morphism& m : gl.elements) keys.insert(m.key());
    // every element has an inverse in the set
    Morphism id = identity_morphism(z.field(), 3, MorphKind::automorphism);
    for (const Morphism& m : gl.elements) {
        bool has_inverse = false;
        for (const Morphism& n : gl.elements) {
            if (compose(m, n) == id) {
                has_inverse = true;
                break;
            }
        }
        CHECK(has_inverse);
    }
}

TEST_CASE("apply and orbit") {
    StructureAlgebra t = tri2();
    MorphismSet phi = tri2_phi_set();
    Subspace e1 = span(t, {{1, 0, 0}});
    Subspace e3 = span(t, {{0, 0, 1}});

    CHECK(apply(phi.elements[0], e1) == e1); // identity

    std::vector<Subspace> orb = orbit(e1, phi);
    REQUIRE(orb.size() == 2);
    CHECK(orb[0] == e1);
    CHECK(orb[1] == span(t, {{1, 0, 1}}));

    std::vector<Subspace> orb3 = orbit(e3, phi);
    CHECK(orb3.size() == 1);
    CHECK(orb3[0] == e3);
}

TEST_CASE("automorphisms are lattice endomorphisms and preserve codim") {
    std::mt19937 rng(31);
    StructureAlgebra t = tri2();
    MorphismSet set = tri2_phi_set();
    std::vector<Subspace> all = enumerate_all_subspaces(t.field(), 3);
    for (const Morphism& m : set.elements) {
        for (const Subspace& a : all) {
            for (const Subspace& b : all) {
                CHECK(apply(m, subspace_sum(a, b)) ==
                      subspace_sum(apply(m, a), apply(m, b)));
                CHECK(apply(m, subspace_intersect(a, b)) ==
                      subspace_intersect(apply(m, a), apply(m, b)));
            }
            CHECK(apply(m, a).codim() == a.codim());
        }
    }

    // also for a bigger group over GF(3)
    StructureAlgebra z = zero_algebra(3, 2);
    std::vector<Morphism> gens;
    for (const Mat& g : gl_generators(z.field(), 2)) {
        gens.push_back(must_validate_morphism(z, g, MorphKind::automorphism));
    }
    MorphismSet gl = morphism_closure(gens);
    std::vector<Subspace> all3 = enumerate_all_subspaces(z.field(), 2);
    for (int trial = 0; trial < 200; ++trial) {
        const Morphism& m = gl.elements[rng() % gl.size()];
        const Subspace& a = all3[rng() % all3.size()];
        const Subspace& b = all3[rng() % all3.size()];
        CHECK(apply(m, subspace_sum(a, b)) == subspace_sum(apply(m, a), apply(m, b)));
        CHECK(apply(m, subspace_intersect(a, b)) ==
              subspace_intersect(apply(m, a), apply(m, b)));
    }
}

TEST_CASE("is_invariant") {
    StructureAlgebra t = tri2();
    MorphismSet phi = tri2_phi_set();
    CHECK(is_invariant(span(t, {{0, 0, 1}}), phi));
    CHECK(is_invariant(span(t, {{1, 0, 0}, {0, 0, 1}}), phi));
    CHECK_FALSE(is_invariant(span(t, {{1, 0, 0}}), phi));
    CHECK(is_invariant(t.zero_subspace(), phi));
    CHECK(is_invariant(t.full_subspace(), phi));
}
