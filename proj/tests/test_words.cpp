#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "charspace/words.hpp"

using namespace charspace;
using namespace fixtures;

namespace {

// Literal value-set oracle: evaluate w on every vector tuple and close
// the result set under addition and scaling. Independent of eval_span's
// basis-tuple shortcut and of rref.
std::set<Vec> span_set_oracle(const MultilinearElement& w, const StructureAlgebra& a,
                              const std::vector<Subspace>& args) {
    const Fp& f = a.field();
    // enumerate all vectors of a subspace by coefficient tuples
    auto vectors_of = [&](const Subspace& s) {
        std::vector<Vec> out;
        std::vector<u32> coeff(s.rank(), 0);
        while (true) {
            Vec v(s.ambient(), 0);
            for (u32 r = 0; r < s.rank(); ++r) {
                for (u32 c = 0; c < s.ambient(); ++c) {
                    v[c] = f.add(v[c], f.mul(coeff[r], s.rows()[r][c]));
                }
            }
            out.push_back(v);
            u32 i = 0;
            while (i < coeff.size()) {
                if (++coeff[i] < f.p()) break;
                coeff[i] = 0;
                ++i;
            }
            if (i == coeff.size()) break;
        }
        return out;
    };

    std::vector<std::vector<Vec>> pools;
    for (const Subspace& s : args) pools.push_back(vectors_of(s));

    std::set<Vec> values;
    values.insert(Vec(a.dim(), 0));
    std::vector<std::size_t> idx(args.size(), 0);
    while (true) {
        std::vector<Vec> tuple;
        for (std::size_t i = 0; i < args.size(); ++i) tuple.push_back(pools[i][idx[i]]);
        values.insert(eval_element(a, w, tuple));
        std::size_t i = 0;
        while (i < idx.size()) {
            if (++idx[i] < pools[i].size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == idx.size()) break;
    }
    // close under addition and scaling (fixed point)
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Vec> next = values;
        for (const Vec& u : values) {
            for (const Vec& v : values) {
                Vec s(u.size());
                for (std::size_t i = 0; i < u.size(); ++i) s[i] = f.add(u[i], v[i]);
                if (next.insert(s).second) changed = true;
            }
        }
        values = next;
    }
    return values;
}

std::set<Vec> vector_set(const Subspace& s) {
    const Fp& f = s.field();
    std::set<Vec> out;
    std::vector<u32> coeff(s.rank(), 0);
    while (true) {
        Vec v(s.ambient(), 0);
        for (u32 r = 0; r < s.rank(); ++r) {
            for (u32 c = 0; c < s.ambient(); ++c) {
                v[c] = f.add(v[c], f.mul(coeff[r], s.rows()[r][c]));
            }
        }
        out.insert(v);
        u32 i = 0;
        while (i < coeff.size()) {
            if (++coeff[i] < f.p()) break;
            coeff[i] = 0;
            ++i;
        }
        if (i == coeff.size()) break;
    }
    return out;
}

} // namespace

TEST_CASE("parse_word basics") {
    Fp f2(2);
    MultilinearElement comm = parse_word(f2, "(- (* x1 x2) (* x2 x1))");
    CHECK(comm.degree == 2);
    CHECK(comm.terms.size() == 2); // char 2: both coefficients are 1
    CHECK(comm.terms[0].first == 1);
    CHECK(comm.terms[1].first == 1);

    MultilinearElement x1 = parse_word(f2, "x1");
    CHECK(x1.degree == 1);
    CHECK(x1.terms.size() == 1);

    CHECK_THROWS_AS(parse_word(f2, "(* x1 x1)"), ValidationError);
    CHECK_THROWS_AS(parse_word(f2, "(+ x1 (* x1 x2))"), ValidationError); // x1 misses x2
    CHECK_THROWS_AS(parse_word(f2, "(+ (* x1 x2) (* x1 x2))"), ValidationError); // cancels
    CHECK_THROWS_AS(parse_word(f2, "(* x1"), ParseError);
    CHECK_THROWS_AS(parse_word(f2, "(? x1 x2)"), ParseError);
    CHECK_THROWS_AS(parse_word(f2, ""), ParseError);
}

TEST_CASE("parse_word scalars and normal form") {
    Fp f5(5);
    MultilinearElement w = parse_word(f5, "(s 7 (* x1 x2))");
    CHECK(w.terms.size() == 1);
    CHECK(w.terms[0].first == 2); // 7 mod 5

    MultilinearElement neg = parse_word(f5, "(s -1 (* x1 x2))");
    CHECK(neg.terms[0].first == 4);

    // (* x1 x2) + (* x1 x2) = 2(* x1 x2) over GF(5)
    MultilinearElement dbl = parse_word(f5, "(+ (* x1 x2) (* x1 x2))");
    CHECK(dbl.terms.size() == 1);
    CHECK(dbl.terms[0].first == 2);

    // sexpr round-trips through the parser
    MultilinearElement comm = parse_word(f5, "(- (* x1 x2) (* x2 x1))");
    MultilinearElement again = parse_word(f5, comm.sexpr());
    CHECK(comm.degree == again.degree);
    CHECK(comm.terms == again.terms);
}

TEST_CASE("enumerate_monomials counts") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(2) == 2);
    CHECK(catalan(3) == 5);
    CHECK(catalan(4) == 14);

    CHECK(enumerate_monomials(1).size() == 1);
    CHECK(enumerate_monomials(2).size() == 2);
    CHECK(enumerate_monomials(3).size() == 12);
    CHECK(enumerate_monomials(4).size() == 120);
    CHECK(enumerate_monomials(5).size() == 1680);
    CHECK_THROWS_AS(enumerate_monomials(6), CapExceeded);
    CHECK(enumerate_monomials(6, 6).size() == static_cast<std::size_t>(catalan(5) * 720));

    for (u32 t = 1; t <= 4; ++t) {
        auto monos = enumerate_monomials(t);
        CHECK(monos.size() == catalan(t - 1) * [](u32 n) {
                  u64 f = 1;
                  for (u32 i = 2; i <= n; ++i) f *= i;
                  return f;
              }(t));
        // pairwise distinct, each variable once
        std::set<std::vector<int>> codes;
        for (const Monomial& m : monos) {
            codes.insert(m.code);
            CHECK(m.degree == t);
            std::set<int> vars;
            for (int c : m.code) {
                if (c > 0) vars.insert(c);
            }
            CHECK(vars.size() == t);
        }
        CHECK(codes.size() == monos.size());
    }
}

TEST_CASE("eval_span worked examples") {
    StructureAlgebra dual = dual_numbers();
    Fp f2(2);
    MultilinearElement xy = parse_word(f2, "(* x1 x2)");
    Subspace eps = span(dual, {{0, 1}});
    std::vector<Subspace> args{eps, eps};
    CHECK(eval_span(xy, dual, args).is_zero());

    StructureAlgebra t = tri2();
    MultilinearElement comm = parse_word(f2, "(- (* x1 x2) (* x2 x1))");
    std::vector<Subspace> gg{t.full_subspace(), t.full_subspace()};
    CHECK(eval_span(comm, t, gg) == span(t, {{0, 0, 1}}));

    MultilinearElement x1 = parse_word(f2, "x1");
    Subspace v = span(t, {{1, 0, 0}, {0, 0, 1}});
    std::vector<Subspace> single{v};
    CHECK(eval_span(x1, t, single) == v);

    // zero argument≤ gives the zero span
    std::vector<Subspace> withzero{t.zero_subspace(), t.full_subspace()};
    CHECK(eval_span(xy, t, withzero).is_zero());
}

TEST_CASE("eval_span equals the literal value-set span at desk scale") {
    std::mt19937 rng(23);
    Fp f2(2);
    MultilinearElement xy = parse_word(f2, "(* x1 x2)");
    MultilinearElement comm = parse_word(f2, "(- (* x1 x2) (* x2 x1))");
    MultilinearElement x1 = parse_word(f2, "x1");

    for (const StructureAlgebra& a : {tri2(), strict3(), dual_numbers()}) {
        std::vector<Subspace> all = enumerate_all_subspaces(a.field(), a.dim());
        for (int trial = 0; trial < 25; ++trial) {
            Subspace v = all[rng() % all.size()];
            Subspace w = all[rng() % all.size()];
            for (const MultilinearElement* word : {&xy, &comm}) {
                std::vector<Subspace> args{v, w};
                CHECK(vector_set(eval_span(*word, a, args)) ==
                      span_set_oracle(*word, a, args));
            }
            std::vector<Subspace> one{v};
            CHECK(vector_set(eval_span(x1, a, one)) == span_set_oracle(x1, a, one));
        }
    }
}

TEST_CASE("eval_span arity and ambient mismatches") {
    StructureAlgebra t = tri2();
    Fp f2(2);
    MultilinearElement xy = parse_word(f2, "(* x1 x2)");
    std::vector<Subspace> one{t.full_subspace()};
    CHECK_THROWS_AS(eval_span(xy, t, one), DimensionError);
    std::vector<Subspace> wrong{Subspace(f2, 2, {{1, 0}}), Subspace(f2, 2, {{0, 1}})};
    CHECK_THROWS_AS(eval_span(xy, t, wrong), DimensionError);

    // scalar degree-1 word evaluates to the same subspace
    MultilinearElement scaled = parse_word(Fp(5), "(s 3 x1)");
    StructureAlgebra z = zero_algebra(5, 2);
    std::vector<Subspace> v{span(z, {{1, 2}})};
    CHECK(eval_span(scaled, z, v) == v[0]);
}

TEST_CASE("eval_span multilinearity, monotonicity and equivariance") {
    std::mt19937 rng(29);
    StructureAlgebra t = tri2();
    Fp f2(2);
    MultilinearElement xy = parse_word(f2, "(* x1 x2)");
    std::vector<Subspace> all = enumerate_all_subspaces(f2, 3);

    Morphism phi = must_validate_morphism(t, tri2_phi_matrix(), MorphKind::automorphism);

    for (int trial = 0; trial < 60; ++trial) {
        Subspace a = all[rng() % all.size()];
        Subspace b = all[rng() % all.size()];
        Subspace c = all[rng() % all.size()];

        // additivity in the first slot
        std::vector<Subspace> sum_args{subspace_sum(a, b), c};
        std::vector<Subspace> a_args{a, c};
        std::vector<Subspace> b_args{b, c};
        CHECK(eval_span(xy, t, sum_args) ==
              subspace_sum(eval_span(xy, t, a_args), eval_span(xy, t, b_args)));

        // monotonicity
        if (subspace_leq(a, b)) {
            CHECK(subspace_leq(eval_span(xy, t, a_args), eval_span(xy, t, b_args)));
        }

        // automorphism equivariance
        std::vector<Subspace> img_args{apply(phi, a), apply(phi, c)};
        CHECK(apply(phi, eval_span(xy, t, a_args)) == eval_span(xy, t, img_args));
    }
}
