#pragma once

#include <span>
#include <string>
#include <vector>

#include "charspace/algebra.hpp"

namespace charspace {

/// A bracketed product of the variables x1..xt, each appearing exactly
/// once. Stored as a preorder code: 0 marks an internal node (followed by
/// the left then right subtree), a positive value is a leaf holding the
/// 1-based variable index. The code doubles as the canonical comparison
/// key, so monomial order is deterministic everywhere.
struct Monomial {
    std::vector<int> code;
    u32 degree = 0;

    static Monomial leaf(u32 var);
    static Monomial node(const Monomial& l, const Monomial& r);

    std::string sexpr() const;

    bool operator==(const Monomial& o) const { return code == o.code; }
    bool operator<(const Monomial& o) const { return code < o.code; }
};

/// A GF(p)-combination of monomials, all over the same variable set
/// x1..xdegree. Terms are sorted by monomial code with nonzero distinct
/// coefficients. An empty term list is the zero element; parse_word never
/// produces it but internal arithmetic may.
struct MultilinearElement {
    u32 degree = 0;
    std::vector<std::pair<u32, Monomial>> terms;

    bool is_zero() const { return terms.empty(); }
    std::string sexpr() const;
};

MultilinearElement element_from_monomial(const Monomial& m);

/// Grammar: `(* w w)` product, `(+ w w)` sum, `(- w w)` difference,
/// `(s c w)` scalar multiple with an integer literal c, leaves `x1..xN`.
/// Expands to normal form and rejects non-multilinear input: a repeated
/// variable inside a monomial, a monomial missing one of x1..xt, or total
/// cancellation.
MultilinearElement parse_word(const Fp& field, const std::string& text);

u64 catalan(u32 n);

/// All monomials of the exact degree t: every bracketing shape (left
/// subtree size ascending, recursively) times every variable permutation
/// (lexicographic). Count = Catalan(t-1) * t!.
std::vector<Monomial> enumerate_monomials(u32 t, u32 degree_cap = 5);

/// enumerate_monomials for every degree 1..t, wrapped as elements.
std::vector<MultilinearElement> monomial_words_up_to(const Fp& field, u32 t,
                                                     u32 degree_cap = 5);

Vec eval_monomial(const StructureAlgebra& a, const Monomial& m,
                  std::span<const Vec> args);
Vec eval_element(const StructureAlgebra& a, const MultilinearElement& w,
                 std::span<const Vec> args);

/// Span of { w(h_1,...,h_t) : h_i in args[i] }. Multilinearity makes the
/// basis tuples of the arguments sufficient.
Subspace eval_span(const MultilinearElement& w, const StructureAlgebra& a,
                   std::span<const Subspace> args);

} // namespace charspace
