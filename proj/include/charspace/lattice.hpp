#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "charspace/morphism.hpp"
#include "charspace/subspace.hpp"

namespace charspace {

/// A seed set of subspaces together with its closure under pairwise sum
/// and intersection. `complete` is false only when the cap stopped the
/// fixed point early; incomplete closures carry no guarantee and the
/// engines refuse them.
struct SublatticeClosure {
    std::vector<Subspace> seed;
    std::vector<Subspace> elements; // deterministic insertion order
    bool complete = false;
    std::size_t cap = 0;
    std::unordered_map<std::string, std::size_t> index;

    bool contains(const Subspace& s) const { return index.contains(s.key()); }
    std::size_t size() const { return elements.size(); }
};

SublatticeClosure sublattice_closure(const std::vector<Subspace>& seed,
                                     std::size_t cap = 50000);

/// Elements V with apply(phi, V) <= V for every phi; rejects incomplete
/// closures. For automorphism groups <= is the same as equality.
std::vector<Subspace> invariant_elements(const SublatticeClosure& closure,
                                         const MorphismSet& phi);

/// Least invariant upper bound sum_{phi} phi(V), and its dual core.
Subspace phi_sum(const Subspace& v, const MorphismSet& phi);
Subspace phi_core(const Subspace& v, const MorphismSet& phi);

/// k-th iterate of f(x) = x(x+1); doubly exponential, overflow throws.
u64 f_iterate(u32 k, u64 x);
/// The whole trace x, f(x), ..., f^k(x).
std::vector<u64> f_trace(u32 k, u64 x);

/// Greedy selection whose sum equals the sum of the family, of length at
/// most max codim + 1: after the first pick the partial sum's dimension
/// strictly grows, and the deficit is at most codim of the first pick.
std::vector<Subspace> greedy_sup_selection(const std::vector<Subspace>& family);

/// Generalized codimension interface. Only the ordinary instance ships;
/// the laws are still checked against whatever evaluator is plugged in.
struct CodimFunction {
    std::string name;
    std::function<double(const Subspace&)> value;
};

CodimFunction ordinary_codim();

struct CodimLawResult {
    std::string law;
    bool pass = true;
    u64 cases = 0;
    std::string witness;
};

/// The four laws on a finite element set: antitone, non-increasing under
/// phi, subadditive on intersections, and bounded sup-selection.
std::vector<CodimLawResult> check_codim_laws(const std::vector<Subspace>& elements,
                                             const CodimFunction& fn,
                                             const MorphismSet& phi);

} // namespace charspace
