#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charspace/lattice.hpp"
#include "charspace/words.hpp"

namespace charspace {

enum class Law { monotone, multilinear, comonotone, colinear, phi_invariant };

std::string law_name(Law l);

/// A total deterministic predicate on tuples of subspaces of a fixed
/// ambient space, with the laws its construction is supposed to satisfy
/// declared up front (check_law tests them, nothing enforces them).
struct Predicate {
    std::string name;
    u32 arity = 1;
    std::function<bool(std::span<const Subspace>)> eval;
    std::vector<Law> declared;

    bool declares(Law l) const;
};

/// A predicate split into a top tuple and a bottom argument, the shape
/// the composition machinery consumes: monotone/multilinear laws apply to
/// the top line, comonotone/colinear to the bottom.
struct TwoLinePredicate {
    std::string name;
    u32 top_arity = 1;
    std::function<bool(std::span<const Subspace>, const Subspace&)> eval;
};

/// Membership test for a class of algebras, evaluated on a subalgebra
/// carrier V inside an ambient presentation Q (the pair stands for V as
/// an algebra in its own right).
struct AlgebraClass {
    std::string name;
    std::function<bool(const StructureAlgebra&, const Subspace&)> member;
};

AlgebraClass nilpotent_class();
AlgebraClass abelian_class();
AlgebraClass identity_class(const MultilinearElement& w);

/// w(N_1,...,N_t) <= M. With ideals on the top line this says the
/// quotient of the top by M satisfies the identity w = 0.
TwoLinePredicate pred_A(const MultilinearElement& w, const StructureAlgebra& a);

/// N/(N cap M) belongs to the class. N must be an ideal and N cap M an
/// ideal of the ambient algebra; the evaluator throws otherwise.
TwoLinePredicate pred_B(const AlgebraClass& cls, const StructureAlgebra& a);

/// Composition: (N_1..N_{kl}) |-> exists M_1..M_k in pool with Q(M_1..M_k)
/// and R_i on the i-th slice with bottom M_i. When Q is declared monotone
/// and the pool is intersection-closed the existential collapses to the
/// intersection of each slice's feasible set; otherwise the pool tuples
/// are enumerated.
Predicate compose(const Predicate& q, const std::vector<TwoLinePredicate>& rs,
                  std::vector<Subspace> pool);

/// Extension by an identity level: arity l*degree(w); diagonal evaluation
/// says "exists an ideal M <= N in the pool with Q(M,...,M) and N/M
/// satisfying w = 0".
Predicate extend_C(const MultilinearElement& w, const Predicate& q,
                   const std::vector<Subspace>& pool, const StructureAlgebra& a);

/// Extension by a class level: arity l.
Predicate extend_D(const AlgebraClass& cls, const Predicate& q,
                   const std::vector<Subspace>& pool, const StructureAlgebra& a);

struct LawCheckOptions {
    u64 exhaustive_budget = 1ull << 28; // loop iterations, mostly memo hits
    u32 random_trials = 2000;
    u64 seed = 0x5eed;
    const MorphismSet* phi = nullptr;           // for Law::phi_invariant
    std::vector<u32> slots;                     // empty = all slots
};

struct LawCheckResult {
    Law law = Law::monotone;
    bool pass = true;
    bool exhaustive = true;
    u64 cases = 0;
    std::string witness;
};

/// Checks one law of P over tuples from `pool`, exhaustively when the
/// tuple count fits the budget and by seeded random sampling otherwise.
/// The witness is a replayable description of the first counterexample.
LawCheckResult check_law(const Predicate& p, Law law, const std::vector<Subspace>& pool,
                         const LawCheckOptions& opts = {});

/// Two-line predicate wrapped as a flat predicate with the bottom last.
Predicate wrap_two_line(const TwoLinePredicate& p);

/// First line: monotone + multilinear over slots 0..top-1; second line:
/// comonotone + colinear over the bottom slot.
std::vector<LawCheckResult> check_two_line_laws(const TwoLinePredicate& p,
                                                const std::vector<Subspace>& pool,
                                                LawCheckOptions opts = {});

} // namespace charspace
