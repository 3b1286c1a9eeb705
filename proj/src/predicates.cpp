#include "charspace/predicates.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "charspace/errors.hpp"

namespace charspace {

std::string law_name(Law l) {
    switch (l) {
        case Law::monotone: return "monotone";
        case Law::multilinear: return "multilinear";
        case Law::comonotone: return "comonotone";
        case Law::colinear: return "colinear";
        case Law::phi_invariant: return "phi-invariant";
    }
    return "?";
}

bool Predicate::declares(Law l) const {
    return std::find(declared.begin(), declared.end(), l) != declared.end();
}

AlgebraClass nilpotent_class() {
    return {"nilpotent", [](const StructureAlgebra& q, const Subspace& v) {
                return nilpotency_index(q, v).has_value();
            }};
}

AlgebraClass abelian_class() {
    // commutative: xy = yx on all basis pairs (for Lie carriers this is
    // the same as all products vanishing)
    return {"abelian", [](const StructureAlgebra& q, const Subspace& v) {
                const Mat& rows = v.rows();
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    for (std::size_t j = i + 1; j < rows.size(); ++j) {
                        if (q.multiply(rows[i], rows[j]) != q.multiply(rows[j], rows[i])) {
                            return false;
                        }
                    }
                }
                return true;
            }};
}

AlgebraClass identity_class(const MultilinearElement& w) {
    return {"identity:" + w.sexpr(), [w](const StructureAlgebra& q, const Subspace& v) {
                std::vector<Subspace> args(w.degree, v);
                return eval_span(w, q, args).is_zero();
            }};
}

TwoLinePredicate pred_A(const MultilinearElement& w, const StructureAlgebra& a) {
    if (w.is_zero()) throw ValidationError("pred_A needs a nonzero word");
    StructureAlgebra alg = a;
    return {"A[" + w.sexpr() + "]", w.degree,
            [w, alg](std::span<const Subspace> top, const Subspace& bottom) {
                if (top.size() != w.degree) {
                    throw DimensionError("pred_A arity mismatch");
                }
                return subspace_leq(eval_span(w, alg, top), bottom);
            }};
}

TwoLinePredicate pred_B(const AlgebraClass& cls, const StructureAlgebra& a) {
    StructureAlgebra alg = a;
    return {"B[" + cls.name + "]", 1,
            [cls, alg](std::span<const Subspace> top, const Subspace& bottom) {
                if (top.size() != 1) throw DimensionError("pred_B arity mismatch");
                const Subspace& n = top[0];
                if (!is_ideal(alg, n)) {
                    throw ValidationError("pred_B: first argument is not an ideal");
                }
                Subspace meet = subspace_intersect(n, bottom);
                if (!is_ideal(alg, meet)) {
                    throw ValidationError("pred_B: N cap M is not an ideal");
                }
                QuotientPresentation q = quotient(alg, meet);
                return cls.member(q.quotient, q.project_subspace(n));
            }};
}

Predicate compose(const Predicate& q, const std::vector<TwoLinePredicate>& rs,
                  std::vector<Subspace> pool) {
    if (pool.empty()) throw ValidationError("compose needs a nonempty pool");
    if (rs.empty()) throw ValidationError("compose needs at least one inner predicate");
    const u32 k = q.arity;
    if (rs.size() != k) {
        throw DimensionError("compose: predicate arity " + std::to_string(k) + " but " +
                             std::to_string(rs.size()) + " inner predicates");
    }
    const u32 l = rs[0].top_arity;
    for (const TwoLinePredicate& r : rs) {
        if (r.top_arity != l) {
            throw DimensionError("compose: inner predicates disagree on top arity");
        }
    }
    std::unordered_set<std::string> pool_keys;
    for (const Subspace& s : pool) pool_keys.insert(s.key());
    const bool q_monotone = q.declares(Law::monotone);

    Predicate out;
    out.name = q.name + " o {" + rs[0].name + (k > 1 ? ",..." : "") + "}";
    out.arity = k * l;
    out.declared = {Law::monotone, Law::multilinear};
    out.eval = [q, rs, pool = std::move(pool), pool_keys = std::move(pool_keys), q_monotone,
                k, l](std::span<const Subspace> args) -> bool {
        if (args.size() != static_cast<std::size_t>(k) * l) {
            throw DimensionError("composed predicate arity mismatch");
        }
        // feasible bottoms per slice
        std::vector<std::vector<std::size_t>> feasible(k);
        for (u32 i = 0; i < k; ++i) {
            std::span<const Subspace> slice = args.subspan(static_cast<std::size_t>(i) * l, l);
            for (std::size_t m = 0; m < pool.size(); ++m) {
                if (rs[i].eval(slice, pool[m])) feasible[i].push_back(m);
            }
            if (feasible[i].empty()) return false;
        }

        if (q_monotone) {
            // Second lines are colinear, so each slice's feasible set is
            // intersection-closed and has a least element; a monotone Q
            // holds for some feasible tuple iff it holds at the tuple of
            // least bottoms. Falls back to enumeration if the least
            // element escapes the pool.
            std::vector<Subspace> mins;
            bool shortcut = true;
            for (u32 i = 0; i < k; ++i) {
                Subspace m = pool[feasible[i][0]];
                for (std::size_t idx = 1; idx < feasible[i].size(); ++idx) {
                    m = subspace_intersect(m, pool[feasible[i][idx]]);
                }
                std::span<const Subspace> slice =
                    args.subspan(static_cast<std::size_t>(i) * l, l);
                if (!pool_keys.contains(m.key()) || !rs[i].eval(slice, m)) {
                    shortcut = false;
                    break;
                }
                mins.push_back(std::move(m));
            }
            if (shortcut) return q.eval(mins);
        }

        // exhaustive product of the feasible sets
        std::vector<std::size_t> pick(k, 0);
        std::vector<Subspace> tuple;
        while (true) {
            tuple.clear();
            for (u32 i = 0; i < k; ++i) tuple.push_back(pool[feasible[i][pick[i]]]);
            if (q.eval(tuple)) return true;
            u32 i = 0;
            while (i < k) {
                if (++pick[i] < feasible[i].size()) break;
                pick[i] = 0;
                ++i;
            }
            if (i == k) return false;
        }
    };
    return out;
}

Predicate extend_C(const MultilinearElement& w, const Predicate& q,
                   const std::vector<Subspace>& pool, const StructureAlgebra& a) {
    for (const Subspace& s : pool) {
        if (!is_ideal(a, s)) {
            throw ValidationError("extend_C: pool element " + format_basis(s) +
                                  " is not an ideal");
        }
    }
    std::vector<TwoLinePredicate> rs(q.arity, pred_A(w, a));
    Predicate out = compose(q, rs, pool);
    out.name = "C[" + w.sexpr() + "; " + q.name + "]";
    return out;
}

Predicate extend_D(const AlgebraClass& cls, const Predicate& q,
                   const std::vector<Subspace>& pool, const StructureAlgebra& a) {
    for (const Subspace& s : pool) {
        if (!is_ideal(a, s)) {
            throw ValidationError("extend_D: pool element " + format_basis(s) +
                                  " is not an ideal");
        }
    }
    std::vector<TwoLinePredicate> rs(q.arity, pred_B(cls, a));
    Predicate out = compose(q, rs, pool);
    out.name = "D[" + cls.name + "; " + q.name + "]";
    return out;
}

// ---------------------------------------------------------------------------
// law checking

namespace {

// Interns subspaces so tuples memoize through small integer ids rather
// than canonical-basis strings. Pool elements get the leading ids.
struct SubspaceInterner {
    std::unordered_map<std::string, u32> ids;
    std::vector<Subspace> store;

    u32 intern(const Subspace& s) {
        auto [it, inserted] = ids.try_emplace(s.key(), static_cast<u32>(store.size()));
        if (inserted) store.push_back(s);
        return it->second;
    }
};

std::string tuple_text(std::span<const Subspace> t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += format_basis(t[i]);
    }
    return s + ")";
}

u64 pow_sat(u64 base, u32 exp, u64 limit) {
    u64 r = 1;
    for (u32 i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base) return limit + 1;
        r *= base;
    }
    return r;
}

} // namespace

LawCheckResult check_law(const Predicate& p, Law law, const std::vector<Subspace>& pool,
                         const LawCheckOptions& opts) {
    if (pool.empty()) throw ValidationError("check_law needs a nonempty pool");
    if (law == Law::phi_invariant && opts.phi == nullptr) {
        throw ValidationError("phi-invariance check needs a morphism set");
    }
    LawCheckResult res;
    res.law = law;

    std::vector<u32> slots = opts.slots;
    if (slots.empty()) {
        slots.resize(p.arity);
        for (u32 i = 0; i < p.arity; ++i) slots[i] = i;
    }

    SubspaceInterner interner;
    for (const Subspace& s : pool) interner.intern(s);

    const bool fast_keys = p.arity <= 4; // 16 bits per slot
    std::unordered_map<u64, bool> fast_memo;
    std::unordered_map<std::string, bool> slow_memo;
    auto eval_ids = [&](const std::vector<u32>& ids) -> bool {
        if (fast_keys && ids.size() <= 4 &&
            std::all_of(ids.begin(), ids.end(), [](u32 i) { return i < (1u << 16); })) {
            u64 code = 0;
            for (u32 i : ids) code = (code << 16) | (i + 1);
            auto it = fast_memo.find(code);
            if (it != fast_memo.end()) return it->second;
            std::vector<Subspace> tuple;
            tuple.reserve(ids.size());
            for (u32 i : ids) tuple.push_back(interner.store[i]);
            bool v = p.eval(tuple);
            fast_memo.emplace(code, v);
            return v;
        }
        std::string key;
        for (u32 i : ids) {
            key += std::to_string(i);
            key += '.';
        }
        auto it = slow_memo.find(key);
        if (it != slow_memo.end()) return it->second;
        std::vector<Subspace> tuple;
        tuple.reserve(ids.size());
        for (u32 i : ids) tuple.push_back(interner.store[i]);
        bool v = p.eval(tuple);
        slow_memo.emplace(std::move(key), v);
        return v;
    };
    auto materialize = [&](const std::vector<u32>& ids) {
        std::vector<Subspace> tuple;
        for (u32 i : ids) tuple.push_back(interner.store[i]);
        return tuple;
    };

    // pairwise comparability / sum / intersect tables over the pool
    const std::size_t n = pool.size();
    u64 iterations = pow_sat(n, p.arity + 1, opts.exhaustive_budget) * slots.size();
    if (law == Law::phi_invariant) {
        iterations = pow_sat(n, p.arity, opts.exhaustive_budget) * (opts.phi->size() + 1);
    }
    res.exhaustive = iterations <= opts.exhaustive_budget;

    // morphism image ids for pool elements
    std::vector<std::vector<u32>> image_id;
    if (law == Law::phi_invariant) {
        image_id.resize(opts.phi->size(), std::vector<u32>(n));
        for (std::size_t m = 0; m < opts.phi->size(); ++m) {
            for (std::size_t i = 0; i < n; ++i) {
                image_id[m][i] = interner.intern(apply(opts.phi->elements[m], pool[i]));
            }
        }
    }

    std::mt19937_64 rng(opts.seed);
    std::vector<u32> base(p.arity, 0);
    bool done = false;
    u64 sampled = 0;
    auto advance = [&]() {
        if (res.exhaustive) {
            std::size_t i = 0;
            while (i < base.size()) {
                if (++base[i] < n) break;
                base[i] = 0;
                ++i;
            }
            if (i == base.size()) done = true;
        } else {
            if (++sampled >= opts.random_trials) done = true;
            for (u32& b : base) b = static_cast<u32>(rng() % n);
        }
    };
    if (!res.exhaustive) {
        for (u32& b : base) b = static_cast<u32>(rng() % n);
    }

    std::vector<u32> work;
    while (!done) {
        switch (law) {
            case Law::monotone:
            case Law::comonotone: {
                if (!eval_ids(base)) break;
                for (u32 slot : slots) {
                    for (u32 cand = 0; cand < n; ++cand) {
                        bool related = law == Law::monotone
                                           ? subspace_leq(pool[cand], interner.store[base[slot]])
                                           : subspace_leq(interner.store[base[slot]], pool[cand]);
                        if (!related) continue;
                        work = base;
                        work[slot] = cand;
                        ++res.cases;
                        if (!eval_ids(work)) {
                            res.pass = false;
                            res.witness =
                                p.name + " holds at " + tuple_text(materialize(base)) +
                                " but fails after replacing slot " + std::to_string(slot + 1) +
                                " by " + format_basis(pool[cand]);
                            return res;
                        }
                    }
                }
                break;
            }
            case Law::multilinear:
            case Law::colinear: {
                if (!eval_ids(base)) break;
                for (u32 slot : slots) {
                    for (u32 second = 0; second < n; ++second) {
                        work = base;
                        work[slot] = second;
                        if (!eval_ids(work)) continue;
                        Subspace combined =
                            law == Law::multilinear
                                ? subspace_sum(interner.store[base[slot]], pool[second])
                                : subspace_intersect(interner.store[base[slot]], pool[second]);
                        work[slot] = interner.intern(combined);
                        ++res.cases;
                        if (!eval_ids(work)) {
                            res.pass = false;
                            res.witness =
                                p.name + " holds at slot-" + std::to_string(slot + 1) +
                                " values " + format_basis(interner.store[base[slot]]) + " and " +
                                format_basis(pool[second]) + " in context " +
                                tuple_text(materialize(base)) + " but fails at their " +
                                (law == Law::multilinear ? "sum" : "intersection");
                            return res;
                        }
                    }
                }
                break;
            }
            case Law::phi_invariant: {
                if (!eval_ids(base)) break;
                for (std::size_t m = 0; m < opts.phi->size(); ++m) {
                    work.clear();
                    for (u32 b : base) work.push_back(image_id[m][b]);
                    ++res.cases;
                    if (!eval_ids(work)) {
                        res.pass = false;
                        res.witness = p.name + " holds at " + tuple_text(materialize(base)) +
                                      " but fails at its image " +
                                      tuple_text(materialize(work));
                        return res;
                    }
                }
                break;
            }
        }
        advance();
    }
    return res;
}

Predicate wrap_two_line(const TwoLinePredicate& p) {
    Predicate out;
    out.name = p.name;
    out.arity = p.top_arity + 1;
    out.eval = [p](std::span<const Subspace> args) {
        return p.eval(args.first(args.size() - 1), args.back());
    };
    return out;
}

std::vector<LawCheckResult> check_two_line_laws(const TwoLinePredicate& p,
                                                const std::vector<Subspace>& pool,
                                                LawCheckOptions opts) {
    Predicate flat = wrap_two_line(p);
    std::vector<u32> top(p.top_arity);
    for (u32 i = 0; i < p.top_arity; ++i) top[i] = i;
    std::vector<u32> bottom{p.top_arity};

    std::vector<LawCheckResult> out;
    opts.slots = top;
    out.push_back(check_law(flat, Law::monotone, pool, opts));
    out.push_back(check_law(flat, Law::multilinear, pool, opts));
    opts.slots = bottom;
    out.push_back(check_law(flat, Law::comonotone, pool, opts));
    out.push_back(check_law(flat, Law::colinear, pool, opts));
    return out;
}

} // namespace charspace
