#include "charspace/engine_series.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "charspace/errors.hpp"

namespace charspace {

std::string SeriesLevel::describe() const {
    if (kind == Kind::identity) return "identity " + word.sexpr() + " = 0";
    return "class " + klass.name;
}

SeriesLevel identity_level(const MultilinearElement& w) {
    SeriesLevel l;
    l.kind = SeriesLevel::Kind::identity;
    l.word = w;
    return l;
}

SeriesLevel class_level(const AlgebraClass& cls) {
    SeriesLevel l;
    l.kind = SeriesLevel::Kind::algebra_class;
    l.klass = cls;
    return l;
}

std::string series_route_name(SeriesRoute r) {
    switch (r) {
        case SeriesRoute::direct: return "direct";
        case SeriesRoute::predicate: return "predicate";
        case SeriesRoute::both: return "both";
    }
    return "both";
}

namespace {

// B / B_prev inside the quotient presentation modulo B_prev.
bool level_holds(const StructureAlgebra& a, const SeriesLevel& level, const Subspace& b,
                 const Subspace& b_prev, SeriesLevelEvidence* evidence) {
    QuotientPresentation q = quotient(a, b_prev);
    Subspace image = q.project_subspace(b);
    if (level.kind == SeriesLevel::Kind::identity) {
        std::vector<Subspace> diag(level.word.degree, image);
        Subspace span = eval_span(level.word, q.quotient, diag);
        if (evidence) {
            evidence->requirement = level.describe();
            evidence->identity_span = span;
        }
        return span.is_zero();
    }
    bool ok = level.klass.member(q.quotient, image);
    if (evidence) {
        evidence->requirement = level.describe();
        evidence->identity_span = Subspace::zero(a.field(), q.quotient.dim());
        if (level.klass.name == "nilpotent") {
            evidence->nilpotency = nilpotency_index(q.quotient, image);
        }
    }
    return ok;
}

} // namespace

SeriesReport check_series(const StructureAlgebra& a, const Subspace& n,
                          const SeriesWitness& witness, const SeriesSpec& spec) {
    const std::size_t levels = spec.length();
    if (witness.chain.size() != levels + 1) {
        return {false, 0,
                "witness chain has " + std::to_string(witness.chain.size()) +
                    " members, expected " + std::to_string(levels + 1)};
    }
    if (!witness.chain.front().is_zero()) {
        return {false, 0, "witness chain must start at the zero subspace"};
    }
    if (witness.chain.back() != n) {
        return {false, 0, "witness chain must end at N"};
    }
    for (std::size_t i = 0; i < witness.chain.size(); ++i) {
        const Subspace& b = witness.chain[i];
        if (b.ambient() != a.dim()) {
            return {false, 0, "chain member " + std::to_string(i) + " has wrong ambient"};
        }
        if (!is_ideal(a, b)) {
            return {false, static_cast<int>(i),
                    "chain member " + std::to_string(i) + " = " + format_basis(b) +
                        " is not a two-sided ideal"};
        }
        if (i > 0 && !subspace_leq(witness.chain[i - 1], b)) {
            return {false, static_cast<int>(i),
                    "chain member " + std::to_string(i - 1) +
                        " is not contained in member " + std::to_string(i)};
        }
    }
    for (std::size_t i = 1; i <= levels; ++i) {
        if (!level_holds(a, spec.levels[i - 1], witness.chain[i], witness.chain[i - 1],
                         nullptr)) {
            return {false, static_cast<int>(i),
                    "level " + std::to_string(i) + " requirement (" +
                        spec.levels[i - 1].describe() + ") fails for the quotient " +
                        format_basis(witness.chain[i]) + " / " +
                        format_basis(witness.chain[i - 1])};
        }
    }
    return {};
}

Predicate build_series_predicate(const StructureAlgebra& a, const SeriesSpec& spec,
                                 const std::vector<Subspace>& pool) {
    Predicate u;
    u.name = "U0";
    u.arity = 1;
    u.declared = {Law::monotone, Law::multilinear};
    u.eval = [](std::span<const Subspace> args) { return args[0].is_zero(); };
    for (std::size_t i = 0; i < spec.length(); ++i) {
        const SeriesLevel& level = spec.levels[i];
        if (level.kind == SeriesLevel::Kind::identity) {
            u = extend_C(level.word, u, pool, a);
        } else {
            u = extend_D(level.klass, u, pool, a);
        }
        u.name = "U" + std::to_string(i + 1);
    }
    return u;
}

namespace {

struct ChainSearch {
    const StructureAlgebra& a;
    const SeriesSpec& spec;
    const std::vector<Subspace>& invariant_ideals;
    // memo[(level, element)] -> index of a feasible predecessor, or -2
    // unknown, -1 infeasible
    std::vector<std::vector<int>> memo;

    ChainSearch(const StructureAlgebra& a_, const SeriesSpec& spec_,
                const std::vector<Subspace>& inv)
        : a(a_), spec(spec_), invariant_ideals(inv),
          memo(spec_.length() + 1, std::vector<int>(inv.size(), -2)) {}

    // Is there an invariant chain 0 = B_0 <= ... <= B_level = element?
    bool feasible(std::size_t level, std::size_t element) {
        if (level == 0) return invariant_ideals[element].is_zero();
        int& slot = memo[level][element];
        if (slot != -2) return slot >= 0;
        const Subspace& b = invariant_ideals[element];
        for (std::size_t prev = 0; prev < invariant_ideals.size(); ++prev) {
            const Subspace& bp = invariant_ideals[prev];
            if (!subspace_leq(bp, b)) continue;
            if (!level_holds(a, spec.levels[level - 1], b, bp, nullptr)) continue;
            if (feasible(level - 1, prev)) {
                slot = static_cast<int>(prev);
                return true;
            }
        }
        slot = -1;
        return false;
    }

    std::vector<Subspace> reconstruct(std::size_t element) {
        std::vector<Subspace> chain;
        std::size_t cur = element;
        for (std::size_t level = spec.length(); level > 0; --level) {
            chain.push_back(invariant_ideals[cur]);
            cur = static_cast<std::size_t>(memo[level][cur]);
        }
        chain.push_back(invariant_ideals[cur]);
        std::reverse(chain.begin(), chain.end());
        return chain;
    }
};

} // namespace

SeriesCertificate find_characteristic_series(const StructureAlgebra& a, const Subspace& n,
                                             const SeriesWitness& witness,
                                             const SeriesSpec& spec, const MorphismSet& phi,
                                             SeriesRoute route, EngineCaps caps) {
    if (phi.kind != MorphKind::automorphism) {
        throw ValidationError("series engine requires an automorphism set");
    }
    SeriesReport input_check = check_series(a, n, witness, spec);
    if (!input_check.ok) {
        throw HypothesisError("input witness is not a valid series: " + input_check.message);
    }

    // Ideal sublattice closure of the orbits of the whole input chain.
    std::vector<Subspace> seed;
    for (const Subspace& b : witness.chain) {
        for (Subspace& img : orbit(b, phi)) seed.push_back(std::move(img));
    }
    SublatticeClosure closure = sublattice_closure(seed, caps.closure_cap);
    if (!closure.complete) {
        throw CapExceeded("ideal closure exceeded cap " + std::to_string(caps.closure_cap));
    }
    for (const Subspace& s : closure.elements) {
        if (!is_ideal(a, s)) {
            throw TheoremViolation("closure of ideal orbits produced a non-ideal " +
                                   format_basis(s));
        }
    }
    const std::vector<Subspace>& pool = closure.elements;

    std::vector<Subspace> invariant = invariant_elements(closure, phi);
    // minimal codimension first, deterministic ties
    std::sort(invariant.begin(), invariant.end(), [](const Subspace& x, const Subspace& y) {
        if (x.codim() != y.codim()) return x.codim() < y.codim();
        return subspace_lex_less(x, y);
    });

    std::optional<std::size_t> direct_pick;
    ChainSearch search(a, spec, invariant);
    if (route == SeriesRoute::direct || route == SeriesRoute::both) {
        for (std::size_t i = 0; i < invariant.size(); ++i) {
            if (search.feasible(spec.length(), i)) {
                direct_pick = i;
                break;
            }
        }
        if (!direct_pick) {
            throw TheoremViolation(
                "complete ideal closure contains no invariant chain matching the series; "
                "the search guarantee promises one, so this is an implementation defect");
        }
    }

    std::optional<std::size_t> predicate_pick;
    u32 predicate_arity = 0;
    if (route == SeriesRoute::predicate || route == SeriesRoute::both) {
        Predicate u = build_series_predicate(a, spec, pool);
        predicate_arity = u.arity;
        for (std::size_t i = 0; i < invariant.size(); ++i) {
            std::vector<Subspace> diag(u.arity, invariant[i]);
            if (u.eval(diag)) {
                predicate_pick = i;
                break;
            }
        }
        if (!predicate_pick) {
            throw TheoremViolation(
                "composed series predicate holds for no invariant element of a complete "
                "closure; implementation defect");
        }
    }

    if (route == SeriesRoute::both &&
        invariant[*direct_pick].codim() != invariant[*predicate_pick].codim()) {
        throw TheoremViolation(
            "route disagreement: direct search found codim " +
            std::to_string(invariant[*direct_pick].codim()) + " but the predicate route found " +
            std::to_string(invariant[*predicate_pick].codim()));
    }

    const std::size_t pick = direct_pick ? *direct_pick : *predicate_pick;

    SeriesCertificate cert;
    cert.m = invariant[pick];
    cert.codim_n = n.codim();
    cert.codim_m = cert.m.codim();
    cert.closure_size = closure.size();
    cert.ideal_pool_size = pool.size();
    cert.invariant_count = invariant.size();
    cert.predicate_arity = predicate_arity;
    if (direct_pick) cert.direct_codim = invariant[*direct_pick].codim();
    if (predicate_pick) cert.predicate_codim = invariant[*predicate_pick].codim();

    // The emitted chain always comes from the invariant-chain search so
    // the certificate can state the stronger per-member invariance.
    if (!direct_pick) {
        for (std::size_t i = 0; i < invariant.size(); ++i) {
            if (invariant[i].codim() == cert.codim_m && search.feasible(spec.length(), i)) {
                direct_pick = i;
                break;
            }
        }
        if (!direct_pick) {
            throw TheoremViolation("predicate route found an element but no invariant chain "
                                   "exists at its codimension; implementation defect");
        }
        cert.m = invariant[*direct_pick];
        cert.codim_m = cert.m.codim();
    }
    cert.chain.chain = search.reconstruct(*direct_pick);

    for (std::size_t i = 1; i < cert.chain.chain.size(); ++i) {
        SeriesLevelEvidence ev;
        level_holds(a, spec.levels[i - 1], cert.chain.chain[i], cert.chain.chain[i - 1], &ev);
        cert.evidence.push_back(std::move(ev));
    }
    for (std::size_t i = 0; i < phi.size(); ++i) {
        cert.invariance.push_back({i, apply(phi.elements[i], cert.m)});
    }

    SeriesReport final_check = check_series(a, cert.m, cert.chain, spec);
    if (!final_check.ok) {
        throw TheoremViolation("constructed series fails its own re-check: " +
                               final_check.message);
    }
    return cert;
}

std::vector<Subspace> enumerate_ideals(const StructureAlgebra& a, std::size_t cap) {
    std::vector<Subspace> out;
    for (const Subspace& s : enumerate_all_subspaces(a.field(), a.dim(), cap)) {
        if (is_ideal(a, s)) out.push_back(s);
    }
    return out;
}

namespace {

struct LawTally {
    ClassLawCase* law;
    void fail(const std::string& witness) {
        if (law->pass) {
            law->pass = false;
            law->witness = witness;
        }
    }
};

// Ideals of the subalgebra V inside a, i.e. W <= V with V*W and W*V
// landing in W.
bool ideal_in(const StructureAlgebra& a, const Subspace& v, const Subspace& w) {
    if (!subspace_leq(w, v)) return false;
    for (const Vec& x : v.rows()) {
        for (const Vec& y : w.rows()) {
            if (!subspace_contains(w, a.multiply(x, y))) return false;
            if (!subspace_contains(w, a.multiply(y, x))) return false;
        }
    }
    return true;
}

} // namespace

ClassLawReport class_laws(const AlgebraClass& cls,
                          const std::vector<StructureAlgebra>& corpus,
                          const ClassLawOptions& opts) {
    ClassLawReport report;
    report.laws.resize(4);
    report.laws[0].law = "R1-ideals-of-members";
    report.laws[1].law = "R2-sum-of-member-ideals";
    report.laws[2].law = "F1-quotients-of-members";
    report.laws[3].law = "F2-subdirect-closure";
    ClassLawCase& r1 = report.laws[0];
    ClassLawCase& r2 = report.laws[1];
    ClassLawCase& f1 = report.laws[2];
    ClassLawCase& f2 = report.laws[3];
    std::mt19937_64 rng(opts.seed);

    for (const StructureAlgebra& a : corpus) {
        std::vector<Subspace> ideals = enumerate_ideals(a, opts.ideal_enumeration_cap);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            if (cls.member(a, ideals[i])) members.push_back(i);
        }

        // R1: ideals (in the member) of a member are members.
        for (std::size_t mi : members) {
            const Subspace& v = ideals[mi];
            for (const Subspace& w : ideals) {
                if (!ideal_in(a, v, w)) continue;
                ++r1.cases;
                if (!cls.member(a, w)) {
                    LawTally{&r1}.fail("ideal " + format_basis(w) + " of member " +
                                       format_basis(v) + " is not a member");
                }
            }
        }

        // pair sampling shared by R2/F2
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            for (std::size_t j = i; j < ideals.size(); ++j) pairs.emplace_back(i, j);
        }
        if (pairs.size() > opts.max_pairs_per_algebra) {
            std::shuffle(pairs.begin(), pairs.end(), rng);
            pairs.resize(opts.max_pairs_per_algebra);
        }

        for (auto [i, j] : pairs) {
            const Subspace& x = ideals[i];
            const Subspace& y = ideals[j];
            if (cls.member(a, x) && cls.member(a, y)) {
                ++r2.cases;
                if (!cls.member(a, subspace_sum(x, y))) {
                    LawTally{&r2}.fail("sum of member ideals " + format_basis(x) + " + " +
                                       format_basis(y) + " is not a member");
                }
            }
            QuotientPresentation qx = quotient(a, x);
            QuotientPresentation qy = quotient(a, y);
            if (cls.member(qx.quotient, qx.quotient.full_subspace()) &&
                cls.member(qy.quotient, qy.quotient.full_subspace())) {
                ++f2.cases;
                QuotientPresentation qm = quotient(a, subspace_intersect(x, y));
                if (!cls.member(qm.quotient, qm.quotient.full_subspace())) {
                    LawTally{&f2}.fail("A/" + format_basis(x) + " and A/" + format_basis(y) +
                                       " are members but A/(their intersection) is not");
                }
            }
        }

        // F1: quotients of members are members (members re-expressed as
        // standalone algebras, quotiented by their own ideals).
        for (std::size_t mi : members) {
            ExtractedAlgebra e = extract_subalgebra(a, ideals[mi]);
            std::vector<Subspace> inner = enumerate_ideals(e.algebra, opts.ideal_enumeration_cap);
            for (const Subspace& w : inner) {
                ++f1.cases;
                QuotientPresentation q = quotient(e.algebra, w);
                if (!cls.member(q.quotient, q.quotient.full_subspace())) {
                    LawTally{&f1}.fail("quotient of member " + format_basis(ideals[mi]) +
                                       " by " + format_basis(w) + " is not a member");
                }
            }
        }
    }
    for (const ClassLawCase& c : report.laws) {
        if (!c.pass) report.pass = false;
    }
    return report;
}

} // namespace charspace
