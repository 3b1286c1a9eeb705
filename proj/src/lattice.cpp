#include "charspace/lattice.hpp"

#include <algorithm>
#include <limits>

#include "charspace/errors.hpp"

namespace charspace {

SublatticeClosure sublattice_closure(const std::vector<Subspace>& seed, std::size_t cap) {
    if (seed.empty()) throw ValidationError("sublattice closure needs a nonempty seed");
    for (const Subspace& s : seed) {
        if (s.ambient() != seed[0].ambient() || s.field() != seed[0].field()) {
            throw DimensionError("sublattice seed elements disagree on the ambient space");
        }
    }

    SublatticeClosure out;
    out.seed = seed;
    out.cap = cap;
    auto push = [&](const Subspace& s) {
        std::string k = s.key();
        if (out.index.contains(k)) return false;
        if (out.elements.size() >= cap) return true; // overflow signal
        out.index.emplace(std::move(k), out.elements.size());
        out.elements.push_back(s);
        return false;
    };

    for (const Subspace& s : seed) {
        if (push(s)) {
            out.complete = false;
            return out;
        }
    }

    // Pairs (i, j) with j < i, processed in insertion order of i. Every
    // pair is visited exactly once, so the fixed point is reached when i
    // runs off the end.
    for (std::size_t i = 1; i < out.elements.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            // copies: push may reallocate elements
            const Subspace a = out.elements[i];
            const Subspace b = out.elements[j];
            if (push(subspace_sum(a, b)) || push(subspace_intersect(a, b))) {
                out.complete = false;
                return out;
            }
        }
    }
    out.complete = true;
    return out;
}

std::vector<Subspace> invariant_elements(const SublatticeClosure& closure,
                                         const MorphismSet& phi) {
    if (!closure.complete) {
        throw CapExceeded("invariant filtering over an incomplete closure");
    }
    std::vector<Subspace> out;
    for (const Subspace& v : closure.elements) {
        if (is_invariant(v, phi)) out.push_back(v);
    }
    return out;
}

Subspace phi_sum(const Subspace& v, const MorphismSet& phi) {
    Subspace acc = Subspace::zero(v.field(), v.ambient());
    for (const Morphism& m : phi.elements) {
        acc = subspace_sum(acc, apply(m, v));
    }
    return acc;
}

Subspace phi_core(const Subspace& v, const MorphismSet& phi) {
    Subspace acc = Subspace::full(v.field(), v.ambient());
    for (const Morphism& m : phi.elements) {
        acc = subspace_intersect(acc, apply(m, v));
    }
    return acc;
}

u64 f_iterate(u32 k, u64 x) {
    u64 cur = x;
    for (u32 i = 0; i < k; ++i) {
        if (cur != 0 && cur + 1 > std::numeric_limits<u64>::max() / cur) {
            throw OverflowError("f^" + std::to_string(k) + "(" + std::to_string(x) +
                                ") overflows 64 bits at iteration " + std::to_string(i + 1));
        }
        cur = cur * (cur + 1);
    }
    return cur;
}

std::vector<u64> f_trace(u32 k, u64 x) {
    std::vector<u64> out;
    out.reserve(k + 1);
    out.push_back(x);
    for (u32 i = 1; i <= k; ++i) out.push_back(f_iterate(1, out.back()));
    return out;
}

std::vector<Subspace> greedy_sup_selection(const std::vector<Subspace>& family) {
    if (family.empty()) throw ValidationError("greedy_sup_selection needs a nonempty family");
    Subspace total = family[0];
    for (std::size_t i = 1; i < family.size(); ++i) total = subspace_sum(total, family[i]);

    std::vector<Subspace> picked{family[0]};
    Subspace cur = family[0];
    while (cur != total) {
        for (const Subspace& s : family) {
            if (!subspace_leq(s, cur)) {
                picked.push_back(s);
                cur = subspace_sum(cur, s);
                break;
            }
        }
    }
    return picked;
}

CodimFunction ordinary_codim() {
    return {"ordinary", [](const Subspace& s) { return static_cast<double>(s.codim()); }};
}

std::vector<CodimLawResult> check_codim_laws(const std::vector<Subspace>& elements,
                                             const CodimFunction& fn,
                                             const MorphismSet& phi) {
    std::vector<CodimLawResult> out;

    CodimLawResult law1;
    law1.law = "codim-1-antitone";
    for (const Subspace& a : elements) {
        for (const Subspace& b : elements) {
            ++law1.cases;
            if (subspace_leq(b, a) && fn.value(a) > fn.value(b)) {
                law1.pass = false;
                law1.witness = "codim " + format_basis(a) + " > codim " + format_basis(b) +
                               " although the first contains the second";
                break;
            }
        }
        if (!law1.pass) break;
    }
    out.push_back(law1);

    CodimLawResult law2;
    law2.law = "codim-2-morphism";
    for (const Subspace& a : elements) {
        for (const Morphism& m : phi.elements) {
            ++law2.cases;
            if (fn.value(apply(m, a)) > fn.value(a)) {
                law2.pass = false;
                law2.witness = "codim increases under a morphism image of " + format_basis(a);
                break;
            }
        }
        if (!law2.pass) break;
    }
    out.push_back(law2);

    CodimLawResult law3;
    law3.law = "codim-3-subadditive";
    for (const Subspace& a : elements) {
        for (const Subspace& b : elements) {
            ++law3.cases;
            if (fn.value(subspace_intersect(a, b)) > fn.value(a) + fn.value(b)) {
                law3.pass = false;
                law3.witness = "codim(A cap B) > codim A + codim B for A = " + format_basis(a) +
                               ", B = " + format_basis(b);
                break;
            }
        }
        if (!law3.pass) break;
    }
    out.push_back(law3);

    CodimLawResult law4;
    law4.law = "codim-4-sup-selection";
    if (!elements.empty()) {
        ++law4.cases;
        std::vector<Subspace> picked = greedy_sup_selection(elements);
        double max_codim = 0;
        for (const Subspace& s : elements) max_codim = std::max(max_codim, fn.value(s));
        if (static_cast<double>(picked.size()) > max_codim + 1) {
            law4.pass = false;
            law4.witness = "selection of " + std::to_string(picked.size()) +
                           " elements exceeds max codim + 1 = " + std::to_string(max_codim + 1);
        }
    }
    out.push_back(law4);
    return out;
}

} // namespace charspace
