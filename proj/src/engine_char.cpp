#include "charspace/engine_char.hpp"

#include <algorithm>

#include "charspace/errors.hpp"

namespace charspace {

std::string char_mode_name(CharMode m) {
    switch (m) {
        case CharMode::general: return "general";
        case CharMode::identity: return "identity";
        case CharMode::bounded_image: return "bounded-image";
    }
    return "general";
}

CharSubspaceRequest make_request(const StructureAlgebra& algebra, const Subspace& n,
                                 const MorphismSet& phi, u32 t,
                                 std::vector<MultilinearElement> extra_words,
                                 EngineCaps caps) {
    if (t < 1) throw ValidationError("degree t must be >= 1");
    if (n.ambient() != algebra.dim()) {
        throw DimensionError("subspace ambient does not match the algebra");
    }
    CharSubspaceRequest req{algebra, n, phi, t, {}, CharMode::general, std::nullopt, caps};
    req.words = monomial_words_up_to(algebra.field(), t, caps.degree_cap);
    for (MultilinearElement& w : extra_words) {
        if (w.degree > t) {
            throw ValidationError("word " + w.sexpr() + " has degree " +
                                  std::to_string(w.degree) + " > t = " + std::to_string(t));
        }
        req.words.push_back(std::move(w));
    }
    return req;
}

PropertyP build_property(const CharSubspaceRequest& request) {
    PropertyP prop;
    prop.targets.reserve(request.words.size());
    for (const MultilinearElement& w : request.words) {
        std::vector<Subspace> diag(w.degree, request.n);
        Subspace span_n = eval_span(w, request.algebra, diag);
        prop.targets.push_back({w, span_n, phi_sum(span_n, request.phi)});
    }

    StructureAlgebra algebra = request.algebra;
    auto targets = prop.targets;
    const u32 t = request.t;
    prop.predicate.name = "P[t=" + std::to_string(t) + ", |W|=" +
                          std::to_string(request.words.size()) + "]";
    prop.predicate.arity = t;
    prop.predicate.declared = {Law::monotone, Law::multilinear, Law::phi_invariant};
    prop.predicate.eval = [algebra, targets, t](std::span<const Subspace> args) {
        if (args.size() != t) throw DimensionError("property arity mismatch");
        for (const WordWitness& target : targets) {
            // a degree-k word reads the first k slots
            std::span<const Subspace> slice = args.first(target.word.degree);
            if (!subspace_leq(eval_span(target.word, algebra, slice), target.rhs)) {
                return false;
            }
        }
        return true;
    };
    return prop;
}

bool property_p(const CharSubspaceRequest& request, std::span<const Subspace> args) {
    PropertyP prop = build_property(request);
    return prop.predicate.eval(args);
}

namespace {

CharSubspaceCertificate run_search(const CharSubspaceRequest& request) {
    const StructureAlgebra& algebra = request.algebra;
    if (request.phi.kind != MorphKind::automorphism) {
        // the sublattice-confined search is licensed by automorphisms
        // being lattice endomorphisms; plain endomorphisms are not
        throw ValidationError("the subspace engine requires an automorphism set");
    }
    for (const MultilinearElement& w : request.words) {
        if (w.degree > request.t) {
            throw ValidationError("word of degree " + std::to_string(w.degree) +
                                  " exceeds request degree " + std::to_string(request.t));
        }
    }

    PropertyP prop = build_property(request);

    std::vector<Subspace> orb = orbit(request.n, request.phi);
    SublatticeClosure closure = sublattice_closure(orb, request.caps.closure_cap);
    if (!closure.complete) {
        throw CapExceeded("sublattice closure exceeded cap " +
                          std::to_string(request.caps.closure_cap) +
                          " (partial size " + std::to_string(closure.size()) +
                          "); no guarantee applies to an incomplete search");
    }

    std::vector<Subspace> invariants = invariant_elements(closure, request.phi);
    std::vector<const Subspace*> candidates;
    for (const Subspace& c : invariants) {
        std::vector<Subspace> diag(request.t, c);
        if (prop.predicate.eval(diag)) candidates.push_back(&c);
    }
    if (candidates.empty()) {
        throw TheoremViolation(
            "complete closure of size " + std::to_string(closure.size()) +
            " contains no invariant element satisfying the property; the search "
            "guarantee promises one, so this is an implementation defect");
    }

    const Subspace* best = candidates[0];
    for (const Subspace* c : candidates) {
        if (c->codim() < best->codim() ||
            (c->codim() == best->codim() && subspace_lex_less(*c, *best))) {
            best = c;
        }
    }

    CharSubspaceCertificate cert;
    cert.mode = request.mode;
    cert.h = *best;
    cert.codim_n = request.n.codim();
    cert.codim_h = best->codim();
    cert.t = request.t;
    cert.f_bound_trace = f_trace(request.t - 1, cert.codim_n);
    cert.bound = cert.f_bound_trace.back();
    cert.orbit = std::move(orb);
    cert.closure_size = closure.size();
    cert.candidate_count = candidates.size();

    if (cert.codim_h > cert.bound) {
        throw TheoremViolation("codim H = " + std::to_string(cert.codim_h) +
                               " exceeds the bound f^" + std::to_string(request.t - 1) + "(" +
                               std::to_string(cert.codim_n) + ") = " +
                               std::to_string(cert.bound) +
                               " on a complete closure; implementation defect");
    }

    for (const WordWitness& target : prop.targets) {
        std::vector<Subspace> diag(target.word.degree, cert.h);
        cert.word_witnesses.push_back(
            {target.word, eval_span(target.word, algebra, diag), target.rhs});
    }
    for (std::size_t i = 0; i < request.phi.size(); ++i) {
        cert.invariance.push_back({i, apply(request.phi.elements[i], cert.h)});
    }
    return cert;
}

const MultilinearElement& require_target(const CharSubspaceRequest& request) {
    if (!request.target.has_value()) {
        throw ValidationError(char_mode_name(request.mode) +
                              " mode needs a target word");
    }
    return *request.target;
}

void ensure_target_in_words(CharSubspaceRequest& request) {
    const MultilinearElement& w = *request.target;
    for (const MultilinearElement& existing : request.words) {
        if (existing.degree == w.degree && existing.terms == w.terms) return;
    }
    request.words.push_back(w);
}

} // namespace

CharSubspaceCertificate find_characteristic_subspace(const CharSubspaceRequest& request) {
    switch (request.mode) {
        case CharMode::general: return run_search(request);
        case CharMode::identity: return find_identity_subspace(request);
        case CharMode::bounded_image: return find_bounded_image_subspace(request);
    }
    return run_search(request);
}

CharSubspaceCertificate find_identity_subspace(const CharSubspaceRequest& request) {
    CharSubspaceRequest req = request;
    req.mode = CharMode::identity;
    const MultilinearElement& w = require_target(req);
    if (w.degree > req.t) {
        throw ValidationError("target word degree exceeds t");
    }
    std::vector<Subspace> diag(w.degree, req.n);
    Subspace span_n = eval_span(w, req.algebra, diag);
    if (!span_n.is_zero()) {
        throw HypothesisError("identity hypothesis fails: w = " + w.sexpr() +
                              " does not vanish on N; w(N,...,N) = " + format_basis(span_n));
    }
    ensure_target_in_words(req);

    CharSubspaceCertificate cert = run_search(req);
    std::vector<Subspace> diag_h(w.degree, cert.h);
    Subspace span_h = eval_span(w, req.algebra, diag_h);
    if (!span_h.is_zero()) {
        // The target's phi-sum is a sum of images of zero, so a nonzero
        // span on H contradicts the containment just verified.
        throw TheoremViolation("identity mode returned H with w(H,...,H) = " +
                               format_basis(span_h) + " != 0");
    }
    cert.target = w;
    cert.identity_span_n = span_n;
    cert.identity_span_h = span_h;
    return cert;
}

CharSubspaceCertificate find_bounded_image_subspace(const CharSubspaceRequest& request) {
    CharSubspaceRequest req = request;
    req.mode = CharMode::bounded_image;
    const MultilinearElement& w = require_target(req);
    if (w.degree > req.t) {
        throw ValidationError("target word degree exceeds t");
    }
    ensure_target_in_words(req);

    CharSubspaceCertificate cert = run_search(req);
    std::vector<Subspace> diag_n(w.degree, req.n);
    std::vector<Subspace> diag_h(w.degree, cert.h);
    const u32 dim_n = eval_span(w, req.algebra, diag_n).rank();
    const u32 dim_h = eval_span(w, req.algebra, diag_h).rank();
    const u64 bound = static_cast<u64>(req.phi.size()) * dim_n;
    if (dim_h > bound) {
        throw TheoremViolation("bounded-image mode: dim w(H,...,H) = " +
                               std::to_string(dim_h) + " exceeds |Phi| * dim w(N,...,N) = " +
                               std::to_string(bound));
    }
    cert.target = w;
    cert.image_dim_n = dim_n;
    cert.image_dim_h = dim_h;
    cert.image_bound = bound;
    return cert;
}

} // namespace charspace
