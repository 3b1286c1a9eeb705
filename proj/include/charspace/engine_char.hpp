#pragma once

#include <optional>
#include <vector>

#include "charspace/predicates.hpp"

namespace charspace {

enum class CharMode { general, identity, bounded_image };

std::string char_mode_name(CharMode m);

struct EngineCaps {
    std::size_t closure_cap = 50000;
    std::size_t morphism_cap = 10000;
    u32 degree_cap = 5;
};

/// Inputs of the large-subspace search: a subspace N, a validated
/// morphism set, the degree t and the finite word set W the property
/// quantifies over (default: all monomials of degree <= t). The identity
/// and bounded-image modes additionally carry the single target word.
struct CharSubspaceRequest {
    StructureAlgebra algebra;
    Subspace n;
    MorphismSet phi;
    u32 t = 1;
    std::vector<MultilinearElement> words;
    CharMode mode = CharMode::general;
    std::optional<MultilinearElement> target;
    EngineCaps caps;
};

CharSubspaceRequest make_request(const StructureAlgebra& algebra, const Subspace& n,
                                 const MorphismSet& phi, u32 t,
                                 std::vector<MultilinearElement> extra_words = {},
                                 EngineCaps caps = {});

/// One word constraint of the certificate: the span of w on the diagonal
/// tuple of H against its target, the phi-sum of the span of w on N.
struct WordWitness {
    MultilinearElement word;
    Subspace lhs;
    Subspace rhs;
};

struct InvarianceWitness {
    std::size_t element_index; // into phi.elements
    Subspace image;
};

/// Replayable evidence for an engine run. Everything here re-verifies
/// from scratch without the search: containments, invariance, codimension
/// arithmetic against the f-iterate trace.
struct CharSubspaceCertificate {
    CharMode mode = CharMode::general;
    Subspace h;
    u32 codim_n = 0;
    u32 codim_h = 0;
    u32 t = 1;
    u64 bound = 0;
    std::vector<u64> f_bound_trace;
    std::vector<Subspace> orbit;
    std::size_t closure_size = 0;
    std::size_t candidate_count = 0;
    std::vector<WordWitness> word_witnesses;
    std::vector<InvarianceWitness> invariance;
    std::optional<MultilinearElement> target;
    // identity mode
    std::optional<Subspace> identity_span_n;
    std::optional<Subspace> identity_span_h;
    // bounded-image mode
    std::optional<u32> image_dim_n;
    std::optional<u32> image_dim_h;
    std::optional<u64> image_bound;
};

/// The search property: for every word w in W of degree k, the span of w
/// on the first k arguments is contained in the phi-sum of the span of w
/// on (N,...,N). Targets depend only on the request and are precomputed.
struct PropertyP {
    Predicate predicate; // arity t, declared monotone/multilinear/phi-invariant
    std::vector<WordWitness> targets; // lhs unused, rhs = target per word
};

PropertyP build_property(const CharSubspaceRequest& request);

bool property_p(const CharSubspaceRequest& request, std::span<const Subspace> args);

/// Exhaustive filter over the closure of the orbit of N: Phi-invariant
/// elements satisfying the property on the diagonal, minimal codimension
/// first, lexicographically least basis on ties. An empty candidate set
/// or a bound violation on a complete closure contradicts the guarantees
/// the search relies on and throws TheoremViolation.
CharSubspaceCertificate find_characteristic_subspace(const CharSubspaceRequest& request);

/// Requires the target word to vanish on (N,...,N); the certificate
/// additionally carries the exact vanishing of the target on H.
CharSubspaceCertificate find_identity_subspace(const CharSubspaceRequest& request);

/// Records dim w(H,...,H) <= |Phi| * dim w(N,...,N).
CharSubspaceCertificate find_bounded_image_subspace(const CharSubspaceRequest& request);

} // namespace charspace
