#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charspace/algebra.hpp"

namespace charspace {

enum class MorphKind { endomorphism, automorphism };

std::string morph_kind_name(MorphKind k);

/// A validated linear map GF(p)^d -> GF(p)^d given by a d x d matrix in
/// row-major order whose columns are the images of the basis vectors.
struct Morphism {
    Fp field;
    u32 dim;
    Mat matrix;
    MorphKind kind;

    Vec apply_vec(const Vec& v) const;
    std::string key() const;
    bool operator==(const Morphism& o) const { return matrix == o.matrix; }
};

struct MorphismValidation {
    bool ok = false;
    std::string message;
    std::optional<Morphism> morphism;
};

/// Checks multiplicativity on all basis pairs (bilinearity makes the
/// pairs sufficient) and, for automorphisms, invertibility. The failure
/// message names the first violated pair.
MorphismValidation validate_morphism(const StructureAlgebra& a, const Mat& matrix,
                                     MorphKind kind);

/// Throwing form of validate_morphism.
Morphism must_validate_morphism(const StructureAlgebra& a, const Mat& matrix,
                                MorphKind kind);

Morphism identity_morphism(const Fp& field, u32 dim, MorphKind kind);

/// a after b.
Morphism compose(const Morphism& a, const Morphism& b);

u32 matrix_rank(const Fp& field, Mat m);

/// Composition closure of a generator set, deterministic order. Elements
/// are listed generators-first (identity first for automorphism kind),
/// then breadth-first products. Exceeding `cap` is a hard error, not a
/// truncation: invariance claims must be exact for the recorded set.
struct MorphismSet {
    std::vector<Morphism> elements;
    MorphKind kind = MorphKind::automorphism;
    bool contains_identity = false;
    std::size_t num_generators = 0; // leading elements after the identity

    std::size_t size() const { return elements.size(); }
};

MorphismSet morphism_closure(const std::vector<Morphism>& generators, std::size_t cap = 10000);

Subspace apply(const Morphism& m, const Subspace& v);

/// Deduplicated images of V under every element, in first-seen order.
std::vector<Subspace> orbit(const Subspace& v, const MorphismSet& phi);

bool is_invariant(const Subspace& v, const MorphismSet& phi);

/// Generators of GL(d, p): a transvection, a basis cycle, and for p > 2 a
/// primitive scaling. Every invertible matrix is an automorphism of the
/// zero algebra, which is what these are for.
std::vector<Mat> gl_generators(const Fp& field, u32 dim);

} // namespace charspace
