#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charspace/subspace.hpp"

namespace charspace {

enum class Flavor { general, associative, lie };

std::string flavor_name(Flavor f);
std::optional<Flavor> flavor_from_name(const std::string& name);

struct StructureEntry {
    u32 i, j, k;
    u32 coeff;
};

/// A finite-dimensional algebra over GF(p) given by structure constants:
/// e_i * e_j = sum_k c[i][j][k] e_k. The product is the bilinear extension
/// and nothing else is assumed; `flavor` records which identities the
/// table is supposed to satisfy (checked by validate_flavor, not here).
class StructureAlgebra {
public:
    StructureAlgebra(const Fp& field, u32 dim, Flavor flavor,
                     const std::vector<StructureEntry>& entries);

    const Fp& field() const { return field_; }
    u32 dim() const { return dim_; }
    Flavor flavor() const { return flavor_; }
    const std::vector<StructureEntry>& entries() const { return entries_; }

    u32 c(u32 i, u32 j, u32 k) const { return tensor_[(i * dim_ + j) * dim_ + k]; }

    /// e_i * e_j as a coordinate vector.
    Vec basis_product(u32 i, u32 j) const;

    Vec multiply(const Vec& u, const Vec& v) const;

    Subspace zero_subspace() const { return Subspace::zero(field_, dim_); }
    Subspace full_subspace() const { return Subspace::full(field_, dim_); }

private:
    Fp field_;
    u32 dim_;
    Flavor flavor_;
    std::vector<u32> tensor_; // dense, dim^3
    std::vector<StructureEntry> entries_;
};

struct FlavorReport {
    bool ok = true;
    std::string message; // first violated law and basis triple
};

/// Checks the identities claimed by the flavor on all basis triples:
/// associativity, or for Lie the alternating law c[i][i][.] = 0,
/// antisymmetry and the Jacobi identity. Flavor `general` always passes.
FlavorReport validate_flavor(const StructureAlgebra& a);

bool is_left_ideal(const StructureAlgebra& a, const Subspace& v);
bool is_ideal(const StructureAlgebra& a, const Subspace& v);

/// Span of all products x*y, x in basis(V), y in basis(W).
Subspace product_span(const StructureAlgebra& a, const Subspace& v, const Subspace& w);

/// Smallest subspace containing V that is closed under products.
Subspace subalgebra_closure(const StructureAlgebra& a, const Subspace& v);

/// Nilpotency of the subalgebra generated by V via the split-sum power
/// chain P_1 = V, P_{m+1} = sum_{i+j=m+1} <P_i P_j>, which covers every
/// bracketing. Returns the least m with P_m = 0, or nullopt when the
/// chain provably stays nonzero. Termination: the chain is non-increasing
/// and P_{m+1} is determined by the jump structure of P_1..P_m, so once
/// no strict drop occurs on a window [J, 2J] the chain is constant
/// forever. (The index can exceed dim+1: with a*a=u, a*u=v, u*v=s and all
/// other products zero, dim 4 gives P_4 = P_5 = <s> but P_6 = 0.)
std::optional<u32> nilpotency_index(const StructureAlgebra& a, const Subspace& v);

/// Parent / ideal / quotient package. The complement basis is the set of
/// standard basis vectors at the non-pivot columns of the ideal, in index
/// order, so the construction is deterministic.
struct QuotientPresentation {
    StructureAlgebra parent;
    Subspace ideal;
    std::vector<u32> complement_cols;
    StructureAlgebra quotient;

    Vec project_vec(const Vec& parent_vec) const;
    Subspace project_subspace(const Subspace& s) const;
    /// Parent-coordinates representative of quotient basis vector `a`.
    Vec lift_basis(u32 a) const;
};

/// Requires is_ideal(a, ideal).
QuotientPresentation quotient(const StructureAlgebra& a, const Subspace& ideal);

/// V closed under products, re-expressed as a standalone algebra on
/// basis = rows of V (RREF coordinates read off at pivot columns).
struct ExtractedAlgebra {
    StructureAlgebra algebra;
    Subspace carrier; // in the parent
};

ExtractedAlgebra extract_subalgebra(const StructureAlgebra& a, const Subspace& v);

} // namespace charspace
