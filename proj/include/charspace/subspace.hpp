#pragma once

#include <string>
#include <vector>

#include "charspace/fp.hpp"

namespace charspace {

using Vec = std::vector<u32>;
using Mat = std::vector<Vec>;

/// A subspace of GF(p)^d held as its reduced-row-echelon basis. The RREF
/// matrix is a canonical form: two subspaces are equal as sets iff their
/// stored bases are identical, so keys, hashing and tie-breaking all work
/// on the raw rows.
class Subspace {
public:
    /// Degenerate placeholder (the zero subspace of GF(2)^0) so subspaces
    /// can sit in certificate structs before assignment.
    Subspace() : field_(2), ambient_(0) {}

    /// Canonicalizes the span of `generators` (rows may be dependent,
    /// zero, or out of order; they only need length `ambient`).
    Subspace(const Fp& field, u32 ambient, const Mat& generators);

    static Subspace zero(const Fp& field, u32 ambient);
    static Subspace full(const Fp& field, u32 ambient);

    const Fp& field() const { return field_; }
    u32 ambient() const { return ambient_; }
    u32 rank() const { return static_cast<u32>(rows_.size()); }
    u32 codim() const { return ambient_ - rank(); }
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const { return rank() == ambient_; }
    const Mat& rows() const { return rows_; }

    /// Canonical key: field, ambient and the flattened basis.
    std::string key() const;

    bool operator==(const Subspace& o) const {
        return field_ == o.field_ && ambient_ == o.ambient_ && rows_ == o.rows_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    Fp field_;
    u32 ambient_;
    Mat rows_; // reduced row echelon, no zero rows
};

/// In-place Gaussian elimination to reduced row echelon form; zero rows
/// are dropped. Shared by Subspace and the morphism/algebra code that
/// needs raw matrix reduction.
void rref_in_place(const Fp& field, Mat& rows);

/// Reduces v against RREF rows (subtracting pivot multiples); the result
/// is the canonical coset representative, zero iff v is in the span.
Vec reduce_against(const Fp& field, const Mat& rref_rows, Vec v);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& a, const Vec& v);
bool subspace_leq(const Subspace& a, const Subspace& b);

/// Strict total order on canonical bases (rank first, then row-major
/// lexicographic); used only for deterministic tie-breaking.
bool subspace_lex_less(const Subspace& a, const Subspace& b);

/// All subspaces of GF(p)^d in deterministic order (rank ascending, pivot
/// sets lexicographic, free entries in odometer order). Intended for desk
/// scale; throws CapExceeded when the count would pass `cap`.
std::vector<Subspace> enumerate_all_subspaces(const Fp& field, u32 dim,
                                              std::size_t cap = 1u << 20);

std::string format_vec(const Vec& v);
std::string format_basis(const Subspace& s);

inline Vec unit_vec(u32 dim, u32 index) {
    Vec v(dim, 0);
    v[index] = 1;
    return v;
}

} // namespace charspace
