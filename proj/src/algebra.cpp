#include "charspace/algebra.hpp"

#include <algorithm>
#include <unordered_map>

#include "charspace/errors.hpp"

namespace charspace {

std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::general: return "general";
        case Flavor::associative: return "associative";
        case Flavor::lie: return "lie";
    }
    return "general";
}

std::optional<Flavor> flavor_from_name(const std::string& name) {
    if (name == "general") return Flavor::general;
    if (name == "associative") return Flavor::associative;
    if (name == "lie") return Flavor::lie;
    return std::nullopt;
}

StructureAlgebra::StructureAlgebra(const Fp& field, u32 dim, Flavor flavor,
                                   const std::vector<StructureEntry>& entries)
    : field_(field), dim_(dim), flavor_(flavor),
      tensor_(static_cast<std::size_t>(dim) * dim * dim, 0), entries_(entries) {
    for (const StructureEntry& e : entries) {
        if (e.i >= dim || e.j >= dim || e.k >= dim) {
            throw ValidationError("structure constant index (" + std::to_string(e.i) +
                                  "," + std::to_string(e.j) + "," + std::to_string(e.k) +
                                  ") out of range for dimension " + std::to_string(dim));
        }
        if (e.coeff >= field.p()) {
            throw ValidationError("structure coefficient " + std::to_string(e.coeff) +
                                  " not reduced mod " + std::to_string(field.p()));
        }
        std::size_t idx = (static_cast<std::size_t>(e.i) * dim + e.j) * dim + e.k;
        tensor_[idx] = field.add(tensor_[idx], e.coeff);
    }
}

Vec StructureAlgebra::basis_product(u32 i, u32 j) const {
    Vec out(dim_, 0);
    for (u32 k = 0; k < dim_; ++k) out[k] = c(i, j, k);
    return out;
}

Vec StructureAlgebra::multiply(const Vec& u, const Vec& v) const {
    if (u.size() != dim_ || v.size() != dim_) {
        throw DimensionError("product arguments must have length " + std::to_string(dim_));
    }
    Vec out(dim_, 0);
    for (u32 i = 0; i < dim_; ++i) {
        if (u[i] == 0) continue;
        for (u32 j = 0; j < dim_; ++j) {
            if (v[j] == 0) continue;
            const u32 uv = field_.mul(u[i], v[j]);
            for (u32 k = 0; k < dim_; ++k) {
                const u32 coeff = c(i, j, k);
                if (coeff != 0) out[k] = field_.add(out[k], field_.mul(uv, coeff));
            }
        }
    }
    return out;
}

namespace {

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](u32 x) { return x == 0; });
}

std::string triple(u32 i, u32 j, u32 k) {
    return "(e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ", e" +
           std::to_string(k + 1) + ")";
}

} // namespace

FlavorReport validate_flavor(const StructureAlgebra& a) {
    const u32 d = a.dim();
    const Fp& f = a.field();
    if (a.flavor() == Flavor::general) return {};

    if (a.flavor() == Flavor::associative) {
        for (u32 i = 0; i < d; ++i) {
            for (u32 j = 0; j < d; ++j) {
                for (u32 k = 0; k < d; ++k) {
                    Vec lhs = a.multiply(a.basis_product(i, j), unit_vec(d, k));
                    Vec rhs = a.multiply(unit_vec(d, i), a.basis_product(j, k));
                    if (lhs != rhs) {
                        return {false, "associativity fails at basis triple " + triple(i, j, k)};
                    }
                }
            }
        }
        return {};
    }

    // Lie: alternating law (not mere antisymmetry, so characteristic 2 is
    // handled), antisymmetry, Jacobi on basis triples.
    for (u32 i = 0; i < d; ++i) {
        if (!vec_is_zero(a.basis_product(i, i))) {
            return {false, "alternating law fails: e" + std::to_string(i + 1) + "*e" +
                               std::to_string(i + 1) + " != 0"};
        }
    }
    for (u32 i = 0; i < d; ++i) {
        for (u32 j = 0; j < d; ++j) {
            Vec ij = a.basis_product(i, j);
            Vec ji = a.basis_product(j, i);
            for (u32 k = 0; k < d; ++k) {
                if (ij[k] != f.neg(ji[k])) {
                    return {false, "antisymmetry fails at basis pair (e" +
                                       std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ")"};
                }
            }
        }
    }
    for (u32 i = 0; i < d; ++i) {
        for (u32 j = 0; j < d; ++j) {
            for (u32 k = 0; k < d; ++k) {
                Vec s = a.multiply(a.basis_product(i, j), unit_vec(d, k));
                Vec t = a.multiply(a.basis_product(j, k), unit_vec(d, i));
                Vec u = a.multiply(a.basis_product(k, i), unit_vec(d, j));
                Vec sum(d, 0);
                for (u32 x = 0; x < d; ++x) sum[x] = f.add(f.add(s[x], t[x]), u[x]);
                if (!vec_is_zero(sum)) {
                    return {false, "Jacobi identity fails at basis triple " + triple(i, j, k)};
                }
            }
        }
    }
    return {};
}

bool is_left_ideal(const StructureAlgebra& a, const Subspace& v) {
    if (v.ambient() != a.dim()) throw DimensionError("subspace ambient does not match algebra");
    for (u32 i = 0; i < a.dim(); ++i) {
        Vec ei(a.dim(), 0);
        ei[i] = 1;
        for (const Vec& row : v.rows()) {
            if (!subspace_contains(v, a.multiply(ei, row))) return false;
        }
    }
    return true;
}

bool is_ideal(const StructureAlgebra& a, const Subspace& v) {
    if (v.ambient() != a.dim()) throw DimensionError("subspace ambient does not match algebra");
    for (u32 i = 0; i < a.dim(); ++i) {
        Vec ei(a.dim(), 0);
        ei[i] = 1;
        for (const Vec& row : v.rows()) {
            if (!subspace_contains(v, a.multiply(ei, row))) return false;
            if (!subspace_contains(v, a.multiply(row, ei))) return false;
        }
    }
    return true;
}

Subspace product_span(const StructureAlgebra& a, const Subspace& v, const Subspace& w) {
    if (v.ambient() != a.dim() || w.ambient() != a.dim()) {
        throw DimensionError("product_span ambient mismatch");
    }
    Mat products;
    for (const Vec& x : v.rows()) {
        for (const Vec& y : w.rows()) {
            products.push_back(a.multiply(x, y));
        }
    }
    return Subspace(a.field(), a.dim(), products);
}

Subspace subalgebra_closure(const StructureAlgebra& a, const Subspace& v) {
    Subspace cur = v;
    while (true) {
        Subspace next = subspace_sum(cur, product_span(a, cur, cur));
        if (next == cur) return cur;
        cur = next;
    }
}

std::optional<u32> nilpotency_index(const StructureAlgebra& a, const Subspace& v) {
    Subspace base = subalgebra_closure(a, v);
    if (base.is_zero()) return 1;

    std::vector<Subspace> chain; // chain[m-1] = P_m
    chain.push_back(base);
    std::unordered_map<std::string, Subspace> span_memo;
    auto span_of = [&](const Subspace& x, const Subspace& y) {
        std::string key = x.key() + "|" + y.key();
        auto it = span_memo.find(key);
        if (it != span_memo.end()) return it->second;
        Subspace s = product_span(a, x, y);
        span_memo.emplace(std::move(key), s);
        return s;
    };

    u32 last_jump = 1;
    for (u32 m = 2;; ++m) {
        Subspace pm = Subspace::zero(a.field(), a.dim());
        for (u32 i = 1; i <= m - 1; ++i) {
            pm = subspace_sum(pm, span_of(chain[i - 1], chain[m - i - 1]));
        }
        if (pm.is_zero()) return m;
        if (pm != chain.back()) {
            last_jump = m;
        } else if (m >= 2 * last_jump) {
            // Constant on [last_jump, 2*last_jump]: constant forever.
            return std::nullopt;
        }
        chain.push_back(std::move(pm));
    }
}

QuotientPresentation quotient(const StructureAlgebra& a, const Subspace& ideal) {
    if (!is_ideal(a, ideal)) {
        throw ValidationError("quotient requires a two-sided ideal");
    }
    const u32 d = a.dim();
    std::vector<bool> is_pivot(d, false);
    for (const Vec& row : ideal.rows()) {
        u32 c = 0;
        while (row[c] == 0) ++c;
        is_pivot[c] = true;
    }
    std::vector<u32> complement;
    for (u32 c = 0; c < d; ++c) {
        if (!is_pivot[c]) complement.push_back(c);
    }
    const u32 q = static_cast<u32>(complement.size());

    auto project = [&](const Vec& x) {
        Vec r = reduce_against(a.field(), ideal.rows(), x);
        Vec out(q, 0);
        for (u32 i = 0; i < q; ++i) out[i] = r[complement[i]];
        return out;
    };

    std::vector<StructureEntry> entries;
    for (u32 i = 0; i < q; ++i) {
        for (u32 j = 0; j < q; ++j) {
            Vec prod(d, 0);
            // product of the complement representatives e_{complement[i]},
            // e_{complement[j]} pushed through the projection
            for (u32 k = 0; k < d; ++k) prod[k] = a.c(complement[i], complement[j], k);
            Vec image = project(prod);
            for (u32 k = 0; k < q; ++k) {
                if (image[k] != 0) entries.push_back({i, j, k, image[k]});
            }
        }
    }
    StructureAlgebra qa(a.field(), q, a.flavor(), entries);
    return QuotientPresentation{a, ideal, complement, std::move(qa)};
}

Vec QuotientPresentation::project_vec(const Vec& parent_vec) const {
    Vec r = reduce_against(parent.field(), ideal.rows(), parent_vec);
    Vec out(complement_cols.size(), 0);
    for (std::size_t i = 0; i < complement_cols.size(); ++i) out[i] = r[complement_cols[i]];
    return out;
}

Subspace QuotientPresentation::project_subspace(const Subspace& s) const {
    Mat rows;
    for (const Vec& row : s.rows()) rows.push_back(project_vec(row));
    return Subspace(parent.field(), static_cast<u32>(complement_cols.size()), rows);
}

Vec QuotientPresentation::lift_basis(u32 a) const {
    Vec v(parent.dim(), 0);
    v[complement_cols[a]] = 1;
    return v;
}

ExtractedAlgebra extract_subalgebra(const StructureAlgebra& a, const Subspace& v) {
    const u32 r = v.rank();
    std::vector<u32> pivots(r);
    for (u32 i = 0; i < r; ++i) {
        u32 c = 0;
        while (v.rows()[i][c] == 0) ++c;
        pivots[i] = c;
    }
    // Coordinates in the RREF basis are read off at the pivot columns.
    auto coords = [&](const Vec& x) {
        Vec out(r, 0);
        for (u32 i = 0; i < r; ++i) out[i] = x[pivots[i]];
        return out;
    };
    std::vector<StructureEntry> entries;
    for (u32 i = 0; i < r; ++i) {
        for (u32 j = 0; j < r; ++j) {
            Vec prod = a.multiply(v.rows()[i], v.rows()[j]);
            if (!subspace_contains(v, prod)) {
                throw ValidationError("extract_subalgebra: span is not closed under products");
            }
            Vec cs = coords(prod);
            for (u32 k = 0; k < r; ++k) {
                if (cs[k] != 0) entries.push_back({i, j, k, cs[k]});
            }
        }
    }
    return {StructureAlgebra(a.field(), r, a.flavor(), entries), v};
}

} // namespace charspace
