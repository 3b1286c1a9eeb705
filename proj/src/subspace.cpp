#include "charspace/subspace.hpp"

#include <algorithm>

#include "charspace/errors.hpp"

namespace charspace {

void rref_in_place(const Fp& field, Mat& rows) {
    if (rows.empty()) return;
    const std::size_t ncols = rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);

        const u32 inv = field.inv(rows[pivot_row][col]);
        for (std::size_t c = col; c < ncols; ++c) {
            rows[pivot_row][c] = field.mul(rows[pivot_row][c], inv);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            const u32 factor = rows[r][col];
            for (std::size_t c = col; c < ncols; ++c) {
                rows[r][c] = field.sub(rows[r][c], field.mul(factor, rows[pivot_row][c]));
            }
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
}

Vec reduce_against(const Fp& field, const Mat& rref_rows, Vec v) {
    for (const Vec& row : rref_rows) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        const u32 factor = v[pivot];
        if (factor == 0) continue;
        for (std::size_t c = pivot; c < v.size(); ++c) {
            v[c] = field.sub(v[c], field.mul(factor, row[c]));
        }
    }
    return v;
}

Subspace::Subspace(const Fp& field, u32 ambient, const Mat& generators)
    : field_(field), ambient_(ambient), rows_(generators) {
    for (const Vec& row : rows_) {
        if (row.size() != ambient_) {
            throw DimensionError("row length " + std::to_string(row.size()) +
                                 " does not match ambient dimension " +
                                 std::to_string(ambient_));
        }
        for (u32 x : row) {
            if (x >= field_.p()) {
                throw ValidationError("coordinate " + std::to_string(x) +
                                      " not reduced mod " + std::to_string(field_.p()));
            }
        }
    }
    rref_in_place(field_, rows_);
}

Subspace Subspace::zero(const Fp& field, u32 ambient) {
    return Subspace(field, ambient, Mat{});
}

Subspace Subspace::full(const Fp& field, u32 ambient) {
    Mat rows(ambient, Vec(ambient, 0));
    for (u32 i = 0; i < ambient; ++i) rows[i][i] = 1;
    return Subspace(field, ambient, rows);
}

std::string Subspace::key() const {
    std::string k = std::to_string(field_.p()) + ":" + std::to_string(ambient_) + ":";
    for (const Vec& row : rows_) {
        for (u32 x : row) {
            k += std::to_string(x);
            k += ',';
        }
        k += ';';
    }
    return k;
}

namespace {

void require_compatible(const Subspace& a, const Subspace& b) {
    if (a.field() != b.field()) throw DimensionError("subspaces over different fields");
    if (a.ambient() != b.ambient()) {
        throw DimensionError("ambient mismatch: " + std::to_string(a.ambient()) +
                             " vs " + std::to_string(b.ambient()));
    }
}

} // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require_compatible(a, b);
    Mat rows = a.rows();
    rows.insert(rows.end(), b.rows().begin(), b.rows().end());
    return Subspace(a.field(), a.ambient(), rows);
}

// Zassenhaus: reduce the block matrix [A|A; B|0]. Rows whose left half is
// zero have right halves spanning the intersection.
Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    require_compatible(a, b);
    const Fp& field = a.field();
    const u32 d = a.ambient();
    Mat block;
    block.reserve(a.rank() + b.rank());
    for (const Vec& row : a.rows()) {
        Vec wide(2 * d, 0);
        std::copy(row.begin(), row.end(), wide.begin());
        std::copy(row.begin(), row.end(), wide.begin() + d);
        block.push_back(std::move(wide));
    }
    for (const Vec& row : b.rows()) {
        Vec wide(2 * d, 0);
        std::copy(row.begin(), row.end(), wide.begin());
        block.push_back(std::move(wide));
    }
    rref_in_place(field, block);

    Mat inter;
    for (const Vec& row : block) {
        bool left_zero = true;
        for (u32 c = 0; c < d; ++c) {
            if (row[c] != 0) {
                left_zero = false;
                break;
            }
        }
        if (left_zero) inter.emplace_back(row.begin() + d, row.end());
    }
    return Subspace(field, d, inter);
}

bool subspace_contains(const Subspace& a, const Vec& v) {
    if (v.size() != a.ambient()) {
        throw DimensionError("vector length " + std::to_string(v.size()) +
                             " does not match ambient " + std::to_string(a.ambient()));
    }
    Vec r = reduce_against(a.field(), a.rows(), v);
    return std::all_of(r.begin(), r.end(), [](u32 x) { return x == 0; });
}

bool subspace_leq(const Subspace& a, const Subspace& b) {
    require_compatible(a, b);
    if (a.rank() > b.rank()) return false;
    for (const Vec& row : a.rows()) {
        if (!subspace_contains(b, row)) return false;
    }
    return true;
}

bool subspace_lex_less(const Subspace& a, const Subspace& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.rows() < b.rows();
}

std::vector<Subspace> enumerate_all_subspaces(const Fp& field, u32 dim,
                                              std::size_t cap) {
    std::vector<Subspace> out;
    out.push_back(Subspace::zero(field, dim));

    // Pivot column sets in lexicographic order per rank.
    for (u32 rank = 1; rank <= dim; ++rank) {
        std::vector<u32> pivots(rank);
        for (u32 i = 0; i < rank; ++i) pivots[i] = i;
        while (true) {
            // Free positions: (row r, col c) with c > pivots[r], c not a pivot.
            std::vector<std::pair<u32, u32>> free_pos;
            std::vector<bool> is_pivot(dim, false);
            for (u32 pc : pivots) is_pivot[pc] = true;
            for (u32 r = 0; r < rank; ++r) {
                for (u32 c = pivots[r] + 1; c < dim; ++c) {
                    if (!is_pivot[c]) free_pos.emplace_back(r, c);
                }
            }
            std::vector<u32> vals(free_pos.size(), 0);
            while (true) {
                Mat rows(rank, Vec(dim, 0));
                for (u32 r = 0; r < rank; ++r) rows[r][pivots[r]] = 1;
                for (std::size_t i = 0; i < free_pos.size(); ++i) {
                    rows[free_pos[i].first][free_pos[i].second] = vals[i];
                }
                if (out.size() >= cap) {
                    throw CapExceeded("subspace enumeration exceeds cap " +
                                      std::to_string(cap));
                }
                out.emplace_back(field, dim, rows);
                // odometer over free values
                std::size_t i = 0;
                while (i < vals.size()) {
                    if (++vals[i] < field.p()) break;
                    vals[i] = 0;
                    ++i;
                }
                if (i == vals.size()) break;
                if (vals.empty()) break;
            }
            // next pivot combination
            i64 j = static_cast<i64>(rank) - 1;
            while (j >= 0 && pivots[j] == dim - rank + j) --j;
            if (j < 0) break;
            ++pivots[j];
            for (u32 k = static_cast<u32>(j) + 1; k < rank; ++k) {
                pivots[k] = pivots[k - 1] + 1;
            }
        }
    }
    return out;
}

std::string format_vec(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::string format_basis(const Subspace& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.rows().size(); ++i) {
        if (i) out += ", ";
        out += format_vec(s.rows()[i]);
    }
    return out + "}";
}

} // namespace charspace
