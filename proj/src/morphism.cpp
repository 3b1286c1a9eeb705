#include "charspace/morphism.hpp"

#include <deque>
#include <unordered_set>

#include "charspace/errors.hpp"

namespace charspace {

std::string morph_kind_name(MorphKind k) {
    return k == MorphKind::automorphism ? "automorphism" : "endomorphism";
}

Vec Morphism::apply_vec(const Vec& v) const {
    if (v.size() != dim) throw DimensionError("morphism applied to wrong-length vector");
    Vec out(dim, 0);
    for (u32 i = 0; i < dim; ++i) {
        u64 acc = 0;
        for (u32 j = 0; j < dim; ++j) {
            acc += static_cast<u64>(matrix[i][j]) * v[j];
        }
        out[i] = static_cast<u32>(acc % field.p());
    }
    return out;
}

std::string Morphism::key() const {
    std::string k;
    for (const Vec& row : matrix) {
        for (u32 x : row) {
            k += std::to_string(x);
            k += ',';
        }
    }
    return k;
}

u32 matrix_rank(const Fp& field, Mat m) {
    rref_in_place(field, m);
    return static_cast<u32>(m.size());
}

MorphismValidation validate_morphism(const StructureAlgebra& a, const Mat& matrix,
                                     MorphKind kind) {
    const u32 d = a.dim();
    if (matrix.size() != d) {
        return {false, "matrix must be " + std::to_string(d) + "x" + std::to_string(d), {}};
    }
    for (const Vec& row : matrix) {
        if (row.size() != d) {
            return {false, "matrix must be " + std::to_string(d) + "x" + std::to_string(d), {}};
        }
        for (u32 x : row) {
            if (x >= a.field().p()) {
                return {false, "matrix entry " + std::to_string(x) + " not reduced mod " +
                                   std::to_string(a.field().p()),
                        {}};
            }
        }
    }
    Morphism m{a.field(), d, matrix, kind};
    for (u32 i = 0; i < d; ++i) {
        for (u32 j = 0; j < d; ++j) {
            // column images of e_i, e_j
            Vec fi(d), fj(d);
            for (u32 r = 0; r < d; ++r) {
                fi[r] = matrix[r][i];
                fj[r] = matrix[r][j];
            }
            Vec lhs = m.apply_vec(a.basis_product(i, j));
            Vec rhs = a.multiply(fi, fj);
            if (lhs != rhs) {
                return {false,
                        "not multiplicative at basis pair (e" + std::to_string(i + 1) + ", e" +
                            std::to_string(j + 1) + "): image of product " + format_vec(lhs) +
                            " != product of images " + format_vec(rhs),
                        {}};
            }
        }
    }
    if (kind == MorphKind::automorphism && matrix_rank(a.field(), matrix) != d) {
        return {false, "matrix is singular, cannot be an automorphism", {}};
    }
    return {true, "", m};
}

Morphism must_validate_morphism(const StructureAlgebra& a, const Mat& matrix,
                                MorphKind kind) {
    MorphismValidation v = validate_morphism(a, matrix, kind);
    if (!v.ok) throw ValidationError(v.message);
    return *v.morphism;
}

Morphism identity_morphism(const Fp& field, u32 dim, MorphKind kind) {
    Mat m(dim, Vec(dim, 0));
    for (u32 i = 0; i < dim; ++i) m[i][i] = 1;
    return Morphism{field, dim, m, kind};
}

Morphism compose(const Morphism& a, const Morphism& b) {
    if (a.dim != b.dim || a.field != b.field) {
        throw DimensionError("composing morphisms of different shapes");
    }
    Mat out(a.dim, Vec(a.dim, 0));
    for (u32 i = 0; i < a.dim; ++i) {
        for (u32 k = 0; k < a.dim; ++k) {
            if (a.matrix[i][k] == 0) continue;
            for (u32 j = 0; j < a.dim; ++j) {
                out[i][j] = a.field.add(out[i][j], a.field.mul(a.matrix[i][k], b.matrix[k][j]));
            }
        }
    }
    return Morphism{a.field, a.dim, out, a.kind};
}

MorphismSet morphism_closure(const std::vector<Morphism>& generators, std::size_t cap) {
    if (generators.empty()) throw ValidationError("closure of an empty generator set");
    const Fp field = generators[0].field;
    const u32 dim = generators[0].dim;
    MorphKind kind = MorphKind::automorphism;
    for (const Morphism& g : generators) {
        if (g.dim != dim || g.field != field) {
            throw DimensionError("closure generators on different algebras");
        }
        if (g.kind == MorphKind::endomorphism) kind = MorphKind::endomorphism;
    }

    MorphismSet set;
    set.kind = kind;
    std::unordered_set<std::string> seen;
    auto push = [&](Morphism m) {
        std::string k = m.key();
        if (seen.contains(k)) return false;
        if (set.elements.size() >= cap) {
            throw CapExceeded("morphism closure exceeds cap " + std::to_string(cap) +
                              " (partial size " + std::to_string(set.elements.size()) + ")");
        }
        seen.insert(std::move(k));
        set.elements.push_back(std::move(m));
        return true;
    };

    if (kind == MorphKind::automorphism) {
        push(identity_morphism(field, dim, kind));
        set.contains_identity = true;
    }
    for (const Morphism& g : generators) push(g);
    set.num_generators = generators.size();

    // Every word in the generators is reachable by right-multiplication.
    std::size_t next = 0;
    while (next < set.elements.size()) {
        Morphism cur = set.elements[next++];
        for (const Morphism& g : generators) {
            push(compose(cur, g));
        }
    }
    if (!set.contains_identity) {
        set.contains_identity =
            seen.contains(identity_morphism(field, dim, kind).key());
    }
    return set;
}

Subspace apply(const Morphism& m, const Subspace& v) {
    if (v.ambient() != m.dim) throw DimensionError("morphism/subspace ambient mismatch");
    Mat rows;
    rows.reserve(v.rank());
    for (const Vec& row : v.rows()) rows.push_back(m.apply_vec(row));
    return Subspace(m.field, m.dim, rows);
}

std::vector<Subspace> orbit(const Subspace& v, const MorphismSet& phi) {
    std::vector<Subspace> out;
    std::unordered_set<std::string> seen;
    for (const Morphism& m : phi.elements) {
        Subspace img = apply(m, v);
        if (seen.insert(img.key()).second) out.push_back(std::move(img));
    }
    return out;
}

bool is_invariant(const Subspace& v, const MorphismSet& phi) {
    for (const Morphism& m : phi.elements) {
        if (!subspace_leq(apply(m, v), v)) return false;
    }
    return true;
}

std::vector<Mat> gl_generators(const Fp& field, u32 dim) {
    if (dim == 0) throw DimensionError("gl_generators needs dim >= 1");
    // smallest primitive root mod p
    u32 primitive = 1;
    if (field.p() > 2) {
        for (u32 g = 2; g < field.p(); ++g) {
            bool ok = true;
            for (u32 e = 1; e + 1 < field.p(); ++e) {
                if (field.pow(g, e) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                primitive = g;
                break;
            }
        }
    }
    std::vector<Mat> out;
    if (dim == 1) {
        out.push_back({{primitive}});
        return out;
    }
    Mat transvect(dim, Vec(dim, 0));
    for (u32 i = 0; i < dim; ++i) transvect[i][i] = 1;
    transvect[0][1] = 1;
    out.push_back(transvect);

    Mat transvect2(dim, Vec(dim, 0));
    for (u32 i = 0; i < dim; ++i) transvect2[i][i] = 1;
    transvect2[1][0] = 1;
    out.push_back(transvect2);

    Mat cycle(dim, Vec(dim, 0)); // e_i -> e_{i+1}, e_d -> e_1
    for (u32 i = 0; i < dim; ++i) cycle[(i + 1) % dim][i] = 1;
    out.push_back(cycle);

    if (field.p() > 2) {
        Mat scale(dim, Vec(dim, 0));
        for (u32 i = 0; i < dim; ++i) scale[i][i] = 1;
        scale[0][0] = primitive;
        out.push_back(scale);
    }
    return out;
}

} // namespace charspace
