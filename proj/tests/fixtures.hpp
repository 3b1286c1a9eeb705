#pragma once

// Worked algebras shared across the test suites: upper-triangular 2x2
// (basis E11, E22, E12), dual numbers (1, eps), strictly-upper-triangular
// 3x3 (E12, E13, E23), the Heisenberg Lie algebra and sl2(GF(5)), and
// zero algebras of any shape.

#include "charspace/algebra.hpp"
#include "charspace/morphism.hpp"

namespace fixtures {

using namespace charspace;

inline StructureAlgebra tri2(u32 p = 2) {
    Fp f(p);
    // e1 = E11, e2 = E22, e3 = E12
    std::vector<StructureEntry> entries = {
        {0, 0, 0, 1}, // E11*E11 = E11
        {0, 2, 2, 1}, // E11*E12 = E12
        {1, 1, 1, 1}, // E22*E22 = E22
        {2, 1, 2, 1}, // E12*E22 = E12
    };
    return StructureAlgebra(f, 3, Flavor::associative, entries);
}

/// Order-2 automorphism of tri2 over GF(2): e1 -> e1+e3, e2 -> e2+e3,
/// e3 -> e3 (conjugation by I + E12).
inline Mat tri2_phi_matrix() {
    return {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}};
}

inline StructureAlgebra dual_numbers(u32 p = 2) {
    Fp f(p);
    // e1 = 1, e2 = eps, eps^2 = 0
    std::vector<StructureEntry> entries = {
        {0, 0, 0, 1},
        {0, 1, 1, 1},
        {1, 0, 1, 1},
    };
    return StructureAlgebra(f, 2, Flavor::associative, entries);
}

inline StructureAlgebra strict3(u32 p = 2) {
    Fp f(p);
    // e1 = E12, e2 = E13, e3 = E23; E12*E23 = E13
    std::vector<StructureEntry> entries = {{0, 2, 1, 1}};
    return StructureAlgebra(f, 3, Flavor::associative, entries);
}

/// Automorphism of strict3 over GF(2): conjugation by I + E12, which is
/// e1 -> e1, e2 -> e2, e3 -> e2 + e3.
inline Mat strict3_phi_matrix() {
    return {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
}

inline StructureAlgebra zero_algebra(u32 p, u32 dim) {
    return StructureAlgebra(Fp(p), dim, Flavor::general, {});
}

inline StructureAlgebra heisenberg(u32 p = 5) {
    Fp f(p);
    // [x, y] = z
    std::vector<StructureEntry> entries = {
        {0, 1, 2, 1},
        {1, 0, 2, f.neg(1)},
    };
    return StructureAlgebra(f, 3, Flavor::lie, entries);
}

inline StructureAlgebra sl2(u32 p = 5) {
    Fp f(p);
    // e1 = e, e2 = f, e3 = h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
    std::vector<StructureEntry> entries = {
        {0, 1, 2, 1},        {1, 0, 2, f.neg(1)},
        {2, 0, 0, 2},        {0, 2, 0, f.neg(2)},
        {2, 1, 1, f.neg(2)}, {1, 2, 1, 2},
    };
    return StructureAlgebra(f, 3, Flavor::lie, entries);
}

/// Borel subalgebra of sl2: [h, e] = 2e on basis (e, h).
inline StructureAlgebra borel2(u32 p = 5) {
    Fp f(p);
    std::vector<StructureEntry> entries = {
        {1, 0, 0, 2},
        {0, 1, 0, f.neg(2)},
    };
    return StructureAlgebra(f, 2, Flavor::lie, entries);
}

/// The plateau algebra: a*a = u, a*u = v, u*v = s, everything else zero.
/// Its power chain is P_4 = P_5 = <s> with P_6 = 0, so it is nilpotent of
/// index 6 although the dimension is only 4.
inline StructureAlgebra plateau4(u32 p = 2) {
    Fp f(p);
    // basis order: a, u, v, s
    std::vector<StructureEntry> entries = {
        {0, 0, 1, 1},
        {0, 1, 2, 1},
        {1, 2, 3, 1},
    };
    return StructureAlgebra(f, 4, Flavor::general, entries);
}

inline Subspace span(const StructureAlgebra& a, const Mat& rows) {
    return Subspace(a.field(), a.dim(), rows);
}

inline MorphismSet tri2_phi_set() {
    StructureAlgebra a = tri2();
    Morphism phi = must_validate_morphism(a, tri2_phi_matrix(), MorphKind::automorphism);
    return morphism_closure({phi});
}

} // namespace fixtures
