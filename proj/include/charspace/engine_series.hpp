#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charspace/engine_char.hpp"

namespace charspace {

struct SeriesLevel {
    enum class Kind { identity, algebra_class } kind = Kind::identity;
    MultilinearElement word;       // identity levels
    AlgebraClass klass;            // class levels
    std::string describe() const;
};

SeriesLevel identity_level(const MultilinearElement& w);
SeriesLevel class_level(const AlgebraClass& cls);

struct SeriesSpec {
    std::vector<SeriesLevel> levels; // level i constrains B_i / B_{i-1}
    std::size_t length() const { return levels.size(); }
};

/// A chain 0 = B_0 <= B_1 <= ... <= B_n, every member an ideal.
struct SeriesWitness {
    std::vector<Subspace> chain;
};

struct SeriesReport {
    bool ok = true;
    int failure_level = -1; // 0 = chain shape, 1..n = level requirement
    std::string message;
};

/// Verifies the witness: shape (starts at zero, ends at N, increasing),
/// ideality of every member, and each level's requirement evaluated in
/// the quotient presentation modulo the previous member.
SeriesReport check_series(const StructureAlgebra& a, const Subspace& n,
                          const SeriesWitness& witness, const SeriesSpec& spec);

enum class SeriesRoute { direct, predicate, both };

std::string series_route_name(SeriesRoute r);

struct SeriesLevelEvidence {
    std::string requirement;
    Subspace identity_span; // zero for satisfied identity levels
    std::optional<u32> nilpotency;
};

struct SeriesCertificate {
    Subspace m;
    SeriesWitness chain;
    std::vector<SeriesLevelEvidence> evidence;
    u32 codim_n = 0;
    u32 codim_m = 0;
    std::size_t closure_size = 0;
    std::size_t ideal_pool_size = 0;
    std::size_t invariant_count = 0;
    u32 predicate_arity = 0;
    std::optional<u32> direct_codim;
    std::optional<u32> predicate_codim;
    std::vector<InvarianceWitness> invariance;
};

/// Searches the ideal sublattice closure of the orbits of the input chain
/// for an invariant chain with the same per-level requirements and the
/// largest invariant top. The direct route does a memoized top-down chain
/// search with every member invariant; the predicate route assembles the
/// series property through the extension/composition combinators and
/// filters invariant elements on the diagonal. `both` runs the two and
/// demands equal minimal codimension.
SeriesCertificate find_characteristic_series(const StructureAlgebra& a, const Subspace& n,
                                             const SeriesWitness& witness,
                                             const SeriesSpec& spec, const MorphismSet& phi,
                                             SeriesRoute route = SeriesRoute::both,
                                             EngineCaps caps = {});

/// Builds the composed series predicate U_n over the given ideal pool
/// (base case: the zero subspace). Arity is the product of the identity
/// degrees, class levels contributing 1.
Predicate build_series_predicate(const StructureAlgebra& a, const SeriesSpec& spec,
                                 const std::vector<Subspace>& pool);

struct ClassLawCase {
    std::string law;
    bool pass = true;
    u64 cases = 0;
    std::string witness;
};

struct ClassLawReport {
    bool pass = true;
    std::vector<ClassLawCase> laws;
};

struct ClassLawOptions {
    std::size_t ideal_enumeration_cap = 1u << 14;
    std::size_t max_pairs_per_algebra = 400;
    u64 seed = 0x5eed;
};

/// Empirically verifies the radical laws (ideals of members are members;
/// sums of member ideals are members) and the coradical laws (quotients
/// of members are members; subdirect closure through the intersection of
/// two kernels) on a corpus of algebras and their enumerated ideals.
ClassLawReport class_laws(const AlgebraClass& cls,
                          const std::vector<StructureAlgebra>& corpus,
                          const ClassLawOptions& opts = {});

/// All ideals of the algebra, deterministic order (subspace enumeration
/// filtered by ideality).
std::vector<Subspace> enumerate_ideals(const StructureAlgebra& a, std::size_t cap = 1u << 14);

} // namespace charspace
