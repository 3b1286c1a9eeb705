#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charspace/engine_series.hpp"

namespace charspace {

/// One level of the optional series block, as written in the document.
struct SeriesLevelSpec {
    std::string kind; // "identity" | "class"
    std::string word; // named word, identity levels
    std::string tag;  // "nilpotent" | "abelian", class levels
};

struct SeriesBlock {
    std::vector<SeriesLevelSpec> levels;
    std::vector<std::string> witness; // subspace names, bottom first
};

/// A parsed problem document: structurally valid JSON with the expected
/// keys and shapes. Semantic validation (primality, flavor laws, morphism
/// laws, word multilinearity) happens in build_problem.
struct ProblemDocument {
    u32 p = 2;
    u32 dimension = 1;
    Flavor flavor = Flavor::general;
    std::vector<StructureEntry> product;
    std::vector<std::pair<std::string, Mat>> subspaces;
    std::vector<std::pair<std::string, Mat>> automorphisms;
    std::vector<std::pair<std::string, std::string>> words;
    std::optional<SeriesBlock> series;
};

/// Throws ParseError with a JSON-pointer-style location on any schema
/// problem; unknown keys are rejected.
ProblemDocument parse_problem_text(const std::string& text);
ProblemDocument parse_problem_file(const std::string& path);

/// Fully validated module objects built from a document.
struct BuiltProblem {
    StructureAlgebra algebra;
    std::map<std::string, Subspace> subspaces;
    std::map<std::string, Morphism> automorphisms;
    std::map<std::string, MultilinearElement> words;
    std::optional<SeriesBlock> series;

    const Subspace& subspace(const std::string& name) const;
    const MultilinearElement& word(const std::string& name) const;

    /// Closure of all named automorphisms (identity alone when none).
    MorphismSet phi(std::size_t cap = 10000) const;

    SeriesSpec series_spec() const;     // requires the series block
    SeriesWitness series_witness() const;
};

/// Throws ValidationError naming the violated law, basis pair or triple.
BuiltProblem build_problem(const ProblemDocument& doc);

} // namespace charspace
