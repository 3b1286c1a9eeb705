#include "charspace/problem.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "charspace/errors.hpp"

namespace charspace {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) bad(where + "/" + key, "unknown key");
    }
}

u32 get_u32(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) bad(where, "missing key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) bad(where + "/" + key, "expected a non-negative integer");
    u64 x = v.get<u64>();
    if (x > 0x7fffffffULL) bad(where + "/" + key, "value too large");
    return static_cast<u32>(x);
}

Mat get_matrix(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where, "expected an array of rows");
    Mat m;
    for (std::size_t r = 0; r < v.size(); ++r) {
        const json& row = v.at(r);
        if (!row.is_array()) bad(where + "/" + std::to_string(r), "expected a row array");
        Vec out;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const json& x = row.at(c);
            if (!x.is_number_unsigned()) {
                bad(where + "/" + std::to_string(r) + "/" + std::to_string(c),
                    "expected a non-negative integer residue");
            }
            u64 val = x.get<u64>();
            if (val > 0x7fffffffULL) {
                bad(where + "/" + std::to_string(r) + "/" + std::to_string(c),
                    "residue too large");
            }
            out.push_back(static_cast<u32>(val));
        }
        m.push_back(std::move(out));
    }
    return m;
}

} // namespace

ProblemDocument parse_problem_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid JSON: ") + ex.what());
    }
    if (!doc.is_object()) bad("/", "document must be a JSON object");
    reject_unknown_keys(doc, "", {"field", "dimension", "flavor", "product", "subspaces",
                                  "automorphisms", "words", "series"});

    ProblemDocument out;
    if (!doc.contains("field") || !doc.at("field").is_object()) {
        bad("/field", "missing or not an object");
    }
    reject_unknown_keys(doc.at("field"), "/field", {"p"});
    out.p = get_u32(doc.at("field"), "/field", "p");
    out.dimension = get_u32(doc, "", "dimension");
    if (out.dimension == 0) bad("/dimension", "dimension must be >= 1");

    if (!doc.contains("flavor") || !doc.at("flavor").is_string()) {
        bad("/flavor", "missing or not a string");
    }
    auto flavor = flavor_from_name(doc.at("flavor").get<std::string>());
    if (!flavor) bad("/flavor", "expected general, associative or lie");
    out.flavor = *flavor;

    if (!doc.contains("product") || !doc.at("product").is_array()) {
        bad("/product", "missing or not an array");
    }
    for (std::size_t i = 0; i < doc.at("product").size(); ++i) {
        const json& e = doc.at("product").at(i);
        const std::string where = "/product/" + std::to_string(i);
        if (!e.is_array() || e.size() != 4) bad(where, "expected [i, j, k, coeff]");
        StructureEntry entry{};
        u32* fields[4] = {&entry.i, &entry.j, &entry.k, &entry.coeff};
        for (std::size_t f = 0; f < 4; ++f) {
            if (!e.at(f).is_number_unsigned()) bad(where, "expected [i, j, k, coeff]");
            u64 val = e.at(f).get<u64>();
            if (val > 0x7fffffffULL) bad(where, "entry too large");
            *fields[f] = static_cast<u32>(val);
        }
        out.product.push_back(entry);
    }

    if (doc.contains("subspaces")) {
        if (!doc.at("subspaces").is_object()) bad("/subspaces", "expected an object");
        for (const auto& [name, rows] : doc.at("subspaces").items()) {
            out.subspaces.emplace_back(name, get_matrix(rows, "/subspaces/" + name));
        }
    }
    if (doc.contains("automorphisms")) {
        if (!doc.at("automorphisms").is_object()) bad("/automorphisms", "expected an object");
        for (const auto& [name, rows] : doc.at("automorphisms").items()) {
            out.automorphisms.emplace_back(name, get_matrix(rows, "/automorphisms/" + name));
        }
    }
    if (doc.contains("words")) {
        if (!doc.at("words").is_object()) bad("/words", "expected an object");
        for (const auto& [name, text2] : doc.at("words").items()) {
            if (!text2.is_string()) bad("/words/" + name, "expected an s-expression string");
            out.words.emplace_back(name, text2.get<std::string>());
        }
    }
    if (doc.contains("series")) {
        const json& s = doc.at("series");
        if (!s.is_object()) bad("/series", "expected an object");
        reject_unknown_keys(s, "/series", {"levels", "witness"});
        SeriesBlock block;
        if (!s.contains("levels") || !s.at("levels").is_array() || s.at("levels").empty()) {
            bad("/series/levels", "missing or empty");
        }
        for (std::size_t i = 0; i < s.at("levels").size(); ++i) {
            const json& lvl = s.at("levels").at(i);
            const std::string where = "/series/levels/" + std::to_string(i);
            if (!lvl.is_object()) bad(where, "expected an object");
            reject_unknown_keys(lvl, where, {"kind", "word", "tag"});
            SeriesLevelSpec spec;
            if (!lvl.contains("kind") || !lvl.at("kind").is_string()) {
                bad(where + "/kind", "missing");
            }
            spec.kind = lvl.at("kind").get<std::string>();
            if (spec.kind == "identity") {
                if (!lvl.contains("word") || !lvl.at("word").is_string()) {
                    bad(where + "/word", "identity level needs a named word");
                }
                spec.word = lvl.at("word").get<std::string>();
            } else if (spec.kind == "class") {
                if (!lvl.contains("tag") || !lvl.at("tag").is_string()) {
                    bad(where + "/tag", "class level needs a tag");
                }
                spec.tag = lvl.at("tag").get<std::string>();
            } else {
                bad(where + "/kind", "expected identity or class");
            }
            block.levels.push_back(std::move(spec));
        }
        if (!s.contains("witness") || !s.at("witness").is_array()) {
            bad("/series/witness", "missing or not an array");
        }
        for (std::size_t i = 0; i < s.at("witness").size(); ++i) {
            const json& w = s.at("witness").at(i);
            if (!w.is_string()) bad("/series/witness/" + std::to_string(i), "expected a name");
            block.witness.push_back(w.get<std::string>());
        }
        out.series = std::move(block);
    }
    return out;
}

ProblemDocument parse_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw ParseError("cannot open input file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_problem_text(text);
}

const Subspace& BuiltProblem::subspace(const std::string& name) const {
    auto it = subspaces.find(name);
    if (it == subspaces.end()) throw ValidationError("unknown subspace '" + name + "'");
    return it->second;
}

const MultilinearElement& BuiltProblem::word(const std::string& name) const {
    auto it = words.find(name);
    if (it == words.end()) throw ValidationError("unknown word '" + name + "'");
    return it->second;
}

MorphismSet BuiltProblem::phi(std::size_t cap) const {
    std::vector<Morphism> gens;
    for (const auto& [name, m] : automorphisms) gens.push_back(m);
    if (gens.empty()) {
        gens.push_back(identity_morphism(algebra.field(), algebra.dim(),
                                         MorphKind::automorphism));
    }
    return morphism_closure(gens, cap);
}

SeriesSpec BuiltProblem::series_spec() const {
    if (!series) throw ValidationError("document has no series block");
    SeriesSpec spec;
    for (const SeriesLevelSpec& lvl : series->levels) {
        if (lvl.kind == "identity") {
            spec.levels.push_back(identity_level(word(lvl.word)));
        } else if (lvl.tag == "nilpotent") {
            spec.levels.push_back(class_level(nilpotent_class()));
        } else if (lvl.tag == "abelian") {
            spec.levels.push_back(class_level(abelian_class()));
        } else {
            throw ValidationError("unknown class tag '" + lvl.tag + "'");
        }
    }
    return spec;
}

SeriesWitness BuiltProblem::series_witness() const {
    if (!series) throw ValidationError("document has no series block");
    SeriesWitness w;
    for (const std::string& name : series->witness) w.chain.push_back(subspace(name));
    return w;
}

BuiltProblem build_problem(const ProblemDocument& doc) {
    Fp field(doc.p);
    StructureAlgebra algebra(field, doc.dimension, doc.flavor, doc.product);
    FlavorReport flavor_report = validate_flavor(algebra);
    if (!flavor_report.ok) {
        throw ValidationError("flavor '" + flavor_name(doc.flavor) + "': " +
                              flavor_report.message);
    }

    BuiltProblem out{std::move(algebra), {}, {}, {}, doc.series};
    for (const auto& [name, rows] : doc.subspaces) {
        try {
            out.subspaces.emplace(name, Subspace(field, doc.dimension, rows));
        } catch (const Error& e) {
            throw ValidationError("subspace '" + name + "': " + e.what());
        }
    }
    for (const auto& [name, mat] : doc.automorphisms) {
        MorphismValidation v = validate_morphism(out.algebra, mat, MorphKind::automorphism);
        if (!v.ok) {
            throw ValidationError("automorphism '" + name + "': " + v.message);
        }
        out.automorphisms.emplace(name, *v.morphism);
    }
    for (const auto& [name, text] : doc.words) {
        try {
            out.words.emplace(name, parse_word(field, text));
        } catch (const Error& e) {
            throw ValidationError("word '" + name + "': " + e.what());
        }
    }
    if (doc.series) {
        for (const SeriesLevelSpec& lvl : doc.series->levels) {
            if (lvl.kind == "identity") out.word(lvl.word);
        }
        for (const std::string& name : doc.series->witness) out.subspace(name);
    }
    return out;
}

} // namespace charspace
