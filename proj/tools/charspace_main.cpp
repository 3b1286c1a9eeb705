// charspace: characteristic subspaces and ideal series over GF(p), with
// replayable certificates.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "charspace/certificate.hpp"
#include "charspace/engine_char.hpp"
#include "charspace/engine_series.hpp"
#include "charspace/problem.hpp"
#include "charspace/verifier.hpp"

namespace {

using namespace charspace;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitDefect = 4;
constexpr int kExitLaw = 5;

std::size_t default_closure_cap() {
    if (const char* env = std::getenv("CHARSPACE_CLOSURE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        std::cerr << "warning: ignoring malformed CHARSPACE_CLOSURE_CAP\n";
    }
    return 50000;
}

BuiltProblem load(const std::string& path) {
    return build_problem(parse_problem_file(path));
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        if (comma > start) out.push_back(csv.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

int run_validate(const std::string& input) {
    ProblemDocument doc = parse_problem_file(input);
    try {
        BuiltProblem built = build_problem(doc);
        std::cout << "ok: field GF(" << built.algebra.field().p() << "), dimension "
                  << built.algebra.dim() << ", flavor "
                  << flavor_name(built.algebra.flavor()) << "\n";
        std::cout << "ok: " << built.subspaces.size() << " subspaces, "
                  << built.automorphisms.size() << " automorphisms, " << built.words.size()
                  << " words\n";
        if (built.series) {
            std::cout << "ok: series block with " << built.series->levels.size()
                      << " levels\n";
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitValidation;
    }
}

int run_char_subspace(const std::string& input, const std::string& subspace_name, u32 t_flag,
                      const std::string& words_csv, const std::string& mode_name,
                      const std::string& target_name, std::size_t closure_cap,
                      const std::string& out_path) {
    BuiltProblem built = load(input);
    const Subspace& n = built.subspace(subspace_name);

    CharMode mode = CharMode::general;
    if (mode_name == "identity") {
        mode = CharMode::identity;
    } else if (mode_name == "bounded-image") {
        mode = CharMode::bounded_image;
    } else if (mode_name != "general") {
        throw ValidationError("unknown mode '" + mode_name + "'");
    }

    std::optional<MultilinearElement> target;
    if (!target_name.empty()) target = built.word(target_name);
    if (mode != CharMode::general && !target) {
        throw ValidationError("--mode " + mode_name + " needs --target-word");
    }

    u32 t = t_flag;
    if (t == 0) {
        if (!target) throw ValidationError("--t is required in general mode");
        t = target->degree;
    }

    CertificateContext ctx;
    ctx.subspace_name = subspace_name;
    ctx.closure_cap = closure_cap;
    for (const auto& [name, m] : built.automorphisms) ctx.generator_names.push_back(name);

    std::vector<MultilinearElement> extra;
    for (const std::string& wname : split_names(words_csv)) {
        extra.push_back(built.word(wname));
        ctx.extra_word_names.push_back(wname);
    }

    EngineCaps caps;
    caps.closure_cap = closure_cap;
    CharSubspaceRequest request = make_request(built.algebra, n, built.phi(), t, extra, caps);
    request.mode = mode;
    request.target = target;

    CharSubspaceCertificate cert = find_characteristic_subspace(request);

    std::cout << "mode          " << char_mode_name(cert.mode) << "\n";
    std::cout << "codim N       " << cert.codim_n << "\n";
    std::cout << "codim H       " << cert.codim_h << "\n";
    std::cout << "bound f^" << (cert.t - 1) << "     " << cert.bound << "\n";
    std::cout << "orbit size    " << cert.orbit.size() << "\n";
    std::cout << "closure size  " << cert.closure_size << "\n";
    std::cout << "candidates    " << cert.candidate_count << "\n";
    std::cout << "H basis       " << format_basis(cert.h) << "\n";

    ordered_json doc = char_certificate_json(cert, built, ctx);
    if (!out_path.empty()) {
        write_certificate(doc, out_path);
        std::cout << "certificate   " << out_path << "\n";
    }
    return kExitOk;
}

int run_series(const std::string& input, const std::string& route_name,
               std::size_t closure_cap, const std::string& out_path) {
    BuiltProblem built = load(input);
    if (!built.series) throw ValidationError("input document has no series block");

    SeriesRoute route = SeriesRoute::both;
    if (route_name == "direct") {
        route = SeriesRoute::direct;
    } else if (route_name == "predicate") {
        route = SeriesRoute::predicate;
    } else if (route_name != "both") {
        throw ValidationError("unknown route '" + route_name + "'");
    }

    SeriesSpec spec = built.series_spec();
    SeriesWitness witness = built.series_witness();
    const Subspace& n = witness.chain.back();

    EngineCaps caps;
    caps.closure_cap = closure_cap;
    SeriesCertificate cert =
        find_characteristic_series(built.algebra, n, witness, spec, built.phi(), route, caps);

    std::cout << "route         " << route_name << "\n";
    std::cout << "codim N       " << cert.codim_n << "\n";
    std::cout << "codim M       " << cert.codim_m << "\n";
    if (cert.direct_codim) std::cout << "direct codim  " << *cert.direct_codim << "\n";
    if (cert.predicate_codim) {
        std::cout << "pred codim    " << *cert.predicate_codim << "\n";
    }
    std::cout << "closure size  " << cert.closure_size << "\n";
    std::cout << "M basis       " << format_basis(cert.m) << "\n";
    for (std::size_t i = 0; i < cert.chain.chain.size(); ++i) {
        std::cout << "chain B" << i << "      " << format_basis(cert.chain.chain[i]) << "\n";
    }

    CertificateContext ctx;
    ctx.route = route_name;
    ctx.closure_cap = closure_cap;
    for (const auto& [name, m] : built.automorphisms) ctx.generator_names.push_back(name);
    ordered_json doc = series_certificate_json(cert, built, ctx);
    if (!out_path.empty()) {
        write_certificate(doc, out_path);
        std::cout << "certificate   " << out_path << "\n";
    }
    return kExitOk;
}

void print_law(const std::string& target, const LawCheckResult& r) {
    std::cout << target << " | " << law_name(r.law) << " | "
              << (r.pass ? "pass" : "FAIL") << " | " << r.cases << " cases"
              << (r.exhaustive ? "" : " (sampled)") << "\n";
    if (!r.pass) std::cout << "  witness: " << r.witness << "\n";
}

int run_laws(const std::string& input, const std::string& predicate_name,
             const std::string& class_name, u64 exhaustive_bound,
             std::size_t closure_cap) {
    BuiltProblem built = load(input);
    MorphismSet phi = built.phi();

    // pool: closure of the orbits of every named subspace
    std::vector<Subspace> seed;
    for (const auto& [name, s] : built.subspaces) {
        for (Subspace& img : orbit(s, phi)) seed.push_back(std::move(img));
    }
    if (seed.empty()) seed.push_back(built.algebra.full_subspace());
    seed.push_back(built.algebra.zero_subspace());
    seed.push_back(built.algebra.full_subspace());
    SublatticeClosure closure = sublattice_closure(seed, closure_cap);
    if (!closure.complete) throw CapExceeded("law-check closure exceeded the cap");
    std::cout << "closure of named subspaces: " << closure.size() << " elements\n";

    LawCheckOptions opts;
    opts.exhaustive_budget = exhaustive_bound;
    opts.phi = &phi;

    AlgebraClass cls = class_name == "abelian" ? abelian_class() : nilpotent_class();
    bool all_pass = true;

    if (predicate_name == "A" || predicate_name == "all") {
        std::vector<MultilinearElement> ws;
        for (const auto& [name, w] : built.words) ws.push_back(w);
        if (ws.empty()) {
            ws.push_back(parse_word(built.algebra.field(), "(* x1 x2)"));
        }
        for (const MultilinearElement& w : ws) {
            TwoLinePredicate a = pred_A(w, built.algebra);
            for (const LawCheckResult& r : check_two_line_laws(a, closure.elements, opts)) {
                print_law(a.name, r);
                all_pass = all_pass && r.pass;
            }
        }
    }
    if (predicate_name == "B" || predicate_name == "all") {
        std::vector<Subspace> ideal_pool;
        for (const Subspace& s : closure.elements) {
            if (is_ideal(built.algebra, s)) ideal_pool.push_back(s);
        }
        if (!ideal_pool.empty()) {
            TwoLinePredicate b = pred_B(cls, built.algebra);
            for (const LawCheckResult& r : check_two_line_laws(b, ideal_pool, opts)) {
                print_law(b.name, r);
                all_pass = all_pass && r.pass;
            }
        }
    }
    if (predicate_name == "composed" || predicate_name == "all") {
        std::vector<Subspace> ideal_pool;
        for (const Subspace& s : closure.elements) {
            if (is_ideal(built.algebra, s)) ideal_pool.push_back(s);
        }
        bool has_zero = false;
        for (const Subspace& s : ideal_pool) has_zero = has_zero || s.is_zero();
        if (!has_zero) ideal_pool.push_back(built.algebra.zero_subspace());
        SeriesSpec spec;
        if (built.series) {
            spec = built.series_spec();
        } else {
            spec.levels.push_back(class_level(cls));
            spec.levels.push_back(
                identity_level(parse_word(built.algebra.field(), "(* x1 x2)")));
        }
        Predicate u = build_series_predicate(built.algebra, spec, ideal_pool);
        for (Law law : {Law::monotone, Law::multilinear}) {
            LawCheckResult r = check_law(u, law, ideal_pool, opts);
            print_law(u.name, r);
            all_pass = all_pass && r.pass;
        }
    }
    if (predicate_name == "broken") {
        // self-test fixture: "rank of N1 is even" is not multilinear
        Predicate broken;
        broken.name = "broken[rank-parity]";
        broken.arity = 1;
        broken.eval = [](std::span<const Subspace> args) {
            return args[0].rank() % 2 == 0;
        };
        LawCheckResult r = check_law(broken, Law::multilinear, closure.elements, opts);
        print_law(broken.name, r);
        all_pass = all_pass && r.pass;
    }

    // generalized-codimension laws on the same closure
    for (const CodimLawResult& r : check_codim_laws(closure.elements, ordinary_codim(), phi)) {
        std::cout << "codim | " << r.law << " | " << (r.pass ? "pass" : "FAIL") << " | "
                  << r.cases << " cases\n";
        if (!r.pass) {
            std::cout << "  witness: " << r.witness << "\n";
            all_pass = false;
        }
    }

    if (predicate_name == "all" || predicate_name == "class") {
        ClassLawReport report = class_laws(cls, {built.algebra});
        for (const ClassLawCase& c : report.laws) {
            std::cout << "class " << cls.name << " | " << c.law << " | "
                      << (c.pass ? "pass" : "FAIL") << " | " << c.cases << " cases\n";
            if (!c.pass) {
                std::cout << "  witness: " << c.witness << "\n";
                all_pass = false;
            }
        }
    }

    if (!all_pass) {
        std::cerr << "law failure\n";
        return kExitLaw;
    }
    std::cout << "all declared laws pass\n";
    return kExitOk;
}

int run_verify(const std::string& cert_path, const std::string& input) {
    BuiltProblem built = load(input);
    ordered_json cert = load_certificate_file(cert_path);
    VerifyReport rep = verify_certificate(cert, built);
    for (const std::string& line : rep.checks) std::cout << line << "\n";
    if (!rep.pass) {
        std::cerr << "verification failed: " << rep.failures.size() << " check(s)\n";
        return kExitValidation;
    }
    std::cout << "certificate verifies\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "charspace: automorphism-invariant subspaces and ideal series of "
        "finite-dimensional algebras over GF(p), with replayable certificates.\n"
        "The environment variable CHARSPACE_CLOSURE_CAP overrides the default "
        "sublattice closure cap (50000)."};
    app.require_subcommand(1);

    std::string input, out_path, cert_path;
    std::string subspace_name, words_csv, target_name;
    std::string mode_name = "general";
    std::string route_name = "both";
    std::string predicate_name = "all";
    std::string class_name = "nilpotent";
    u32 t = 0;
    std::size_t closure_cap = default_closure_cap();
    u64 exhaustive_bound = 1ull << 28;

    CLI::App* validate = app.add_subcommand("validate", "check a problem document");
    validate->add_option("--input", input, "problem JSON")->required();

    CLI::App* charsub =
        app.add_subcommand("char-subspace", "find an invariant subspace with the word property");
    charsub->add_option("--input", input, "problem JSON")->required();
    charsub->add_option("--subspace", subspace_name, "name of N")->required();
    charsub->add_option("--t", t, "degree bound t (default: target word degree)");
    charsub->add_option("--words", words_csv, "named words to add to W, comma separated");
    charsub->add_option("--mode", mode_name, "general | identity | bounded-image");
    charsub->add_option("--target-word", target_name, "named target word for the identity and bounded-image modes");
    charsub->add_option("--closure-cap", closure_cap, "sublattice closure cap");
    charsub->add_option("--out", out_path, "certificate output file");

    CLI::App* series = app.add_subcommand("series", "find an invariant ideal series");
    series->add_option("--input", input, "problem JSON (with a series block)")->required();
    series->add_option("--route", route_name, "direct | predicate | both");
    series->add_option("--closure-cap", closure_cap, "ideal closure cap");
    series->add_option("--out", out_path, "certificate output file");

    CLI::App* laws = app.add_subcommand("laws", "check predicate, codimension and class laws");
    laws->add_option("--input", input, "problem JSON")->required();
    laws->add_option("--predicate", predicate_name, "A | B | composed | broken | all");
    laws->add_option("--class", class_name, "nilpotent | abelian");
    laws->add_option("--exhaustive-bound", exhaustive_bound,
                     "iteration budget before sampling kicks in");
    laws->add_option("--closure-cap", closure_cap, "closure cap");

    CLI::App* verify = app.add_subcommand("verify", "replay a certificate, no search");
    verify->add_option("--cert", cert_path, "certificate JSON")->required();
    verify->add_option("--input", input, "problem JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(input);
        if (charsub->parsed()) {
            return run_char_subspace(input, subspace_name, t, words_csv, mode_name,
                                     target_name, closure_cap, out_path);
        }
        if (series->parsed()) return run_series(input, route_name, closure_cap, out_path);
        if (laws->parsed()) {
            return run_laws(input, predicate_name, class_name, exhaustive_bound, closure_cap);
        }
        if (verify->parsed()) return run_verify(cert_path, input);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const TheoremViolation& e) {
        std::cerr << "defect: " << e.what() << "\n";
        return kExitDefect;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    }
    return kExitSchema;
}
