#include "charspace/verifier.hpp"

#include <fstream>

#include "charspace/errors.hpp"
#include "charspace/lattice.hpp"

namespace charspace {

namespace {

using nlohmann::ordered_json;

Mat matrix_from_json(const ordered_json& rows) {
    Mat m;
    for (const auto& row : rows) {
        Vec r;
        for (const auto& x : row) r.push_back(x.get<u32>());
        m.push_back(std::move(r));
    }
    return m;
}

Subspace subspace_from_json(const Fp& field, u32 dim, const ordered_json& rows) {
    return Subspace(field, dim, matrix_from_json(rows));
}

bool canonical_equal(const Subspace& s, const ordered_json& rows) {
    Mat m = matrix_from_json(rows);
    return s.rows() == m;
}

} // namespace

void VerifyReport::ok(const std::string& what) { checks.push_back("ok: " + what); }

void VerifyReport::fail(const std::string& what) {
    pass = false;
    checks.push_back("FAIL: " + what);
    failures.push_back(what);
}

ordered_json load_certificate_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw ParseError("cannot open certificate file: " + path);
    try {
        return ordered_json::parse(std::string((std::istreambuf_iterator<char>(in)),
                                               std::istreambuf_iterator<char>()));
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid certificate JSON: ") + ex.what());
    }
}

namespace {

void check_problem_echo(VerifyReport& rep, const ordered_json& cert,
                        const BuiltProblem& problem) {
    const auto& echo = cert.at("problem");
    if (echo.at("p").get<u32>() != problem.algebra.field().p() ||
        echo.at("dimension").get<u32>() != problem.algebra.dim() ||
        echo.at("flavor").get<std::string>() != flavor_name(problem.algebra.flavor())) {
        rep.fail("certificate problem echo does not match the input document");
    } else {
        rep.ok("problem echo matches the input document");
    }
}

MorphismSet rebuild_phi(VerifyReport& rep, const ordered_json& cert,
                        const BuiltProblem& problem) {
    std::vector<Morphism> gens;
    for (const auto& name : cert.at("phi").at("generators")) {
        auto it = problem.automorphisms.find(name.get<std::string>());
        if (it == problem.automorphisms.end()) {
            throw ValidationError("certificate names unknown automorphism '" +
                                  name.get<std::string>() + "'");
        }
        gens.push_back(it->second);
    }
    if (gens.empty()) {
        gens.push_back(identity_morphism(problem.algebra.field(), problem.algebra.dim(),
                                         MorphKind::automorphism));
    }
    MorphismSet phi = morphism_closure(gens);
    if (phi.size() != cert.at("phi").at("closure_size").get<std::size_t>()) {
        rep.fail("morphism closure size " + std::to_string(phi.size()) +
                 " differs from the recorded " +
                 std::to_string(cert.at("phi").at("closure_size").get<std::size_t>()));
    } else {
        rep.ok("morphism closure rebuilt, size " + std::to_string(phi.size()));
    }
    return phi;
}

void check_invariance(VerifyReport& rep, const ordered_json& cert, const MorphismSet& phi,
                      const Subspace& h, const char* label) {
    bool invariant = true;
    for (const Morphism& m : phi.elements) {
        if (!subspace_leq(apply(m, h), h)) {
            invariant = false;
            break;
        }
    }
    if (!invariant) {
        rep.fail(std::string(label) + " is not invariant under the recorded morphism set");
    } else {
        rep.ok(std::string(label) + " invariant under all " + std::to_string(phi.size()) +
               " morphisms");
    }
    const auto& witnesses = cert.at("invariance");
    bool images_match = true;
    for (const auto& w : witnesses) {
        std::size_t idx = w.at("element").get<std::size_t>();
        if (idx >= phi.size()) {
            images_match = false;
            break;
        }
        if (!canonical_equal(apply(phi.elements[idx], h), w.at("image"))) {
            images_match = false;
            break;
        }
    }
    if (!images_match) {
        rep.fail("a recorded invariance image does not replay");
    } else {
        rep.ok("all " + std::to_string(witnesses.size()) + " recorded images replay");
    }
}

void check_f_trace(VerifyReport& rep, const ordered_json& result, u32 codim_n, u32 codim_h) {
    const auto& trace = result.at("f_trace");
    bool arith = !trace.empty() && trace.at(0).get<u64>() == codim_n;
    for (std::size_t i = 0; arith && i + 1 < trace.size(); ++i) {
        u64 x = trace.at(i).get<u64>();
        if (trace.at(i + 1).get<u64>() != x * (x + 1)) arith = false;
    }
    u64 bound = result.at("bound").get<u64>();
    if (arith && !trace.empty() && trace.back().get<u64>() != bound) arith = false;
    if (!arith) {
        rep.fail("f-iteration trace is not the claimed arithmetic");
    } else {
        rep.ok("bound trace verifies: f^" + std::to_string(trace.size() - 1) + "(" +
               std::to_string(codim_n) + ") = " + std::to_string(bound));
    }
    if (codim_h > bound) {
        rep.fail("codim H = " + std::to_string(codim_h) + " exceeds the bound " +
                 std::to_string(bound));
    } else {
        rep.ok("codim H = " + std::to_string(codim_h) + " <= bound " + std::to_string(bound));
    }
}

void verify_char(VerifyReport& rep, const ordered_json& cert, const BuiltProblem& problem) {
    const StructureAlgebra& a = problem.algebra;
    const Fp& field = a.field();
    const u32 d = a.dim();

    check_problem_echo(rep, cert, problem);
    MorphismSet phi = rebuild_phi(rep, cert, problem);

    const std::string n_name = cert.at("command").at("subspace").get<std::string>();
    const Subspace& n = problem.subspace(n_name);

    const auto& result = cert.at("result");
    Subspace h = subspace_from_json(field, d, result.at("h"));
    if (!canonical_equal(h, result.at("h"))) {
        rep.fail("recorded H basis is not in canonical form");
    } else {
        rep.ok("H basis is canonical");
    }
    const u32 codim_n = result.at("codim_n").get<u32>();
    const u32 codim_h = result.at("codim_h").get<u32>();
    if (n.codim() != codim_n) rep.fail("recorded codim N does not match the document");
    if (h.codim() != codim_h) rep.fail("recorded codim H does not match its basis");

    // orbit replay
    std::vector<Subspace> orb = orbit(n, phi);
    const auto& cert_orbit = cert.at("orbit");
    bool orbit_ok = cert_orbit.size() == orb.size();
    for (std::size_t i = 0; orbit_ok && i < orb.size(); ++i) {
        orbit_ok = canonical_equal(orb[i], cert_orbit.at(i));
    }
    if (!orbit_ok) {
        rep.fail("recorded orbit of N does not replay");
    } else {
        rep.ok("orbit of N replays, " + std::to_string(orb.size()) + " images");
    }

    // membership of H in the generated sublattice
    std::size_t closure_cap = cert.at("command").at("closure_cap").get<std::size_t>();
    SublatticeClosure closure = sublattice_closure(orb, closure_cap);
    if (!closure.complete) {
        rep.fail("sublattice closure did not complete at the recorded cap");
    } else {
        if (closure.size() != cert.at("closure").at("size").get<std::size_t>()) {
            rep.fail("sublattice closure size differs from the recorded value");
        } else {
            rep.ok("sublattice closure replays, size " + std::to_string(closure.size()));
        }
        if (!closure.contains(h)) {
            rep.fail("H is not in the sublattice generated by the orbit");
        } else {
            rep.ok("H lies in the generated sublattice");
        }
    }

    check_invariance(rep, cert, phi, h, "H");

    // word containments
    bool words_ok = true;
    for (const auto& w : cert.at("word_witnesses")) {
        MultilinearElement word = parse_word(field, w.at("word").get<std::string>());
        std::vector<Subspace> diag_h(word.degree, h);
        std::vector<Subspace> diag_n(word.degree, n);
        Subspace lhs = eval_span(word, a, diag_h);
        Subspace rhs = phi_sum(eval_span(word, a, diag_n), phi);
        if (!canonical_equal(lhs, w.at("lhs")) || !canonical_equal(rhs, w.at("rhs")) ||
            !subspace_leq(lhs, rhs)) {
            rep.fail("word witness for " + word.sexpr() + " does not replay");
            words_ok = false;
        }
    }
    if (words_ok) {
        rep.ok("all " + std::to_string(cert.at("word_witnesses").size()) +
               " word containments replay");
    }

    check_f_trace(rep, result, codim_n, codim_h);

    const std::string mode = cert.at("command").at("mode").get<std::string>();
    if (mode == "identity") {
        MultilinearElement w =
            parse_word(field, cert.at("command").at("target").get<std::string>());
        std::vector<Subspace> diag_n(w.degree, n);
        std::vector<Subspace> diag_h(w.degree, h);
        const auto& id = cert.at("identity");
        bool zero_n = eval_span(w, a, diag_n).is_zero() && id.at("span_n").empty();
        bool zero_h = eval_span(w, a, diag_h).is_zero() && id.at("span_h").empty();
        if (!zero_n) {
            rep.fail("identity hypothesis does not replay: w does not vanish on N");
        }
        if (!zero_h) {
            rep.fail("identity conclusion does not replay: w does not vanish on H");
        }
        if (zero_n && zero_h) {
            rep.ok("target " + w.sexpr() + " vanishes exactly on N and on H");
        }
    }
    if (mode == "bounded-image") {
        MultilinearElement w =
            parse_word(field, cert.at("command").at("target").get<std::string>());
        std::vector<Subspace> diag_n(w.degree, n);
        std::vector<Subspace> diag_h(w.degree, h);
        const auto& b = cert.at("bounded_image");
        u64 dim_n = eval_span(w, a, diag_n).rank();
        u64 dim_h = eval_span(w, a, diag_h).rank();
        u64 bound = b.at("bound").get<u64>();
        if (dim_n != b.at("dim_n").get<u64>() || dim_h != b.at("dim_h").get<u64>() ||
            bound != static_cast<u64>(phi.size()) * dim_n || dim_h > bound) {
            rep.fail("bounded-image arithmetic does not replay");
        } else {
            rep.ok("bounded-image arithmetic replays: " + std::to_string(dim_h) +
                   " <= " + std::to_string(phi.size()) + " * " + std::to_string(dim_n));
        }
    }
}

void verify_series(VerifyReport& rep, const ordered_json& cert, const BuiltProblem& problem) {
    const StructureAlgebra& a = problem.algebra;
    const Fp& field = a.field();
    const u32 d = a.dim();

    check_problem_echo(rep, cert, problem);
    MorphismSet phi = rebuild_phi(rep, cert, problem);

    const auto& result = cert.at("result");
    Subspace m = subspace_from_json(field, d, result.at("m"));
    std::vector<Subspace> chain;
    for (const auto& rows : result.at("chain")) {
        chain.push_back(subspace_from_json(field, d, rows));
    }
    if (chain.empty() || chain.back() != m) {
        rep.fail("chain does not end at M");
    } else {
        rep.ok("chain ends at M, length " + std::to_string(chain.size()));
    }
    if (chain.empty() || !chain.front().is_zero()) {
        rep.fail("chain does not start at the zero subspace");
    }
    bool shape_ok = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!is_ideal(a, chain[i])) {
            rep.fail("chain member " + std::to_string(i) + " is not an ideal");
            shape_ok = false;
        }
        if (i > 0 && !subspace_leq(chain[i - 1], chain[i])) {
            rep.fail("chain member " + std::to_string(i - 1) + " not contained in member " +
                     std::to_string(i));
            shape_ok = false;
        }
        bool invariant = true;
        for (const Morphism& mo : phi.elements) {
            if (!subspace_leq(apply(mo, chain[i]), chain[i])) invariant = false;
        }
        if (!invariant) {
            rep.fail("chain member " + std::to_string(i) + " is not invariant");
            shape_ok = false;
        }
    }
    if (shape_ok) rep.ok("every chain member is an invariant ideal");
    if (result.contains("chain_invariant") && result.at("chain_invariant").get<bool>() &&
        !shape_ok) {
        rep.fail("certificate claims an invariant chain but a member is not invariant");
    }

    // per-level requirements, straight from the base modules
    const auto& levels = cert.at("levels");
    if (levels.size() + 1 != chain.size()) {
        rep.fail("level count does not match the chain length");
        return;
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& lvl = levels.at(i);
        QuotientPresentation q = quotient(a, chain[i]);
        Subspace image = q.project_subspace(chain[i + 1]);
        const std::string kind = lvl.at("kind").get<std::string>();
        if (kind == "identity") {
            MultilinearElement w = problem.word(lvl.at("word").get<std::string>());
            std::vector<Subspace> diag(w.degree, image);
            if (!eval_span(w, q.quotient, diag).is_zero()) {
                rep.fail("level " + std::to_string(i + 1) + " identity does not vanish");
            } else {
                rep.ok("level " + std::to_string(i + 1) + " identity " + w.sexpr() +
                       " vanishes in the quotient");
            }
        } else {
            const std::string tag = lvl.at("tag").get<std::string>();
            if (tag == "nilpotent") {
                auto idx = nilpotency_index(q.quotient, image);
                if (!idx) {
                    rep.fail("level " + std::to_string(i + 1) + " quotient is not nilpotent");
                } else {
                    rep.ok("level " + std::to_string(i + 1) + " quotient nilpotent, index " +
                           std::to_string(*idx));
                }
            } else if (tag == "abelian") {
                if (!product_span(q.quotient, image, image).is_zero()) {
                    rep.fail("level " + std::to_string(i + 1) + " quotient is not abelian");
                } else {
                    rep.ok("level " + std::to_string(i + 1) + " quotient is abelian");
                }
            } else {
                rep.fail("level " + std::to_string(i + 1) + " has unknown class tag " + tag);
            }
        }
    }

    check_invariance(rep, cert, phi, m, "M");

    if (m.codim() != result.at("codim_m").get<u32>()) {
        rep.fail("recorded codim M does not match its basis");
    } else {
        rep.ok("codim M = " + std::to_string(m.codim()));
    }
    if (result.contains("direct_codim") && result.contains("predicate_codim") &&
        result.at("direct_codim").get<u32>() != result.at("predicate_codim").get<u32>()) {
        rep.fail("recorded route codimensions disagree");
    }
}

} // namespace

VerifyReport verify_certificate(const ordered_json& cert, const BuiltProblem& problem) {
    VerifyReport rep;
    try {
        if (!cert.contains("schema") ||
            cert.at("schema").get<std::string>() != "charspace.cert.v1") {
            rep.fail("unknown certificate schema");
            return rep;
        }
        const std::string kind = cert.at("kind").get<std::string>();
        if (kind == "char-subspace") {
            verify_char(rep, cert, problem);
        } else if (kind == "series") {
            verify_series(rep, cert, problem);
        } else {
            rep.fail("unknown certificate kind '" + kind + "'");
        }
    } catch (const std::exception& ex) {
        rep.fail(std::string("verification aborted: ") + ex.what());
    }
    return rep;
}

} // namespace charspace
