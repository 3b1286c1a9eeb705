#include "charspace/certificate.hpp"

#include <fstream>

#include "charspace/errors.hpp"

namespace charspace {

ordered_json matrix_json(const Mat& m) {
    ordered_json rows = ordered_json::array();
    for (const Vec& row : m) {
        ordered_json r = ordered_json::array();
        for (u32 x : row) r.push_back(x);
        rows.push_back(std::move(r));
    }
    return rows;
}

ordered_json basis_json(const Subspace& s) {
    return matrix_json(s.rows());
}

namespace {

ordered_json problem_echo(const BuiltProblem& problem) {
    ordered_json out;
    out["p"] = problem.algebra.field().p();
    out["dimension"] = problem.algebra.dim();
    out["flavor"] = flavor_name(problem.algebra.flavor());
    return out;
}

ordered_json phi_echo(const CertificateContext& ctx, std::size_t size) {
    ordered_json out;
    ordered_json gens = ordered_json::array();
    for (const std::string& g : ctx.generator_names) gens.push_back(g);
    out["generators"] = std::move(gens);
    out["closure_size"] = size;
    return out;
}

} // namespace

ordered_json char_certificate_json(const CharSubspaceCertificate& cert,
                                   const BuiltProblem& problem,
                                   const CertificateContext& ctx) {
    ordered_json doc;
    doc["schema"] = "charspace.cert.v1";
    doc["kind"] = "char-subspace";

    ordered_json cmd;
    cmd["subspace"] = ctx.subspace_name;
    cmd["t"] = cert.t;
    cmd["mode"] = char_mode_name(cert.mode);
    ordered_json extra = ordered_json::array();
    for (const std::string& w : ctx.extra_word_names) extra.push_back(w);
    cmd["words"] = std::move(extra);
    if (cert.target) cmd["target"] = cert.target->sexpr();
    cmd["closure_cap"] = ctx.closure_cap;
    doc["command"] = std::move(cmd);

    doc["problem"] = problem_echo(problem);
    doc["phi"] = phi_echo(ctx, cert.invariance.size());

    ordered_json orbit = ordered_json::array();
    for (const Subspace& s : cert.orbit) orbit.push_back(basis_json(s));
    doc["orbit"] = std::move(orbit);

    ordered_json closure;
    closure["size"] = cert.closure_size;
    closure["complete"] = true;
    closure["candidates"] = cert.candidate_count;
    doc["closure"] = std::move(closure);

    ordered_json result;
    result["h"] = basis_json(cert.h);
    result["codim_n"] = cert.codim_n;
    result["codim_h"] = cert.codim_h;
    result["bound"] = cert.bound;
    ordered_json trace = ordered_json::array();
    for (u64 x : cert.f_bound_trace) trace.push_back(x);
    result["f_trace"] = std::move(trace);
    doc["result"] = std::move(result);

    ordered_json words = ordered_json::array();
    for (const WordWitness& w : cert.word_witnesses) {
        ordered_json e;
        e["word"] = w.word.sexpr();
        e["degree"] = w.word.degree;
        e["lhs"] = basis_json(w.lhs);
        e["rhs"] = basis_json(w.rhs);
        words.push_back(std::move(e));
    }
    doc["word_witnesses"] = std::move(words);

    ordered_json inv = ordered_json::array();
    for (const InvarianceWitness& w : cert.invariance) {
        ordered_json e;
        e["element"] = w.element_index;
        e["image"] = basis_json(w.image);
        inv.push_back(std::move(e));
    }
    doc["invariance"] = std::move(inv);

    if (cert.mode == CharMode::identity) {
        ordered_json id;
        id["span_n"] = basis_json(*cert.identity_span_n);
        id["span_h"] = basis_json(*cert.identity_span_h);
        doc["identity"] = std::move(id);
    }
    if (cert.mode == CharMode::bounded_image) {
        ordered_json b;
        b["dim_n"] = *cert.image_dim_n;
        b["dim_h"] = *cert.image_dim_h;
        b["bound"] = *cert.image_bound;
        doc["bounded_image"] = std::move(b);
    }
    doc["verification"] = ordered_json{{"status", "pass"}};
    return doc;
}

ordered_json series_certificate_json(const SeriesCertificate& cert,
                                     const BuiltProblem& problem,
                                     const CertificateContext& ctx) {
    ordered_json doc;
    doc["schema"] = "charspace.cert.v1";
    doc["kind"] = "series";

    ordered_json cmd;
    cmd["route"] = ctx.route;
    cmd["closure_cap"] = ctx.closure_cap;
    doc["command"] = std::move(cmd);

    doc["problem"] = problem_echo(problem);
    doc["phi"] = phi_echo(ctx, cert.invariance.size());

    ordered_json levels = ordered_json::array();
    if (problem.series) {
        for (const SeriesLevelSpec& lvl : problem.series->levels) {
            ordered_json e;
            e["kind"] = lvl.kind;
            if (lvl.kind == "identity") {
                e["word"] = lvl.word;
            } else {
                e["tag"] = lvl.tag;
            }
            levels.push_back(std::move(e));
        }
    }
    doc["levels"] = std::move(levels);

    ordered_json closure;
    closure["size"] = cert.closure_size;
    closure["ideal_pool"] = cert.ideal_pool_size;
    closure["invariant"] = cert.invariant_count;
    doc["closure"] = std::move(closure);

    ordered_json result;
    result["m"] = basis_json(cert.m);
    result["codim_n"] = cert.codim_n;
    result["codim_m"] = cert.codim_m;
    ordered_json chain = ordered_json::array();
    for (const Subspace& b : cert.chain.chain) chain.push_back(basis_json(b));
    result["chain"] = std::move(chain);
    // stronger than the guarantee for M alone; the verifier re-checks it
    result["chain_invariant"] = true;
    if (cert.direct_codim) result["direct_codim"] = *cert.direct_codim;
    if (cert.predicate_codim) result["predicate_codim"] = *cert.predicate_codim;
    result["predicate_arity"] = cert.predicate_arity;
    doc["result"] = std::move(result);

    ordered_json evidence = ordered_json::array();
    for (const SeriesLevelEvidence& ev : cert.evidence) {
        ordered_json e;
        e["requirement"] = ev.requirement;
        e["identity_span"] = basis_json(ev.identity_span);
        if (ev.nilpotency) e["nilpotency_index"] = *ev.nilpotency;
        evidence.push_back(std::move(e));
    }
    doc["evidence"] = std::move(evidence);

    ordered_json inv = ordered_json::array();
    for (const InvarianceWitness& w : cert.invariance) {
        ordered_json e;
        e["element"] = w.element_index;
        e["image"] = basis_json(w.image);
        inv.push_back(std::move(e));
    }
    doc["invariance"] = std::move(inv);

    doc["verification"] = ordered_json{{"status", "pass"}};
    return doc;
}

std::string dump_certificate(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

void write_certificate(const ordered_json& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw Error("cannot open certificate file for writing: " + path);
    out << dump_certificate(doc);
}

} // namespace charspace
