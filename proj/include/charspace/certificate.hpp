#pragma once

#include <string>

#include <json.hpp>

#include "charspace/engine_char.hpp"
#include "charspace/engine_series.hpp"
#include "charspace/problem.hpp"

namespace charspace {

using ordered_json = nlohmann::ordered_json;

/// Name echoes the certificate carries so a verifier can resolve the run
/// against the original problem document. Serialization is deterministic:
/// fixed key order, no timestamps, dump(2) plus a trailing newline.
struct CertificateContext {
    std::string subspace_name;                // char-subspace
    std::vector<std::string> extra_word_names;
    std::vector<std::string> generator_names; // order of closure generators
    std::size_t closure_cap = 50000;
    std::string route;                        // series
};

ordered_json char_certificate_json(const CharSubspaceCertificate& cert,
                                   const BuiltProblem& problem,
                                   const CertificateContext& ctx);

ordered_json series_certificate_json(const SeriesCertificate& cert,
                                     const BuiltProblem& problem,
                                     const CertificateContext& ctx);

std::string dump_certificate(const ordered_json& doc);
void write_certificate(const ordered_json& doc, const std::string& path);

ordered_json basis_json(const Subspace& s);
ordered_json matrix_json(const Mat& m);

} // namespace charspace
