#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "charspace/problem.hpp"

namespace charspace {

/// Result of replaying a certificate against its problem document. Every
/// claim is recomputed from the base modules (linear algebra, words,
/// morphisms, quotients); none of the engine search code is involved.
struct VerifyReport {
    bool pass = true;
    std::vector<std::string> checks;   // one line per verified claim
    std::vector<std::string> failures; // subset that failed

    void ok(const std::string& what);
    void fail(const std::string& what);
};

VerifyReport verify_certificate(const nlohmann::ordered_json& cert,
                                const BuiltProblem& problem);

nlohmann::ordered_json load_certificate_file(const std::string& path);

} // namespace charspace
