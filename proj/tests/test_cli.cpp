#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

// End-to-end checks of the binary: exit-code contract, certificate
// round-trip, deterministic output.

namespace {

const std::string bin = CHARSPACE_BIN;
const std::string root = CHARSPACE_ROOT;

int run(const std::string& args) {
    std::string cmd = bin + " " + args + " > /tmp/charspace_cli_out.txt 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string output() {
    std::ifstream in("/tmp/charspace_cli_out.txt");
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("validate: bundled example exits 0") {
    CHECK(run("validate --input " + root + "/data/tri2_gf2.json") == 0);
}

TEST_CASE("validate: flavor violation exits 2 and cites the law") {
    write_file("/tmp/charspace_bad_lie.json",
               R"({"field": {"p": 2}, "dimension": 1, "flavor": "lie",
                   "product": [[0, 0, 0, 1]]})");
    CHECK(run("validate --input /tmp/charspace_bad_lie.json") == 2);
    CHECK(output().find("alternating") != std::string::npos);
}

TEST_CASE("validate: malformed JSON exits 1") {
    write_file("/tmp/charspace_malformed.json", "{ not json");
    CHECK(run("validate --input /tmp/charspace_malformed.json") == 1);
    CHECK(run("validate --input /tmp/charspace_missing_file.json") == 1);
}

TEST_CASE("char-subspace: worked example summary and certificate") {
    int code = run("char-subspace --input " + root +
                   "/data/tri2_gf2.json --subspace N --t 2 --out /tmp/charspace_c1.json");
    CHECK(code == 0);
    std::string out = output();
    CHECK(out.find("codim N       2") != std::string::npos);
    CHECK(out.find("codim H       1") != std::string::npos);
    CHECK(out.find("bound f^1     6") != std::string::npos);

    // determinism: identical bytes on a second run
    CHECK(run("char-subspace --input " + root +
              "/data/tri2_gf2.json --subspace N --t 2 --out /tmp/charspace_c2.json") == 0);
    CHECK(slurp("/tmp/charspace_c1.json") == slurp("/tmp/charspace_c2.json"));

    // verify replays it
    CHECK(run("verify --cert /tmp/charspace_c1.json --input " + root +
              "/data/tri2_gf2.json") == 0);
}

TEST_CASE("char-subspace: identity mode") {
    int code = run("char-subspace --input " + root +
                   "/data/tri2_gf2.json --subspace N --mode identity --target-word comm "
                   "--out /tmp/charspace_id.json");
    CHECK(code == 0);
    CHECK(output().find("codim H       3") != std::string::npos);
    CHECK(run("verify --cert /tmp/charspace_id.json --input " + root +
              "/data/tri2_gf2.json") == 0);

    // hypothesis failure: xy does not vanish on N
    CHECK(run("char-subspace --input " + root +
              "/data/tri2_gf2.json --subspace N --mode identity --target-word xy") == 2);
}

TEST_CASE("char-subspace: bounded image and t=1") {
    CHECK(run("char-subspace --input " + root +
              "/data/tri2_gf2.json --subspace N --mode bounded-image --target-word xy "
              "--out /tmp/charspace_b.json") == 0);
    CHECK(run("verify --cert /tmp/charspace_b.json --input " + root +
              "/data/tri2_gf2.json") == 0);

    CHECK(run("char-subspace --input " + root + "/data/tri2_gf2.json --subspace N --t 1") ==
          0);
    CHECK(output().find("bound f^0     2") != std::string::npos);
}

TEST_CASE("char-subspace: --words adds combinations to W") {
    // the commutator constraint forces H = 0 on the worked example
    CHECK(run("char-subspace --input " + root +
              "/data/tri2_gf2.json --subspace N --t 2 --words comm") == 0);
    CHECK(output().find("codim H       3") != std::string::npos);
    CHECK(run("char-subspace --input " + root +
              "/data/tri2_gf2.json --subspace N --t 2 --words nosuch") == 2);
}

TEST_CASE("char-subspace: tiny closure cap exits 3") {
    CHECK(run("char-subspace --input " + root +
              "/data/zero_d3_gf2.json --subspace N --t 2 --closure-cap 2") == 3);
}

TEST_CASE("series: worked example, both routes") {
    int code =
        run("series --input " + root + "/data/tri2_gf2.json --out /tmp/charspace_s.json");
    CHECK(code == 0);
    std::string out = output();
    CHECK(out.find("codim M       0") != std::string::npos);
    CHECK(run("verify --cert /tmp/charspace_s.json --input " + root +
              "/data/tri2_gf2.json") == 0);
}

TEST_CASE("series: broken witness exits 2 naming the level") {
    // witness using N (not an ideal) in the middle
    std::string doc = slurp(root + "/data/tri2_gf2.json");
    auto pos = doc.find("\"witness\": [\"zero\", \"I3\", \"G\"]");
    REQUIRE(pos != std::string::npos);
    doc.replace(pos, std::string("\"witness\": [\"zero\", \"I3\", \"G\"]").size(),
                "\"witness\": [\"zero\", \"N\", \"G\"]");
    write_file("/tmp/charspace_badwitness.json", doc);
    CHECK(run("series --input /tmp/charspace_badwitness.json") == 2);
    CHECK(output().find("ideal") != std::string::npos);
}

TEST_CASE("laws: bundled example passes, broken fixture exits 5") {
    CHECK(run("laws --input " + root + "/data/tri2_gf2.json") == 0);
    std::string out = output();
    CHECK(out.find("all declared laws pass") != std::string::npos);

    CHECK(run("laws --input " + root + "/data/tri2_gf2.json --predicate broken") == 5);
    CHECK(output().find("witness") != std::string::npos);
}

TEST_CASE("verify: tampered certificate exits 2") {
    REQUIRE(run("char-subspace --input " + root +
                "/data/tri2_gf2.json --subspace N --t 2 --out /tmp/charspace_t.json") == 0);
    std::string cert = slurp("/tmp/charspace_t.json");
    auto pos = cert.find("\"codim_h\": 1");
    REQUIRE(pos != std::string::npos);
    cert.replace(pos, std::string("\"codim_h\": 1").size(), "\"codim_h\": 0");
    write_file("/tmp/charspace_tampered.json", cert);
    CHECK(run("verify --cert /tmp/charspace_tampered.json --input " + root +
              "/data/tri2_gf2.json") == 2);
}
