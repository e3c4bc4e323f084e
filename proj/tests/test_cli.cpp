#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PADICDYN_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(PADICDYN_DATA) + "/" + name; }

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_CASE("analyze") {
    const Run r = run("analyze " + data("running_example.json"));
    CHECK(r.code == 0);
    CHECK(has(r, "period 1: 0  |multiplier| = 2^1"));
    CHECK(has(r, "period 1: 3  |multiplier| = 2^1"));
    CHECK(has(r, "  1/2  |z| = 2^1  value -1/8"));
    const Run g = run("analyze " + data("z2_q3.json"));
    CHECK(has(g, "good reduction: true"));
    const Run bad = run("analyze " + data("malformed.json"));
    CHECK(bad.code == 2);
    CHECK(has(bad, "ParseError: line 3"));
}

TEST_CASE("certify and check") {
    const std::string cert = "cli_test_cert.json";
    const Run r = run("certify " + data("running_example.json") + " --out " + cert);
    CHECK(r.code == 0);
    CHECK(has(r, "lambda: 2^1 (exponent -1)"));
    CHECK(has(r, "delta: 2^0 (exponent 0)"));
    CHECK(has(r, "mu: 2^-1 (exponent 1)"));
    CHECK(run("check " + cert + " " + data("running_example.json")).code == 0);
    CHECK(run("check " + cert + " " + data("g_plus2.json")).code == 1);

    std::ifstream in(cert);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    const auto at = text.find("\"lambda_exponent\": \"-1\"");
    REQUIRE(at != std::string::npos);
    text.replace(at, 23, "\"lambda_exponent\": \"-2\"");
    std::ofstream("cli_test_tampered.json") << text;
    CHECK(run("check cli_test_tampered.json " + data("running_example.json")).code == 1);

    const Run once = run("certify " + data("running_example.json"));
    const Run twice = run("certify " + data("running_example.json"));
    CHECK(once.out == twice.out);
}

TEST_CASE("negative verdicts and exit codes") {
    const Run gr = run("certify " + data("z2_q3.json"));
    CHECK(gr.code == 1);
    CHECK(has(gr, "\"reason\": \"GoodReduction\""));
    const Run lin = run("certify " + data("degree1.json"));
    CHECK(lin.code == 1);
    CHECK(has(lin, "DegreeTooSmall"));
    CHECK(run("certify does_not_exist.json").code == 2);
    CHECK(run("certify").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("julia") {
    const Run r = run("julia " + data("running_example.json") + " --depth 3");
    CHECK(r.code == 0);
    CHECK(has(r, "Omega_3: 8 balls"));
    CHECK(has(r, "B(7, 2^-3)"));
    CHECK(has(run("julia " + data("running_example.json") + " --depth 0"), "Omega_0: 1 ball"));
    const Run js = run("julia " + data("running_example.json") + " --depth 1 --format json");
    CHECK(has(js, "\"levels\""));
    CHECK(run("julia " + data("running_example.json") + " --depth 40 --memory-cap 5000").code == 3);
}

TEST_CASE("conjugate") {
    const Run r = run("conjugate " + data("running_example.json") + " " + data("g_plus2.json") +
                      " --point 0 --depth 5 --verify --samples 10");
    CHECK(r.code == 0);
    CHECK(has(r, "error bound: 2^-6"));
    CHECK(has(r, "PASS"));
    const Run id = run("conjugate " + data("running_example.json") + " " + data("running_example.json") +
                       " --point 3 --depth 4");
    CHECK(has(id, "h_4(3) = 3"));
    const Run out = run("conjugate " + data("running_example.json") + " " + data("g_plus1.json") +
                        " --point 0 --depth 5");
    CHECK(out.code == 1);
    CHECK(has(out, "GOutsideCertifiedNeighborhood"));
    const Run esc = run("conjugate " + data("running_example.json") + " " + data("g_plus2.json") +
                        " --point 1/2 --depth 3");
    CHECK(esc.code == 1);
    CHECK(has(esc, "OrbitEscapedOmega"));
}
