#include "doctest.h"
#include "padicdyn/io.hpp"

using namespace padicdyn;

namespace {

Polynomial P(std::vector<mpq_class> c) { return Polynomial(std::move(c)); }

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(io::parseRational("-1/2") == mpq_class(-1, 2));
    CHECK(io::parseRational("\xE2\x88\x92" "3/6") == mpq_class(-1, 2));
    CHECK(io::parseRational(" 7 ") == 7);
    CHECK(io::parseRational("+4/2") == 2);
    for (const char* bad : {"", "1.5", "1/0", "abc", "1e3", "--1", "1/-2"}) CHECK_THROWS_AS(io::parseRational(bad), Error);
}

TEST_CASE("map files") {
    const auto spec = io::parseMapSpec(R"({"p": 2, "precision": 64, "numerator": ["0", "−1/2", "1/2"],
                                            "denominator": ["1"], "label": "f"})");
    CHECK(spec.p == 2);
    CHECK(spec.precision == 64);
    CHECK(spec.map == RationalMap(P({0, -1, 1}), P({2})));
    CHECK(spec.label == "f");
    CHECK(io::parseMapSpec(io::mapSpecJson(spec)).map == spec.map);

    try {
        io::parseMapSpec("{\n  \"p\": 2,\n  \"numerator\": [\"1\" \"2\"]\n}");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parseMapSpec(R"({"p": 4, "numerator": ["1"], "denominator": ["1"]})"), Error);
    CHECK_THROWS_AS(io::parseMapSpec(R"({"p": 2, "numerator": ["1"]})"), Error);
    CHECK_THROWS_AS(io::parseMapSpec(R"({"p": 2, "numerator": [0.5], "denominator": ["1"]})"), Error);
    CHECK_THROWS_AS(io::parseMapSpec(R"({"p": 2, "numerator": ["0","1"], "denominator": ["0","1"]})"), Error);
}

TEST_CASE("certificate round trip") {
    auto ctx = Context::make(2);
    const RationalMap f(P({0, -1, 1}), P({2}));
    const auto cert = jStabilityCertificate(f, ctx);
    const std::string text = io::certificateJson(cert);
    const auto back = io::parseCertificate(text);
    CHECK(io::certificateJson(back) == text);
    CHECK(back.certified());
    CHECK(back.omega == cert.omega);
    CHECK(*back.lambdaExponent == -1);

    const io::MapSpec spec{f, 2, 128, ""};
    const auto rep = io::checkCertificate(back, spec, 10, 1);
    CHECK(rep.pass);

    auto tampered = back;
    tampered.lambdaExponent = mpq_class(-2);
    CHECK_FALSE(io::checkCertificate(tampered, spec, 0, 1).pass);
    tampered = back;
    tampered.deltaExponent = mpq_class(-1);
    CHECK_FALSE(io::checkCertificate(tampered, spec, 0, 1).pass);
    tampered = back;
    tampered.bounds->numerator[0] = 1;
    CHECK_FALSE(io::checkCertificate(tampered, spec, 0, 1).pass);

    const io::MapSpec other{RationalMap(P({4, -1, 1}), P({2})), 2, 128, ""};
    CHECK_FALSE(io::checkCertificate(back, other, 0, 1).pass);
}

TEST_CASE("negative certificates round trip") {
    const RationalMap sq(P({0, 0, 1}), P({1}));
    const auto cert = jStabilityCertificate(sq, Context::make(3, 64));
    const auto back = io::parseCertificate(io::certificateJson(cert));
    CHECK_FALSE(back.certified());
    CHECK(back.reason == "GoodReduction");
    CHECK(io::checkCertificate(back, {sq, 3, 64, ""}, 0, 1).pass);
}

TEST_CASE("certificate output is deterministic") {
    const RationalMap f(P({0, -1, 1}), P({2}));
    CHECK(io::certificateJson(jStabilityCertificate(f, Context::make(2))) ==
          io::certificateJson(jStabilityCertificate(f, Context::make(2))));
}

TEST_CASE("cover listings") {
    auto ctx = Context::make(2);
    const RationalMap f(P({0, -1, 1}), P({2}));
    const auto seq = omegaSequence(f, BallCover({ClosedBall(0, 0, 2)}, 2), 2, ctx);
    const std::string text = io::coverText(seq);
    CHECK(text.find("Omega_2: 4 balls") != std::string::npos);
    CHECK(text.find("B(3, 2^-2)") != std::string::npos);
    CHECK(io::coverJson(seq).find("\"radius_exponent\": \"2\"") != std::string::npos);
}
