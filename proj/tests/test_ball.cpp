#include "doctest.h"
#include "oracles.hpp"
#include "padicdyn/ball.hpp"

using namespace padicdyn;

namespace {

Polynomial P(std::vector<mpq_class> c) { return Polynomial(std::move(c)); }
ClosedBall B(const mpq_class& c, const mpq_class& t, unsigned long p = 2) { return ClosedBall(c, t, p); }
const RationalMap kF(P({0, -1, 1}), P({2}));

}  // namespace

TEST_CASE("ball canonical form") {
    CHECK(B(5, 2) == B(1, 2));
    CHECK(B(mpq_class(1, 2), -1) == B(0, -1));
    CHECK(B(mpq_class(1, 4), -1).center() == mpq_class(1, 4));
    CHECK(B(5, mpq_class(3, 2)).pointSetExponent() == 2);
    CHECK(B(5, mpq_class(3, 2)) == B(1, mpq_class(3, 2)));
    CHECK(B(0, 0).contains(B(2, 1)));
    CHECK(B(0, 1).disjoint(B(1, 1)));
    CHECK(B(0, 1).children().size() == 2);
    CHECK(B(0, mpq_class(1, 2)).children().size() == 1);
    CHECK(B(0, 0).toString() == "B(0, 2^0)");
    CHECK(B(0, -1).toString() == "B(0, 2^1)");
}

TEST_CASE("maximal term index") {
    CHECK(maximalTermIndex(P({0, -1, 1}), Radius::one(), 2).l == 2);
    CHECK(maximalTermIndex(P({0, -1, 1}), Radius::fromExponent(1), 2).l == 1);
    CHECK(maximalTermIndex(P({7}), Radius::one(), 2).l == 0);
}

TEST_CASE("root counts over C_p") {
    CHECK(countRootsInBall(P({-2, 0, 1}), B(0, 0)) == 2);
    CHECK(countRootsInBall(P({0, -1, 1}), B(0, 1)) == 1);
    CHECK(countRootsInBall(P({1}), B(3, 4)) == 0);
}

TEST_CASE("image of a ball") {
    const BallImage im = imageOfBallWithIndex(kF, B(0, 0));
    CHECK(im.l == 2);
    CHECK(im.ball == B(0, -1));
    const RationalMap sq(P({0, 0, 1}), P({1}));
    CHECK(imageOfBall(sq, B(1, 1, 3)) == B(1, 1, 3));
    CHECK(imageOfBallWithIndex(sq, B(1, 1, 3)).l == 1);
    const RationalMap id(P({0, 1}), P({1}));
    CHECK(imageOfBall(id, B(mpq_class(1, 3), 2, 5)) == B(mpq_class(1, 3), 2, 5));
    const RationalMap inv(P({1}), P({0, 1}));
    CHECK_THROWS_AS(imageOfBall(inv, B(0, 3)), Error);
}

TEST_CASE("hensel lifting") {
    auto ctx = Context::make(2);
    const PadicNumber r = henselLift(P({4, -1, 1}), PadicNumber::exactZero(ctx), 64);
    CHECK(r.valuation() == 2);
    mpz_class m = r.truncation().get_num() % 32;
    CHECK(m == 20);
    const mpq_class rq = r.truncation();
    const auto v = oracle::vp(mpq_class(rq * rq - rq + 4), 2);
    CHECK((!v || *v >= 64));
    CHECK(henselLift(P({0, -1, 1}), PadicNumber::exactZero(ctx), 64).isZeroTag());
    try {
        henselLift(P({-2, 0, 1}), PadicNumber::exactZero(ctx), 64);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BasinConditionViolated);
    }
}

TEST_CASE("roots in a ball") {
    auto ctx = Context::make(2);
    auto roots = rootsInBall(P({0, -1, 1}), B(0, 0), ctx);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].root.truncation() == 0);
    CHECK(roots[1].root.truncation() == 1);
    try {
        rootsInBall(P({-2, 0, 1}), B(0, 0), ctx);
        FAIL("expected an error");
    } catch (const ExtensionFieldError& e) {
        CHECK(e.newtonCount() == 2);
        CHECK(e.rationalFound() == 0);
    }
    auto dbl = rootsInBall(P({0, 0, 1}), B(0, 0), ctx);
    REQUIRE(dbl.size() == 1);
    CHECK(dbl[0].multiplicity == 2);
    CHECK(dbl[0].root.isZeroTag());
}

TEST_CASE("pullback branches") {
    auto ctx = Context::make(2);
    const auto bs = pullbackBall(kF, B(0, 0), ctx);
    REQUIRE(bs.branches.size() == 2);
    CHECK(bs.branches[0].ball == B(0, 1));
    CHECK(bs.branches[1].ball == B(1, 1));
    const auto deeper = pullbackBall(kF, B(0, 1), ctx);
    REQUIRE(deeper.branches.size() == 2);
    CHECK(deeper.branches[0].ball == B(0, 2));
    CHECK(deeper.branches[1].ball == B(1, 2));
    const RationalMap id(P({0, 1}), P({1}));
    const auto same = pullbackBall(id, B(3, 2), ctx);
    REQUIRE(same.branches.size() == 1);
    CHECK(same.branches[0].ball == B(3, 2));
    CHECK_THROWS_AS(pullbackBall(kF, B(0, 0), ctx, {Radius::fromExponent(1), std::nullopt}), Error);

    const RationalMap sq(P({0, 0, 1}), P({1}));
    const auto ramified = pullbackBall(sq, B(0, 0), ctx);
    REQUIRE(ramified.branches.size() == 1);
    CHECK(ramified.branches[0].ball == B(0, 0));
    CHECK(ramified.branches[0].degree == 2);
    CHECK_THROWS_AS(pullbackBall(sq, B(0, 0), ctx, {std::nullopt, Radius::one()}), Error);
}

TEST_CASE("constant norm on a ball") {
    const auto& d = kF.derivative();
    CHECK(constantNormOnBall(d.numerator, d.denominator, B(0, 0)).exponent() == -1);
    CHECK(constantNormOnBall(P({6}), P({1}), B(0, 0)).exponent() == 1);
    CHECK_THROWS_AS(constantNormOnBall(P({0, 1}), P({1}), B(0, 0)), Error);
}

TEST_CASE("nearest root distance") {
    CHECK(nearestRootDistance(P({-1, 2}), 0, 2)->exponent() == -1);
    CHECK(nearestRootDistance(P({0, 1}), 0, 2)->isZero());
    CHECK_FALSE(nearestRootDistance(P({5}), 0, 2).has_value());
}

TEST_CASE("root count properties") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> c(-20, 20);
    auto ctx2 = Context::make(2, 64);
    for (int i = 0; i < 150; ++i) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5}[i % 3];
        std::vector<mpq_class> co;
        for (int j = 0; j <= 3; ++j) co.emplace_back(c(rng));
        const Polynomial F = P(co);
        if (F.isZero()) continue;
        const mpq_class a(c(rng), 1);
        const mpq_class t(i % 4);
        CHECK(countRootsInBall(F, ClosedBall(a, t, p)) == countRootsInBall(taylorShift(F, a), ClosedBall(0, t, p)));
        oracle::Poly fo(co.begin(), co.end());
        oracle::trim(fo);
        CHECK(countRootsInBall(F, ClosedBall(0, 0, p)) == oracle::newtonPolygonUnitBallCount(fo, p));
    }
}

TEST_CASE("pullback partition and image consistency") {
    auto ctx = Context::make(3, 64);
    const RationalMap f(P({0, -1, 0, 1}), P({3}));
    const ClosedBall target = B(0, 0, 3);
    const auto bs = pullbackBall(f, target, ctx);
    for (std::size_t i = 0; i < bs.branches.size(); ++i) {
        CHECK(imageOfBall(f, bs.branches[i].ball) == target);
        for (std::size_t j = i + 1; j < bs.branches.size(); ++j)
            CHECK(bs.branches[i].ball.disjoint(bs.branches[j].ball));
    }
    // rational points of the target with a rational preimage lie in exactly one branch
    int seen = 0;
    for (long n = -300; n <= 300 && seen < 200; ++n) {
        const mpq_class z(n);
        const auto w = f.evaluate(z);
        if (!w || !target.contains(*w)) continue;
        ++seen;
        int hits = 0;
        for (const auto& br : bs.branches) hits += br.ball.contains(z) ? 1 : 0;
        CHECK(hits == 1);
    }
    CHECK(seen > 50);
}
