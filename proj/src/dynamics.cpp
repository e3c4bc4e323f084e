#include "padicdyn/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace padicdyn {

namespace {

long ceilOf(const mpq_class& t) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return c.get_si();
}

bool containedInAny(const std::vector<ClosedBall>& balls, const ClosedBall& b) {
    return std::any_of(balls.begin(), balls.end(), [&](const ClosedBall& c) { return c.contains(b); });
}

}  // namespace

// -------------------------------------------------------------- BallCover

BallCover::BallCover(std::vector<ClosedBall> balls, unsigned long p, int generation, std::vector<std::size_t> parents)
    : p_(p), generation_(generation) {
    if (parents.empty()) parents.assign(balls.size(), npos);
    require(parents.size() == balls.size(), ErrorKind::InvalidArgument, "parent links do not match balls");
    std::vector<std::size_t> order(balls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return balls[a] < balls[b]; });
    balls_.reserve(balls.size());
    parents_.reserve(balls.size());
    for (std::size_t i : order) {
        require(balls[i].prime() == p, ErrorKind::ContextMismatch, "ball over a different prime");
        balls_.push_back(balls[i]);
        parents_.push_back(parents[i]);
    }
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        auto& group = index_[balls_[i].radiusExponent()];
        if (!group.emplace(balls_[i].center(), i).second)
            fail(ErrorKind::InvalidArgument, "ball " + balls_[i].toString() + " listed twice");
    }
}

std::optional<std::size_t> BallCover::locate(const mpq_class& z) const {
    for (const auto& [t, group] : index_) {
        auto it = group.find(ClosedBall::canonicalCenter(z, ceilOf(t), p_));
        if (it != group.end()) return it->second;
    }
    return std::nullopt;
}

std::optional<std::size_t> BallCover::locate(const PadicNumber& z) const {
    require(z.prime() == p_, ErrorKind::ContextMismatch, "point over a different prime");
    const mpq_class q = z.truncation();
    for (const auto& [t, group] : index_) {
        const long T = ceilOf(t);
        if (!z.isExactZero() && z.absolutePrecision() < T)
            fail(ErrorKind::InsufficientPrecision, "point " + z.toString() + " too coarse to locate in the cover");
        auto it = group.find(ClosedBall::canonicalCenter(q, T, p_));
        if (it != group.end()) return it->second;
    }
    return std::nullopt;
}

std::optional<std::size_t> BallCover::containing(const ClosedBall& ball) const {
    for (const auto& [t, group] : index_) {
        if (t > ball.radiusExponent()) break;
        auto it = group.find(ClosedBall::canonicalCenter(ball.center(), ceilOf(t), p_));
        if (it != group.end()) return it->second;
    }
    return std::nullopt;
}

bool BallCover::pairwiseDisjoint() const {
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        for (const auto& [t, group] : index_) {
            if (t > balls_[i].radiusExponent()) break;
            auto it = group.find(ClosedBall::canonicalCenter(balls_[i].center(), ceilOf(t), p_));
            if (it != group.end() && it->second != i) return false;
        }
    }
    return true;
}

bool BallCover::covers(const BallCover& inner) const {
    return std::all_of(inner.balls().begin(), inner.balls().end(),
                       [&](const ClosedBall& b) { return containing(b).has_value(); });
}

ClosedBall enclosingBall(const BallCover& cover) {
    require(!cover.empty(), ErrorKind::InvalidArgument, "empty cover");
    const unsigned long p = cover.prime();
    const mpq_class& c0 = cover[0].center();
    mpq_class t = cover[0].radiusExponent();
    for (const auto& b : cover.balls()) {
        t = std::min(t, b.radiusExponent());
        if (b.center() != c0) t = std::min(t, mpq_class(valuation(b.center() - c0, p)));
    }
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return ClosedBall(c0, mpq_class(fl - 1), p);
}

// ------------------------------------------------------- periodic points

Radius multiplierNorm(const RationalMap& f, const std::vector<PadicNumber>& cycle) {
    require(!cycle.empty(), ErrorKind::InvalidArgument, "empty cycle");
    Radius product = Radius::one();
    for (std::size_t j = 0; j < cycle.size(); ++j) {
        const PadicNumber& z = cycle[j];
        const ProjectivePoint w = f.evaluate(ProjectivePoint(z), z.context());
        const PadicNumber& next = cycle[(j + 1) % cycle.size()];
        if (w.isInfinity() || !w.finite().congruent(next))
            fail(ErrorKind::InvalidArgument, "f(" + z.toString() + ") is not " + next.toString());
        product = product * f.derivativeAt(z).resolvedNorm();
    }
    return product;
}

namespace {

// The forward orbit z, f(z), ..., f^{m-1}(z) if it closes up with period m.
std::optional<std::vector<PadicNumber>> cycleOf(const RationalMap& f, const PadicNumber& z, int m) {
    std::vector<PadicNumber> orbit{z};
    PadicNumber w = z;
    for (int j = 0; j < m; ++j) {
        const ProjectivePoint next = f.evaluate(ProjectivePoint(w), z.context());
        if (next.isInfinity()) return std::nullopt;
        w = next.finite();
        if (j + 1 < m) orbit.push_back(w);
    }
    if (!w.congruent(z)) return std::nullopt;
    return orbit;
}

}  // namespace

PeriodicSearch periodicPoints(const RationalMap& f, int q, const ClosedBall& searchBall, const ContextPtr& ctx,
                              long degreeCap) {
    require(q >= 1, ErrorKind::InvalidArgument, "period must be >= 1");
    const RationalMap g = f.iterate(q, degreeCap);
    const Polynomial fixed = g.numerator() - Polynomial::variable() * g.denominator();
    require(!fixed.isZero(), ErrorKind::InvalidArgument, "f^" + std::to_string(q) + " is the identity");
    const RationalRootSearch search = findRationalRoots(fixed, searchBall, ctx);
    PeriodicSearch out;
    out.irrationalCount = search.newtonCount - search.rationalCount();
    for (const auto& r : search.roots) {
        for (int m = 1; m <= q; ++m) {
            if (q % m != 0) continue;
            auto orbit = cycleOf(f, r.root, m);
            if (!orbit) continue;
            Radius mult;
            try {
                mult = multiplierNorm(f, *orbit);
            } catch (const Error&) {
                mult = f.iterate(m, degreeCap).derivativeAt(r.root).resolvedNorm();
            }
            out.points.push_back({r.root, m, mult});
            break;
        }
    }
    return out;
}

bool goodReductionTest(const RationalMap& f, unsigned long p) {
    const int d = f.degree();
    const mpq_class r = resultant(f.numerator(), f.denominator(), d, d);
    return r != 0 && valuation(r, p) == 0;
}

// ------------------------------------------------------------------ Omega

bool isPullbackClosed(const RationalMap& f, const BallCover& cover, const ContextPtr& ctx) {
    try {
        for (const auto& ball : cover.balls())
            for (const auto& br : pullbackBall(f, ball, ctx).branches)
                if (!cover.containing(br.ball)) return false;
    } catch (const Error&) {
        return false;
    }
    return true;
}

namespace {

// Replace each complete set of p sibling balls by their common parent.
std::vector<ClosedBall> mergeSiblings(const std::vector<ClosedBall>& balls, unsigned long p) {
    std::map<std::pair<long, mpq_class>, std::vector<std::size_t>> families;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const long T = balls[i].pointSetExponent();
        families[{T, ClosedBall::canonicalCenter(balls[i].center(), T - 1, p)}].push_back(i);
    }
    std::vector<ClosedBall> out;
    std::vector<bool> used(balls.size(), false);
    for (const auto& [key, members] : families) {
        if (members.size() != p) continue;
        out.emplace_back(key.second, mpq_class(key.first - 1), p);
        for (std::size_t i : members) used[i] = true;
    }
    for (std::size_t i = 0; i < balls.size(); ++i)
        if (!used[i]) out.push_back(balls[i]);
    // A merged parent may swallow balls of other sizes.
    std::vector<ClosedBall> pruned;
    for (std::size_t i = 0; i < out.size(); ++i) {
        bool inside = false;
        for (std::size_t j = 0; j < out.size() && !inside; ++j)
            inside = j != i && !(out[j] == out[i]) && out[j].contains(out[i]);
        if (!inside) pruned.push_back(out[i]);
    }
    return pruned;
}

}  // namespace

BallCover buildOmega(const RationalMap& f, const std::vector<PadicNumber>& seeds, const Radius& mu,
                     const ContextPtr& ctx, const OmegaOptions& options) {
    require(!seeds.empty(), ErrorKind::InvalidArgument, "no seeds for Omega");
    require(!mu.isZero(), ErrorKind::InvalidArgument, "mu must be positive");
    const unsigned long p = ctx->prime();
    std::vector<ClosedBall> balls;
    for (const auto& s : seeds) {
        ClosedBall b(s, mu.exponent());
        if (!containedInAny(balls, b)) balls.push_back(std::move(b));
    }
    PullbackOptions pull;
    pull.mu = mu;
    pull.derivativeFloor = Radius::one();
    std::vector<std::size_t> frontier(balls.size());
    std::iota(frontier.begin(), frontier.end(), std::size_t{0});
    for (int generation = 0;; ++generation) {
        std::vector<ClosedBall> added;
        for (std::size_t idx : frontier) {
            const BranchSystem bs = pullbackBall(f, balls[idx], ctx, pull);
            for (const auto& br : bs.branches) {
                if (containedInAny(balls, br.ball) || containedInAny(added, br.ball)) continue;
                added.emplace_back(br.root, mu.exponent());
            }
        }
        if (added.empty()) break;
        if (generation >= options.depthCap)
            fail(ErrorKind::SaturationNotReached,
                 "cover not pullback-closed after " + std::to_string(options.depthCap) + " generations");
        frontier.clear();
        for (auto& b : added) {
            frontier.push_back(balls.size());
            balls.push_back(std::move(b));
        }
    }
    BallCover cover(balls, p);
    if (!options.merge) return cover;
    for (;;) {
        std::vector<ClosedBall> merged = mergeSiblings(cover.balls(), p);
        if (merged.size() == cover.size()) break;
        BallCover candidate(std::move(merged), p);
        if (!isPullbackClosed(f, candidate, ctx)) break;
        cover = std::move(candidate);
    }
    return cover;
}

BallCover pullbackCover(const RationalMap& f, const BallCover& cover, const ContextPtr& ctx) {
    std::vector<ClosedBall> balls;
    std::vector<std::size_t> parents;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (auto& br : pullbackBall(f, cover[i], ctx).branches) {
            balls.push_back(std::move(br.ball));
            parents.push_back(i);
        }
    }
    return BallCover(std::move(balls), cover.prime(), cover.generation() + 1, std::move(parents));
}

std::vector<BallCover> omegaSequence(const RationalMap& f, const BallCover& omega, int k, const ContextPtr& ctx,
                                     std::size_t memoryCap) {
    require(k >= 0, ErrorKind::InvalidArgument, "negative depth");
    std::vector<BallCover> seq{omega};
    for (int m = 0; m < k; ++m) {
        const BallCover& prev = seq.back();
        if (prev.size() * static_cast<std::size_t>(f.degree()) > memoryCap)
            fail(ErrorKind::MemoryCapExceeded, "Omega_" + std::to_string(m + 1) + " would exceed " +
                                                   std::to_string(memoryCap) + " balls");
        BallCover next = pullbackCover(f, prev, ctx);
        if (!prev.covers(next))
            fail(ErrorKind::InvalidArgument, "Omega_" + std::to_string(m + 1) + " is not nested in Omega_" +
                                                 std::to_string(m));
        if (!next.pairwiseDisjoint())
            fail(ErrorKind::BranchOverlap, "Omega_" + std::to_string(m + 1) + " has overlapping balls");
        seq.push_back(std::move(next));
    }
    return seq;
}

// ------------------------------------------------------------- membership

MembershipReport checkMembership(const RationalMap& f, const Radius& lambda, const BallCover& omega,
                                 const ContextPtr& ctx) {
    require(lambda > Radius::one(), ErrorKind::InvalidArgument, "lambda must exceed 1");
    require(!omega.empty(), ErrorKind::InvalidArgument, "empty cover");
    MembershipReport report;
    report.witness.lambda = lambda;
    auto reject = [&](std::size_t i, ErrorKind kind, std::string why) {
        report.member = false;
        report.failingBall = i;
        report.failure = kind;
        report.reason = std::move(why);
        return report;
    };
    const DerivativeData& df = f.derivative();
    for (std::size_t i = 0; i < omega.size(); ++i) {
        Radius n;
        try {
            n = constantNormOnBall(df.numerator, df.denominator, omega[i]);
        } catch (const Error& e) {
            return reject(i, e.kind(), e.what());
        }
        if (n < lambda)
            return reject(i, ErrorKind::ExpansionViolated,
                          "|f'| = " + n.toString(omega.prime()) + " on " + omega[i].toString() + " is below lambda");
        report.witness.derivativeNorms.push_back(n);
    }
    for (std::size_t i = 0; i < omega.size(); ++i) {
        try {
            for (const auto& br : pullbackBall(f, omega[i], ctx).branches)
                if (!omega.containing(br.ball))
                    return reject(i, ErrorKind::EscapedCover,
                                  "preimage branch " + br.ball.toString() + " leaves the cover");
        } catch (const Error& e) {
            return reject(i, e.kind(), e.what());
        }
    }
    report.member = true;
    return report;
}

PeriodicPoint findRepellingInOmega(const RationalMap& f, const BallCover& omega, int qMax, const ContextPtr& ctx) {
    require(!omega.empty(), ErrorKind::InvalidArgument, "empty cover");
    const ClosedBall search = enclosingBall(omega);
    for (int q = 1; q <= qMax; ++q) {
        PeriodicSearch found = periodicPoints(f, q, search, ctx);
        for (const auto& pt : found.points) {
            if (pt.period != q || !pt.repelling()) continue;
            auto orbit = cycleOf(f, pt.point, q);
            if (!orbit) continue;
            bool inside = true;
            for (const auto& w : *orbit) inside = inside && omega.locate(w).has_value();
            if (!inside) continue;
            if (multiplierNorm(f, *orbit) > Radius::one()) return pt;
        }
    }
    fail(ErrorKind::NotFoundWithinPeriodCap,
         "no repelling cycle of period <= " + std::to_string(qMax) + " inside the cover");
}

// -------------------------------------------------------------- itinerary

std::string Itinerary::code() const {
    const bool digits = std::all_of(symbols.begin(), symbols.end(), [](std::size_t s) { return s < 10; });
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (!digits && i > 0) out += ',';
        out += std::to_string(symbols[i]);
    }
    return out;
}

Itinerary itinerary(const RationalMap& f, const PadicNumber& z, const BallCover& cover, int depth) {
    Itinerary out;
    PadicNumber w = z;
    for (int j = 0; j < depth; ++j) {
        const auto idx = cover.locate(w);
        if (!idx) fail(ErrorKind::EscapedCover, "f^" + std::to_string(j) + "(z) = " + w.toString() + " left the cover");
        out.symbols.push_back(*idx);
        if (j + 1 == depth) break;
        const ProjectivePoint next = f.evaluate(ProjectivePoint(w), w.context());
        if (next.isInfinity()) fail(ErrorKind::EscapedCover, "orbit reached infinity");
        w = next.finite();
    }
    return out;
}

std::vector<mpq_class> sampleCoverPoints(const RationalMap& f, const BallCover& omega, int depth, std::size_t count,
                                         std::uint64_t seed, const ContextPtr& ctx) {
    require(!omega.empty(), ErrorKind::InvalidArgument, "empty cover");
    std::mt19937_64 rng(seed);
    std::vector<mpq_class> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        ClosedBall b = omega[std::uniform_int_distribution<std::size_t>(0, omega.size() - 1)(rng)];
        for (int level = 0; level < depth; ++level) {
            const BranchSystem bs = pullbackBall(f, b, ctx);
            require(!bs.branches.empty(), ErrorKind::ExtensionFieldRequired, "ball without preimages");
            b = bs.branches[std::uniform_int_distribution<std::size_t>(0, bs.branches.size() - 1)(rng)].ball;
        }
        out.push_back(b.center());
    }
    return out;
}

}  // namespace padicdyn
