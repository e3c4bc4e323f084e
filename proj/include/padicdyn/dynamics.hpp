#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/ball.hpp"

namespace padicdyn {

/// Finite disjoint union of closed balls, kept sorted by (center, radius).
/// Generation k means the cover stands for Omega_k; parent links point into
/// the previous generation.
class BallCover {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BallCover() = default;
    /// Throws InvalidArgument when two balls coincide.
    BallCover(std::vector<ClosedBall> balls, unsigned long p, int generation = 0,
              std::vector<std::size_t> parents = {});

    const std::vector<ClosedBall>& balls() const noexcept { return balls_; }
    const ClosedBall& operator[](std::size_t i) const { return balls_[i]; }
    std::size_t size() const noexcept { return balls_.size(); }
    bool empty() const noexcept { return balls_.empty(); }
    unsigned long prime() const noexcept { return p_; }
    int generation() const noexcept { return generation_; }
    const std::vector<std::size_t>& parents() const noexcept { return parents_; }

    /// Index of a ball containing the point.
    std::optional<std::size_t> locate(const mpq_class& z) const;
    std::optional<std::size_t> locate(const PadicNumber& z) const;
    /// Index of a ball containing the given ball.
    std::optional<std::size_t> containing(const ClosedBall& ball) const;
    bool pairwiseDisjoint() const;
    /// True when every ball of `inner` lies in a ball of this cover.
    bool covers(const BallCover& inner) const;

    bool operator==(const BallCover& o) const { return balls_ == o.balls_; }

private:
    std::vector<ClosedBall> balls_;
    unsigned long p_ = 2;
    int generation_ = 0;
    std::vector<std::size_t> parents_;
    // radius exponent -> canonical center -> ball index
    std::map<mpq_class, std::map<mpq_class, std::size_t>> index_;
};

/// Smallest ball containing every ball of the cover, enlarged by one step
/// of p^Z.
ClosedBall enclosingBall(const BallCover& cover);

struct PeriodicPoint {
    PadicNumber point;
    int period = 1;  // minimal period
    Radius multiplierNorm;
    bool repelling() const { return multiplierNorm > Radius::one(); }
};

struct PeriodicSearch {
    std::vector<PeriodicPoint> points;
    /// Roots of f^q(z) = z in the search ball that are not Q_p-rational.
    int irrationalCount = 0;
};

/// All Q_p-rational solutions of f^q(z) = z in the search ball.
PeriodicSearch periodicPoints(const RationalMap& f, int q, const ClosedBall& searchBall, const ContextPtr& ctx,
                              long degreeCap = 4096);

/// |(f^q)'| at a cycle by the chain rule; InvalidArgument when the points
/// do not form a cycle at working precision.
Radius multiplierNorm(const RationalMap& f, const std::vector<PadicNumber>& cycle);

/// Unit resultant of the integrally normalized homogeneous pair.
bool goodReductionTest(const RationalMap& f, unsigned long p);

struct OmegaOptions {
    int depthCap = 20;
    bool merge = true;
};

/// Pullback-closed cover generated by the balls B_{s, mu} around the seeds.
BallCover buildOmega(const RationalMap& f, const std::vector<PadicNumber>& seeds, const Radius& mu,
                     const ContextPtr& ctx, const OmegaOptions& options = {});

/// Every branch of every ball lies in some ball of the cover.
bool isPullbackClosed(const RationalMap& f, const BallCover& cover, const ContextPtr& ctx);

/// The next generation f^{-1}(cover), with parent links.
BallCover pullbackCover(const RationalMap& f, const BallCover& cover, const ContextPtr& ctx);

/// Omega_0 .. Omega_k, each verified nested in its predecessor.
std::vector<BallCover> omegaSequence(const RationalMap& f, const BallCover& omega, int k, const ContextPtr& ctx,
                                     std::size_t memoryCap = std::size_t{1} << 20);

struct ExpansionWitness {
    Radius lambda;
    std::vector<Radius> derivativeNorms;  // |f'| on each cover ball
    std::optional<Radius> delta;
};

struct MembershipReport {
    bool member = false;
    std::optional<std::size_t> failingBall;
    std::optional<ErrorKind> failure;
    std::string reason;
    ExpansionWitness witness;
};

/// Decides whether f lies in N_{lambda, Omega}: |f'| >= lambda on every
/// ball, and the preimage of every ball stays inside the cover.
MembershipReport checkMembership(const RationalMap& f, const Radius& lambda, const BallCover& omega,
                                 const ContextPtr& ctx);

/// A repelling periodic point whose whole cycle lies in Omega.
PeriodicPoint findRepellingInOmega(const RationalMap& f, const BallCover& omega, int qMax, const ContextPtr& ctx);

struct Itinerary {
    std::vector<std::size_t> symbols;
    std::string code() const;
};

/// Indices of the cover balls visited by z, f(z), ..., f^{depth-1}(z).
Itinerary itinerary(const RationalMap& f, const PadicNumber& z, const BallCover& cover, int depth);

/// Points of Omega_depth reached by random descent through the branch tree.
std::vector<mpq_class> sampleCoverPoints(const RationalMap& f, const BallCover& omega, int depth, std::size_t count,
                                         std::uint64_t seed, const ContextPtr& ctx);

}  // namespace padicdyn
