#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicdyn/padic.hpp"
#include "padicdyn/poly.hpp"

namespace padicdyn {

/// Closed ball B_{c, p^(-t)} of C_p with a Q_p-rational center. The center
/// is stored canonically as an exact rational: the p-adic expansion of any
/// point of the ball truncated at absolute precision ceil(t). Two balls are
/// equal iff their radii and canonical centers agree.
///
/// Counts and images are C_p statements; the ball's Q_p point set is the
/// ball of radius p^(-ceil t).
class ClosedBall {
public:
    ClosedBall(const mpq_class& center, const mpq_class& radiusExponent, unsigned long p);
    ClosedBall(const PadicNumber& center, const mpq_class& radiusExponent);
    ClosedBall(const mpq_class& center, const Radius& radius, unsigned long p);

    const mpq_class& center() const noexcept { return center_; }
    const mpq_class& radiusExponent() const noexcept { return t_; }
    Radius radius() const { return Radius::fromExponent(t_); }
    unsigned long prime() const noexcept { return p_; }
    /// ceil(t): the center is a residue modulo p^ceil(t).
    long pointSetExponent() const;

    bool contains(const mpq_class& z) const;
    /// InsufficientPrecision when z is not known far enough to decide.
    bool contains(const PadicNumber& z) const;
    bool contains(const ClosedBall& inner) const;
    bool disjoint(const ClosedBall& other) const;

    /// Q_p subdivision: the p balls of radius p^-(ceil(t)+1) when t is an
    /// integer, or the single ball of radius p^-ceil(t) otherwise.
    std::vector<ClosedBall> children() const;

    bool operator==(const ClosedBall& o) const { return t_ == o.t_ && center_ == o.center_; }
    /// Center value, then radius exponent.
    bool operator<(const ClosedBall& o) const;

    std::string toString() const;

    /// Canonical representative of z modulo p^T.
    static mpq_class canonicalCenter(const mpq_class& z, long T, unsigned long p);

private:
    mpq_class center_;
    mpq_class t_;
    unsigned long p_;
};

/// The index l of the dominant term |a_l| r^l (largest index on ties).
struct MaximalTermIndex {
    int l = 0;
    Radius achievedNorm;
};

MaximalTermIndex maximalTermIndex(const std::vector<PadicNumber>& coeffs, const Radius& r);
MaximalTermIndex maximalTermIndex(const Polynomial& f, const Radius& r, unsigned long p);

/// Number of roots of F in B over C_p, counted with multiplicity.
int countRootsInBall(const Polynomial& f, const ClosedBall& ball);
int countRootsInBall(const PadicPolynomial& f, const ClosedBall& ball);

/// The distance from the ball center to the nearest root of F over C_p
/// (radius 0 if the center is a root, +inf exponent never occurs; nullopt
/// when F has no roots at all).
std::optional<Radius> nearestRootDistance(const Polynomial& f, const mpq_class& center, unsigned long p);

/// f(B) for a pole-free ball (over C_p), with the dominant index of the
/// expansion of f - f(center).
struct BallImage {
    ClosedBall ball;
    int l = 0;
};
BallImage imageOfBallWithIndex(const RationalMap& f, const ClosedBall& ball);
ClosedBall imageOfBall(const RationalMap& f, const ClosedBall& ball);

/// Newton iteration from z0. Requires |F(z0)| < |F'(z0)|^2.
PadicNumber henselLift(const PadicPolynomial& f, const PadicNumber& z0, long targetPrecision);
PadicNumber henselLift(const Polynomial& f, const PadicNumber& z0, long targetPrecision);

struct RootWithMultiplicity {
    PadicNumber root;
    int multiplicity = 1;
};

/// All Q_p-rational roots in B together with the C_p Newton count; never
/// throws for irrational roots.
struct RationalRootSearch {
    std::vector<RootWithMultiplicity> roots;
    int newtonCount = 0;
    int rationalCount() const;
};
RationalRootSearch findRationalRoots(const Polynomial& f, const ClosedBall& ball, const ContextPtr& ctx);

/// Like findRationalRoots, but ExtensionFieldRequired when some root of F in
/// B is not Q_p-rational.
std::vector<RootWithMultiplicity> rootsInBall(const Polynomial& f, const ClosedBall& ball, const ContextPtr& ctx);

/// Smallest ball B_{0, p^-T} (T integer) containing every root of F.
ClosedBall rootBoundBall(const Polynomial& f, unsigned long p);

/// Preimage branches of a ball: f^{-1}(B) = disjoint union of B_{z_k, r/|f'(z_k)|}
/// away from critical points. With a derivative floor every branch must be
/// unramified; without one, ramified components are returned with their
/// local degree.
struct Branch {
    PadicNumber root;
    ClosedBall ball;
    Radius derivativeNorm;  // zero at a multiple root
    int degree = 1;         // local degree of f on the branch
};
struct BranchSystem {
    ClosedBall target;
    std::vector<Branch> branches;
};

struct PullbackOptions {
    std::optional<Radius> mu;
    std::optional<Radius> derivativeFloor;
};

BranchSystem pullbackBall(const RationalMap& f, const ClosedBall& ball, const ContextPtr& ctx,
                          const PullbackOptions& options = {});

/// |num/den| on a ball where neither has zeros; ZeroOrPoleInBall otherwise.
Radius constantNormOnBall(const Polynomial& num, const Polynomial& den, const ClosedBall& ball);
Radius constantNormOnBall(const RationalMap& f, const ClosedBall& ball);

}  // namespace padicdyn
