#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "padicdyn/dynamics.hpp"

namespace padicdyn {

/// t such that min_{k>=2} |k|^{1/(k-1)} = p^{-t}; equals 1/(p-1).
mpq_class expansionConstantExponent(unsigned long p);

/// Polynomial in v whose roots are the finite critical values of f.
Polynomial criticalValuePolynomial(const RationalMap& f);

/// delta separating the cover from the critical points, critical values
/// and poles of f: one value-group step below the smallest distance.
Radius deltaFromSeparation(const RationalMap& f, const BallCover& cover);

/// mu = p^{-1/(p-1)} * delta.
Radius muFromDelta(const Radius& delta, unsigned long p);

/// max(|center|, radius) over the cover: Omega lies in B_{0, eta}.
Radius coverBoundingRadius(const BallCover& cover);

struct SupNormConstants {
    Radius M1, M2;    // sup of |f1|, |f2| on B_{0, eta}
    Radius M1p, M2p;  // sup of |f1'|, |f2'| on B_{0, eta}
    Radius m2;        // min of |f2| on Omega
    Radius MW;        // sup of |f1' f2 - f1 f2'| on B_{0, eta}
};

SupNormConstants supNormConstants(const RationalMap& f, const BallCover& omega, const Radius& eta);

/// Coefficient neighborhood of f: g = (f1 + sum e_i z^i)/(f2 + sum k_j z^j)
/// with |e_i| < p^-numerator[i] and |k_j| < p^-denominator[j] satisfies
/// sup_Omega |f - g| < r, sup_Omega |f' - g'| < s and |g2| = |f2| on Omega.
struct PerturbationBounds {
    std::vector<mpq_class> numerator;
    std::vector<mpq_class> denominator;
    /// The uncorrected published formulas, for comparison only.
    std::vector<mpq_class> literalNumerator;
    std::vector<mpq_class> literalDenominator;
    Radius r, s, eta;
    SupNormConstants constants;
    unsigned long p = 2;

    /// Coefficient differences of g against f (same normalization).
    bool admits(const RationalMap& f, const RationalMap& g) const;
};

PerturbationBounds perturbationBounds(const RationalMap& f, const BallCover& omega, const Radius& eta, const Radius& r,
                                      const Radius& s);

/// Bounds with r = mu(delta) and s = lambda, after re-checking membership
/// and delta-interiority.
PerturbationBounds certifyNeighborhood(const RationalMap& f, const Radius& lambda, const BallCover& omega,
                                       const Radius& delta, const ContextPtr& ctx);

/// sup over Omega of |f - g|, exact.
Radius supDifference(const RationalMap& f, const RationalMap& g, const BallCover& omega);

/// Direct check of the hypotheses needed to conjugate f and g on Omega:
/// g in N_{lambda, Omega} and sup_Omega |f - g| <= mu.
struct NeighborhoodCheck {
    bool inside = false;
    bool withinCoefficientBounds = false;
    std::optional<Radius> supDifference;
    std::string reason;
};
NeighborhoodCheck checkPerturbation(const RationalMap& f, const RationalMap& g, const BallCover& omega,
                                    const Radius& lambda, const Radius& mu, const PerturbationBounds* bounds,
                                    const ContextPtr& ctx);

/// Random maps inside the bounds, with coefficient differences drawn just
/// past the allowed valuations; reproducible from the seed.
std::vector<RationalMap> samplePerturbations(const RationalMap& f, const PerturbationBounds& bounds, std::size_t count,
                                             std::uint64_t seed);

/// Random rational points of the cover balls.
std::vector<mpq_class> samplePointsInCover(const BallCover& cover, std::size_t count, std::uint64_t seed,
                                           long extraDigits = 24);

/// Sampled maps are in N_{lambda, Omega} and beat r and s at sampled points.
struct BoundSamplingReport {
    std::size_t maps = 0;
    std::size_t failures = 0;
    std::string firstFailure;
    bool pass() const noexcept { return failures == 0; }
};
BoundSamplingReport sampleBoundSoundness(const RationalMap& f, const PerturbationBounds& bounds, const BallCover& omega,
                                         const Radius& lambda, std::size_t maps, std::size_t points,
                                         std::uint64_t seed, const ContextPtr& ctx);

struct ConjugacyTrace {
    mpq_class z;
    std::vector<PadicNumber> iterates;  // h_0(z) .. h_k(z)
    std::vector<Radius> differences;    // |h_{l+1}(z) - h_l(z)|
    Radius errorBound;                  // mu / lambda^k
};

/// h_{l+1}(z) = the root of g(w) = h_l(f(z)) in B_{z, mu/|g'(z)|}.
class ConjugacySolver {
public:
    ConjugacySolver(RationalMap f, RationalMap g, BallCover omega, Radius mu, Radius lambda, const ContextPtr& ctx,
                    int maxDepth);

    const ContextPtr& context() const noexcept { return ctx_; }
    const RationalMap& f() const noexcept { return f_; }
    const RationalMap& g() const noexcept { return g_; }

    /// The unique solution of g(w) = target in B_{z, mu/|g'(z)|}.
    PadicNumber step(const PadicNumber& z, const PadicNumber& target) const;
    /// h_level(z); OrbitEscapedOmega when z is not in Omega_level.
    PadicNumber h(int level, const PadicNumber& z);
    PadicNumber h(int level, const mpq_class& z) { return h(level, PadicNumber::fromRational(z, ctx_)); }

    ConjugacyTrace trace(const mpq_class& z, int depth);
    /// mu / lambda^depth.
    Radius errorBound(int depth) const;

private:
    PadicNumber compute(int level, const std::vector<PadicNumber>& orbit, std::size_t j);

    RationalMap f_, g_;
    BallCover omega_;
    Radius mu_, lambda_;
    ContextPtr ctx_;
    std::map<std::tuple<int, mpq_class, long>, PadicNumber> memo_;
};

/// Working precision large enough for the conjugacy to the given depth.
long conjugacyPrecision(long basePrecision, const Radius& mu, const Radius& lambda, int depth);

struct ConjugateResult {
    PadicNumber value;
    Radius errorBound;
};
ConjugateResult conjugatePoint(ConjugacySolver& solver, const mpq_class& z, int depth);

struct SemiconjugacySample {
    mpq_class z;
    Radius residual;  // rho(h_k(f z), g(h_k z))
    bool pass = false;
};
struct SemiconjugacyReport {
    std::vector<SemiconjugacySample> samples;
    Radius bound;
    bool pass = false;
};
SemiconjugacyReport verifySemiconjugacy(ConjugacySolver& solver, const std::vector<mpq_class>& points, int depth);

enum class CertificateStatus { Certified, NotCertified };

struct CertifyConfig {
    int qMax = 6;
    int depthCap = 20;
};

struct StabilityCertificate {
    explicit StabilityCertificate(RationalMap map) : f(std::move(map)) {}

    RationalMap f;
    unsigned long p = 2;
    long precision = 128;
    CertifyConfig config;
    CertificateStatus status = CertificateStatus::NotCertified;
    std::string reason;  // failing stage when not certified
    std::string detail;
    std::optional<mpq_class> lambdaExponent, deltaExponent, muExponent, etaExponent;
    BallCover omega;
    std::vector<Radius> derivativeNorms;
    std::optional<PerturbationBounds> bounds;
    std::optional<PeriodicPoint> seed;
    std::vector<std::string> notes;

    bool certified() const noexcept { return status == CertificateStatus::Certified; }
};

StabilityCertificate jStabilityCertificate(const RationalMap& f, const ContextPtr& ctx, const CertifyConfig& config = {});

/// Notes attached to every certificate about corrected source formulas.
std::vector<std::string> certificateNotes();

}  // namespace padicdyn
