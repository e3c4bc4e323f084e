#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/errors.hpp"

namespace padicdyn {

bool isPrime(unsigned long n);

/// p-adic valuation of a nonzero integer / rational.
long valuation(const mpz_class& n, unsigned long p);
long valuation(const mpq_class& q, unsigned long p);

/// Residue characteristic and absolute precision cap shared by a family of
/// p-adic numbers. Numbers from contexts with different (p, N) never mix.
class Context {
public:
    static std::shared_ptr<const Context> make(unsigned long prime, long precision = 128);

    unsigned long prime() const noexcept { return prime_; }
    long precision() const noexcept { return precision_; }
    const mpz_class& primeZ() const noexcept { return primeZ_; }

    /// p^k for k >= 0.
    mpz_class power(long k) const;

    bool sameAs(const Context& other) const noexcept {
        return prime_ == other.prime_ && precision_ == other.precision_;
    }

private:
    Context(unsigned long prime, long precision);

    unsigned long prime_;
    long precision_;
    mpz_class primeZ_;
    std::vector<mpz_class> powers_;
};

using ContextPtr = std::shared_ptr<const Context>;

/// A radius p^(-t) of the value group p^Q, stored as the exponent t.
/// The zero radius has exponent +infinity. Comparison follows radius order,
/// so a larger exponent compares smaller.
class Radius {
public:
    Radius() = default;  // radius 1

    static Radius zero() { Radius r; r.zero_ = true; return r; }
    static Radius one() { return Radius(); }
    static Radius fromExponent(mpq_class exponent) {
        Radius r;
        r.exponent_ = std::move(exponent);
        r.exponent_.canonicalize();
        return r;
    }

    bool isZero() const noexcept { return zero_; }
    const mpq_class& exponent() const;

    Radius operator*(const Radius& other) const;
    Radius operator/(const Radius& other) const;
    Radius pow(long k) const;

    /// Smallest radius in p^Z whose Q_p point set matches this radius.
    Radius pointSetRadius() const;

    bool operator==(const Radius& other) const;
    std::strong_ordering operator<=>(const Radius& other) const;

    /// "inf" for the zero radius, otherwise the exponent as "a/b".
    std::string exponentString() const;
    /// "p^e" with e = -exponent, or "0".
    std::string toString(unsigned long p) const;

private:
    bool zero_ = false;
    mpq_class exponent_ = 0;
};

/// An element of Q_p at capped absolute precision. The valuation is exact
/// whenever the number is distinguishable from zero; otherwise the number
/// is the +INFINITY tag, known only to be divisible by p^precision.
/// Precision is tracked per value so that digit loss from division by
/// non-units is never hidden.
class PadicNumber {
public:
    static PadicNumber exactZero(ContextPtr ctx);
    static PadicNumber indistinguishableZero(ContextPtr ctx, long absolutePrecision);
    static PadicNumber fromRational(const mpq_class& q, ContextPtr ctx);
    static PadicNumber fromRational(long numerator, long denominator, ContextPtr ctx);
    static PadicNumber fromInteger(long n, ContextPtr ctx) { return fromRational(n, 1, std::move(ctx)); }

    const ContextPtr& context() const noexcept { return ctx_; }
    unsigned long prime() const noexcept { return ctx_->prime(); }

    bool isExactZero() const noexcept { return kind_ == Kind::ExactZero; }
    /// True for both the exact zero and the indistinguishable-zero tag.
    bool isZeroTag() const noexcept { return kind_ != Kind::Unit; }

    std::optional<long> valuation() const;
    /// Lower bound on the valuation; exact when distinguishable from zero.
    long valuationLowerBound() const noexcept;
    long absolutePrecision() const noexcept { return prec_; }
    const mpz_class& unit() const noexcept { return unit_; }

    /// |x| as a radius; the +INFINITY tag maps to radius 0.
    Radius norm() const;
    /// |x|, throwing InsufficientPrecision for an unresolved value.
    Radius resolvedNorm() const;

    PadicNumber operator+(const PadicNumber& y) const;
    PadicNumber operator-(const PadicNumber& y) const;
    PadicNumber operator-() const;
    PadicNumber operator*(const PadicNumber& y) const;
    PadicNumber operator/(const PadicNumber& y) const;

    PadicNumber withPrecision(long absolutePrecision) const;

    /// The representative unit * p^valuation as an exact rational.
    mpq_class truncation() const;

    /// Same context, same digits, same precision.
    bool identical(const PadicNumber& other) const;
    /// Difference is zero at the common precision.
    bool congruent(const PadicNumber& other) const;

    std::string toString() const;

    static constexpr long kExactPrecision = (1L << 60);

private:
    enum class Kind { ExactZero, Zero, Unit };

    PadicNumber(ContextPtr ctx, Kind kind, long val, long prec, mpz_class unit);
    void checkContext(const PadicNumber& y) const;
    static PadicNumber normalized(ContextPtr ctx, mpz_class scaled, long scale, long prec);

    ContextPtr ctx_;
    Kind kind_ = Kind::ExactZero;
    long val_ = 0;
    long prec_ = kExactPrecision;
    mpz_class unit_ = 0;
};

/// A point of P^1(Q_p): a p-adic number or infinity.
class ProjectivePoint {
public:
    ProjectivePoint(PadicNumber z) : finite_(std::move(z)) {}  // NOLINT(google-explicit-constructor)
    static ProjectivePoint infinity() { return ProjectivePoint(); }

    bool isInfinity() const noexcept { return !finite_.has_value(); }
    const PadicNumber& finite() const;

    std::string toString() const { return isInfinity() ? "inf" : finite_->toString(); }

private:
    ProjectivePoint() = default;
    std::optional<PadicNumber> finite_;
};

/// The chordal metric on P^1.
Radius chordalDistance(const ProjectivePoint& z, const ProjectivePoint& w);

}  // namespace padicdyn
