#include "padicdyn/padic.hpp"

#include <algorithm>

namespace padicdyn {

std::string_view errorKindName(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ContextMismatch: return "ContextMismatch";
        case ErrorKind::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
        case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorKind::BasinConditionViolated: return "BasinConditionViolated";
        case ErrorKind::ExtensionFieldRequired: return "ExtensionFieldRequired";
        case ErrorKind::PoleInBall: return "PoleInBall";
        case ErrorKind::ZeroOrPoleInBall: return "ZeroOrPoleInBall";
        case ErrorKind::CriticalValueInBall: return "CriticalValueInBall";
        case ErrorKind::PreimageAtInfinity: return "PreimageAtInfinity";
        case ErrorKind::RadiusExceedsMu: return "RadiusExceedsMu";
        case ErrorKind::BranchOverlap: return "BranchOverlap";
        case ErrorKind::BranchImageMismatch: return "BranchImageMismatch";
        case ErrorKind::ExpansionViolated: return "ExpansionViolated";
        case ErrorKind::SaturationNotReached: return "SaturationNotReached";
        case ErrorKind::MemoryCapExceeded: return "MemoryCapExceeded";
        case ErrorKind::NotFoundWithinPeriodCap: return "NotFoundWithinPeriodCap";
        case ErrorKind::EscapedCover: return "EscapedCover";
        case ErrorKind::CriticalPointMeetsCover: return "CriticalPointMeetsCover";
        case ErrorKind::UniquenessViolation: return "UniquenessViolation";
        case ErrorKind::OrbitEscapedOmega: return "OrbitEscapedOmega";
        case ErrorKind::GOutsideCertifiedNeighborhood: return "GOutsideCertifiedNeighborhood";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool isPrime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long valuation(const mpz_class& n, unsigned long p) {
    require(n != 0, ErrorKind::InvalidArgument, "valuation of zero");
    mpz_class rest;
    mpz_class pz(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long valuation(const mpq_class& q, unsigned long p) {
    require(q != 0, ErrorKind::InvalidArgument, "valuation of zero");
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

// ---------------------------------------------------------------- Context

Context::Context(unsigned long prime, long precision)
    : prime_(prime), precision_(precision), primeZ_(prime) {
    const long cached = 4 * precision + 8;
    powers_.reserve(static_cast<std::size_t>(cached));
    mpz_class acc = 1;
    for (long k = 0; k < cached; ++k) {
        powers_.push_back(acc);
        acc *= primeZ_;
    }
}

std::shared_ptr<const Context> Context::make(unsigned long prime, long precision) {
    require(isPrime(prime), ErrorKind::InvalidArgument, "p = " + std::to_string(prime) + " is not prime");
    require(precision >= 1, ErrorKind::InvalidArgument, "precision must be >= 1");
    return std::shared_ptr<const Context>(new Context(prime, precision));
}

mpz_class Context::power(long k) const {
    require(k >= 0, ErrorKind::InvalidArgument, "negative power");
    if (static_cast<std::size_t>(k) < powers_.size()) return powers_[static_cast<std::size_t>(k)];
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), primeZ_.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

// ----------------------------------------------------------------- Radius

const mpq_class& Radius::exponent() const {
    require(!zero_, ErrorKind::InvalidArgument, "zero radius has no finite exponent");
    return exponent_;
}

Radius Radius::operator*(const Radius& other) const {
    if (zero_ || other.zero_) return zero();
    return fromExponent(exponent_ + other.exponent_);
}

Radius Radius::operator/(const Radius& other) const {
    require(!other.zero_, ErrorKind::InvalidArgument, "division by zero radius");
    if (zero_) return zero();
    return fromExponent(exponent_ - other.exponent_);
}

Radius Radius::pow(long k) const {
    if (zero_) {
        require(k > 0, ErrorKind::InvalidArgument, "non-positive power of zero radius");
        return zero();
    }
    return fromExponent(exponent_ * k);
}

Radius Radius::pointSetRadius() const {
    if (zero_) return zero();
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), exponent_.get_num_mpz_t(), exponent_.get_den_mpz_t());
    return fromExponent(mpq_class(c));
}

bool Radius::operator==(const Radius& other) const {
    if (zero_ || other.zero_) return zero_ == other.zero_;
    return exponent_ == other.exponent_;
}

std::strong_ordering Radius::operator<=>(const Radius& other) const {
    if (zero_ && other.zero_) return std::strong_ordering::equal;
    if (zero_) return std::strong_ordering::less;
    if (other.zero_) return std::strong_ordering::greater;
    const int c = cmp(exponent_, other.exponent_);
    if (c == 0) return std::strong_ordering::equal;
    return c > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Radius::exponentString() const { return zero_ ? "inf" : exponent_.get_str(); }

std::string Radius::toString(unsigned long p) const {
    if (zero_) return "0";
    const mpq_class e = -exponent_;
    return std::to_string(p) + "^" + (e.get_den() == 1 ? e.get_str() : "(" + e.get_str() + ")");
}

// ------------------------------------------------------------ PadicNumber

PadicNumber::PadicNumber(ContextPtr ctx, Kind kind, long val, long prec, mpz_class unit)
    : ctx_(std::move(ctx)), kind_(kind), val_(val), prec_(prec), unit_(std::move(unit)) {}

PadicNumber PadicNumber::exactZero(ContextPtr ctx) {
    return PadicNumber(std::move(ctx), Kind::ExactZero, 0, kExactPrecision, 0);
}

PadicNumber PadicNumber::indistinguishableZero(ContextPtr ctx, long absolutePrecision) {
    const long cap = ctx->precision();
    return PadicNumber(std::move(ctx), Kind::Zero, 0, std::min(absolutePrecision, cap), 0);
}

PadicNumber PadicNumber::fromRational(const mpq_class& q, ContextPtr ctx) {
    if (q == 0) return exactZero(std::move(ctx));
    const unsigned long p = ctx->prime();
    const long n = ctx->precision();
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    mpz_class pz(p);
    const long a = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
    const long b = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    const long v = a - b;
    if (v >= n) return indistinguishableZero(std::move(ctx), n);
    const mpz_class mod = ctx->power(n - v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class unit = num * inv;
    mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    return PadicNumber(std::move(ctx), Kind::Unit, v, n, std::move(unit));
}

PadicNumber PadicNumber::fromRational(long numerator, long denominator, ContextPtr ctx) {
    require(denominator != 0, ErrorKind::InvalidArgument, "zero denominator");
    return fromRational(mpq_class(numerator, denominator), std::move(ctx));
}

std::optional<long> PadicNumber::valuation() const {
    if (kind_ != Kind::Unit) return std::nullopt;
    return val_;
}

long PadicNumber::valuationLowerBound() const noexcept { return kind_ == Kind::Unit ? val_ : prec_; }

Radius PadicNumber::norm() const {
    if (kind_ != Kind::Unit) return Radius::zero();
    return Radius::fromExponent(mpq_class(val_));
}

Radius PadicNumber::resolvedNorm() const {
    if (kind_ == Kind::Zero)
        fail(ErrorKind::InsufficientPrecision,
             "value indistinguishable from zero at precision " + std::to_string(prec_));
    return norm();
}

void PadicNumber::checkContext(const PadicNumber& y) const {
    if (ctx_.get() != y.ctx_.get() && !ctx_->sameAs(*y.ctx_))
        fail(ErrorKind::ContextMismatch, "operands belong to different p-adic contexts");
}

// scaled * p^scale, known modulo p^prec.
PadicNumber PadicNumber::normalized(ContextPtr ctx, mpz_class scaled, long scale, long prec) {
    prec = std::min(prec, ctx->precision());
    if (scale >= prec) return indistinguishableZero(std::move(ctx), prec);
    const mpz_class mod = ctx->power(prec - scale);
    mpz_mod(scaled.get_mpz_t(), scaled.get_mpz_t(), mod.get_mpz_t());
    if (scaled == 0) return indistinguishableZero(std::move(ctx), prec);
    const long vs = static_cast<long>(
        mpz_remove(scaled.get_mpz_t(), scaled.get_mpz_t(), ctx->primeZ().get_mpz_t()));
    return PadicNumber(std::move(ctx), Kind::Unit, scale + vs, prec, std::move(scaled));
}

PadicNumber PadicNumber::operator+(const PadicNumber& y) const {
    checkContext(y);
    if (kind_ == Kind::ExactZero) return y;
    if (y.kind_ == Kind::ExactZero) return *this;
    const long prec = std::min(prec_, y.prec_);
    const bool xLive = kind_ == Kind::Unit && val_ < prec;
    const bool yLive = y.kind_ == Kind::Unit && y.val_ < prec;
    if (!xLive && !yLive) return indistinguishableZero(ctx_, prec);
    if (!yLive) return normalized(ctx_, unit_, val_, prec);
    if (!xLive) return normalized(ctx_, y.unit_, y.val_, prec);
    const long m = std::min(val_, y.val_);
    mpz_class s = unit_ * ctx_->power(val_ - m) + y.unit_ * ctx_->power(y.val_ - m);
    return normalized(ctx_, std::move(s), m, prec);
}

PadicNumber PadicNumber::operator-() const {
    if (kind_ != Kind::Unit) return *this;
    mpz_class u = ctx_->power(prec_ - val_) - unit_;
    return PadicNumber(ctx_, Kind::Unit, val_, prec_, std::move(u));
}

PadicNumber PadicNumber::operator-(const PadicNumber& y) const { return *this + (-y); }

PadicNumber PadicNumber::operator*(const PadicNumber& y) const {
    checkContext(y);
    const long cap = ctx_->precision();
    if (kind_ == Kind::ExactZero || y.kind_ == Kind::ExactZero) return exactZero(ctx_);
    if (kind_ == Kind::Zero && y.kind_ == Kind::Zero)
        return indistinguishableZero(ctx_, std::min(cap, prec_ + y.prec_));
    if (kind_ == Kind::Zero) return indistinguishableZero(ctx_, std::min(cap, prec_ + y.val_));
    if (y.kind_ == Kind::Zero) return indistinguishableZero(ctx_, std::min(cap, y.prec_ + val_));
    const long val = val_ + y.val_;
    const long rel = std::min(prec_ - val_, y.prec_ - y.val_);
    return normalized(ctx_, unit_ * y.unit_, val, std::min(cap, val + rel));
}

PadicNumber PadicNumber::operator/(const PadicNumber& y) const {
    checkContext(y);
    if (y.kind_ == Kind::ExactZero) fail(ErrorKind::InvalidArgument, "division by exact zero");
    if (y.kind_ == Kind::Zero)
        fail(ErrorKind::DivisionByIndistinguishableZero,
             "divisor indistinguishable from zero at precision " + std::to_string(y.prec_));
    const long cap = ctx_->precision();
    if (kind_ == Kind::ExactZero) return *this;
    if (kind_ == Kind::Zero) return indistinguishableZero(ctx_, std::min(cap, prec_ - y.val_));
    const long val = val_ - y.val_;
    const long rel = std::min(prec_ - val_, y.prec_ - y.val_);
    const mpz_class mod = ctx_->power(rel);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), y.unit_.get_mpz_t(), mod.get_mpz_t());
    return normalized(ctx_, unit_ * inv, val, std::min(cap, val + rel));
}

PadicNumber PadicNumber::withPrecision(long absolutePrecision) const {
    if (kind_ == Kind::ExactZero) return indistinguishableZero(ctx_, absolutePrecision);
    const long prec = std::min(prec_, absolutePrecision);
    if (kind_ == Kind::Zero) return indistinguishableZero(ctx_, prec);
    return normalized(ctx_, unit_, val_, prec);
}

mpq_class PadicNumber::truncation() const {
    if (kind_ != Kind::Unit) return 0;
    mpq_class out(unit_);
    if (val_ >= 0)
        out *= ctx_->power(val_);
    else
        out /= ctx_->power(-val_);
    out.canonicalize();
    return out;
}

bool PadicNumber::identical(const PadicNumber& other) const {
    if (!ctx_->sameAs(*other.ctx_)) return false;
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::ExactZero) return true;
    if (kind_ == Kind::Zero) return prec_ == other.prec_;
    return val_ == other.val_ && prec_ == other.prec_ && unit_ == other.unit_;
}

bool PadicNumber::congruent(const PadicNumber& other) const { return (*this - other).isZeroTag(); }

std::string PadicNumber::toString() const {
    const std::string p = std::to_string(ctx_->prime());
    if (kind_ == Kind::ExactZero) return "0";
    const std::string big_o = "O(" + p + "^" + std::to_string(prec_) + ")";
    if (kind_ == Kind::Zero) return big_o;
    return truncation().get_str() + " + " + big_o;
}

// -------------------------------------------------------- ProjectivePoint

const PadicNumber& ProjectivePoint::finite() const {
    require(finite_.has_value(), ErrorKind::InvalidArgument, "point at infinity has no finite coordinate");
    return *finite_;
}

namespace {

// max{1, |z|} for a finite point.
Radius atLeastOne(const PadicNumber& z) {
    if (z.isExactZero()) return Radius::one();
    if (z.isZeroTag()) {
        if (z.absolutePrecision() >= 0) return Radius::one();
        fail(ErrorKind::InsufficientPrecision, "cannot decide whether |z| exceeds 1");
    }
    return std::max(Radius::one(), z.norm());
}

}  // namespace

Radius chordalDistance(const ProjectivePoint& z, const ProjectivePoint& w) {
    if (z.isInfinity() && w.isInfinity()) return Radius::zero();
    if (z.isInfinity()) return Radius::one() / atLeastOne(w.finite());
    if (w.isInfinity()) return Radius::one() / atLeastOne(z.finite());
    const PadicNumber& a = z.finite();
    const PadicNumber& b = w.finite();
    if (a.identical(b)) return Radius::zero();
    const PadicNumber diff = a - b;
    if (diff.isExactZero()) return Radius::zero();
    const Radius d = diff.resolvedNorm();
    return d / (atLeastOne(a) * atLeastOne(b));
}

}  // namespace padicdyn
