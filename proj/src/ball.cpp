#include "padicdyn/ball.hpp"

#include <algorithm>
#include <functional>

namespace padicdyn {

namespace {

long ceilOf(const mpq_class& t) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return c.get_si();
}

long floorOf(const mpq_class& t) {
    mpz_class c;
    mpz_fdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return c.get_si();
}

bool isInteger(const mpq_class& t) { return t.get_den() == 1; }

mpq_class primePower(unsigned long p, long k) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return mpq_class(pk);
    mpq_class out(1, pk);
    out.canonicalize();
    return out;
}

}  // namespace

// ------------------------------------------------------------- ClosedBall

mpq_class ClosedBall::canonicalCenter(const mpq_class& z, long T, unsigned long p) {
    if (z == 0) return 0;
    if (valuation(z, p) >= T) return 0;
    mpz_class den = z.get_den();
    mpz_class pz(p);
    const long e = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(T + e));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class x = z.get_num() * inv;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    mpq_class out(x);
    out /= primePower(p, e);
    out.canonicalize();
    return out;
}

ClosedBall::ClosedBall(const mpq_class& center, const mpq_class& radiusExponent, unsigned long p)
    : t_(radiusExponent), p_(p) {
    t_.canonicalize();
    center_ = canonicalCenter(center, ceilOf(t_), p);
}

ClosedBall::ClosedBall(const PadicNumber& center, const mpq_class& radiusExponent)
    : t_(radiusExponent), p_(center.prime()) {
    t_.canonicalize();
    const long T = ceilOf(t_);
    if (!center.isExactZero() && center.absolutePrecision() < T)
        fail(ErrorKind::InsufficientPrecision, "center " + center.toString() + " is not known modulo p^" +
                                                   std::to_string(T));
    center_ = canonicalCenter(center.truncation(), T, p_);
}

ClosedBall::ClosedBall(const mpq_class& center, const Radius& radius, unsigned long p)
    : ClosedBall(center, radius.exponent(), p) {}

long ClosedBall::pointSetExponent() const { return ceilOf(t_); }

bool ClosedBall::contains(const mpq_class& z) const {
    if (z == center_) return true;
    return valuation(z - center_, p_) >= t_;
}

bool ClosedBall::contains(const PadicNumber& z) const {
    const PadicNumber d = z - PadicNumber::fromRational(center_, z.context());
    if (d.isExactZero()) return true;
    if (d.isZeroTag()) {
        if (d.absolutePrecision() >= pointSetExponent()) return true;
        fail(ErrorKind::InsufficientPrecision, "membership of " + z.toString() + " in " + toString() +
                                                   " is undecided");
    }
    return *d.valuation() >= t_;
}

bool ClosedBall::contains(const ClosedBall& inner) const {
    return inner.t_ >= t_ && contains(inner.center_);
}

bool ClosedBall::disjoint(const ClosedBall& other) const {
    const ClosedBall& larger = t_ <= other.t_ ? *this : other;
    const ClosedBall& smaller = t_ <= other.t_ ? other : *this;
    return !larger.contains(smaller.center_);
}

std::vector<ClosedBall> ClosedBall::children() const {
    std::vector<ClosedBall> out;
    const long T = pointSetExponent();
    if (!isInteger(t_)) {
        out.emplace_back(center_, mpq_class(T), p_);
        return out;
    }
    const mpq_class step = primePower(p_, T);
    for (unsigned long k = 0; k < p_; ++k)
        out.emplace_back(center_ + step * static_cast<long>(k), mpq_class(T + 1), p_);
    return out;
}

bool ClosedBall::operator<(const ClosedBall& o) const {
    if (center_ != o.center_) return center_ < o.center_;
    return t_ < o.t_;
}

std::string ClosedBall::toString() const {
    return "B(" + center_.get_str() + ", " + radius().toString(p_) + ")";
}

// ------------------------------------------------------ maximal term index

MaximalTermIndex maximalTermIndex(const std::vector<PadicNumber>& coeffs, const Radius& r) {
    MaximalTermIndex out;
    if (r.isZero()) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].isExactZero()) continue;
            if (coeffs[i].isZeroTag())
                fail(ErrorKind::InsufficientPrecision, "coefficient " + std::to_string(i) + " is unresolved");
            out.l = static_cast<int>(i);
            out.achievedNorm = i == 0 ? coeffs[i].norm() : Radius::zero();
            return out;
        }
        fail(ErrorKind::InvalidArgument, "all coefficients are zero");
    }
    const mpq_class& t = r.exponent();
    std::optional<mpq_class> best;
    int bestIndex = -1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].isZeroTag()) continue;
        const mpq_class e = mpq_class(*coeffs[i].valuation()) + t * static_cast<long>(i);
        if (!best || e <= *best) {
            best = e;
            bestIndex = static_cast<int>(i);
        }
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].isExactZero() || !coeffs[i].isZeroTag()) continue;
        const mpq_class bound = mpq_class(coeffs[i].absolutePrecision()) + t * static_cast<long>(i);
        if (!best || bound < *best || (bound == *best && static_cast<int>(i) > bestIndex))
            fail(ErrorKind::InsufficientPrecision,
                 "unresolved coefficient " + std::to_string(i) + " could dominate the Newton polygon");
    }
    require(best.has_value(), ErrorKind::InvalidArgument, "all coefficients are zero");
    out.l = bestIndex;
    out.achievedNorm = Radius::fromExponent(*best);
    return out;
}

MaximalTermIndex maximalTermIndex(const Polynomial& f, const Radius& r, unsigned long p) {
    require(!f.isZero(), ErrorKind::InvalidArgument, "zero polynomial has no maximal term");
    const auto& c = f.coefficients();
    MaximalTermIndex out;
    if (r.isZero()) {
        std::size_t i = 0;
        while (c[i] == 0) ++i;
        out.l = static_cast<int>(i);
        out.achievedNorm = i == 0 ? Radius::fromExponent(mpq_class(valuation(c[0], p))) : Radius::zero();
        return out;
    }
    const mpq_class& t = r.exponent();
    std::optional<mpq_class> best;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const mpq_class e = mpq_class(valuation(c[i], p)) + t * static_cast<long>(i);
        if (!best || e <= *best) {
            best = e;
            out.l = static_cast<int>(i);
        }
    }
    out.achievedNorm = Radius::fromExponent(*best);
    return out;
}

int countRootsInBall(const Polynomial& f, const ClosedBall& ball) {
    require(!f.isZero(), ErrorKind::InvalidArgument, "root count of the zero polynomial");
    return maximalTermIndex(taylorShift(f, ball.center()), ball.radius(), ball.prime()).l;
}

int countRootsInBall(const PadicPolynomial& f, const ClosedBall& ball) {
    require(f.context()->prime() == ball.prime(), ErrorKind::ContextMismatch, "ball and polynomial primes differ");
    return maximalTermIndex(f.taylorShift(ball.center()).coefficients(), ball.radius()).l;
}

std::optional<Radius> nearestRootDistance(const Polynomial& f, const mpq_class& center, unsigned long p) {
    const Polynomial g = taylorShift(f, center);
    if (g.degree() <= 0) return std::nullopt;
    const auto& b = g.coefficients();
    if (b[0] == 0) return Radius::zero();
    const long v0 = valuation(b[0], p);
    std::optional<mpq_class> s;
    for (std::size_t i = 1; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        const mpq_class e(v0 - valuation(b[i], p), static_cast<long>(i));
        if (!s || e > *s) s = e;
    }
    return Radius::fromExponent(*s);
}

// ------------------------------------------------------------ ball images

BallImage imageOfBallWithIndex(const RationalMap& f, const ClosedBall& ball) {
    const unsigned long p = ball.prime();
    if (countRootsInBall(f.denominator(), ball) > 0)
        fail(ErrorKind::PoleInBall, "denominator of " + f.toString() + " vanishes in " + ball.toString());
    const mpq_class& a = ball.center();
    const mpq_class f1a = f.numerator().evaluate(a);
    const mpq_class f2a = f.denominator().evaluate(a);
    const mpq_class fa = f1a / f2a;
    // f(z) - f(a) = N(z) / (f2(z) f2(a)), and |f2| is constant on the ball.
    const Polynomial n = f.numerator() * f2a - f.denominator() * f1a;
    if (n.isZero()) return {ClosedBall(fa, mpq_class(ceilOf(ball.radiusExponent()) + 1), p), 0};
    const MaximalTermIndex m = maximalTermIndex(taylorShift(n, a), ball.radius(), p);
    const mpq_class t = m.achievedNorm.exponent() - 2 * valuation(f2a, p);
    return {ClosedBall(fa, t, p), m.l};
}

ClosedBall imageOfBall(const RationalMap& f, const ClosedBall& ball) { return imageOfBallWithIndex(f, ball).ball; }

// --------------------------------------------------------------- Hensel

PadicNumber henselLift(const PadicPolynomial& f, const PadicNumber& z0, long targetPrecision) {
    const PadicPolynomial df = f.derivative();
    PadicNumber z = z0;
    PadicNumber fz = f.evaluate(z);
    if (fz.isExactZero()) return z;
    PadicNumber dz = df.evaluate(z);
    if (dz.isZeroTag())
        fail(ErrorKind::BasinConditionViolated, "derivative vanishes at " + z0.toString());
    const long vd = *dz.valuation();
    if (fz.valuationLowerBound() <= 2 * vd)
        fail(ErrorKind::BasinConditionViolated,
             "v(F(z0)) >= " + std::to_string(fz.valuationLowerBound()) + " does not exceed 2 v(F'(z0)) = " +
                 std::to_string(2 * vd));
    const long cap = z0.context()->precision();
    for (int iter = 0; iter < 256 && !fz.isZeroTag(); ++iter) {
        z = z - fz / dz;
        fz = f.evaluate(z);
        if (fz.isExactZero()) return z;
        dz = df.evaluate(z);
        if (fz.isZeroTag()) break;
        if (*fz.valuation() - vd >= std::min(targetPrecision, cap)) break;
    }
    const long known = fz.valuationLowerBound() - vd;
    return z.withPrecision(std::min({targetPrecision, known, z.absolutePrecision()}));
}

PadicNumber henselLift(const Polynomial& f, const PadicNumber& z0, long targetPrecision) {
    return henselLift(PadicPolynomial::from(f, z0.context()), z0, targetPrecision);
}

// -------------------------------------------------------- root enumeration

int RationalRootSearch::rationalCount() const {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
}

namespace {

// Distinct roots of a squarefree polynomial in a ball, by residue-tree descent.
void searchSquarefree(const Polynomial& s, const ClosedBall& ball, const ContextPtr& ctx, long depthLeft,
                      std::vector<PadicNumber>& out) {
    const int count = countRootsInBall(s, ball);
    if (count == 0) return;
    const mpq_class& c = ball.center();
    if (s.evaluate(c) == 0) {
        out.push_back(PadicNumber::fromRational(c, ctx));
        if (count == 1) return;
    } else if (count == 1) {
        const mpq_class fc = s.evaluate(c);
        const mpq_class dc = s.derivative().evaluate(c);
        if (dc != 0 && valuation(fc, ctx->prime()) > 2 * valuation(dc, ctx->prime())) {
            out.push_back(henselLift(s, PadicNumber::fromRational(c, ctx), ctx->precision()));
            return;
        }
    }
    if (depthLeft <= 0) return;
    for (const auto& child : ball.children()) {
        if (s.evaluate(c) == 0 && child.contains(c)) {
            // The exact root at the center is already recorded; look for others.
            if (countRootsInBall(s, child) <= 1) continue;
        }
        searchSquarefree(s, child, ctx, depthLeft - 1, out);
    }
}

}  // namespace

RationalRootSearch findRationalRoots(const Polynomial& f, const ClosedBall& ball, const ContextPtr& ctx) {
    require(!f.isZero(), ErrorKind::InvalidArgument, "roots of the zero polynomial");
    require(ctx->prime() == ball.prime(), ErrorKind::ContextMismatch, "ball and context primes differ");
    RationalRootSearch out;
    out.newtonCount = countRootsInBall(f, ball);
    if (out.newtonCount == 0) return out;
    const long depthCap = 4 * ctx->precision();
    for (const auto& [part, mult] : squarefreeDecomposition(f)) {
        std::vector<PadicNumber> found;
        searchSquarefree(part, ball, ctx, depthCap, found);
        for (std::size_t i = 0; i < found.size(); ++i) {
            bool seen = false;
            for (std::size_t j = 0; j < i && !seen; ++j) seen = found[j].identical(found[i]);
            if (!seen) out.roots.push_back({found[i], mult});
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const RootWithMultiplicity& a, const RootWithMultiplicity& b) {
        return a.root.truncation() < b.root.truncation();
    });
    return out;
}

std::vector<RootWithMultiplicity> rootsInBall(const Polynomial& f, const ClosedBall& ball, const ContextPtr& ctx) {
    RationalRootSearch search = findRationalRoots(f, ball, ctx);
    const int found = search.rationalCount();
    if (found < search.newtonCount)
        throw ExtensionFieldError(f.toString() + " has " + std::to_string(search.newtonCount) + " roots in " +
                                      ball.toString() + " but only " + std::to_string(found) +
                                      " are Q_" + std::to_string(ctx->prime()) + "-rational",
                                  search.newtonCount, found);
    return std::move(search.roots);
}

ClosedBall rootBoundBall(const Polynomial& f, unsigned long p) {
    require(!f.isZero(), ErrorKind::InvalidArgument, "root bound of the zero polynomial");
    const auto& c = f.coefficients();
    const long n = f.degree();
    const long vn = valuation(c.back(), p);
    std::optional<mpq_class> lowest;
    for (long i = 0; i < n; ++i) {
        if (c[static_cast<std::size_t>(i)] == 0) continue;
        const mpq_class e(valuation(c[static_cast<std::size_t>(i)], p) - vn, n - i);
        if (!lowest || e < *lowest) lowest = e;
    }
    return ClosedBall(mpq_class(0), mpq_class(lowest ? floorOf(*lowest) : 0), p);
}

// ------------------------------------------------------------- pullbacks

namespace {

// Largest t with f(B(z, p^-t)) inside the target: each term of the expansion
// of f around z must stay within the target radius.
mpq_class componentExponent(const RationalMap& f, const PadicNumber& z, const ClosedBall& target) {
    const unsigned long p = target.prime();
    const mpq_class a = z.truncation();
    const mpq_class f1a = f.numerator().evaluate(a);
    const mpq_class f2a = f.denominator().evaluate(a);
    const Polynomial n = taylorShift(f.numerator() * f2a - f.denominator() * f1a, a);
    const long base = 2 * valuation(f2a, p);
    std::optional<mpq_class> t;
    for (std::size_t l = 1; l < n.coefficients().size(); ++l) {
        const mpq_class& c = n.coefficients()[l];
        if (c == 0) continue;
        mpq_class need = (target.radiusExponent() - (valuation(c, p) - base)) / mpq_class(static_cast<long>(l));
        need.canonicalize();
        if (!t || need > *t) t = need;
    }
    require(t.has_value(), ErrorKind::InvalidArgument, "constant map has no branches");
    // The root is only known modulo p^prec; the component must be coarser.
    require(*t <= z.absolutePrecision(), ErrorKind::InsufficientPrecision,
            "root " + z.toString() + " too coarse for its branch");
    return *t;
}

}  // namespace

BranchSystem pullbackBall(const RationalMap& f, const ClosedBall& ball, const ContextPtr& ctx,
                          const PullbackOptions& options) {
    const unsigned long p = ball.prime();
    require(ctx->prime() == p, ErrorKind::ContextMismatch, "ball and context primes differ");
    if (options.mu && ball.radius() > *options.mu)
        fail(ErrorKind::RadiusExceedsMu, ball.toString() + " is larger than mu = " + options.mu->toString(p));
    const Polynomial& f1 = f.numerator();
    const Polynomial& f2 = f.denominator();
    if (f1.degree() <= f2.degree() && ball.contains(f1.coefficient(static_cast<std::size_t>(f2.degree())) / f2.leading()))
        fail(ErrorKind::PreimageAtInfinity, "f(inf) lies in " + ball.toString());
    const Polynomial target = f1 - f2 * ball.center();
    const auto roots = rootsInBall(target, rootBoundBall(target, p), ctx);

    BranchSystem out{ball, {}};
    for (const auto& r : roots) {
        if (r.multiplicity > 1 && options.derivativeFloor)
            fail(ErrorKind::CriticalValueInBall, "critical value " + ball.center().get_str() + " in " + ball.toString());
        const Radius dnorm = r.multiplicity > 1 ? Radius::zero() : f.derivativeAt(r.root).resolvedNorm();
        if (options.derivativeFloor && dnorm < *options.derivativeFloor)
            fail(ErrorKind::ExpansionViolated, "|f'(" + r.root.toString() + ")| is below the expansion floor");
        const ClosedBall branch(r.root.truncation(), componentExponent(f, r.root, ball), p);
        const BallImage image = imageOfBallWithIndex(f, branch);
        if (!(image.ball == ball))
            fail(ErrorKind::BranchImageMismatch, "f(" + branch.toString() + ") = " + image.ball.toString() +
                                                     " instead of " + ball.toString());
        if (image.l != 1 && options.derivativeFloor)
            fail(ErrorKind::CriticalValueInBall, branch.toString() + " contains a critical point");
        const auto same = std::find_if(out.branches.begin(), out.branches.end(),
                                       [&](const Branch& b) { return b.ball == branch; });
        if (same != out.branches.end()) continue;
        out.branches.push_back({r.root, branch, dnorm, image.l});
    }
    std::sort(out.branches.begin(), out.branches.end(),
              [](const Branch& a, const Branch& b) { return a.ball < b.ball; });
    for (std::size_t i = 0; i < out.branches.size(); ++i)
        for (std::size_t j = i + 1; j < out.branches.size(); ++j)
            if (!out.branches[i].ball.disjoint(out.branches[j].ball))
                fail(ErrorKind::BranchOverlap,
                     out.branches[i].ball.toString() + " meets " + out.branches[j].ball.toString());
    return out;
}

Radius constantNormOnBall(const Polynomial& num, const Polynomial& den, const ClosedBall& ball) {
    require(!num.isZero() && !den.isZero(), ErrorKind::ZeroOrPoleInBall, "identically zero factor");
    if (countRootsInBall(num, ball) > 0 || countRootsInBall(den, ball) > 0)
        fail(ErrorKind::ZeroOrPoleInBall, "(" + num.toString() + ")/(" + den.toString() + ") has a zero or pole in " +
                                              ball.toString());
    const unsigned long p = ball.prime();
    const long v = valuation(num.evaluate(ball.center()), p) - valuation(den.evaluate(ball.center()), p);
    return Radius::fromExponent(mpq_class(v));
}

Radius constantNormOnBall(const RationalMap& f, const ClosedBall& ball) {
    return constantNormOnBall(f.numerator(), f.denominator(), ball);
}

}  // namespace padicdyn
