#include "padicdyn/stability.hpp"

#include <algorithm>
#include <random>

namespace padicdyn {

namespace {

long ceilOf(const mpq_class& t) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return c.get_si();
}

// Polynomial through (x_k, y_k), by divided differences.
Polynomial interpolate(const std::vector<mpq_class>& x, std::vector<mpq_class> y) {
    const std::size_t n = x.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t k = n - 1; k >= level; --k) y[k] = (y[k] - y[k - 1]) / (x[k] - x[k - level]);
    Polynomial out = Polynomial::constant(y[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;)
        out = out * Polynomial({-x[k], mpq_class(1)}) + Polynomial::constant(y[k]);
    return out;
}

// Smallest radius among the cover balls.
Radius minimumRadius(const BallCover& cover) {
    mpq_class t = cover[0].radiusExponent();
    for (const auto& b : cover.balls()) t = std::max(t, b.radiusExponent());
    return Radius::fromExponent(t);
}

// Upper bound for |a - b| that stays honest when the difference is unresolved.
Radius differenceBound(const PadicNumber& a, const PadicNumber& b) {
    const PadicNumber d = a - b;
    if (d.isExactZero()) return Radius::zero();
    if (d.isZeroTag()) return Radius::fromExponent(mpq_class(d.absolutePrecision()));
    return d.norm();
}

Radius atLeastOne(const PadicNumber& z) {
    if (z.isZeroTag()) return Radius::one();
    return std::max(Radius::one(), z.norm());
}

PadicNumber rehome(const PadicNumber& z, const ContextPtr& ctx) {
    if (z.isExactZero()) return PadicNumber::exactZero(ctx);
    if (z.isZeroTag()) return PadicNumber::indistinguishableZero(ctx, z.absolutePrecision());
    return PadicNumber::fromRational(z.truncation(), ctx).withPrecision(z.absolutePrecision());
}

}  // namespace

mpq_class expansionConstantExponent(unsigned long p) {
    require(isPrime(p), ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    return mpq_class(1, p - 1);
}

Polynomial criticalValuePolynomial(const RationalMap& f) {
    const int d = f.degree();
    const Polynomial& w = f.derivative().numerator;
    const int m = std::max(2 * d - 2, w.degree());
    if (w.degree() <= 0 && m == 0) return Polynomial::constant(1);
    std::vector<mpq_class> xs, ys;
    for (int k = 0; k <= m; ++k) {
        const mpq_class v(k);
        xs.push_back(v);
        ys.push_back(resultant(w, f.numerator() - f.denominator() * v, m, d));
    }
    const Polynomial cv = interpolate(xs, ys);
    require(!cv.isZero(), ErrorKind::InvalidArgument, "critical value polynomial vanishes identically");
    return cv.primitive();
}

Radius deltaFromSeparation(const RationalMap& f, const BallCover& cover) {
    require(!cover.empty(), ErrorKind::InvalidArgument, "empty cover");
    const unsigned long p = cover.prime();
    const std::vector<std::pair<const char*, Polynomial>> special = {
        {"critical point", f.derivative().numerator},
        {"pole", f.denominator()},
        {"critical value", criticalValuePolynomial(f)},
    };
    std::optional<mpq_class> closest;
    for (const auto& ball : cover.balls()) {
        for (const auto& [what, poly] : special) {
            if (poly.degree() <= 0) continue;
            if (countRootsInBall(poly, ball) > 0)
                fail(ErrorKind::CriticalPointMeetsCover, std::string("a ") + what + " of the map lies in " + ball.toString());
            const auto dist = nearestRootDistance(poly, ball.center(), p);
            if (dist && (!closest || dist->exponent() > *closest)) closest = dist->exponent();
        }
    }
    if (!closest) return minimumRadius(cover);
    return Radius::fromExponent(*closest + 1);
}

Radius muFromDelta(const Radius& delta, unsigned long p) {
    require(!delta.isZero(), ErrorKind::InvalidArgument, "delta must be positive");
    return Radius::fromExponent(delta.exponent() + expansionConstantExponent(p));
}

Radius coverBoundingRadius(const BallCover& cover) {
    require(!cover.empty(), ErrorKind::InvalidArgument, "empty cover");
    mpq_class t = cover[0].radiusExponent();
    for (const auto& b : cover.balls()) {
        t = std::min(t, b.radiusExponent());
        if (b.center() != 0) t = std::min(t, mpq_class(valuation(b.center(), cover.prime())));
    }
    return Radius::fromExponent(t);
}

SupNormConstants supNormConstants(const RationalMap& f, const BallCover& omega, const Radius& eta) {
    require(!omega.empty(), ErrorKind::InvalidArgument, "empty cover");
    const unsigned long p = omega.prime();
    SupNormConstants c;
    c.M1 = gaussNorm(f.numerator(), eta, p);
    c.M2 = gaussNorm(f.denominator(), eta, p);
    c.M1p = gaussNorm(f.numerator().derivative(), eta, p);
    c.M2p = gaussNorm(f.denominator().derivative(), eta, p);
    c.MW = gaussNorm(f.derivative().numerator, eta, p);
    std::optional<Radius> low;
    for (const auto& b : omega.balls()) {
        const Radius n = constantNormOnBall(f.denominator(), Polynomial::constant(1), b);
        if (!low || n < *low) low = n;
    }
    c.m2 = *low;
    return c;
}

// ---------------------------------------------------- perturbation bounds

namespace {

// Exponent of the smallest radius among the finite candidates.
mpq_class smallestOf(std::initializer_list<std::optional<mpq_class>> candidates) {
    std::optional<mpq_class> out;
    for (const auto& c : candidates)
        if (c && (!out || *c > *out)) out = *c;
    return *out;
}

// e(num) - e(den) when den is a nonzero radius.
std::optional<mpq_class> ratio(const mpq_class& num, const Radius& den) {
    if (den.isZero()) return std::nullopt;
    return num - den.exponent();
}

}  // namespace

PerturbationBounds perturbationBounds(const RationalMap& f, const BallCover& omega, const Radius& eta, const Radius& r,
                                      const Radius& s) {
    require(!r.isZero() && !s.isZero(), ErrorKind::InvalidArgument, "bounds need positive r and s");
    require(!eta.isZero(), ErrorKind::InvalidArgument, "eta must be positive");
    PerturbationBounds out;
    out.r = r;
    out.s = s;
    out.eta = eta;
    out.p = omega.prime();
    out.constants = supNormConstants(f, omega, eta);
    const SupNormConstants& c = out.constants;
    const mpq_class er = r.exponent();
    const mpq_class es = s.exponent();
    const mpq_class em2 = c.m2.exponent();
    const mpq_class te = eta.exponent();

    // Numerator: |E| < A and |E'| < A' on B_{0, eta}.
    const mpq_class a = smallestOf({ratio(er + 2 * em2, c.M2), ratio(es + 2 * em2, c.M2p), es + em2});
    const mpq_class ap = smallestOf({ratio(es + 2 * em2, c.M2)});
    // Denominator: |K| < B and |K'| < B'; B < m2 keeps |g2| = |f2| on Omega.
    const mpq_class b = smallestOf(
        {em2, ratio(er + 2 * em2, c.M1), ratio(es + 2 * em2, c.M1p), ratio(es + 3 * em2, c.MW)});
    const mpq_class bp = smallestOf({em2, ratio(es + 2 * em2, c.M1)});

    const int d = f.degree();
    for (int i = 0; i <= d; ++i) {
        mpq_class xi = a - te * i;
        mpq_class zeta = b - te * i;
        if (i >= 1) {
            xi = std::max(xi, mpq_class(ap - te * (i - 1)));
            zeta = std::max(zeta, mpq_class(bp - te * (i - 1)));
        }
        out.numerator.push_back(xi);
        out.denominator.push_back(zeta);
        out.literalNumerator.push_back(*ratio(er, c.M2) - te * i);
        std::optional<mpq_class> second;
        if (!c.M1.isZero()) second = er + c.M1.exponent() - 2 * c.M2.exponent() - te * i;
        out.literalDenominator.push_back(smallestOf({mpq_class(em2 - te * i), second}));
    }
    return out;
}

namespace {

// Scales c for which c*g is a candidate representation next to f: taken from
// coefficients of f that no admissible perturbation can cancel.
std::vector<mpq_class> candidateScales(const RationalMap& f, const RationalMap& g, const PerturbationBounds& b) {
    std::vector<mpq_class> out{mpq_class(1)};
    auto scan = [&](const Polynomial& fp, const Polynomial& gp, const std::vector<mpq_class>& bound) {
        for (std::size_t i = 0; i < bound.size(); ++i) {
            const mpq_class fc = fp.coefficient(i);
            const mpq_class gc = gp.coefficient(i);
            if (fc == 0 || gc == 0 || valuation(fc, b.p) > bound[i]) continue;
            mpq_class c = fc / gc;
            c.canonicalize();
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
    };
    scan(f.numerator(), g.numerator(), b.numerator);
    scan(f.denominator(), g.denominator(), b.denominator);
    return out;
}

bool differencesWithin(const Polynomial& base, const Polynomial& other, const std::vector<mpq_class>& bound,
                       unsigned long p) {
    const Polynomial diff = other - base;
    for (std::size_t i = 0; i < diff.coefficients().size(); ++i) {
        const mpq_class& e = diff.coefficients()[i];
        if (e == 0) continue;
        if (i >= bound.size() || mpq_class(valuation(e, p)) <= bound[i]) return false;
    }
    return true;
}

}  // namespace

bool PerturbationBounds::admits(const RationalMap& f, const RationalMap& g) const {
    if (f.degree() != g.degree()) return false;
    for (const auto& c : candidateScales(f, g, *this)) {
        if (differencesWithin(f.numerator(), g.numerator() * c, numerator, p) &&
            differencesWithin(f.denominator(), g.denominator() * c, denominator, p))
            return true;
    }
    return false;
}

PerturbationBounds certifyNeighborhood(const RationalMap& f, const Radius& lambda, const BallCover& omega,
                                       const Radius& delta, const ContextPtr& ctx) {
    const MembershipReport report = checkMembership(f, lambda, omega, ctx);
    if (!report.member) fail(*report.failure, "f is not in N(lambda, Omega): " + report.reason);
    require(!delta.isZero() && delta <= minimumRadius(omega), ErrorKind::InvalidArgument,
            "delta exceeds the smallest cover radius, so delta-balls around Omega leave Omega");
    const Radius mu = muFromDelta(delta, omega.prime());
    return perturbationBounds(f, omega, coverBoundingRadius(omega), mu, lambda);
}

Radius supDifference(const RationalMap& f, const RationalMap& g, const BallCover& omega) {
    require(!omega.empty(), ErrorKind::InvalidArgument, "empty cover");
    const unsigned long p = omega.prime();
    const Polynomial d = f.numerator() * g.denominator() - g.numerator() * f.denominator();
    Radius sup = Radius::zero();
    if (d.isZero()) return sup;
    const Polynomial one = Polynomial::constant(1);
    for (const auto& ball : omega.balls()) {
        const Radius nf = constantNormOnBall(f.denominator(), one, ball);
        const Radius ng = constantNormOnBall(g.denominator(), one, ball);
        const Radius top = gaussNorm(taylorShift(d, ball.center()), ball.radius(), p);
        sup = std::max(sup, top / (nf * ng));
    }
    return sup;
}

NeighborhoodCheck checkPerturbation(const RationalMap& f, const RationalMap& g, const BallCover& omega,
                                    const Radius& lambda, const Radius& mu, const PerturbationBounds* bounds,
                                    const ContextPtr& ctx) {
    NeighborhoodCheck out;
    if (f.degree() != g.degree()) {
        out.reason = "degree " + std::to_string(g.degree()) + " differs from " + std::to_string(f.degree());
        return out;
    }
    out.withinCoefficientBounds = bounds && bounds->admits(f, g);
    const MembershipReport report = checkMembership(g, lambda, omega, ctx);
    if (!report.member) {
        out.reason = "g is not in N(lambda, Omega): " + report.reason;
        return out;
    }
    try {
        deltaFromSeparation(g, omega);
        out.supDifference = supDifference(f, g, omega);
    } catch (const Error& e) {
        out.reason = e.what();
        return out;
    }
    if (*out.supDifference > mu) {
        out.reason = "sup |f - g| on Omega is " + out.supDifference->toString(omega.prime()) + ", above mu = " +
                     mu.toString(omega.prime());
        return out;
    }
    out.inside = true;
    return out;
}

// -------------------------------------------------------------- sampling

namespace {

mpq_class randomPerturbation(const mpq_class& limit, unsigned long p, std::mt19937_64& rng) {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) return 0;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), limit.get_num_mpz_t(), limit.get_den_mpz_t());
    const long v = fl.get_si() + 1 + std::uniform_int_distribution<long>(0, 2)(rng);
    unsigned long u = 0;
    while (u % p == 0) u = std::uniform_int_distribution<unsigned long>(1, p * p * p - 1)(rng);
    mpq_class e(static_cast<long>(u));
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(v < 0 ? -v : v));
    if (v >= 0)
        e *= pk;
    else
        e /= pk;
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) e = -e;
    return e;
}

}  // namespace

std::vector<RationalMap> samplePerturbations(const RationalMap& f, const PerturbationBounds& bounds, std::size_t count,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<RationalMap> out;
    const std::size_t n = bounds.numerator.size();
    std::size_t attempts = 0;
    while (out.size() < count) {
        require(++attempts <= 100 * count + 100, ErrorKind::InvalidArgument, "could not sample perturbations");
        std::vector<mpq_class> e(n), k(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = randomPerturbation(bounds.numerator[i], bounds.p, rng);
        for (std::size_t j = 0; j < n; ++j) k[j] = randomPerturbation(bounds.denominator[j], bounds.p, rng);
        try {
            RationalMap g(f.numerator() + Polynomial(e), f.denominator() + Polynomial(k));
            if (g.degree() != f.degree()) continue;
            out.push_back(std::move(g));
        } catch (const Error&) {
        }
    }
    return out;
}

std::vector<mpq_class> samplePointsInCover(const BallCover& cover, std::size_t count, std::uint64_t seed,
                                           long extraDigits) {
    require(!cover.empty(), ErrorKind::InvalidArgument, "empty cover");
    std::mt19937_64 rng(seed);
    const unsigned long p = cover.prime();
    std::vector<mpq_class> out;
    for (std::size_t n = 0; n < count; ++n) {
        const ClosedBall& b = cover[std::uniform_int_distribution<std::size_t>(0, cover.size() - 1)(rng)];
        mpz_class digits = 0;
        for (long i = 0; i < extraDigits; ++i)
            digits = digits * p + std::uniform_int_distribution<unsigned long>(0, p - 1)(rng);
        const long T = b.pointSetExponent();
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(T < 0 ? -T : T));
        mpq_class step = T >= 0 ? mpq_class(pk) : mpq_class(mpz_class(1), pk);
        step.canonicalize();
        out.push_back(b.center() + step * mpq_class(digits));
    }
    return out;
}

BoundSamplingReport sampleBoundSoundness(const RationalMap& f, const PerturbationBounds& bounds, const BallCover& omega,
                                         const Radius& lambda, std::size_t maps, std::size_t points,
                                         std::uint64_t seed, const ContextPtr& ctx) {
    BoundSamplingReport report;
    const auto gs = samplePerturbations(f, bounds, maps, seed);
    const auto zs = samplePointsInCover(omega, points, seed + 1);
    auto failure = [&](const std::string& why) {
        if (report.failures++ == 0) report.firstFailure = why;
    };
    for (const auto& g : gs) {
        ++report.maps;
        if (!bounds.admits(f, g)) {
            failure(g.toString() + " is not inside the bounds it was drawn from");
            continue;
        }
        const MembershipReport m = checkMembership(g, lambda, omega, ctx);
        if (!m.member) {
            failure(g.toString() + ": " + m.reason);
            continue;
        }
        for (const auto& zq : zs) {
            const PadicNumber z = PadicNumber::fromRational(zq, ctx);
            const Radius dv = differenceBound(f.evaluateFinite(z), g.evaluateFinite(z));
            const Radius dd = differenceBound(f.derivativeAt(z), g.derivativeAt(z));
            if (!(dv < bounds.r) || !(dd < bounds.s)) {
                failure(g.toString() + " differs too much from f at " + zq.get_str());
                break;
            }
        }
    }
    return report;
}

// ------------------------------------------------------------- conjugacy

long conjugacyPrecision(long basePrecision, const Radius& mu, const Radius& lambda, int depth) {
    require(!lambda.isZero() && lambda > Radius::one(), ErrorKind::InvalidArgument, "lambda must exceed 1");
    const long perStep = ceilOf(-lambda.exponent());
    const long muDigits = ceilOf(abs(mu.exponent()));
    return std::max(basePrecision, 2 * perStep * depth + muDigits + 16);
}

ConjugacySolver::ConjugacySolver(RationalMap f, RationalMap g, BallCover omega, Radius mu, Radius lambda,
                                 const ContextPtr& ctx, int maxDepth)
    : f_(std::move(f)), g_(std::move(g)), omega_(std::move(omega)), mu_(std::move(mu)), lambda_(std::move(lambda)) {
    require(maxDepth >= 0, ErrorKind::InvalidArgument, "negative depth");
    require(!mu_.isZero(), ErrorKind::InvalidArgument, "mu must be positive");
    require(!omega_.empty(), ErrorKind::InvalidArgument, "empty cover");
    ctx_ = Context::make(ctx->prime(), conjugacyPrecision(ctx->precision(), mu_, lambda_, maxDepth));
}

Radius ConjugacySolver::errorBound(int depth) const { return mu_ / lambda_.pow(depth); }

PadicNumber ConjugacySolver::step(const PadicNumber& z, const PadicNumber& target) const {
    const Radius gp = g_.derivativeAt(z).resolvedNorm();
    const ClosedBall ball(z, mu_.exponent() - gp.exponent());
    const Polynomial G = g_.numerator() - g_.denominator() * target.truncation();
    const int count = countRootsInBall(G, ball);
    if (count != 1)
        fail(ErrorKind::UniquenessViolation, std::to_string(count) + " solutions of g(w) = " + target.toString() +
                                                 " in " + ball.toString());
    const PadicNumber seed = PadicNumber::fromRational(z.truncation(), ctx_);
    const PadicNumber gz = G.evaluate(seed);
    const PadicNumber gpz = G.derivative().evaluate(seed);
    PadicNumber w = PadicNumber::exactZero(ctx_);
    if (!gpz.isZeroTag() && gz.valuationLowerBound() > 2 * *gpz.valuation()) {
        w = henselLift(G, seed, ctx_->precision());
    } else {
        const auto roots = rootsInBall(G, ball, ctx_);
        w = roots.front().root;
    }
    if (target.isExactZero()) return w;
    // An error of p^-P in the target moves the root by p^-P / |g'|.
    const long fromTarget = target.absolutePrecision() - ceilOf(gp.exponent());
    if (w.isExactZero()) return PadicNumber::indistinguishableZero(ctx_, fromTarget);
    return w.withPrecision(fromTarget);
}

PadicNumber ConjugacySolver::compute(int level, const std::vector<PadicNumber>& orbit, std::size_t j) {
    if (level == 0) return orbit[j];
    const auto key = std::make_tuple(level, orbit[j].truncation(), orbit[j].absolutePrecision());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    PadicNumber value = step(orbit[j], compute(level - 1, orbit, j + 1));
    memo_.emplace(key, value);
    return value;
}

PadicNumber ConjugacySolver::h(int level, const PadicNumber& z) {
    require(level >= 0, ErrorKind::InvalidArgument, "negative level");
    std::vector<PadicNumber> orbit{rehome(z, ctx_)};
    const bool identity = f_ == g_;
    for (int j = 0; j <= level; ++j) {
        if (!omega_.locate(orbit.back()))
            fail(ErrorKind::OrbitEscapedOmega, "f^" + std::to_string(j) + "(z) = " + orbit.back().toString() +
                                                   " is outside Omega");
        if (j == level) break;
        const ProjectivePoint next = f_.evaluate(ProjectivePoint(orbit.back()), ctx_);
        if (next.isInfinity()) fail(ErrorKind::OrbitEscapedOmega, "orbit reached infinity");
        orbit.push_back(next.finite());
    }
    if (identity) return orbit.front();
    return compute(level, orbit, 0);
}

ConjugacyTrace ConjugacySolver::trace(const mpq_class& z, int depth) {
    ConjugacyTrace out;
    out.z = z;
    for (int l = 0; l <= depth; ++l) out.iterates.push_back(h(l, z));
    for (int l = 0; l < depth; ++l) out.differences.push_back(differenceBound(out.iterates[l + 1], out.iterates[l]));
    out.errorBound = errorBound(depth);
    return out;
}

ConjugateResult conjugatePoint(ConjugacySolver& solver, const mpq_class& z, int depth) {
    return {solver.h(depth, z), solver.errorBound(depth)};
}

SemiconjugacyReport verifySemiconjugacy(ConjugacySolver& solver, const std::vector<mpq_class>& points, int depth) {
    SemiconjugacyReport report;
    report.bound = solver.errorBound(depth);
    report.pass = true;
    const ContextPtr& ctx = solver.context();
    for (const auto& zq : points) {
        const PadicNumber z = PadicNumber::fromRational(zq, ctx);
        const PadicNumber a = solver.h(depth, solver.f().evaluateFinite(z));
        const PadicNumber b = solver.g().evaluateFinite(solver.h(depth, z));
        SemiconjugacySample s;
        s.z = zq;
        // h is the identity when g = f, so both sides are the same number.
        s.residual = solver.f() == solver.g() ? Radius::zero() : differenceBound(a, b) / (atLeastOne(a) * atLeastOne(b));
        s.pass = s.residual <= report.bound;
        report.pass = report.pass && s.pass;
        report.samples.push_back(std::move(s));
    }
    return report;
}

// ------------------------------------------------------------ certificate

std::vector<std::string> certificateNotes() {
    return {
        "mu = delta * min_{k>=2} |k|^(1/(k-1)) = delta * p^(-1/(p-1)); the minimum is used everywhere",
        "coefficient bounds carry the factor m2^2 from |f2 g2| on Omega; the literal bounds are reported but not used",
        "|h_(l+1)(z) - h_l(z)| <= mu/lambda^(l+1), so h_k satisfies the conjugacy relation up to mu/lambda^k",
        "maps of degree 2 are accepted",
        "roots are enumerated in Q_p; roots outside Q_p are reported as ExtensionFieldRequired",
    };
}

StabilityCertificate jStabilityCertificate(const RationalMap& f, const ContextPtr& ctx, const CertifyConfig& config) {
    const unsigned long p = ctx->prime();
    StabilityCertificate cert(f);
    cert.p = p;
    cert.precision = ctx->precision();
    cert.config = config;
    cert.notes = certificateNotes();
    auto reject = [&](std::string reason, std::string detail) {
        cert.status = CertificateStatus::NotCertified;
        cert.reason = std::move(reason);
        cert.detail = std::move(detail);
        return cert;
    };
    if (f.degree() < 2) return reject("DegreeTooSmall", "degree " + std::to_string(f.degree()) + " is below 2");
    if (goodReductionTest(f, p)) return reject("GoodReduction", "f has good reduction, so its Julia set is empty");
    try {
        std::vector<PadicNumber> seeds;
        for (int q = 1; q <= config.qMax && seeds.empty(); ++q) {
            const RationalMap fq = f.iterate(q);
            const Polynomial fixed = fq.numerator() - Polynomial::variable() * fq.denominator();
            if (fixed.isZero()) continue;
            for (const auto& pt : periodicPoints(f, q, rootBoundBall(fixed, p), ctx).points)
                if (pt.repelling()) seeds.push_back(pt.point);
        }
        if (seeds.empty())
            return reject("NotFoundWithinPeriodCap",
                          "no repelling periodic point of period <= " + std::to_string(config.qMax));

        long t0 = 0;
        for (const auto& s : seeds)
            if (!s.isZeroTag()) t0 = std::min(t0, *s.valuation());
        std::optional<Radius> delta;
        ErrorKind lastKind = ErrorKind::CriticalPointMeetsCover;
        std::string lastError = "no trial cover separates the critical set";
        for (long t = t0; t <= t0 + 12 && !delta; ++t) {
            try {
                const BallCover trial =
                    buildOmega(f, seeds, Radius::fromExponent(mpq_class(t)), ctx, {config.depthCap, false});
                delta = deltaFromSeparation(f, trial);
            } catch (const Error& e) {
                lastKind = e.kind();
                lastError = e.what();
            }
        }
        if (!delta) return reject(std::string(errorKindName(lastKind)), lastError);

        BallCover omega;
        for (int round = 0;; ++round) {
            omega = buildOmega(f, seeds, muFromDelta(*delta, p), ctx, {config.depthCap, true});
            const Radius next = std::min(deltaFromSeparation(f, omega), minimumRadius(omega));
            if (next >= *delta) break;
            if (round >= 8) fail(ErrorKind::SaturationNotReached, "delta did not stabilize");
            delta = next;
        }
        const Radius mu = muFromDelta(*delta, p);

        const DerivativeData& df = f.derivative();
        std::vector<Radius> norms;
        for (const auto& b : omega.balls()) norms.push_back(constantNormOnBall(df.numerator, df.denominator, b));
        const Radius lambda = *std::min_element(norms.begin(), norms.end());
        if (!(lambda > Radius::one()))
            return reject("ExpansionViolated", "min |f'| on Omega is " + lambda.toString(p));
        const MembershipReport membership = checkMembership(f, lambda, omega, ctx);
        if (!membership.member) return reject(std::string(errorKindName(*membership.failure)), membership.reason);
        PerturbationBounds bounds = certifyNeighborhood(f, lambda, omega, *delta, ctx);
        PeriodicPoint seed = findRepellingInOmega(f, omega, config.qMax, ctx);

        cert.status = CertificateStatus::Certified;
        cert.lambdaExponent = lambda.exponent();
        cert.deltaExponent = delta->exponent();
        cert.muExponent = mu.exponent();
        cert.etaExponent = bounds.eta.exponent();
        cert.omega = std::move(omega);
        cert.derivativeNorms = std::move(norms);
        cert.bounds = std::move(bounds);
        cert.seed = std::move(seed);
        return cert;
    } catch (const Error& e) {
        return reject(std::string(errorKindName(e.kind())), e.what());
    }
}

}  // namespace padicdyn
