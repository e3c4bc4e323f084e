#include "padicdyn/poly.hpp"

#include <algorithm>
#include <sstream>

namespace padicdyn {

// ------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<mpq_class> coefficients) : c_(std::move(coefficients)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

Polynomial Polynomial::monomial(const mpq_class& c, std::size_t degree) {
    std::vector<mpq_class> coeffs(degree + 1, mpq_class(0));
    coeffs[degree] = c;
    return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpq_class& Polynomial::leading() const {
    require(!c_.empty(), ErrorKind::InvalidArgument, "zero polynomial has no leading coefficient");
    return c_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<mpq_class> out(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
    std::vector<mpq_class> out(c_);
    for (auto& c : out) c = -c;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (isZero() || o.isZero()) return {};
    std::vector<mpq_class> out(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const mpq_class& s) const {
    std::vector<mpq_class> out(c_);
    for (auto& c : out) c *= s;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpq_class> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(1);
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    Polynomial acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
}

mpq_class Polynomial::evaluate(const mpq_class& z) const {
    mpq_class acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
}

PadicNumber Polynomial::evaluate(const PadicNumber& z) const {
    const ContextPtr& ctx = z.context();
    PadicNumber acc = PadicNumber::exactZero(ctx);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + PadicNumber::fromRational(c_[i], ctx);
    return acc;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    require(!divisor.isZero(), ErrorKind::InvalidArgument, "polynomial division by zero");
    std::vector<mpq_class> rem(c_);
    const int dd = divisor.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<mpq_class> quot(static_cast<std::size_t>(degree() - dd + 1), mpq_class(0));
    const mpq_class& lead = divisor.leading();
    for (int k = degree() - dd; k >= 0; --k) {
        const mpq_class q = rem[static_cast<std::size_t>(k + dd)] / lead;
        quot[static_cast<std::size_t>(k)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::monic() const {
    if (isZero()) return {};
    return *this * (mpq_class(1) / leading());
}

Polynomial Polynomial::primitive() const {
    if (isZero()) return {};
    mpz_class denLcm = 1;
    for (const auto& c : c_) mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_class numGcd = 0;
    for (const auto& c : c_) {
        const mpz_class n = c.get_num() * (denLcm / c.get_den());
        mpz_gcd(numGcd.get_mpz_t(), numGcd.get_mpz_t(), n.get_mpz_t());
    }
    mpq_class scale(denLcm, numGcd);
    scale.canonicalize();
    if (leading() < 0) scale = -scale;
    return *this * scale;
}

std::string Polynomial::toString(const std::string& var) const {
    if (isZero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpq_class c = c_[i];
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        c = abs(c);
        const bool unitCoeff = c == 1 && i > 0;
        if (!unitCoeff) out << c.get_str();
        if (i > 0) {
            if (!unitCoeff) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    return out.str();
}

// ------------------------------------------------------- free functions

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a.primitive();
    Polynomial y = b.primitive();
    while (!y.isZero()) {
        Polynomial r = x.divmod(y).second;
        x = std::move(y);
        y = r.primitive();
    }
    return x.monic();
}

std::vector<std::pair<Polynomial, int>> squarefreeDecomposition(const Polynomial& f) {
    std::vector<std::pair<Polynomial, int>> out;
    if (f.degree() <= 0) return out;
    const Polynomial fp = f.derivative();
    const Polynomial a0 = gcd(f, fp);
    Polynomial b = f.divmod(a0).first;
    Polynomial c = fp.divmod(a0).first;
    Polynomial d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        const Polynomial a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a.primitive(), i);
        b = b.divmod(a).first;
        c = d.divmod(a).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

Polynomial taylorShift(const Polynomial& f, const mpq_class& a) {
    std::vector<mpq_class> b = f.coefficients();
    const std::size_t n = b.size();
    if (n == 0 || a == 0) return f;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) b[j] += a * b[j + 1];
    return Polynomial(std::move(b));
}

namespace {

// Coefficients high-to-low, padded to the formal degree, scaled to integers.
std::vector<mpz_class> integerRow(const Polynomial& f, int formalDegree, mpz_class& scale) {
    scale = 1;
    for (const auto& c : f.coefficients()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> row(static_cast<std::size_t>(formalDegree + 1), mpz_class(0));
    for (int i = 0; i <= formalDegree; ++i) {
        const mpq_class c = f.coefficient(static_cast<std::size_t>(i));
        row[static_cast<std::size_t>(formalDegree - i)] = c.get_num() * (scale / c.get_den());
    }
    return row;
}

mpz_class bareissDeterminant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

mpq_class resultant(const Polynomial& a, const Polynomial& b, int formalDegreeA, int formalDegreeB) {
    require(formalDegreeA >= a.degree() && formalDegreeB >= b.degree(), ErrorKind::InvalidArgument,
            "formal degree below actual degree");
    if (a.isZero() || b.isZero()) return 0;
    mpz_class sa, sb;
    const auto ra = integerRow(a, formalDegreeA, sa);
    const auto rb = integerRow(b, formalDegreeB, sb);
    const std::size_t m = static_cast<std::size_t>(formalDegreeA);
    const std::size_t n = static_cast<std::size_t>(formalDegreeB);
    const std::size_t size = m + n;
    std::vector<std::vector<mpz_class>> syl(size, std::vector<mpz_class>(size, mpz_class(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j <= m; ++j) syl[r][r + j] = ra[j];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j) syl[n + r][r + j] = rb[j];
    const mpz_class det = bareissDeterminant(std::move(syl));
    mpz_class denom, t;
    mpz_pow_ui(denom.get_mpz_t(), sa.get_mpz_t(), n);
    mpz_pow_ui(t.get_mpz_t(), sb.get_mpz_t(), m);
    denom *= t;
    mpq_class out(det, denom);
    out.canonicalize();
    return out;
}

mpq_class resultant(const Polynomial& a, const Polynomial& b) {
    return resultant(a, b, std::max(a.degree(), 0), std::max(b.degree(), 0));
}

ResultantCheck resultantNonzero(const Polynomial& a, const Polynomial& b, unsigned long p) {
    ResultantCheck out;
    out.value = resultant(a, b);
    out.nonzero = out.value != 0;
    if (out.nonzero) out.valuation = valuation(out.value, p);
    return out;
}

Radius gaussNorm(const Polynomial& f, const Radius& eta, unsigned long p) {
    if (f.isZero()) return Radius::zero();
    if (eta.isZero()) {
        const mpq_class& c0 = f.coefficients()[0];
        return c0 == 0 ? Radius::zero() : Radius::fromExponent(mpq_class(valuation(c0, p)));
    }
    std::optional<mpq_class> best;
    const auto& c = f.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        mpq_class e = mpq_class(valuation(c[i], p)) + eta.exponent() * static_cast<long>(i);
        if (!best || e < *best) best = e;
    }
    return Radius::fromExponent(*best);
}

// -------------------------------------------------------- PadicPolynomial

PadicPolynomial::PadicPolynomial(std::vector<PadicNumber> coefficients, ContextPtr ctx)
    : c_(std::move(coefficients)), ctx_(std::move(ctx)) {}

PadicPolynomial PadicPolynomial::from(const Polynomial& f, const ContextPtr& ctx) {
    std::vector<PadicNumber> c;
    c.reserve(f.coefficients().size());
    for (const auto& q : f.coefficients()) c.push_back(PadicNumber::fromRational(q, ctx));
    return PadicPolynomial(std::move(c), ctx);
}

PadicNumber PadicPolynomial::evaluate(const PadicNumber& z) const {
    PadicNumber acc = PadicNumber::exactZero(ctx_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
}

PadicPolynomial PadicPolynomial::derivative() const {
    std::vector<PadicNumber> out;
    for (std::size_t i = 1; i < c_.size(); ++i)
        out.push_back(c_[i] * PadicNumber::fromInteger(static_cast<long>(i), ctx_));
    return PadicPolynomial(std::move(out), ctx_);
}

PadicPolynomial PadicPolynomial::operator-(const PadicPolynomial& o) const {
    const std::size_t n = std::max(c_.size(), o.c_.size());
    std::vector<PadicNumber> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PadicNumber a = i < c_.size() ? c_[i] : PadicNumber::exactZero(ctx_);
        PadicNumber b = i < o.c_.size() ? o.c_[i] : PadicNumber::exactZero(ctx_);
        out.push_back(a - b);
    }
    return PadicPolynomial(std::move(out), ctx_);
}

PadicPolynomial PadicPolynomial::operator*(const PadicNumber& s) const {
    std::vector<PadicNumber> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c * s);
    return PadicPolynomial(std::move(out), ctx_);
}

PadicPolynomial PadicPolynomial::taylorShift(const mpq_class& a) const {
    std::vector<PadicNumber> b = c_;
    const std::size_t n = b.size();
    if (n == 0 || a == 0) return *this;
    const PadicNumber pa = PadicNumber::fromRational(a, ctx_);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) b[j] = b[j] + pa * b[j + 1];
    return PadicPolynomial(std::move(b), ctx_);
}

// ------------------------------------------------------------ RationalMap

RationalMap::RationalMap(Polynomial numerator, Polynomial denominator)
    : f1_(std::move(numerator)), f2_(std::move(denominator)) {
    require(!f2_.isZero(), ErrorKind::InvalidArgument, "denominator is the zero polynomial");
    if (gcd(f1_, f2_).degree() > 0)
        fail(ErrorKind::NotCoprime, "numerator and denominator share a common factor");
    normalize();
}

RationalMap::RationalMap(Polynomial numerator, Polynomial denominator, Unchecked)
    : f1_(std::move(numerator)), f2_(std::move(denominator)) {
    normalize();
}

void RationalMap::normalize() {
    mpz_class denLcm = 1;
    for (const auto* f : {&f1_, &f2_})
        for (const auto& c : f->coefficients()) mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_class numGcd = 0;
    for (const auto* f : {&f1_, &f2_})
        for (const auto& c : f->coefficients()) {
            const mpz_class n = c.get_num() * (denLcm / c.get_den());
            mpz_gcd(numGcd.get_mpz_t(), numGcd.get_mpz_t(), n.get_mpz_t());
        }
    mpq_class scale(denLcm, numGcd);
    scale.canonicalize();
    if (f2_.leading() < 0) scale = -scale;
    f1_ = f1_ * scale;
    f2_ = f2_ * scale;
    degree_ = std::max(f1_.degree(), f2_.degree());
    derivative_.numerator = f1_.derivative() * f2_ - f1_ * f2_.derivative();
    derivative_.denominator = f2_ * f2_;
}

ProjectivePoint RationalMap::evaluate(const ProjectivePoint& z, const ContextPtr& ctx) const {
    if (z.isInfinity()) {
        if (f1_.degree() > f2_.degree()) return ProjectivePoint::infinity();
        if (f1_.degree() < f2_.degree()) return ProjectivePoint(PadicNumber::exactZero(ctx));
        return ProjectivePoint(PadicNumber::fromRational(f1_.leading() / f2_.leading(), ctx));
    }
    const PadicNumber& w = z.finite();
    const PadicNumber den = f2_.evaluate(w);
    const PadicNumber num = f1_.evaluate(w);
    if (den.isExactZero()) return ProjectivePoint::infinity();
    if (den.isZeroTag())
        fail(ErrorKind::InsufficientPrecision, "denominator indistinguishable from zero at " + w.toString());
    return ProjectivePoint(num / den);
}

std::optional<mpq_class> RationalMap::evaluate(const mpq_class& z) const {
    const mpq_class den = f2_.evaluate(z);
    if (den == 0) return std::nullopt;
    return f1_.evaluate(z) / den;
}

PadicNumber RationalMap::evaluateFinite(const PadicNumber& z) const {
    const ProjectivePoint w = evaluate(ProjectivePoint(z), z.context());
    require(!w.isInfinity(), ErrorKind::PoleInBall, "point " + z.toString() + " is a pole");
    return w.finite();
}

PadicNumber RationalMap::derivativeAt(const PadicNumber& z) const {
    const PadicNumber den = derivative_.denominator.evaluate(z);
    if (den.isZeroTag()) fail(ErrorKind::InsufficientPrecision, "derivative evaluated at a pole");
    return derivative_.numerator.evaluate(z) / den;
}

RationalMap RationalMap::compose(const RationalMap& inner) const {
    const int d = degree_;
    const auto du = static_cast<std::size_t>(d);
    std::vector<Polynomial> p1(du + 1), p2(du + 1);
    p1[0] = Polynomial::constant(1);
    p2[0] = Polynomial::constant(1);
    for (std::size_t k = 1; k <= du; ++k) {
        p1[k] = p1[k - 1] * inner.f1_;
        p2[k] = p2[k - 1] * inner.f2_;
    }
    Polynomial num, den;
    for (std::size_t k = 0; k <= du; ++k) {
        const Polynomial term = p1[k] * p2[du - k];
        if (f1_.coefficient(k) != 0) num = num + term * f1_.coefficient(k);
        if (f2_.coefficient(k) != 0) den = den + term * f2_.coefficient(k);
    }
    // Homogeneous composition of coprime pairs stays coprime.
    return RationalMap(std::move(num), std::move(den), Unchecked{});
}

RationalMap RationalMap::iterate(int k, long degreeCap) const {
    require(k >= 1, ErrorKind::InvalidArgument, "iteration count must be >= 1");
    long total = 1;
    for (int i = 0; i < k; ++i) {
        total *= std::max(degree_, 1);
        if (total > degreeCap)
            fail(ErrorKind::DegreeCapExceeded, "degree of f^" + std::to_string(k) + " exceeds cap " +
                                                   std::to_string(degreeCap));
    }
    RationalMap result = *this;
    for (int i = 1; i < k; ++i) result = compose(result);
    return result;
}

std::string RationalMap::toString() const {
    const std::string num = f1_.degree() > 0 && f1_.coefficients().size() > 1 ? "(" + f1_.toString() + ")" : f1_.toString();
    if (f2_ == Polynomial::constant(1)) return f1_.toString();
    const std::string den = f2_.degree() > 0 ? "(" + f2_.toString() + ")" : f2_.toString();
    return num + "/" + den;
}

}  // namespace padicdyn
