#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicdyn/padic.hpp"

namespace padicdyn {

/// Dense univariate polynomial with exact rational coefficients c_0..c_m,
/// trailing zeros trimmed. The zero polynomial has degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<mpq_class> coefficients);
    static Polynomial constant(const mpq_class& c) { return Polynomial({c}); }
    static Polynomial monomial(const mpq_class& c, std::size_t degree);
    /// The identity polynomial z.
    static Polynomial variable() { return monomial(1, 1); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool isZero() const noexcept { return c_.empty(); }
    const std::vector<mpq_class>& coefficients() const noexcept { return c_; }
    mpq_class coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
    const mpq_class& leading() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const mpq_class& s) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    Polynomial derivative() const;
    Polynomial pow(unsigned k) const;
    /// Substitution this(inner(z)).
    Polynomial compose(const Polynomial& inner) const;

    mpq_class evaluate(const mpq_class& z) const;
    PadicNumber evaluate(const PadicNumber& z) const;

    /// Quotient and remainder over Q.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
    Polynomial monic() const;
    /// Integer coefficients with content 1 and positive leading coefficient.
    Polynomial primitive() const;

    std::string toString(const std::string& var = "z") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

/// Monic gcd over Q (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun decomposition F = c * prod S_i^i with squarefree, pairwise coprime S_i.
/// Returns (S_i, i) for the non-constant factors.
std::vector<std::pair<Polynomial, int>> squarefreeDecomposition(const Polynomial& f);

/// Coefficients of F(a + u) in u.
Polynomial taylorShift(const Polynomial& f, const mpq_class& a);

/// Resultant via fraction-free elimination on the Sylvester matrix, with the
/// given formal degrees (>= actual degrees; leading zeros are allowed, which
/// yields the resultant of the homogenized forms).
mpq_class resultant(const Polynomial& a, const Polynomial& b, int formalDegreeA, int formalDegreeB);
mpq_class resultant(const Polynomial& a, const Polynomial& b);

struct ResultantCheck {
    bool nonzero = false;
    mpq_class value = 0;
    std::optional<long> valuation;  // p-adic valuation when nonzero
};
ResultantCheck resultantNonzero(const Polynomial& a, const Polynomial& b, unsigned long p);

/// sup of |F| on the closed ball B_{0, eta}: max_i |c_i| * eta^i.
Radius gaussNorm(const Polynomial& f, const Radius& eta, unsigned long p);

/// Polynomial with p-adic coefficients; used where a coefficient is a
/// p-adic point (for instance g1 - c*g2 with c a conjugacy value).
class PadicPolynomial {
public:
    PadicPolynomial(std::vector<PadicNumber> coefficients, ContextPtr ctx);
    static PadicPolynomial from(const Polynomial& f, const ContextPtr& ctx);

    const std::vector<PadicNumber>& coefficients() const noexcept { return c_; }
    const ContextPtr& context() const noexcept { return ctx_; }
    int formalDegree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    PadicNumber evaluate(const PadicNumber& z) const;
    PadicPolynomial derivative() const;
    PadicPolynomial operator-(const PadicPolynomial& o) const;
    PadicPolynomial operator*(const PadicNumber& s) const;
    /// Coefficients of F(a + u) in u, for an exact rational shift.
    PadicPolynomial taylorShift(const mpq_class& a) const;

private:
    std::vector<PadicNumber> c_;
    ContextPtr ctx_;
};

/// f' = (f1' f2 - f1 f2') / f2^2.
struct DerivativeData {
    Polynomial numerator;
    Polynomial denominator;
};

/// f = f1 / f2 with coprime f1, f2, degree d = max(deg f1, deg f2). The
/// representation is normalized: integer coefficients, joint content 1,
/// positive leading coefficient of f2.
class RationalMap {
public:
    RationalMap(Polynomial numerator, Polynomial denominator);
    static RationalMap polynomial(Polynomial numerator) { return RationalMap(std::move(numerator), Polynomial::constant(1)); }

    const Polynomial& numerator() const noexcept { return f1_; }
    const Polynomial& denominator() const noexcept { return f2_; }
    int degree() const noexcept { return degree_; }
    const DerivativeData& derivative() const noexcept { return derivative_; }

    /// Action on P^1; ctx supplies the field when z is infinity.
    ProjectivePoint evaluate(const ProjectivePoint& z, const ContextPtr& ctx) const;
    /// Exact evaluation; nullopt at a pole.
    std::optional<mpq_class> evaluate(const mpq_class& z) const;
    /// f(z) for finite z; InsufficientPrecision if f2(z) is unresolved.
    PadicNumber evaluateFinite(const PadicNumber& z) const;
    /// f'(z) for finite z away from poles.
    PadicNumber derivativeAt(const PadicNumber& z) const;

    RationalMap compose(const RationalMap& inner) const;
    RationalMap iterate(int k, long degreeCap = 4096) const;

    bool operator==(const RationalMap& o) const { return f1_ == o.f1_ && f2_ == o.f2_; }
    std::string toString() const;

private:
    struct Unchecked {};
    RationalMap(Polynomial numerator, Polynomial denominator, Unchecked);
    void normalize();

    Polynomial f1_;
    Polynomial f2_;
    int degree_ = 0;
    DerivativeData derivative_;
};

}  // namespace padicdyn
