#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "padicdyn/dynamics.hpp"
#include "padicdyn/stability.hpp"

using namespace padicdyn;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Run {
    int code = -1;
    std::string out;
};

Run runCli(const std::string& args) {
    const std::string cmd = std::string(PADICDYN_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(PADICDYN_DATA) + "/" + name; }

Polynomial P(std::initializer_list<long> c) {
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    return Polynomial(std::move(v));
}

oracle::Poly toOracle(const Polynomial& f) { return f.coefficients(); }

const RationalMap kF(P({0, -1, 1}), P({2}));
const RationalMap kG(P({4, -1, 1}), P({2}));

BallCover unitCover() { return BallCover({ClosedBall(mpq_class(0), mpq_class(0), 2)}, 2); }

/// Exponent of |x - y| from the stored truncations, as a lower bound.
std::optional<long> gapExponent(const PadicNumber& x, const PadicNumber& y) {
    return oracle::vp(mpq_class(x.truncation() - y.truncation()), x.prime());
}

/// f1/f2 and its derivative at a rational point, exactly.
mpq_class evalMap(const RationalMap& f, const mpq_class& z) {
    return oracle::eval(toOracle(f.numerator()), z) / oracle::eval(toOracle(f.denominator()), z);
}

mpq_class evalDerivative(const RationalMap& f, const mpq_class& z) {
    const auto n = toOracle(f.numerator());
    const auto d = toOracle(f.denominator());
    const mpq_class dz = oracle::eval(d, z);
    return (oracle::eval(oracle::derivative(n), z) * dz - oracle::eval(n, z) * oracle::eval(oracle::derivative(d), z)) /
           (dz * dz);
}

/// (z^2 - z + c)/2 modulo 2^bits on integers.
mpz_class stepMod(const mpz_class& z, long c, unsigned long bits) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 2, bits);
    mpz_class v = (z * z - z + c) / 2;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return v;
}

std::string oracleItinerary(mpz_class z, long c, int depth) {
    std::string code;
    unsigned long bits = static_cast<unsigned long>(depth) + 8;
    for (int j = 0; j < depth; ++j) {
        code += mpz_odd_p(z.get_mpz_t()) ? '1' : '0';
        z = stepMod(z, c, bits--);
    }
    return code;
}

/// Integer representative of a 2-adic integer known modulo 2^k.
mpz_class integerPart(const PadicNumber& x) {
    const mpq_class q = x.truncation();
    if (q.get_den() == 1) return q.get_num();
    mpz_class m, inv;
    mpz_ui_pow_ui(m.get_mpz_t(), x.prime(), 64);
    mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t());
    mpz_class v = q.get_num() * inv;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return v;
}

std::string codeString(const Itinerary& it) {
    std::string s;
    for (std::size_t k : it.symbols) s += static_cast<char>('0' + k);
    return s;
}

Outcome workedExample() {
    Outcome o;
    const auto ctx = Context::make(2, 128);
    const StabilityCertificate c = jStabilityCertificate(kF, ctx);
    const unsigned long p = 2;

    // |f'(z)| = |2z - 1| / |2| on Z_2
    long lambdaExp = 0;
    bool first = true;
    for (long z = 0; z < 256; ++z) {
        const long v = *oracle::vp(evalDerivative(kF, z), p);
        lambdaExp = first ? v : std::max(lambdaExp, v);
        first = false;
    }
    // critical point 1/2, critical value f(1/2); Omega = Z_2 is centered at 0
    const mpq_class crit(1, 2);
    const long sep = std::max(*oracle::vp(crit, p), *oracle::vp(evalMap(kF, crit), p));
    const mpq_class deltaExp = sep + 1;
    const mpq_class muExp = deltaExp + oracle::expansionExponent(p, 1000);

    if (!c.certified()) return {false, "not certified: " + c.reason + " " + c.detail};
    auto expect = [&](const char* name, const std::optional<mpq_class>& got, const mpq_class& want) {
        if (!got || *got != want) {
            o.pass = false;
            o.detail += std::string(name) + " = " + (got ? got->get_str() : "none") + " want " + want.get_str() + "; ";
        }
    };
    expect("lambda", c.lambdaExponent, mpq_class(lambdaExp));
    expect("delta", c.deltaExponent, deltaExp);
    expect("mu", c.muExponent, muExp);
    if (c.omega.size() != 1 || c.omega[0].center() != 0 || c.omega[0].radiusExponent() != 0) {
        o.pass = false;
        o.detail += "Omega is not {B(0, 1)}; ";
    }
    if (o.pass)
        o.detail = "lambda 2^" + mpq_class(-lambdaExp).get_str() + ", delta 2^" + mpq_class(-deltaExp).get_str() +
                   ", mu 2^" + mpq_class(-muExp).get_str() + ", Omega {B(0, 2^0)}";
    return o;
}

Outcome expansionConstant() {
    Outcome o;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL}) {
        const mpq_class got = expansionConstantExponent(p);
        const mpq_class want = oracle::expansionExponent(p, 1000);
        if (got != want) {
            o.pass = false;
            o.detail += "p=" + std::to_string(p) + ": " + got.get_str() + " vs " + want.get_str() + "; ";
        }
    }
    if (o.pass) o.detail = "1/(p-1) for p in {2,3,5,7,11}";
    return o;
}

Outcome newtonCounts() {
    Outcome o;
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> coef(-20, 20), deg(1, 4), prime(0, 2);
    const unsigned long primes[] = {2, 3, 5};
    int mismatches = 0, extension = 0;
    for (int i = 0; i < 500; ++i) {
        const unsigned long p = primes[prime(rng)];
        const int d = deg(rng);
        std::vector<mpq_class> c;
        for (int k = 0; k <= d; ++k) c.emplace_back(coef(rng));
        while (c.back() == 0) c.back() = coef(rng);
        const Polynomial f(c);
        const ClosedBall unit(mpq_class(0), mpq_class(0), p);
        const auto ctx = Context::make(p, 64);

        const int count = countRootsInBall(f, unit);
        const int hull = oracle::newtonPolygonUnitBallCount(c, p);
        const auto residue = oracle::zpRoots(c, p, 10);
        std::string why;
        if (!residue) why = "residue search undecided";
        else if (count != hull) why = "Newton polygon " + std::to_string(hull);
        else {
            try {
                int found = 0;
                for (const auto& r : rootsInBall(f, unit, ctx)) found += r.multiplicity;
                if (found != count || found != *residue) why = "rational roots " + std::to_string(found);
            } catch (const ExtensionFieldError& e) {
                ++extension;
                if (e.newtonCount() != count || e.rationalFound() != *residue || e.deficit() <= 0)
                    why = "deficit accounting " + std::to_string(e.newtonCount()) + "/" +
                          std::to_string(e.rationalFound());
            }
        }
        if (!why.empty()) {
            if (mismatches++ == 0) o.detail = f.toString() + " over Q_" + std::to_string(p) + ": count " +
                                              std::to_string(count) + ", " + why + "; ";
        }
    }
    o.pass = mismatches == 0;
    o.detail += std::to_string(mismatches) + " mismatches in 500 (" + std::to_string(extension) +
                " needed an extension field)";
    return o;
}

Outcome pullbackGeometry(std::vector<BallCover>& covers) {
    Outcome o;
    const auto ctx = Context::make(2, 128);
    covers = omegaSequence(kF, unitCover(), 14, ctx);
    for (int k = 0; k <= 14 && o.pass; ++k) {
        const BallCover& cur = covers[k];
        const mpz_class size = mpz_class(1) << k;
        std::set<mpz_class> centers;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const ClosedBall& b = cur[i];
            if (b.radiusExponent() != k || b.center().get_den() != 1 || b.center() < 0 || b.center() >= size) {
                o = {false, "k=" + std::to_string(k) + ": unexpected ball " + b.toString()};
                break;
            }
            centers.insert(b.center().get_num());
            if (k == 0) continue;
            const ClosedBall& parent = covers[k - 1][cur.parents()[i]];
            mpz_class image = stepMod(b.center().get_num(), 0, static_cast<unsigned long>(k - 1));
            if (!(imageOfBall(kF, b) == parent) || image != parent.center().get_num()) {
                o = {false, "k=" + std::to_string(k) + ": image of " + b.toString() + " is not its parent " +
                                parent.toString()};
                break;
            }
        }
        if (o.pass && (centers.size() != size.get_ui() || cur.size() != size.get_ui() || !cur.pairwiseDisjoint()))
            o = {false, "k=" + std::to_string(k) + ": " + std::to_string(cur.size()) + " balls"};
    }
    if (o.pass) o.detail = "Omega_k = 2^k disjoint balls of radius 2^-k, k <= 14";
    return o;
}

Outcome conjugacyConvergence() {
    Outcome o;
    const auto ctx = Context::make(2, 128);
    const Radius lambda = Radius::fromExponent(-1), mu = Radius::fromExponent(1);
    const int depth = 20;
    ConjugacySolver solver(kF, kG, unitCover(), mu, lambda, ctx, depth);
    ConjugacySolver inverse(kG, kF, unitCover(), mu, lambda, ctx, depth);
    const auto points = sampleCoverPoints(kF, unitCover(), depth, 100, 7, ctx);
    const mpq_class bound = solver.errorBound(depth).exponent();
    int violations = 0;
    auto bad = [&](const std::string& s) {
        if (violations++ == 0) o.detail = s + "; ";
    };
    for (const auto& z : points) {
        const ConjugacyTrace t = solver.trace(z, depth);
        for (int l = 0; l < depth; ++l) {
            const auto gap = gapExponent(t.iterates[l + 1], t.iterates[l]);
            if (!(t.differences[l] <= Radius::fromExponent(1 + l)) || (gap && *gap < 1 + l))
                bad("z=" + z.get_str() + " l=" + std::to_string(l) + ": |h_{l+1} - h_l| too large");
            // g(h_{l+1}(z)) = h_l(f(z)) with h_{l+1}(z) in B(z, mu/|g'(z)|)
            const mpq_class a = t.iterates[l + 1].truncation();
            const PadicNumber b = solver.h(l, *kF.evaluate(z));
            const auto res = oracle::vp(mpq_class(evalMap(kG, a) - b.truncation()), 2);
            const long floor = std::min(t.iterates[l + 1].absolutePrecision(), b.absolutePrecision()) - 1;
            if ((res && *res < floor) || *oracle::vp(mpq_class(a - z), 2) < 2)
                if (a != z) bad("z=" + z.get_str() + " l=" + std::to_string(l) + ": step relation fails");
        }
        const PadicNumber hz = t.iterates[depth];
        const auto lhs = solver.h(depth, *kF.evaluate(z));
        const auto rhs = evalMap(kG, hz.truncation());
        const auto res = oracle::chordalExponent(lhs.truncation(), rhs, 2);
        if (res && *res < bound) bad("z=" + z.get_str() + ": semiconjugacy residual 2^-" + res->get_str());
        const PadicNumber back = inverse.h(depth, hz.truncation());
        const auto err = oracle::vp(mpq_class(back.truncation() - z), 2);
        if (err && *err < bound) bad("z=" + z.get_str() + ": inverse composition off by 2^-" + std::to_string(*err));
    }
    const SemiconjugacyReport rep = verifySemiconjugacy(solver, points, depth);
    if (!rep.pass) bad("library semiconjugacy report fails");
    o.pass = violations == 0;
    o.detail += std::to_string(violations) + " violations over " + std::to_string(points.size()) +
                " points, bound 2^-" + bound.get_str();
    return o;
}

Outcome itineraryConjugacy(const std::vector<BallCover>& covers) {
    Outcome o;
    const auto ctx = Context::make(2, 128);
    const int depth = 12;
    const BallCover& omega1 = covers[1];
    std::set<std::string> codes;
    int violations = 0;
    auto bad = [&](const std::string& s) {
        if (violations++ == 0) o.detail = s + "; ";
    };
    for (const ClosedBall& b : covers[depth].balls()) {
        const std::string code = codeString(itinerary(kF, PadicNumber::fromRational(b.center(), ctx), omega1, depth));
        if (code != oracleItinerary(b.center().get_num(), 0, depth)) bad("center " + b.center().get_str());
        codes.insert(code);
    }
    if (codes.size() != covers[depth].size()) bad(std::to_string(codes.size()) + " distinct codes");

    const Radius lambda = Radius::fromExponent(-1), mu = Radius::fromExponent(1);
    ConjugacySolver solver(kF, kG, unitCover(), mu, lambda, ctx, 20);
    const BallCover gOmega1 = pullbackCover(kG, unitCover(), ctx);
    for (const auto& z : sampleCoverPoints(kF, unitCover(), 24, 100, 11, ctx)) {
        const PadicNumber hz = solver.h(20, z);
        const std::string fc = codeString(itinerary(kF, PadicNumber::fromRational(z, ctx), omega1, depth));
        const std::string gc = codeString(itinerary(kG, hz, gOmega1, depth));
        const mpz_class zi = integerPart(PadicNumber::fromRational(z, ctx));
        if (fc != gc || fc != oracleItinerary(zi, 0, depth) || gc != oracleItinerary(integerPart(hz), 4, depth))
            bad("z=" + z.get_str() + ": " + fc + " vs " + gc);
    }
    o.pass = violations == 0;
    o.detail += std::to_string(violations) + " violations; " + std::to_string(codes.size()) + " distinct codes";
    return o;
}

Outcome perturbationSoundness() {
    Outcome o;
    const auto ctx = Context::make(2, 128);
    const StabilityCertificate c = jStabilityCertificate(kF, ctx);
    if (!c.certified() || !c.bounds) return {false, "worked example not certified"};
    const Radius lambda = Radius::fromExponent(*c.lambdaExponent);
    const auto maps = samplePerturbations(kF, *c.bounds, 100, 2024);
    const auto points = samplePointsInCover(c.omega, 20, 99);
    const mpq_class r = c.bounds->r.exponent(), s = c.bounds->s.exponent();
    int violations = 0;
    auto bad = [&](const std::string& msg) {
        if (violations++ == 0) o.detail = msg + "; ";
    };
    for (const auto& g : maps) {
        const MembershipReport m = checkMembership(g, lambda, c.omega, ctx);
        if (!m.member) bad(g.toString() + ": " + m.reason);
        for (const auto& z : points) {
            const auto dv = oracle::vp(mpq_class(evalMap(kF, z) - evalMap(g, z)), 2);
            const auto dd = oracle::vp(mpq_class(evalDerivative(kF, z) - evalDerivative(g, z)), 2);
            if ((dv && !(mpq_class(*dv) > r)) || (dd && !(mpq_class(*dd) > s)))
                bad(g.toString() + " at z=" + z.get_str());
        }
    }
    if (maps.size() != 100) bad(std::to_string(maps.size()) + " maps sampled");
    const Run refused = runCli("conjugate " + data("running_example.json") + " " + data("g_plus1.json") + " --point 0");
    if (refused.code != 1) bad("f + 1 exit code " + std::to_string(refused.code));
    o.pass = violations == 0;
    o.detail += std::to_string(violations) + " violations over 100 maps x 20 points; f + 1 exit " +
                std::to_string(refused.code);
    return o;
}

Outcome negativeControls() {
    const Run gr = runCli("certify " + data("z2_q3.json"));
    const Run lin = runCli("certify " + data("degree1.json"));
    const bool a = gr.code == 1 && gr.out.find("GoodReduction") != std::string::npos;
    const bool b = lin.code == 1 && lin.out.find("DegreeTooSmall") != std::string::npos;
    return {a && b, "z^2 over Q_3 exit " + std::to_string(gr.code) + (a ? " GoodReduction" : "") + "; degree 1 exit " +
                        std::to_string(lin.code) + (b ? " DegreeTooSmall" : "")};
}

mpq_class randomRational(std::mt19937_64& rng, unsigned long p) {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 10000), e(-5, 5);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    const long k = e(rng);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? mpq_class(q / pk) : mpq_class(q * pk);
}

/// Library norm against the oracle valuation of the exact rational.
bool normMatches(const PadicNumber& x, const mpq_class& exact) {
    const auto v = oracle::vp(exact, x.prime());
    const Radius n = x.norm();
    if (n.isZero()) return !v || *v >= x.absolutePrecision();
    return v && n.exponent() == *v;
}

std::optional<mpq_class> chordalOracle(const std::optional<mpq_class>& x, const std::optional<mpq_class>& y,
                                       unsigned long p) {
    if (!x && !y) return std::nullopt;
    if (x && y) return oracle::chordalExponent(*x, *y, p);
    const mpq_class& f = x ? *x : *y;
    return mpq_class(f == 0 ? 0 : -std::min(0L, *oracle::vp(f, p)));
}

Outcome propertySuites() {
    std::mt19937_64 rng(31337);
    const unsigned long primes[] = {2, 3, 5, 7};
    std::uniform_int_distribution<int> pick(0, 3);
    long cases = 0, failures = 0;
    std::string first;
    auto check = [&](bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures++ == 0) first = what;
    };

    for (int i = 0; i < 3000; ++i) {
        const unsigned long p = primes[pick(rng)];
        const auto ctx = Context::make(p, 64);
        const mpq_class x = randomRational(rng, p), y = randomRational(rng, p);
        const PadicNumber a = PadicNumber::fromRational(x, ctx), b = PadicNumber::fromRational(y, ctx);
        const PadicNumber s = a + b;
        bool ok = normMatches(s, x + y) && s.norm() <= std::max(a.norm(), b.norm());
        if (!(a.norm() == b.norm())) ok = ok && s.norm() == std::max(a.norm(), b.norm());
        check(ok, "ultrametric " + x.get_str() + " + " + y.get_str());
    }
    for (int i = 0; i < 2000; ++i) {
        const unsigned long p = primes[pick(rng)];
        const auto ctx = Context::make(p, 64);
        const mpq_class x = randomRational(rng, p), y = randomRational(rng, p);
        const PadicNumber a = PadicNumber::fromRational(x, ctx), b = PadicNumber::fromRational(y, ctx);
        const PadicNumber m = a * b;
        check(normMatches(m, x * y) && m.norm() == a.norm() * b.norm() && normMatches(a / b, x / y),
              "multiplicativity " + x.get_str() + " * " + y.get_str());
    }
    std::uniform_int_distribution<int> deg(0, 6), coef(-50, 50);
    for (int i = 0; i < 1500; ++i) {
        const unsigned long p = primes[pick(rng)];
        std::vector<mpq_class> c;
        const int d = deg(rng);
        for (int k = 0; k <= d; ++k) c.emplace_back(coef(rng), 1 + (coef(rng) + 50) % 7);
        for (auto& q : c) q.canonicalize();
        const Polynomial f(c);
        const mpq_class a = randomRational(rng, p), u = randomRational(rng, p);
        const Polynomial shifted = taylorShift(f, a);
        const bool ok = taylorShift(shifted, -a) == f &&
                        oracle::eval(toOracle(shifted), u) == oracle::eval(toOracle(f), a + u);
        check(ok, "taylorShift " + f.toString() + " at " + a.get_str());
    }
    std::uniform_int_distribution<int> inf(0, 9);
    for (int i = 0; i < 2000; ++i) {
        const unsigned long p = primes[pick(rng)];
        const auto ctx = Context::make(p, 64);
        std::array<std::optional<mpq_class>, 3> q;
        for (auto& v : q)
            if (inf(rng) != 0) v = randomRational(rng, p);
        auto point = [&](const std::optional<mpq_class>& v) {
            return v ? ProjectivePoint(PadicNumber::fromRational(*v, ctx)) : ProjectivePoint::infinity();
        };
        auto rho = [&](int s, int t) { return chordalDistance(point(q[s]), point(q[t])); };
        bool ok = rho(0, 2) <= std::max(rho(0, 1), rho(1, 2));
        for (auto [s, t] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
            const auto want = chordalOracle(q[s], q[t], p);
            const Radius got = rho(s, t);
            ok = ok && (got.isZero() ? !want || *want >= 64 : want && got.exponent() == *want);
        }
        check(ok, "chordal triangle");
    }

    const auto ctx = Context::make(2, 128);
    const StabilityCertificate c = jStabilityCertificate(kF, ctx);
    const auto maps = samplePerturbations(kF, *c.bounds, 200, 4242);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto seq = omegaSequence(maps[i], c.omega, 6, ctx);
        for (int k = 0; k < 6; ++k) {
            bool ok = seq[k].covers(seq[k + 1]);
            for (const ClosedBall& in : seq[k + 1].balls()) {
                int holders = 0;
                for (const ClosedBall& out : seq[k].balls()) {
                    const auto v = oracle::vp(mpq_class(in.center() - out.center()), 2);
                    holders += in.radiusExponent() >= out.radiusExponent() && (!v || mpq_class(*v) >= out.radiusExponent());
                }
                ok = ok && holders == 1;
            }
            check(ok, "nesting for " + maps[i].toString() + " at k=" + std::to_string(k));
        }
    }
    std::vector<RationalMap> family{kF};
    for (std::size_t i = 0; i < 59; ++i) family.push_back(maps[i]);
    for (const auto& g : family) {
        const auto once = omegaSequence(g, c.omega, 10, ctx);
        const auto twice = omegaSequence(g.iterate(2), c.omega, 5, ctx);
        for (int k = 1; k <= 5; ++k) check(twice[k] == once[2 * k], "J of the iterate for " + g.toString());
    }

    Outcome o{failures == 0 && cases >= 10000, std::to_string(failures) + " failures in " + std::to_string(cases) +
                                                    " cases"};
    if (failures != 0) o.detail += " (first: " + first + ")";
    return o;
}

}  // namespace

int main() {
    int failed = 0;
    std::vector<BallCover> covers;
    auto run = [&](int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (limit > 0 && secs > limit) {
            o.pass = false;
            o.detail += "; over the " + std::to_string(limit).substr(0, 4) + " s limit";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << o.detail << " (" << secs << " s)";
        std::cout << line.str() << std::endl;
        failed += o.pass ? 0 : 1;
    };
    run(1, "worked-example certificate", 2.0, workedExample);
    run(2, "expansion constant", 0.1, expansionConstant);
    run(3, "Newton-count oracle", 30.0, newtonCounts);
    run(4, "pullback geometry", 10.0, [&] { return pullbackGeometry(covers); });
    run(5, "conjugacy convergence", 20.0, conjugacyConvergence);
    run(6, "itinerary conjugacy", 0.0, [&] {
        if (covers.size() <= 12) return Outcome{false, "pullback covers unavailable"};
        return itineraryConjugacy(covers);
    });
    run(7, "perturbation soundness", 0.0, perturbationSoundness);
    run(8, "negative controls", 0.0, negativeControls);
    run(9, "algebraic property suites", 0.0, propertySuites);
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
