#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "padicdyn/io.hpp"

using namespace padicdyn;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3, kExtension = 4 };

int exitFor(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
            return kUsage;
        case ErrorKind::DegreeCapExceeded:
        case ErrorKind::MemoryCapExceeded:
            return kResource;
        case ErrorKind::ExtensionFieldRequired:
            return kExtension;
        default:
            return kNegative;
    }
}

int exitForReason(const std::string& reason) {
    if (reason == "DegreeCapExceeded" || reason == "MemoryCapExceeded") return kResource;
    if (reason == "ExtensionFieldRequired") return kExtension;
    return kNegative;
}

/// Thrown for unreadable or malformed inputs; always exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

io::MapSpec loadMap(const std::string& path) {
    try {
        return io::loadMapSpec(path);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string radiusText(const Radius& r, unsigned long p) { return r.toString(p); }

std::string pointText(const PadicNumber& z) {
    if (z.absolutePrecision() >= z.context()->precision() && z.truncation().get_den() == 1 &&
        abs(z.truncation()) < 1000000)
        return z.truncation().get_str();
    return z.toString();
}

std::string exponentText(const std::optional<mpq_class>& e, unsigned long p) {
    return e ? radiusText(Radius::fromExponent(*e), p) + " (exponent " + e->get_str() + ")" : "-";
}

void printRoots(std::ostream& out, const std::string& title, const Polynomial& f, unsigned long p,
                const ContextPtr& ctx, const RationalMap* image) {
    out << title << ":";
    if (f.degree() <= 0) {
        out << " none\n";
        return;
    }
    const RationalRootSearch found = findRationalRoots(f, rootBoundBall(f, p), ctx);
    if (found.roots.empty()) out << " none in Q_" << p;
    out << "\n";
    for (const auto& r : found.roots) {
        const mpq_class q = r.root.truncation();
        const bool exact = f.evaluate(q) == 0;
        out << "  " << (exact ? q.get_str() : pointText(r.root)) << "  |z| = " << radiusText(r.root.norm(), p);
        if (r.multiplicity > 1) out << "  multiplicity " << r.multiplicity;
        if (image && exact) {
            const auto v = image->evaluate(q);
            out << "  value " << (v ? v->get_str() : std::string("inf"));
            if (v) out << "  |v| = " << radiusText(PadicNumber::fromRational(*v, ctx).norm(), p);
        } else if (image) {
            const ProjectivePoint v = image->evaluate(ProjectivePoint(r.root), ctx);
            out << "  value " << v.toString();
            if (!v.isInfinity()) out << "  |v| = " << radiusText(v.finite().norm(), p);
        }
        out << "\n";
    }
    const long outside = found.newtonCount - static_cast<long>(found.rationalCount());
    if (outside > 0) out << "  plus " << outside << " outside Q_" << p << "\n";
}

int cmdAnalyze(const std::string& path, int qMax) {
    const io::MapSpec spec = loadMap(path);
    const auto ctx = Context::make(spec.p, spec.precision);
    const RationalMap& f = spec.map;
    const unsigned long p = spec.p;
    std::cout << "map: " << f.toString() << " over Q_" << p << ", precision " << spec.precision << "\n";
    std::cout << "degree: " << f.degree() << "\n";
    std::cout << "good reduction: " << (goodReductionTest(f, p) ? "true" : "false") << "\n";
    if (f.degree() >= 1) {
        std::cout << "periodic points:\n";
        for (int q = 1; q <= qMax; ++q) {
            const RationalMap fq = f.iterate(q);
            const Polynomial fixed = fq.numerator() - Polynomial::variable() * fq.denominator();
            if (fixed.isZero()) continue;
            const PeriodicSearch ps = periodicPoints(f, q, rootBoundBall(fixed, p), ctx);
            for (const auto& pt : ps.points) {
                if (pt.period != q) continue;
                std::cout << "  period " << q << ": " << pointText(pt.point)
                          << "  |multiplier| = " << radiusText(pt.multiplierNorm, p)
                          << (pt.repelling() ? "  repelling" : "") << "\n";
            }
            if (ps.irrationalCount > 0)
                std::cout << "  period " << q << ": " << ps.irrationalCount << " solutions outside Q_" << p << "\n";
        }
    }
    const Polynomial& w = f.derivative().numerator;
    printRoots(std::cout, "critical points", w, p, ctx, &f);
    if (f.degree() >= 1 && w.degree() < 2 * f.degree() - 2)
        std::cout << "  inf  multiplicity " << 2 * f.degree() - 2 - w.degree() << "  value "
                  << f.evaluate(ProjectivePoint::infinity(), ctx).toString() << "\n";
    printRoots(std::cout, "poles", f.denominator(), p, ctx, nullptr);
    return kOk;
}

void printCertificate(std::ostream& out, const StabilityCertificate& c) {
    out << "map: " << c.f.toString() << " over Q_" << c.p << "\n";
    out << "status: " << (c.certified() ? "Certified" : "NotCertified");
    if (!c.certified()) out << " (" << c.reason << ")";
    out << "\n";
    if (!c.certified()) {
        out << "detail: " << c.detail << "\n";
        return;
    }
    out << "lambda: " << exponentText(c.lambdaExponent, c.p) << "\n";
    out << "delta: " << exponentText(c.deltaExponent, c.p) << "\n";
    out << "mu: " << exponentText(c.muExponent, c.p) << "\n";
    out << "eta: " << exponentText(c.etaExponent, c.p) << "\n";
    out << "Omega: " << c.omega.size() << (c.omega.size() == 1 ? " ball" : " balls") << "\n";
    for (std::size_t i = 0; i < c.omega.size(); ++i)
        out << "  " << c.omega[i].toString() << "  |f'| = " << radiusText(c.derivativeNorms[i], c.p) << "\n";
    if (c.seed)
        out << "repelling cycle: " << pointText(c.seed->point) << " period " << c.seed->period
            << "  |multiplier| = " << radiusText(c.seed->multiplierNorm, c.p) << "\n";
    if (c.bounds) {
        out << "numerator bounds (|e_i| < p^-x):";
        for (const auto& x : c.bounds->numerator) out << " " << x.get_str();
        out << "\ndenominator bounds (|k_j| < p^-x):";
        for (const auto& x : c.bounds->denominator) out << " " << x.get_str();
        out << "\n";
    }
}

int cmdCertify(const std::string& path, int qMax, int depthCap, long precision, const std::string& outPath) {
    const io::MapSpec spec = loadMap(path);
    const auto ctx = Context::make(spec.p, precision > 0 ? precision : spec.precision);
    const StabilityCertificate cert = jStabilityCertificate(spec.map, ctx, {qMax, depthCap});
    const std::string json = io::certificateJson(cert);
    if (outPath.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(outPath, std::ios::binary);
        if (!out) throw InputError("cannot write " + outPath);
        out << json;
        printCertificate(std::cout, cert);
    }
    if (!cert.certified()) {
        std::cerr << "NotCertified(" << cert.reason << "): " << cert.detail << "\n";
        return exitForReason(cert.reason);
    }
    return kOk;
}

StabilityCertificate requireCertificate(const io::MapSpec& spec, const ContextPtr& ctx) {
    StabilityCertificate cert = jStabilityCertificate(spec.map, ctx);
    if (!cert.certified()) {
        const ErrorKind kind = cert.reason == "ExtensionFieldRequired" ? ErrorKind::ExtensionFieldRequired
                               : cert.reason == "DegreeCapExceeded"    ? ErrorKind::DegreeCapExceeded
                               : cert.reason == "MemoryCapExceeded"    ? ErrorKind::MemoryCapExceeded
                                                                       : ErrorKind::InvalidArgument;
        fail(kind, "f is not certified: " + cert.reason + ": " + cert.detail);
    }
    return cert;
}

int cmdJulia(const std::string& path, int depth, const std::string& format, std::size_t memoryCap) {
    const io::MapSpec spec = loadMap(path);
    const auto ctx = Context::make(spec.p, spec.precision);
    const StabilityCertificate cert = requireCertificate(spec, ctx);
    const auto covers = omegaSequence(spec.map, cert.omega, depth, ctx, memoryCap);
    std::cout << (format == "json" ? io::coverJson(covers) : io::coverText(covers));
    return kOk;
}

int cmdConjugate(const std::string& pathF, const std::string& pathG, const std::string& point, int depth, bool verify,
                 std::size_t samples, std::uint64_t seed) {
    const io::MapSpec f = loadMap(pathF);
    const io::MapSpec g = loadMap(pathG);
    mpq_class z;
    try {
        z = io::parseRational(point);
    } catch (const Error& e) {
        throw InputError(std::string("--point: ") + e.what());
    }
    if (f.p != g.p) throw InputError("maps are over different fields");
    const auto ctx = Context::make(f.p, std::max(f.precision, g.precision));
    const StabilityCertificate cert = requireCertificate(f, ctx);
    const Radius lambda = Radius::fromExponent(*cert.lambdaExponent);
    const Radius mu = Radius::fromExponent(*cert.muExponent);
    const NeighborhoodCheck check = checkPerturbation(f.map, g.map, cert.omega, lambda, mu, &*cert.bounds, ctx);
    if (!check.inside) fail(ErrorKind::GOutsideCertifiedNeighborhood, check.reason);
    std::cout << "g: " << g.map.toString() << "\n";
    std::cout << "within coefficient bounds: " << (check.withinCoefficientBounds ? "yes" : "no") << "\n";
    std::cout << "sup |f - g| on Omega: " << radiusText(*check.supDifference, f.p) << " <= mu = "
              << radiusText(mu, f.p) << "\n";
    ConjugacySolver solver(f.map, g.map, cert.omega, mu, lambda, ctx, depth);
    const ConjugateResult r = conjugatePoint(solver, z, depth);
    std::cout << "h_" << depth << "(" << z.get_str() << ") = " << r.value.toString() << "\n";
    std::cout << "error bound: " << radiusText(r.errorBound, f.p) << " (exponent " << r.errorBound.exponentString()
              << ")\n";
    if (!verify) return kOk;
    const auto points = sampleCoverPoints(f.map, cert.omega, depth + 1, samples, seed, ctx);
    const SemiconjugacyReport rep = verifySemiconjugacy(solver, points, depth);
    std::size_t passed = 0;
    for (const auto& s : rep.samples) passed += s.pass ? 1 : 0;
    std::cout << "semiconjugacy: " << passed << "/" << rep.samples.size() << " samples within "
              << radiusText(rep.bound, f.p) << " " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? kOk : kNegative;
}

int cmdCheck(const std::string& certPath, const std::string& mapPath, std::size_t samples, std::uint64_t seed) {
    StabilityCertificate cert = [&] {
        try {
            return io::parseCertificate(io::readFile(certPath));
        } catch (const Error& e) {
            throw InputError(certPath + ": " + e.what());
        }
    }();
    const io::MapSpec spec = loadMap(mapPath);
    const io::CheckReport rep = io::checkCertificate(cert, spec, samples, seed);
    for (const auto& m : rep.messages) std::cout << m << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified J-stability of expanding rational maps over Q_p"};
    app.require_subcommand(1);

    std::string mapPath, mapG, certPath, outPath, format = "text", point;
    int qMax = 6, depthCap = 20, depth = 3, analyzeQ = 3;
    long precision = 0;
    std::size_t samples = 20, memoryCap = std::size_t{1} << 20;
    std::uint64_t seed = 1;
    bool verify = false;

    auto* analyze = app.add_subcommand("analyze", "degree, reduction, cycles, critical data");
    analyze->add_option("map", mapPath, "map file")->required();
    analyze->add_option("--qmax", analyzeQ, "largest period listed")->check(CLI::Range(1, 12));

    auto* certify = app.add_subcommand("certify", "build a J-stability certificate");
    certify->add_option("map", mapPath, "map file")->required();
    certify->add_option("--qmax", qMax, "largest period searched for repelling seeds")->check(CLI::Range(1, 12));
    certify->add_option("--depth-cap", depthCap, "saturation depth limit")->check(CLI::PositiveNumber);
    certify->add_option("--precision", precision, "absolute p-adic precision (default: from map file)")
        ->check(CLI::Range(8L, 1L << 20));
    certify->add_option("--out", outPath, "write the certificate here and print a summary");

    auto* julia = app.add_subcommand("julia", "list the covers Omega_0 .. Omega_k");
    julia->add_option("map", mapPath, "map file")->required();
    julia->add_option("--depth", depth, "k")->check(CLI::NonNegativeNumber);
    julia->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    julia->add_option("--memory-cap", memoryCap, "largest number of balls");

    auto* conjugate = app.add_subcommand("conjugate", "evaluate the conjugacy between f and g");
    conjugate->add_option("f", mapPath, "map file for f")->required();
    conjugate->add_option("g", mapG, "map file for g")->required();
    conjugate->add_option("--point", point, "rational point z of the Julia set cover")->required();
    conjugate->add_option("--depth", depth, "recursion depth k")->check(CLI::Range(0, 4096));
    conjugate->add_flag("--verify", verify, "check the semiconjugacy on sampled points");
    conjugate->add_option("--samples", samples, "number of sampled points");
    conjugate->add_option("--seed", seed, "sampling seed");

    auto* check = app.add_subcommand("check", "re-verify a certificate");
    check->add_option("certificate", certPath, "certificate file")->required();
    check->add_option("map", mapPath, "map file")->required();
    check->add_option("--samples", samples, "number of sampled perturbations");
    check->add_option("--seed", seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) return cmdAnalyze(mapPath, analyzeQ);
        if (*certify) return cmdCertify(mapPath, qMax, depthCap, precision, outPath);
        if (*julia) return cmdJulia(mapPath, depth, format, memoryCap);
        if (*conjugate) return cmdConjugate(mapPath, mapG, point, depth, verify, samples, seed);
        if (*check) return cmdCheck(certPath, mapPath, samples, seed);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exitFor(e.kind());
    }
    return kUsage;
}
