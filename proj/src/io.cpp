#include "padicdyn/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace padicdyn::io {

using nlohmann::json;

namespace {

constexpr int kSchema = 1;

std::string lineColumn(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json parseJson(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte is one past the offending character
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        std::string msg = e.what();
        if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
        fail(ErrorKind::ParseError, lineColumn(text, at) + ": " + msg);
    }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) fail(ErrorKind::ParseError, where + ": missing field \"" + key + "\"");
    return obj.at(key);
}

std::string str(const json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(ErrorKind::ParseError, where + ": expected a rational string");
}

mpq_class rational(const json& v, const std::string& where) {
    try {
        return parseRational(str(v, where));
    } catch (const Error& e) {
        fail(ErrorKind::ParseError, where + ": " + e.what());
    }
}

long integer(const json& v, const std::string& where) {
    const mpq_class q = rational(v, where);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) fail(ErrorKind::ParseError, where + ": expected an integer");
    return q.get_num().get_si();
}

std::vector<mpq_class> rationalList(const json& v, const std::string& where) {
    if (!v.is_array()) fail(ErrorKind::ParseError, where + ": expected an array");
    std::vector<mpq_class> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

json rationalList(const std::vector<mpq_class>& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(q.get_str());
    return out;
}

std::string radiusString(const Radius& r) { return r.exponentString(); }

Radius radiusFrom(const json& v, const std::string& where) {
    const std::string s = str(v, where);
    if (s == "inf") return Radius::zero();
    return Radius::fromExponent(rational(v, where));
}

json ballJson(const ClosedBall& b) {
    return {{"center", b.center().get_str()},
            {"modulus_exponent", std::to_string(b.pointSetExponent())},
            {"radius_exponent", b.radiusExponent().get_str()}};
}

ClosedBall ballFrom(const json& v, unsigned long p, const std::string& where) {
    const mpq_class center = rational(field(v, "center", where), where + ".center");
    const mpq_class t = rational(field(v, "radius_exponent", where), where + ".radius_exponent");
    const long modulus = integer(field(v, "modulus_exponent", where), where + ".modulus_exponent");
    ClosedBall ball(center, t, p);
    if (ball.pointSetExponent() != modulus || ball.center() != center)
        fail(ErrorKind::ParseError, where + ": ball is not in canonical form");
    return ball;
}

json polynomialJson(const Polynomial& f) {
    json out = rationalList(f.coefficients());
    if (out.empty()) out.push_back("0");
    return out;
}

bool isPrime(unsigned long p) {
    mpz_class z(p);
    return p >= 2 && mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

}  // namespace

mpq_class parseRational(const std::string& text) {
    std::string s = text;
    for (std::size_t pos; (pos = s.find("\xE2\x88\x92")) != std::string::npos;) s.replace(pos, 3, "-");
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    static const std::regex form(R"([+-]?[0-9]+(/[0-9]+)?)");
    require(std::regex_match(s, form), ErrorKind::ParseError, "not a rational number: \"" + text + "\"");
    if (s[0] == '+') s.erase(0, 1);
    const auto slash = s.find('/');
    require(slash == std::string::npos || mpz_class(s.substr(slash + 1)) != 0, ErrorKind::ParseError,
            "zero denominator in \"" + text + "\"");
    mpq_class q(s);
    q.canonicalize();
    return q;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MapSpec parseMapSpec(const std::string& text) {
    const json doc = parseJson(text);
    if (!doc.is_object()) fail(ErrorKind::ParseError, "map file must contain a JSON object");
    const long p = integer(field(doc, "p", "map"), "map.p");
    if (p < 2 || !isPrime(static_cast<unsigned long>(p)))
        fail(ErrorKind::ParseError, "map.p: " + std::to_string(p) + " is not prime");
    const long precision = doc.contains("precision") ? integer(doc.at("precision"), "map.precision") : 128;
    if (precision < 8) fail(ErrorKind::ParseError, "map.precision: must be at least 8");
    const auto num = rationalList(field(doc, "numerator", "map"), "map.numerator");
    const auto den = rationalList(field(doc, "denominator", "map"), "map.denominator");
    std::string label;
    if (doc.contains("label")) label = str(doc.at("label"), "map.label");
    return MapSpec{RationalMap(Polynomial(num), Polynomial(den)), static_cast<unsigned long>(p), precision, label};
}

MapSpec loadMapSpec(const std::string& path) { return parseMapSpec(readFile(path)); }

std::string mapSpecJson(const MapSpec& spec) {
    json doc = {{"p", spec.p},
                {"precision", spec.precision},
                {"numerator", polynomialJson(spec.map.numerator())},
                {"denominator", polynomialJson(spec.map.denominator())}};
    if (!spec.label.empty()) doc["label"] = spec.label;
    return doc.dump(2) + "\n";
}

// ------------------------------------------------------------ certificate

std::string certificateJson(const StabilityCertificate& cert) {
    json doc;
    doc["schema"] = std::to_string(kSchema);
    doc["map"] = {{"p", std::to_string(cert.p)},
                  {"precision", std::to_string(cert.precision)},
                  {"numerator", polynomialJson(cert.f.numerator())},
                  {"denominator", polynomialJson(cert.f.denominator())}};
    doc["config"] = {{"qmax", std::to_string(cert.config.qMax)}, {"depth_cap", std::to_string(cert.config.depthCap)}};
    doc["status"] = cert.certified() ? "Certified" : "NotCertified";
    doc["reason"] = cert.reason;
    doc["detail"] = cert.detail;
    auto opt = [](const std::optional<mpq_class>& q) { return q ? json(q->get_str()) : json(nullptr); };
    doc["lambda_exponent"] = opt(cert.lambdaExponent);
    doc["delta_exponent"] = opt(cert.deltaExponent);
    doc["mu_exponent"] = opt(cert.muExponent);
    doc["eta_exponent"] = opt(cert.etaExponent);
    json omega = json::array();
    for (const auto& b : cert.omega.balls()) omega.push_back(ballJson(b));
    doc["omega"] = omega;
    json norms = json::array();
    for (const auto& r : cert.derivativeNorms) norms.push_back(radiusString(r));
    doc["derivative_norm_exponents"] = norms;
    if (cert.bounds) {
        const auto& b = *cert.bounds;
        const auto& c = b.constants;
        doc["bounds"] = {{"r_exponent", radiusString(b.r)},
                         {"s_exponent", radiusString(b.s)},
                         {"eta_exponent", radiusString(b.eta)},
                         {"numerator", rationalList(b.numerator)},
                         {"denominator", rationalList(b.denominator)},
                         {"literal_numerator", rationalList(b.literalNumerator)},
                         {"literal_denominator", rationalList(b.literalDenominator)},
                         {"constants",
                          {{"M1", radiusString(c.M1)},
                           {"M2", radiusString(c.M2)},
                           {"M1p", radiusString(c.M1p)},
                           {"M2p", radiusString(c.M2p)},
                           {"m2", radiusString(c.m2)},
                           {"MW", radiusString(c.MW)}}}};
    } else {
        doc["bounds"] = nullptr;
    }
    if (cert.seed) {
        doc["seed"] = {{"residue", cert.seed->point.truncation().get_str()},
                       {"precision", std::to_string(cert.seed->point.absolutePrecision())},
                       {"period", std::to_string(cert.seed->period)},
                       {"multiplier_exponent", radiusString(cert.seed->multiplierNorm)}};
    } else {
        doc["seed"] = nullptr;
    }
    doc["notes"] = cert.notes;
    return doc.dump(2) + "\n";
}

StabilityCertificate parseCertificate(const std::string& text) {
    const json doc = parseJson(text);
    if (integer(field(doc, "schema", "certificate"), "schema") != kSchema)
        fail(ErrorKind::ParseError, "unsupported certificate schema");
    const json& m = field(doc, "map", "certificate");
    const long p = integer(field(m, "p", "map"), "map.p");
    if (p < 2 || !isPrime(static_cast<unsigned long>(p))) fail(ErrorKind::ParseError, "map.p is not prime");
    StabilityCertificate cert(RationalMap(Polynomial(rationalList(field(m, "numerator", "map"), "map.numerator")),
                                          Polynomial(rationalList(field(m, "denominator", "map"), "map.denominator"))));
    cert.p = static_cast<unsigned long>(p);
    cert.precision = integer(field(m, "precision", "map"), "map.precision");
    const json& cfg = field(doc, "config", "certificate");
    cert.config.qMax = static_cast<int>(integer(field(cfg, "qmax", "config"), "config.qmax"));
    cert.config.depthCap = static_cast<int>(integer(field(cfg, "depth_cap", "config"), "config.depth_cap"));
    const std::string status = str(field(doc, "status", "certificate"), "status");
    if (status != "Certified" && status != "NotCertified") fail(ErrorKind::ParseError, "status: unknown value");
    cert.status = status == "Certified" ? CertificateStatus::Certified : CertificateStatus::NotCertified;
    cert.reason = str(field(doc, "reason", "certificate"), "reason");
    cert.detail = str(field(doc, "detail", "certificate"), "detail");
    auto opt = [&](const char* key) -> std::optional<mpq_class> {
        const json& v = field(doc, key, "certificate");
        if (v.is_null()) return std::nullopt;
        return rational(v, key);
    };
    cert.lambdaExponent = opt("lambda_exponent");
    cert.deltaExponent = opt("delta_exponent");
    cert.muExponent = opt("mu_exponent");
    cert.etaExponent = opt("eta_exponent");
    std::vector<ClosedBall> balls;
    const json& omega = field(doc, "omega", "certificate");
    for (std::size_t i = 0; i < omega.size(); ++i)
        balls.push_back(ballFrom(omega[i], cert.p, "omega[" + std::to_string(i) + "]"));
    try {
        cert.omega = BallCover(std::move(balls), cert.p);
    } catch (const Error& e) {
        fail(ErrorKind::ParseError, std::string("omega: ") + e.what());
    }
    for (const auto& r : field(doc, "derivative_norm_exponents", "certificate"))
        cert.derivativeNorms.push_back(radiusFrom(r, "derivative_norm_exponents"));
    const json& b = field(doc, "bounds", "certificate");
    if (!b.is_null()) {
        PerturbationBounds bounds;
        bounds.p = cert.p;
        bounds.r = radiusFrom(field(b, "r_exponent", "bounds"), "bounds.r_exponent");
        bounds.s = radiusFrom(field(b, "s_exponent", "bounds"), "bounds.s_exponent");
        bounds.eta = radiusFrom(field(b, "eta_exponent", "bounds"), "bounds.eta_exponent");
        bounds.numerator = rationalList(field(b, "numerator", "bounds"), "bounds.numerator");
        bounds.denominator = rationalList(field(b, "denominator", "bounds"), "bounds.denominator");
        bounds.literalNumerator = rationalList(field(b, "literal_numerator", "bounds"), "bounds.literal_numerator");
        bounds.literalDenominator =
            rationalList(field(b, "literal_denominator", "bounds"), "bounds.literal_denominator");
        const json& c = field(b, "constants", "bounds");
        auto constant = [&](const char* key) { return radiusFrom(field(c, key, "bounds.constants"), key); };
        bounds.constants = {constant("M1"), constant("M2"), constant("M1p"),
                            constant("M2p"), constant("m2"), constant("MW")};
        cert.bounds = std::move(bounds);
    }
    const json& s = field(doc, "seed", "certificate");
    if (!s.is_null()) {
        const auto ctx = Context::make(cert.p, std::max<long>(cert.precision, 8));
        const long prec = integer(field(s, "precision", "seed"), "seed.precision");
        const mpq_class residue = rational(field(s, "residue", "seed"), "seed.residue");
        PadicNumber point = PadicNumber::fromRational(residue, ctx);
        if (prec < PadicNumber::kExactPrecision)
            point = residue == 0 ? PadicNumber::indistinguishableZero(ctx, prec) : point.withPrecision(prec);
        PeriodicPoint seed{std::move(point),
                           static_cast<int>(integer(field(s, "period", "seed"), "seed.period")),
                           radiusFrom(field(s, "multiplier_exponent", "seed"), "seed.multiplier_exponent")};
        cert.seed = std::move(seed);
    }
    for (const auto& n : field(doc, "notes", "certificate")) cert.notes.push_back(str(n, "notes"));
    return cert;
}

// ------------------------------------------------------------------ covers

std::string coverText(const std::vector<BallCover>& covers) {
    std::ostringstream out;
    for (std::size_t k = 0; k < covers.size(); ++k) {
        const auto& c = covers[k];
        out << "Omega_" << k << ": " << c.size() << (c.size() == 1 ? " ball" : " balls") << "\n";
        for (const auto& b : c.balls()) out << "  " << b.toString() << "\n";
    }
    return out.str();
}

std::string coverJson(const std::vector<BallCover>& covers) {
    json levels = json::array();
    for (std::size_t k = 0; k < covers.size(); ++k) {
        json balls = json::array();
        for (const auto& b : covers[k].balls()) balls.push_back(ballJson(b));
        levels.push_back({{"k", std::to_string(k)}, {"balls", balls}});
    }
    json doc = {{"p", covers.empty() ? std::string("0") : std::to_string(covers.front().prime())}, {"levels", levels}};
    return doc.dump(2) + "\n";
}

// ------------------------------------------------------------------- check

CheckReport checkCertificate(const StabilityCertificate& cert, const MapSpec& spec, std::size_t samples,
                             std::uint64_t seed) {
    CheckReport report;
    auto bad = [&](const std::string& why) {
        report.pass = false;
        report.messages.push_back("FAIL " + why);
    };
    auto ok = [&](const std::string& what) { report.messages.push_back("ok   " + what); };

    if (!(cert.f == spec.map) || cert.p != spec.p) {
        bad("certificate is for " + cert.f.toString() + " over Q_" + std::to_string(cert.p) + ", not " +
            spec.map.toString() + " over Q_" + std::to_string(spec.p));
        return report;
    }
    ok("map matches");
    const auto ctx = Context::make(cert.p, cert.precision);

    if (!cert.certified()) {
        const StabilityCertificate again = jStabilityCertificate(cert.f, ctx, cert.config);
        if (again.certified() || again.reason != cert.reason)
            bad("stored verdict NotCertified(" + cert.reason + ") is not reproduced");
        else
            ok("NotCertified(" + cert.reason + ") reproduced");
        return report;
    }
    if (!cert.lambdaExponent || !cert.deltaExponent || !cert.muExponent || !cert.etaExponent || !cert.bounds ||
        !cert.seed || cert.omega.empty()) {
        bad("certified certificate is missing fields");
        return report;
    }
    const Radius lambda = Radius::fromExponent(*cert.lambdaExponent);
    const Radius delta = Radius::fromExponent(*cert.deltaExponent);
    const Radius mu = Radius::fromExponent(*cert.muExponent);
    const BallCover& omega = cert.omega;

    if (!(lambda > Radius::one())) bad("lambda exponent " + cert.lambdaExponent->get_str() + " is not negative");
    const MembershipReport membership = checkMembership(cert.f, lambda, omega, ctx);
    if (!membership.member) {
        bad("membership: " + membership.reason);
    } else {
        ok("f is in N(lambda, Omega)");
        const auto& norms = membership.witness.derivativeNorms;
        if (norms != cert.derivativeNorms) bad("stored derivative norms differ from recomputed ones");
        if (!(lambda == *std::min_element(norms.begin(), norms.end())))
            bad("lambda is not the minimum of |f'| over Omega");
    }
    if (!isPullbackClosed(cert.f, omega, ctx)) bad("Omega is not closed under pullback");

    try {
        const Radius sep = deltaFromSeparation(cert.f, omega);
        if (delta > sep) bad("delta exceeds the separation from critical data");
        else ok("delta separates Omega from critical points, critical values and poles");
    } catch (const Error& e) {
        bad(std::string("separation: ") + e.what());
    }
    Radius minRadius = omega[0].radius();
    for (const auto& b : omega.balls()) minRadius = std::min(minRadius, b.radius());
    if (delta > minRadius) bad("delta exceeds the smallest cover radius");
    if (!(mu == muFromDelta(delta, cert.p))) bad("mu is not p^(-1/(p-1)) * delta");
    else ok("mu = p^(-1/(p-1)) * delta");

    const Radius eta = coverBoundingRadius(omega);
    if (!(eta == Radius::fromExponent(*cert.etaExponent))) bad("eta does not bound Omega");
    const PerturbationBounds fresh = perturbationBounds(cert.f, omega, eta, mu, lambda);
    const auto& stored = *cert.bounds;
    if (fresh.numerator != stored.numerator || fresh.denominator != stored.denominator ||
        fresh.literalNumerator != stored.literalNumerator || fresh.literalDenominator != stored.literalDenominator ||
        !(fresh.r == stored.r) || !(fresh.s == stored.s) || !(fresh.eta == stored.eta))
        bad("coefficient bounds differ from recomputed ones");
    else
        ok("coefficient bounds reproduced");

    try {
        std::vector<PadicNumber> cycle{PadicNumber::fromRational(cert.seed->point.truncation(), ctx)};
        for (int j = 1; j < cert.seed->period; ++j) cycle.push_back(cert.f.evaluateFinite(cycle.back()));
        bool inside = true;
        for (const auto& w : cycle) inside = inside && omega.locate(w).has_value();
        const Radius m = multiplierNorm(cert.f, cycle);
        if (!inside) bad("stored periodic cycle leaves Omega");
        else if (!(m == cert.seed->multiplierNorm) || !(m > Radius::one())) bad("stored cycle is not repelling as stated");
        else ok("repelling cycle of period " + std::to_string(cert.seed->period) + " lies in Omega");
    } catch (const Error& e) {
        bad(std::string("periodic seed: ") + e.what());
    }

    if (report.pass && samples > 0) {
        const BoundSamplingReport sampled = sampleBoundSoundness(cert.f, stored, omega, lambda, samples, 20, seed, ctx);
        if (!sampled.pass())
            bad(std::to_string(sampled.failures) + " of " + std::to_string(sampled.maps) +
                " sampled maps violate the bounds: " + sampled.firstFailure);
        else
            ok(std::to_string(sampled.maps) + " sampled maps inside the bounds verified");
    }
    return report;
}

}  // namespace padicdyn::io
