#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicdyn/stability.hpp"

namespace padicdyn::io {

/// Exact rational from "a", "a/b", with '-' or U+2212 as the minus sign.
mpq_class parseRational(const std::string& text);

struct MapSpec {
    RationalMap map;
    unsigned long p = 2;
    long precision = 128;
    std::string label;
};

/// ParseError carries line and column of malformed JSON.
MapSpec parseMapSpec(const std::string& text);
MapSpec loadMapSpec(const std::string& path);
std::string mapSpecJson(const MapSpec& spec);

std::string readFile(const std::string& path);

std::string certificateJson(const StabilityCertificate& cert);
StabilityCertificate parseCertificate(const std::string& text);

std::string coverText(const std::vector<BallCover>& covers);
std::string coverJson(const std::vector<BallCover>& covers);

struct CheckReport {
    bool pass = true;
    std::vector<std::string> messages;
};

/// Independent re-verification of a stored certificate against a map file.
CheckReport checkCertificate(const StabilityCertificate& cert, const MapSpec& spec, std::size_t samples,
                             std::uint64_t seed);

}  // namespace padicdyn::io
