#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"
#include "pv/errors.hpp"
#include "pv/polynomial.hpp"
#include "pv/subdivide.hpp"

namespace pv {

// Shortest round-trip decimal representation; locale independent, so output
// files are byte reproducible.
std::string format_double(double v);

// Provenance block attached to generated files: the command line that made
// the file, the fully resolved options, the seed, the library version, and
// the elapsed wall time.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double wall_ms = 0.0;
};
nlohmann::json manifest_json(const RunManifest& m);

using PolynomialVariant = std::variant<AffinePolynomial, HomogeneousPolynomial>;

nlohmann::json polynomial_json(const AffinePolynomial& f);
nlohmann::json polynomial_json(const HomogeneousPolynomial& f);

// Accepts the schema {"n", "d", "homogeneous", "terms": [{"alpha", "coeff"}]}
// and ignores unknown keys. Duplicate exponents are summed.
PolynomialVariant polynomial_from_json(const nlohmann::json& j);
PolynomialVariant load_polynomial(const std::filesystem::path& path);

void save_json(const nlohmann::json& j, const std::filesystem::path& path);

nlohmann::json subdivision_json(const Subdivision& s);

// 1024 x 1024 viewport of the leaf boxes over [-a, a]^2, with the optional
// segment approximation of the curve drawn on top. Plane subdivisions only.
std::string subdivision_svg(const Subdivision& s, const PolylineSet* curve);

}  // namespace pv
