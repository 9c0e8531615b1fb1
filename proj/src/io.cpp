#include "pv/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace pv {

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

nlohmann::json manifest_json(const RunManifest& m) {
  return nlohmann::json{{"command", m.command},
                        {"config", m.config},
                        {"seed", m.seed},
                        {"version", m.version},
                        {"wall_ms", m.wall_ms}};
}

namespace {

template <typename Poly>
nlohmann::json polynomial_json_impl(const Poly& f, int n, int d, bool homogeneous) {
  nlohmann::json terms = nlohmann::json::array();
  const auto& exps = f.basis().exponents();
  for (std::size_t j = 0; j < exps.size(); ++j) {
    const double c = f.coefficients()[j];
    if (c == 0.0) continue;
    terms.push_back({{"alpha", exps[j]}, {"coeff", c}});
  }
  return nlohmann::json{{"n", n}, {"d", d}, {"homogeneous", homogeneous}, {"terms", terms}};
}

}  // namespace

nlohmann::json polynomial_json(const AffinePolynomial& f) {
  return polynomial_json_impl(f, f.var_count(), f.degree_bound(), false);
}

nlohmann::json polynomial_json(const HomogeneousPolynomial& f) {
  return polynomial_json_impl(f, f.affine_vars(), f.degree(), true);
}

PolynomialVariant polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("polynomial file must hold a JSON object");
  for (const char* key : {"n", "d", "homogeneous", "terms"})
    if (!j.contains(key)) throw DomainError(std::string("polynomial file is missing \"") + key + "\"");

  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  const bool homogeneous = j.at("homogeneous").get<bool>();
  if (n < 1) throw DomainError("n must be at least 1");
  if (d < 1) throw DomainError("d must be at least 1");
  const auto& jterms = j.at("terms");
  if (!jterms.is_array()) throw DomainError("\"terms\" must be an array");

  std::vector<Term> terms;
  terms.reserve(jterms.size());
  const std::size_t want = static_cast<std::size_t>(homogeneous ? n + 1 : n);
  for (const auto& jt : jterms) {
    if (!jt.is_object() || !jt.contains("alpha") || !jt.contains("coeff"))
      throw DomainError("each term needs \"alpha\" and \"coeff\"");
    Term t;
    t.alpha = jt.at("alpha").get<MultiIndex>();
    t.coeff = jt.at("coeff").get<double>();
    if (t.alpha.size() != want)
      throw DomainError("term exponent length does not match the variable count");
    for (int e : t.alpha)
      if (e < 0) throw DomainError("term exponents must be nonnegative");
    terms.push_back(std::move(t));
  }

  if (homogeneous) return HomogeneousPolynomial::from_terms(n, d, terms);
  return AffinePolynomial::from_terms(n, d, terms);
}

PolynomialVariant load_polynomial(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("cannot parse " + path.string() + ": " + e.what());
  }
  return polynomial_from_json(j);
}

void save_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

nlohmann::json subdivision_json(const Subdivision& s) {
  nlohmann::json leaves = nlohmann::json::array();
  for (const Leaf& leaf : s.leaves)
    leaves.push_back({{"m", leaf.cube.midpoint},
                      {"w", leaf.cube.width},
                      {"branch", branch_name(leaf.branch)}});
  nlohmann::json stats{{"leaf_count", s.stats.leaf_count},
                       {"value_branch", s.stats.value_branch},
                       {"gradient_branch", s.stats.gradient_branch},
                       {"predicate_evaluations", s.stats.predicate_evaluations},
                       {"max_depth", s.stats.max_depth},
                       {"depth_histogram", s.stats.depth_histogram}};
  return nlohmann::json{{"a", s.a},
                        {"n", s.n},
                        {"mode", mode_name(s.mode)},
                        {"leaves", leaves},
                        {"stats", stats}};
}

std::string subdivision_svg(const Subdivision& s, const PolylineSet* curve) {
  if (s.n != 2) throw DimensionMismatch("svg rendering is only defined in the plane");
  const double a = s.a;
  const double scale = 1024.0 / (2.0 * a);
  const auto px = [&](double x) { return (x + a) * scale; };
  const auto py = [&](double y) { return (a - y) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" "
        "viewBox=\"0 0 1024 1024\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"1024\" height=\"1024\" fill=\"#ffffff\"/>\n";
  for (const Leaf& leaf : s.leaves) {
    const double w = leaf.cube.width;
    const double x = leaf.cube.midpoint[0] - w / 2.0;
    const double ytop = leaf.cube.midpoint[1] + w / 2.0;
    os << "<rect x=\"" << format_double(px(x)) << "\" y=\"" << format_double(py(ytop))
       << "\" width=\"" << format_double(w * scale) << "\" height=\"" << format_double(w * scale)
       << "\" fill=\"none\" stroke=\""
       << (leaf.branch == Branch::value ? "#b9c3cc" : "#7f9db9") << "\" stroke-width=\"0.6\"/>\n";
  }
  if (curve) {
    for (const Segment& seg : curve->segments)
      os << "<line x1=\"" << format_double(px(seg.x1)) << "\" y1=\"" << format_double(py(seg.y1))
         << "\" x2=\"" << format_double(px(seg.x2)) << "\" y2=\"" << format_double(py(seg.y2))
         << "\" stroke=\"#c0392b\" stroke-width=\"1.4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pv
