#include "pv/randpoly.hpp"

#include <cmath>
#include <numbers>

#include "pv/errors.hpp"
#include "pv/rng.hpp"

namespace pv {

const char* model_name(RandomModel m) {
  switch (m) {
    case RandomModel::kss: return "kss";
    case RandomModel::weyl_uniform: return "weyl";
    case RandomModel::p_random: return "prandom";
  }
  return "?";
}

namespace {

void validate(const DobroSpec& spec) {
  if (spec.model == RandomModel::p_random && !(spec.p >= 2.0))
    throw DomainError("p_random needs p >= 2");
}

double draw_coordinate(const DobroSpec& spec, SplitMix64& rng) {
  switch (spec.model) {
    case RandomModel::kss:
      return rng.next_gaussian();
    case RandomModel::weyl_uniform:
      return rng.next_symmetric();
    case RandomModel::p_random: {
      // |t| = G^(1/p) with G ~ Gamma(1/p) has the folded density
      // p exp(-t^p) / Gamma(1/p); a random sign unfolds it.
      const double sign = (rng.next() & 1) ? 1.0 : -1.0;
      return sign * std::pow(rng.next_gamma(1.0 / spec.p), 1.0 / spec.p);
    }
  }
  throw DomainError("unknown random model");
}

}  // namespace

ModelParameters model_parameters(const DobroSpec& spec) {
  validate(spec);
  ModelParameters out;
  switch (spec.model) {
    case RandomModel::kss:
      // rho is twice the peak of the standard normal density; K is chosen so
      // that the product is exactly 1/sqrt(2 pi).
      out.anticoncentration_rho = std::sqrt(2.0 / std::numbers::pi);
      out.subgaussian_k = 0.5;
      out.note = "standard Gaussian coordinates";
      break;
    case RandomModel::weyl_uniform:
      // Density 1/2 on [-1,1] gives rho = 1; the moment ratio
      // (E|t|^q)^(1/q) / sqrt(q) peaks at q = 1 with value 1/2.
      out.anticoncentration_rho = 1.0;
      out.subgaussian_k = 0.5;
      out.note = "uniform coordinates on [-1, 1]";
      break;
    case RandomModel::p_random: {
      // Density c_p exp(-|t|^p) with c_p = 1 / (2 Gamma(1 + 1/p));
      // rho is twice the peak. K is the numeric supremum of the moment
      // ratio (E|t|^q)^(1/q) / sqrt(q) over q >= 1.
      out.anticoncentration_rho = std::exp(-std::lgamma(1.0 + 1.0 / spec.p));
      const double lg_base = std::lgamma(1.0 / spec.p);
      double best = 0.0;
      for (double q = 1.0; q <= 64.0; q += 1.0 / 64.0) {
        const double moment = std::exp((std::lgamma((q + 1.0) / spec.p) - lg_base) / q);
        best = std::max(best, moment / std::sqrt(q));
      }
      out.subgaussian_k = best;
      out.note = "exponential power coordinates, p = " + std::to_string(spec.p);
      break;
    }
  }
  return out;
}

HomogeneousPolynomial sample_dobro(const DobroSpec& spec, int n, int d, std::uint64_t seed) {
  validate(spec);
  if (d < 1) throw DomainError("sampling needs degree at least 1");
  auto basis = MonomialBasis::get(n + 1, d, true);
  const auto& weights = basis->weights();
  std::vector<double> coeffs(basis->size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    SplitMix64 rng(mix_key(seed, j));
    coeffs[j] = std::sqrt(weights[j]) * draw_coordinate(spec, rng);
  }
  return HomogeneousPolynomial(n, d, std::move(coeffs));
}

AffinePolynomial sample_dobro_affine(const DobroSpec& spec, int n, int d, std::uint64_t seed) {
  return dehomogenize(sample_dobro(spec, n, d, seed));
}

AffinePolynomial smoothed_instance(const SmoothingSpec& spec, std::uint64_t seed) {
  if (!(spec.sigma > 0.0)) throw DomainError("sigma must be positive");
  const AffinePolynomial noise =
      sample_dobro_affine(spec.noise, spec.base.var_count(), spec.base.degree_bound(), seed);
  return spec.base + (spec.sigma * spec.base.weyl_norm()) * noise;
}

}  // namespace pv
