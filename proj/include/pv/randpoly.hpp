#pragma once

#include <cstdint>
#include <string>

#include "pv/polynomial.hpp"

namespace pv {

// Coefficient distributions for random homogeneous polynomials. Each model
// draws the Weyl-orthonormal coordinates independently:
//   kss          standard Gaussian
//   weyl_uniform uniform on [-1, 1]
//   p_random     density proportional to exp(-|t|^p), p >= 2
// The monomial coefficient is the coordinate times sqrt of the Weyl weight.
enum class RandomModel { kss, weyl_uniform, p_random };
const char* model_name(RandomModel m);

struct DobroSpec {
  RandomModel model = RandomModel::kss;
  double p = 2.0;  // only read for p_random
};

// Subgaussian moment constant K and anticoncentration density bound rho of
// the coordinate distribution. Their product drives every closed-form bound;
// it is always at least 1/4.
struct ModelParameters {
  double subgaussian_k;
  double anticoncentration_rho;
  std::string note;
  double product() const { return subgaussian_k * anticoncentration_rho; }
};
ModelParameters model_parameters(const DobroSpec& spec);

// Degree-d form in n+1 variables with independent coordinates drawn from the
// model. Each coordinate uses its own stream keyed by (seed, index), so the
// result does not depend on the order coefficients are filled in.
HomogeneousPolynomial sample_dobro(const DobroSpec& spec, int n, int d, std::uint64_t seed);

// Dehomogenization of sample_dobro at X0 = 1.
AffinePolynomial sample_dobro_affine(const DobroSpec& spec, int n, int d, std::uint64_t seed);

struct SmoothingSpec {
  AffinePolynomial base;
  double sigma;     // relative noise level, must be positive
  DobroSpec noise;  // model for the perturbation
};

// base + sigma * |base| * g with g a fresh affine dobro sample; the noise
// scales with the norm of the base polynomial, so sigma is dimensionless.
AffinePolynomial smoothed_instance(const SmoothingSpec& spec, std::uint64_t seed);

}  // namespace pv
