#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pv/polynomial.hpp"

namespace pv {

// Which interval arithmetic the cube-count constants describe: `lipschitz`
// matches the Lipschitz-width enclosures this library implements; `bgt` is
// the coarser classical radius analysis kept for comparison.
enum class IntervalRegime { lipschitz, bgt };
const char* regime_name(IntervalRegime r);

struct EstimatorSettings {
  enum class Method { monte_carlo, quadrature };
  Method method = Method::monte_carlo;
  std::uint64_t samples = 100000;  // Monte Carlo draws
  std::uint64_t seed = 0;
  int blocks = 16;            // median-of-means blocks
  int cells_per_axis = 4096;  // trapezoid cells per axis (quadrature)
};

struct EstimateReport {
  double estimate = 0.0;
  // Median absolute deviation of the block means (Monte Carlo only).
  double spread = 0.0;
  std::uint64_t sample_count = 0;    // retained evaluations
  std::uint64_t singular_count = 0;  // excluded singular evaluations
  bool heavy_tail = false;
};

// True when the top percentile of the values carries more than half of the
// total mass; values must be nonnegative.
bool heavy_tail_flag(std::vector<double> values);

// E[kappa(f, x)^n] for x uniform on [-a, a]^n. Monte Carlo uses a
// median-of-means estimate because the integrand can be heavy tailed;
// quadrature (n <= 2 only) uses the tensor trapezoid rule. Singular
// evaluations are excluded and counted.
EstimateReport expectation_kappa_n(const AffinePolynomial& f, double a,
                                   const EstimatorSettings& settings);

// Closed form for the expected cube count of the subdivision, given the
// moment E[kappa^n]:
//   lipschitz  max(1, d^n max(1,a^n) n^n 2^(9n/2) E)
//   bgt        max(1, d^(2n) max(1,a^n) 2^(3n^2+2n) E)
double cube_bound_from_expectation(int n, int d, double a, double expectation,
                                   IntervalRegime regime);

struct CubeBoundReport {
  double bound;
  IntervalRegime regime;
  EstimateReport expectation;
};

CubeBoundReport amortized_cube_bound(const AffinePolynomial& f, double a, IntervalRegime regime,
                                     const EstimatorSettings& settings);

// Inputs of the distribution-level bounds. c1 and c2 are the absolute
// constants of the tail analysis (at least 1), krho the product of the
// subgaussian and anticoncentration parameters of the coefficient model
// (at least 1/4). The closed forms are stated under c1*c2*krho >= 1;
// assumption_met() reports whether that holds, smaller products are accepted
// and simply make the forms looser in spirit rather than invalid.
struct BoundConfig {
  int n = 1;
  int d = 1;
  double a = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double krho = 1.0;
  std::optional<double> sigma;  // smoothing level, when relevant
  IntervalRegime regime = IntervalRegime::lipschitz;
  bool assumption_met() const { return c1 * c2 * krho >= 1.0; }
};

// Expected cube count over random inputs:
//   lipschitz  d^((n^2+3n)/2) max(1,a^n) 2^((n^2+16n log2 n)/2) (c1 c2 krho)^(n+1)
//   bgt        d^((n^2+5n)/2) max(1,a^n) 2^((7n^2+9n log2 n)/2) (c1 c2 krho)^(n+1)
double average_bound(const BoundConfig& config);

// Smoothed variant: average_bound times (1 + 1/sigma)^(n+1); needs sigma > 0.
double smoothed_bound(const BoundConfig& config);

// Tail probability bound for kappa^n at level t, valid for t >= e^n:
//   4 (c1 c2 krho sqrt(N) / sqrt(n(n+1)))^(n+1) ln(t)^((n+1)/2) / t^(1+1/n)
// with N the coefficient count; multiplied by (1 + 1/sigma)^(n+1) when a
// smoothing level is set.
double kappa_tail_bound(const BoundConfig& config, double t);

}  // namespace pv
