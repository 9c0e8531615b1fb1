#pragma once

#include <span>
#include <vector>

#include "pv/polynomial.hpp"

namespace pv {

// Affine condition number at a point. `value` is +infinity when `singular`
// is set (the point is a singular zero, where the denominator vanishes).
struct Kappa {
  double value;
  bool singular;
};

// Repeated condition-number evaluation for one fixed polynomial. A single
// affine value-and-gradient pass per point is converted to the homogeneous
// data at the lifted point through the scaling identities of the
// homogenization, so no homogeneous polynomial is materialized.
class KappaEvaluator {
public:
  explicit KappaEvaluator(AffinePolynomial f);
  const AffinePolynomial& poly() const { return f_; }
  Kappa operator()(std::span<const double> x) const;

private:
  AffinePolynomial f_;
  int n_;
  int d_;
  double norm_;
};

// Condition number from the definition: norm of f over the norm of
// (value, tangential gradient / sqrt(d)) of the homogenization at the
// lifted point. Scale invariant and at least 1/sqrt(2).
Kappa kappa_direct(const AffinePolynomial& f, std::span<const double> x);

// Same quantity through the projection identity: norm of f over the norm of
// the orthogonal projection of f onto the span of the evaluation and partial
// derivative representers at x, computed in Weyl-orthonormal coordinates via
// an (n+1) x (n+1) Gram system.
Kappa kappa_projection(const AffinePolynomial& f, std::span<const double> x);

// Side length such that any cube of smaller volume containing the point is
// certified by the midpoint predicate: (2^(5/2) d n kappa)^(-n).
double size_bound_from_kappa(double kappa, int n, int d);
// Coarser variant tied to classical interval radii: (2^(3n) d^2 kappa)^(-n);
// requires d >= 2.
double size_bound_bgt_from_kappa(double kappa, int n, int d);

// Zero when the point is a singular zero of f.
double local_size_bound(const AffinePolynomial& f, std::span<const double> x);
double local_size_bound_bgt(const AffinePolynomial& f, std::span<const double> x);

// Witness of the pointwise exclusion inequality
// max(value_magnitude, gradient_norm) > threshold.
struct FundamentalGap {
  double value_magnitude;   // |normalized value|
  double gradient_norm;     // norm of the normalized gradient
  double threshold;         // 1 / (2 sqrt(2 d) kappa); 0 at singular points
};
FundamentalGap fundamental_gap(const AffinePolynomial& f, std::span<const double> x);

// Everything the instrumentation wants about one point, in one call.
struct ConditionSample {
  std::vector<double> x;
  Kappa direct;
  Kappa projection;
  double normalized_value;
  double normalized_gradient_norm;
  double size_bound;
  double size_bound_bgt;  // NaN when d < 2
};
ConditionSample condition_sample(const AffinePolynomial& f, std::span<const double> x);

}  // namespace pv
