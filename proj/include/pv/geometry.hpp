#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pv/polynomial.hpp"

namespace pv {

double squared_norm(std::span<const double> x);
double euclidean_norm(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

// base^k by repeated multiplication; k >= 0. Deterministic across platforms.
double ipow(double base, int k);
// base^(k/2) for base >= 0; k may be negative.
double half_power(double base, int k);

// Closed interval [lo, hi].
struct Interval {
  double lo;
  double hi;
  bool contains(double t) const { return lo <= t && t <= hi; }
  double width() const { return hi - lo; }
};

Interval operator+(Interval a, Interval b);
// Product with independent factors: the range of u*v over u in a, v in b.
Interval operator*(Interval a, Interval b);

using IntervalBox = std::vector<Interval>;

// Sum of b_i * b_i with the two factors treated as independent.
Interval box_self_inner(const IntervalBox& b);

// Axis-aligned cube given by its midpoint and side length.
struct Cube {
  std::vector<double> midpoint;
  double width;

  int dim() const { return static_cast<int>(midpoint.size()); }
  double volume() const;
  bool contains(std::span<const double> x) const;
  // The 2^n half-width children, ordered lexicographically by offset sign
  // per axis with minus before plus (axis 0 most significant).
  std::vector<Cube> children() const;
};

// x -> (1, x) / sqrt(1 + |x|^2); image lies on the upper unit hemisphere.
std::vector<double> sphere_lift(std::span<const double> x);

// Lipschitz constants of the normalized value and gradient maps.
inline double value_lipschitz(int d) { return 1.0 + std::sqrt(static_cast<double>(d)); }
inline double gradient_lipschitz(int d) { return 1.0 + std::sqrt(static_cast<double>(d - 1)); }

// f(x) / (|f| (1+|x|^2)^((d-1)/2)); bounded by sqrt(1+|x|^2) and Lipschitz
// with constant value_lipschitz(d).
double normalized_value(const AffinePolynomial& f, std::span<const double> x);
// grad f(x) / (d |f| (1+|x|^2)^(d/2-1)); same bound, Lipschitz with
// constant gradient_lipschitz(d).
std::vector<double> normalized_gradient(const AffinePolynomial& f, std::span<const double> x);
// Both in one evaluation pass; returns the normalized value.
double normalized_value_and_gradient(const AffinePolynomial& f, std::span<const double> x,
                                     std::span<double> grad);

// Interval certain to contain the normalized value over J: midpoint value
// widened by value_lipschitz(d) * sqrt(n) * w(J) / 2.
Interval value_enclosure(const AffinePolynomial& f, const Cube& J);
// Componentwise enclosure of the normalized gradient over J, widened by
// gradient_lipschitz(d) * sqrt(n) * w(J) / 2 per component.
IntervalBox gradient_enclosure(const AffinePolynomial& f, const Cube& J);

// Which test certified a cube: the value enclosure misses zero, or the
// gradient box has positive self inner product.
enum class Branch { value, gradient };
const char* branch_name(Branch b);

struct PredicateResult {
  bool holds;
  Branch branch;  // meaningful only when holds
};

// Interval exclusion predicate: zero outside the value enclosure, or zero
// outside the self inner product of the gradient enclosure.
PredicateResult interval_predicate(const AffinePolynomial& f, const Cube& J);
// Midpoint predicate: |normalized value| > value_lipschitz(d) sqrt(n) w, or
// |normalized gradient| > sqrt(2) gradient_lipschitz(d) n w. Implies the
// interval predicate.
PredicateResult midpoint_predicate(const AffinePolynomial& f, const Cube& J);

}  // namespace pv
