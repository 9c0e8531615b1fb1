#include "pv/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "pv/errors.hpp"

namespace pv {

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double euclidean_norm(std::span<const double> x) { return std::sqrt(squared_norm(x)); }

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double ipow(double base, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

double half_power(double base, int k) {
  if (k >= 0) return ipow(std::sqrt(base), k);
  return 1.0 / ipow(std::sqrt(base), -k);
}

Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(Interval a, Interval b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

Interval box_self_inner(const IntervalBox& b) {
  Interval s{0.0, 0.0};
  for (const Interval& c : b) s = s + c * c;
  return s;
}

double Cube::volume() const { return ipow(width, dim()); }

bool Cube::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) throw DimensionMismatch("point has wrong length");
  const double h = width / 2.0;
  for (int i = 0; i < dim(); ++i)
    if (std::abs(x[static_cast<std::size_t>(i)] - midpoint[static_cast<std::size_t>(i)]) > h)
      return false;
  return true;
}

std::vector<Cube> Cube::children() const {
  const int n = dim();
  const double q = width / 4.0;
  std::vector<Cube> out;
  out.reserve(static_cast<std::size_t>(1) << n);
  for (int k = 0; k < (1 << n); ++k) {
    Cube c{midpoint, width / 2.0};
    for (int i = 0; i < n; ++i) {
      const bool plus = (k >> (n - 1 - i)) & 1;
      c.midpoint[static_cast<std::size_t>(i)] += plus ? q : -q;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<double> sphere_lift(std::span<const double> x) {
  const double s = 1.0 / std::sqrt(1.0 + squared_norm(x));
  std::vector<double> y;
  y.reserve(x.size() + 1);
  y.push_back(s);
  for (double v : x) y.push_back(s * v);
  return y;
}

namespace {

void require_normalizable(const AffinePolynomial& f) {
  if (f.degree_bound() < 1) throw DomainError("normalized evaluators need degree bound at least 1");
  if (f.weyl_norm() == 0.0) throw ZeroPolynomial("normalized evaluators need a nonzero polynomial");
}

}  // namespace

double normalized_value_and_gradient(const AffinePolynomial& f, std::span<const double> x,
                                     std::span<double> grad) {
  require_normalizable(f);
  const int d = f.degree_bound();
  double raw[kMaxVars];
  const double v = f.value_and_gradient(x, {raw, x.size()});
  const double s2 = 1.0 + squared_norm(x);
  const double value_scale = 1.0 / (f.weyl_norm() * half_power(s2, d - 1));
  const double grad_scale = 1.0 / (d * f.weyl_norm() * half_power(s2, d - 2));
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = raw[i] * grad_scale;
  return v * value_scale;
}

double normalized_value(const AffinePolynomial& f, std::span<const double> x) {
  require_normalizable(f);
  const double s2 = 1.0 + squared_norm(x);
  return f.evaluate(x) / (f.weyl_norm() * half_power(s2, f.degree_bound() - 1));
}

std::vector<double> normalized_gradient(const AffinePolynomial& f, std::span<const double> x) {
  std::vector<double> g(x.size());
  normalized_value_and_gradient(f, x, g);
  return g;
}

const char* branch_name(Branch b) { return b == Branch::value ? "value" : "gradient"; }

Interval value_enclosure(const AffinePolynomial& f, const Cube& J) {
  const double c = normalized_value(f, J.midpoint);
  const double r =
      value_lipschitz(f.degree_bound()) * std::sqrt(static_cast<double>(J.dim())) * J.width / 2.0;
  return {c - r, c + r};
}

IntervalBox gradient_enclosure(const AffinePolynomial& f, const Cube& J) {
  const std::vector<double> g = normalized_gradient(f, J.midpoint);
  const double r = gradient_lipschitz(f.degree_bound()) * std::sqrt(static_cast<double>(J.dim())) *
                   J.width / 2.0;
  IntervalBox box(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) box[i] = {g[i] - r, g[i] + r};
  return box;
}

PredicateResult interval_predicate(const AffinePolynomial& f, const Cube& J) {
  if (J.dim() != f.var_count()) throw DimensionMismatch("cube dimension does not match polynomial");
  const int d = f.degree_bound();
  const int n = J.dim();
  const double sqn = std::sqrt(static_cast<double>(n));
  double grad[kMaxVars];
  const double v = normalized_value_and_gradient(f, J.midpoint, {grad, static_cast<std::size_t>(n)});

  const double rv = value_lipschitz(d) * sqn * J.width / 2.0;
  const Interval value_box{v - rv, v + rv};
  if (!value_box.contains(0.0)) return {true, Branch::value};

  const double rg = gradient_lipschitz(d) * sqn * J.width / 2.0;
  IntervalBox box(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    box[static_cast<std::size_t>(i)] = {grad[i] - rg, grad[i] + rg};
  if (!box_self_inner(box).contains(0.0)) return {true, Branch::gradient};
  return {false, Branch::value};
}

PredicateResult midpoint_predicate(const AffinePolynomial& f, const Cube& J) {
  if (J.dim() != f.var_count()) throw DimensionMismatch("cube dimension does not match polynomial");
  const int d = f.degree_bound();
  const int n = J.dim();
  const double sqn = std::sqrt(static_cast<double>(n));
  double grad[kMaxVars];
  const double v = normalized_value_and_gradient(f, J.midpoint, {grad, static_cast<std::size_t>(n)});

  if (std::abs(v) > value_lipschitz(d) * sqn * J.width) return {true, Branch::value};
  const double gnorm = euclidean_norm({grad, static_cast<std::size_t>(n)});
  if (gnorm > std::sqrt(2.0) * gradient_lipschitz(d) * n * J.width) return {true, Branch::gradient};
  return {false, Branch::value};
}

}  // namespace pv
