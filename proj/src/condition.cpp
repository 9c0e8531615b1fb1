#include "pv/condition.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "pv/errors.hpp"
#include "pv/geometry.hpp"

namespace pv {

namespace {

constexpr double kSingularFloor = 1e-300;

void require_conditionable(const AffinePolynomial& f) {
  if (f.degree_bound() < 1) throw DomainError("condition numbers need degree bound at least 1");
  if (f.weyl_norm() == 0.0) throw ZeroPolynomial("condition numbers need a nonzero polynomial");
}

Kappa singular_kappa() { return {std::numeric_limits<double>::infinity(), true}; }

}  // namespace

KappaEvaluator::KappaEvaluator(AffinePolynomial f)
    : f_(std::move(f)), n_(f_.var_count()), d_(f_.degree_bound()), norm_(f_.weyl_norm()) {
  require_conditionable(f_);
}

Kappa KappaEvaluator::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("point has wrong length");
  double grad[kMaxVars];
  const double v = f_.value_and_gradient(x, {grad, x.size()});
  const double s2 = 1.0 + squared_norm(x);
  const double s = 1.0 / std::sqrt(s2);

  // Homogeneous data at y = s * (1, x):
  //   F(y)      = s^d f(x)
  //   d_iF(y)   = s^(d-1) d_if(x)          (i >= 1)
  //   d_0F(y)   = s^(d-1) (d f(x) - <x, grad f(x)>)
  const double sd1 = ipow(s, d_ - 1);
  const double fy = sd1 * s * v;
  const double xg = dot(x, {grad, x.size()});
  const double g0 = sd1 * (d_ * v - xg);
  const double grad_sq = g0 * g0 + sd1 * sd1 * squared_norm({grad, x.size()});
  const double radial = s * g0 + s * sd1 * xg;  // <dF(y), y>
  double tang_sq = grad_sq - radial * radial;
  if (tang_sq < 0.0) tang_sq = 0.0;

  const double denom = std::sqrt(fy * fy + tang_sq / d_);
  if (denom < kSingularFloor) return singular_kappa();
  return {norm_ / denom, false};
}

Kappa kappa_direct(const AffinePolynomial& f, std::span<const double> x) {
  return KappaEvaluator(f)(x);
}

Kappa kappa_projection(const AffinePolynomial& f, std::span<const double> x) {
  require_conditionable(f);
  const int n = f.var_count();
  const int d = f.degree_bound();
  if (static_cast<int>(x.size()) != n) throw DimensionMismatch("point has wrong length");

  const auto& basis = f.basis();
  const auto& exps = basis.exponents();
  const auto& weights = basis.weights();
  const std::size_t N = basis.size();

  std::vector<std::vector<double>> pows(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(d) + 1, 1.0));
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= d; ++k)
      pows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          pows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] *
          x[static_cast<std::size_t>(i)];

  // Rows of A are the evaluation representer and the n partial derivative
  // representers at x, written in the Weyl-orthonormal monomial frame.
  Eigen::MatrixXd A(n + 1, static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < N; ++j) {
    const MultiIndex& alpha = exps[j];
    const double sw = std::sqrt(weights[j]);
    double mono = 1.0;
    for (int i = 0; i < n; ++i)
      mono *= pows[static_cast<std::size_t>(i)][static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)])];
    A(0, static_cast<Eigen::Index>(j)) = sw * mono;
    for (int i = 0; i < n; ++i) {
      const int ai = alpha[static_cast<std::size_t>(i)];
      if (ai == 0) {
        A(i + 1, static_cast<Eigen::Index>(j)) = 0.0;
        continue;
      }
      double dmono = 1.0;
      for (int l = 0; l < n; ++l) {
        const int e = alpha[static_cast<std::size_t>(l)] - (l == i ? 1 : 0);
        dmono *= pows[static_cast<std::size_t>(l)][static_cast<std::size_t>(e)];
      }
      A(i + 1, static_cast<Eigen::Index>(j)) = sw * static_cast<double>(ai) * dmono;
    }
  }

  const std::vector<double> u = weyl_coordinates(f);
  const Eigen::Map<const Eigen::VectorXd> uvec(u.data(), static_cast<Eigen::Index>(N));
  const Eigen::VectorXd au = A * uvec;
  const Eigen::MatrixXd gram = A * A.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw RankDeficient("representer Gram matrix is numerically rank deficient");
  const Eigen::VectorXd c = llt.solve(au);
  double proj_sq = au.dot(c);
  if (proj_sq < 0.0) proj_sq = 0.0;

  const double denom = std::sqrt(proj_sq);
  if (denom < kSingularFloor) return singular_kappa();
  return {f.weyl_norm() / denom, false};
}

double size_bound_from_kappa(double kappa, int n, int d) {
  if (!std::isfinite(kappa)) return 0.0;
  const double base = std::exp2(2.5) * d * n * kappa;
  return ipow(1.0 / base, n);
}

double size_bound_bgt_from_kappa(double kappa, int n, int d) {
  if (d < 2) throw DomainError("the coarse size bound needs degree at least 2");
  if (!std::isfinite(kappa)) return 0.0;
  const double base = ipow(2.0, 3 * n) * d * d * kappa;
  return ipow(1.0 / base, n);
}

double local_size_bound(const AffinePolynomial& f, std::span<const double> x) {
  const Kappa k = kappa_direct(f, x);
  if (k.singular) return 0.0;
  return size_bound_from_kappa(k.value, f.var_count(), f.degree_bound());
}

double local_size_bound_bgt(const AffinePolynomial& f, std::span<const double> x) {
  if (f.degree_bound() < 2) throw DomainError("the coarse size bound needs degree at least 2");
  const Kappa k = kappa_direct(f, x);
  if (k.singular) return 0.0;
  return size_bound_bgt_from_kappa(k.value, f.var_count(), f.degree_bound());
}

FundamentalGap fundamental_gap(const AffinePolynomial& f, std::span<const double> x) {
  const int d = f.degree_bound();
  double grad[kMaxVars];
  const double v = normalized_value_and_gradient(f, x, {grad, x.size()});
  const Kappa k = kappa_direct(f, x);
  const double threshold =
      k.singular ? 0.0 : 1.0 / (2.0 * std::sqrt(2.0 * d) * k.value);
  return {std::abs(v), euclidean_norm({grad, x.size()}), threshold};
}

ConditionSample condition_sample(const AffinePolynomial& f, std::span<const double> x) {
  ConditionSample s;
  s.x.assign(x.begin(), x.end());
  s.direct = kappa_direct(f, x);
  s.projection = kappa_projection(f, x);
  double grad[kMaxVars];
  s.normalized_value = normalized_value_and_gradient(f, x, {grad, x.size()});
  s.normalized_gradient_norm = euclidean_norm({grad, x.size()});
  s.size_bound = s.direct.singular
                     ? 0.0
                     : size_bound_from_kappa(s.direct.value, f.var_count(), f.degree_bound());
  s.size_bound_bgt = f.degree_bound() < 2
                         ? std::numeric_limits<double>::quiet_NaN()
                         : (s.direct.singular ? 0.0
                                              : size_bound_bgt_from_kappa(
                                                    s.direct.value, f.var_count(), f.degree_bound()));
  return s;
}

}  // namespace pv
