#include "pv/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <tuple>

#include "pv/errors.hpp"

namespace pv {

int total_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

namespace {

std::string describe(const MultiIndex& alpha) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
  os << ")";
  return os.str();
}

// All exponent vectors over `nvars` variables with total degree exactly
// `total`, lexicographically descending (earlier variables take the largest
// powers first).
void enumerate_degree(int nvars, int total, MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (nvars == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = total; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_degree(nvars - 1, total - e, prefix, out);
    prefix.pop_back();
  }
}

// Multinomial coefficient d! / (k_0! ... k_m!) where the k_i are the entries
// of alpha padded with d - |alpha| in the slack slot. Computed in log space;
// exact after rounding for every (n <= 4, d <= 20) this library supports.
double multinomial_weight(int d, const MultiIndex& alpha, bool homogeneous) {
  double lg = std::lgamma(static_cast<double>(d) + 1.0);
  int used = 0;
  for (int a : alpha) {
    lg -= std::lgamma(static_cast<double>(a) + 1.0);
    used += a;
  }
  if (!homogeneous) lg -= std::lgamma(static_cast<double>(d - used) + 1.0);
  return std::round(std::exp(lg));
}

// Iterated Horner over the dense coefficient grid. `stride` is the distance
// between consecutive powers of variable `dim`; the last variable is
// contiguous.
double horner_value(const double* g, std::size_t stride, int dim, int nvars, int deg,
                    const double* x) {
  if (dim == nvars - 1) {
    double acc = g[deg];
    for (int k = deg; k-- > 0;) acc = acc * x[dim] + g[k];
    return acc;
  }
  const std::size_t child = stride / static_cast<std::size_t>(deg + 1);
  double acc = horner_value(g + static_cast<std::size_t>(deg) * stride, child, dim + 1, nvars, deg, x);
  for (int k = deg; k-- > 0;)
    acc = acc * x[dim] + horner_value(g + static_cast<std::size_t>(k) * stride, child, dim + 1, nvars, deg, x);
  return acc;
}

// Same pass extended with derivative accumulation; writes all nvars partials.
double horner_grad(const double* g, std::size_t stride, int dim, int nvars, int deg,
                   const double* x, double* grad) {
  if (dim == nvars - 1) {
    double v = g[deg];
    double dv = 0.0;
    for (int k = deg; k-- > 0;) {
      dv = dv * x[dim] + v;
      v = v * x[dim] + g[k];
    }
    for (int j = 0; j < nvars; ++j) grad[j] = 0.0;
    grad[dim] = dv;
    return v;
  }
  const std::size_t child = stride / static_cast<std::size_t>(deg + 1);
  double v = horner_grad(g + static_cast<std::size_t>(deg) * stride, child, dim + 1, nvars, deg, x, grad);
  double dv = 0.0;
  double cg[kMaxVars];
  for (int k = deg; k-- > 0;) {
    const double cv =
        horner_grad(g + static_cast<std::size_t>(k) * stride, child, dim + 1, nvars, deg, x, cg);
    dv = dv * x[dim] + v;
    v = v * x[dim] + cv;
    for (int j = dim + 1; j < nvars; ++j) grad[j] = grad[j] * x[dim] + cg[j];
  }
  grad[dim] = dv;
  return v;
}

std::vector<double> build_grid(const MonomialBasis& basis, const std::vector<double>& coeffs) {
  std::vector<double> grid(basis.grid_size(), 0.0);
  const auto& exps = basis.exponents();
  for (std::size_t j = 0; j < exps.size(); ++j) grid[basis.grid_offset(exps[j])] = coeffs[j];
  return grid;
}

double norm_from_coeffs(const MonomialBasis& basis, const std::vector<double>& coeffs) {
  double s = 0.0;
  const auto& w = basis.weights();
  for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * coeffs[j] / w[j];
  return std::sqrt(s);
}

std::vector<double> coeffs_from_terms(const MonomialBasis& basis, const std::vector<Term>& terms) {
  std::vector<double> coeffs(basis.size(), 0.0);
  for (const Term& t : terms) {
    if (static_cast<int>(t.alpha.size()) != basis.nvars())
      throw DimensionMismatch("term exponent " + describe(t.alpha) + " has wrong length");
    const std::ptrdiff_t j = basis.index_of(t.alpha);
    if (j < 0) throw DomainError("term exponent " + describe(t.alpha) + " is outside the basis");
    coeffs[static_cast<std::size_t>(j)] += t.coeff;
  }
  return coeffs;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree, bool homogeneous)
    : nvars_(nvars), degree_(degree), homogeneous_(homogeneous) {
  if (nvars < 1 || nvars > kMaxVars) throw DomainError("variable count out of range");
  if (degree < 0) throw DomainError("negative degree");
  MultiIndex prefix;
  if (homogeneous) {
    enumerate_degree(nvars, degree, prefix, exponents_);
  } else {
    for (int k = 0; k <= degree; ++k) enumerate_degree(nvars, k, prefix, exponents_);
  }
  weights_.reserve(exponents_.size());
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    weights_.push_back(multinomial_weight(degree, exponents_[j], homogeneous));
    index_.emplace(exponents_[j], j);
  }
  grid_size_ = 1;
  for (int i = 0; i < nvars; ++i) grid_size_ *= static_cast<std::size_t>(degree + 1);
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int nvars, int degree, bool homogeneous) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, bool>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(nvars, degree, homogeneous);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto basis = std::shared_ptr<const MonomialBasis>(new MonomialBasis(nvars, degree, homogeneous));
  cache.emplace(key, basis);
  return basis;
}

std::ptrdiff_t MonomialBasis::index_of(const MultiIndex& alpha) const {
  auto it = index_.find(alpha);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::size_t MonomialBasis::grid_offset(const MultiIndex& alpha) const {
  std::size_t off = 0;
  for (int i = 0; i < nvars_; ++i)
    off = off * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(alpha[i]);
  return off;
}

AffinePolynomial::AffinePolynomial(int n, int d, std::vector<double> coeffs)
    : basis_(MonomialBasis::get(n, d, false)), coeffs_(std::move(coeffs)) {
  if (n < 1 || n > kMaxVars - 1) throw DomainError("variable count out of range");
  if (coeffs_.size() != basis_->size()) throw DimensionMismatch("coefficient vector has wrong length");
  grid_ = build_grid(*basis_, coeffs_);
  weyl_norm_ = norm_from_coeffs(*basis_, coeffs_);
}

AffinePolynomial AffinePolynomial::zero(int n, int d) {
  return AffinePolynomial(n, d, std::vector<double>(MonomialBasis::get(n, d, false)->size(), 0.0));
}

AffinePolynomial AffinePolynomial::from_terms(int n, int d, const std::vector<Term>& terms) {
  return AffinePolynomial(n, d, coeffs_from_terms(*MonomialBasis::get(n, d, false), terms));
}

AffinePolynomial AffinePolynomial::from_terms(int n, int d, std::initializer_list<Term> terms) {
  return from_terms(n, d, std::vector<Term>(terms));
}

double AffinePolynomial::coefficient(const MultiIndex& alpha) const {
  const std::ptrdiff_t j = basis_->index_of(alpha);
  if (j < 0) throw DomainError("exponent " + describe(alpha) + " is outside the basis");
  return coeffs_[static_cast<std::size_t>(j)];
}

bool AffinePolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double AffinePolynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != var_count()) throw DimensionMismatch("point has wrong length");
  std::size_t top = grid_.size() / static_cast<std::size_t>(degree_bound() + 1);
  return horner_value(grid_.data(), top, 0, var_count(), degree_bound(), x.data());
}

double AffinePolynomial::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  if (static_cast<int>(x.size()) != var_count()) throw DimensionMismatch("point has wrong length");
  if (static_cast<int>(grad.size()) != var_count()) throw DimensionMismatch("gradient span has wrong length");
  std::size_t top = grid_.size() / static_cast<std::size_t>(degree_bound() + 1);
  double buf[kMaxVars];
  const double v = horner_grad(grid_.data(), top, 0, var_count(), degree_bound(), x.data(), buf);
  for (int i = 0; i < var_count(); ++i) grad[i] = buf[i];
  return v;
}

std::vector<double> AffinePolynomial::gradient(std::span<const double> x) const {
  std::vector<double> g(static_cast<std::size_t>(var_count()));
  value_and_gradient(x, g);
  return g;
}

HomogeneousPolynomial::HomogeneousPolynomial(int n, int d, std::vector<double> coeffs)
    : basis_(MonomialBasis::get(n + 1, d, true)), coeffs_(std::move(coeffs)) {
  if (n < 1 || n > kMaxVars - 2) throw DomainError("variable count out of range");
  if (coeffs_.size() != basis_->size()) throw DimensionMismatch("coefficient vector has wrong length");
  grid_ = build_grid(*basis_, coeffs_);
  weyl_norm_ = norm_from_coeffs(*basis_, coeffs_);
}

HomogeneousPolynomial HomogeneousPolynomial::zero(int n, int d) {
  return HomogeneousPolynomial(n, d, std::vector<double>(MonomialBasis::get(n + 1, d, true)->size(), 0.0));
}

HomogeneousPolynomial HomogeneousPolynomial::from_terms(int n, int d, const std::vector<Term>& terms) {
  return HomogeneousPolynomial(n, d, coeffs_from_terms(*MonomialBasis::get(n + 1, d, true), terms));
}

double HomogeneousPolynomial::coefficient(const MultiIndex& alpha) const {
  const std::ptrdiff_t j = basis_->index_of(alpha);
  if (j < 0) throw DomainError("exponent " + describe(alpha) + " is outside the basis");
  return coeffs_[static_cast<std::size_t>(j)];
}

bool HomogeneousPolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double HomogeneousPolynomial::evaluate(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != basis_->nvars()) throw DimensionMismatch("point has wrong length");
  std::size_t top = grid_.size() / static_cast<std::size_t>(degree() + 1);
  return horner_value(grid_.data(), top, 0, basis_->nvars(), degree(), y.data());
}

double HomogeneousPolynomial::value_and_gradient(std::span<const double> y, std::span<double> grad) const {
  if (static_cast<int>(y.size()) != basis_->nvars()) throw DimensionMismatch("point has wrong length");
  if (static_cast<int>(grad.size()) != basis_->nvars())
    throw DimensionMismatch("gradient span has wrong length");
  std::size_t top = grid_.size() / static_cast<std::size_t>(degree() + 1);
  double buf[kMaxVars];
  const double v = horner_grad(grid_.data(), top, 0, basis_->nvars(), degree(), y.data(), buf);
  for (int i = 0; i < basis_->nvars(); ++i) grad[i] = buf[i];
  return v;
}

std::vector<double> HomogeneousPolynomial::gradient(std::span<const double> y) const {
  std::vector<double> g(static_cast<std::size_t>(basis_->nvars()));
  value_and_gradient(y, g);
  return g;
}

HomogeneousPolynomial homogenize(const AffinePolynomial& f) {
  const int n = f.var_count();
  const int d = f.degree_bound();
  auto hom = MonomialBasis::get(n + 1, d, true);
  std::vector<double> coeffs(hom->size(), 0.0);
  const auto& exps = f.basis().exponents();
  for (std::size_t j = 0; j < exps.size(); ++j) {
    MultiIndex beta;
    beta.reserve(static_cast<std::size_t>(n) + 1);
    beta.push_back(d - total_degree(exps[j]));
    beta.insert(beta.end(), exps[j].begin(), exps[j].end());
    coeffs[static_cast<std::size_t>(hom->index_of(beta))] = f.coefficients()[j];
  }
  return HomogeneousPolynomial(n, d, std::move(coeffs));
}

AffinePolynomial dehomogenize(const HomogeneousPolynomial& F) {
  const int n = F.affine_vars();
  const int d = F.degree();
  auto aff = MonomialBasis::get(n, d, false);
  std::vector<double> coeffs(aff->size(), 0.0);
  const auto& exps = F.basis().exponents();
  for (std::size_t j = 0; j < exps.size(); ++j) {
    MultiIndex alpha(exps[j].begin() + 1, exps[j].end());
    coeffs[static_cast<std::size_t>(aff->index_of(alpha))] = F.coefficients()[j];
  }
  return AffinePolynomial(n, d, std::move(coeffs));
}

namespace {

template <typename Poly>
double weyl_inner_impl(const Poly& f, const Poly& g) {
  if (&f.basis() != &g.basis())
    throw DimensionMismatch("inner product operands live in different spaces");
  const auto& w = f.basis().weights();
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) s += f.coefficients()[j] * g.coefficients()[j] / w[j];
  return s;
}

}  // namespace

double weyl_inner(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g) {
  return weyl_inner_impl(f, g);
}

double weyl_inner(const AffinePolynomial& f, const AffinePolynomial& g) {
  return weyl_inner_impl(f, g);
}

std::vector<double> weyl_coordinates(const AffinePolynomial& f) {
  const auto& w = f.basis().weights();
  std::vector<double> u(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) u[j] = f.coefficients()[j] / std::sqrt(w[j]);
  return u;
}

std::vector<double> weyl_coordinates(const HomogeneousPolynomial& f) {
  const auto& w = f.basis().weights();
  std::vector<double> u(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) u[j] = f.coefficients()[j] / std::sqrt(w[j]);
  return u;
}

std::vector<AffinePolynomial> gradient_system(const AffinePolynomial& f) {
  const int n = f.var_count();
  const int d = f.degree_bound();
  if (d < 1) throw DomainError("gradient_system needs degree bound at least 1");
  auto lower = MonomialBasis::get(n, d - 1, false);
  std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(n),
                                          std::vector<double>(lower->size(), 0.0));
  const auto& exps = f.basis().exponents();
  for (std::size_t j = 0; j < exps.size(); ++j) {
    const double c = f.coefficients()[j];
    if (c == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      if (exps[j][static_cast<std::size_t>(i)] == 0) continue;
      MultiIndex alpha = exps[j];
      const int power = alpha[static_cast<std::size_t>(i)];
      alpha[static_cast<std::size_t>(i)] = power - 1;
      coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(lower->index_of(alpha))] +=
          static_cast<double>(power) * c;
    }
  }
  std::vector<AffinePolynomial> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.emplace_back(n, d - 1, std::move(coeffs[static_cast<std::size_t>(i)]));
  return out;
}

AffinePolynomial operator+(const AffinePolynomial& f, const AffinePolynomial& g) {
  if (&f.basis() != &g.basis()) throw DimensionMismatch("sum operands live in different spaces");
  std::vector<double> coeffs(f.coefficients());
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] += g.coefficients()[j];
  return AffinePolynomial(f.var_count(), f.degree_bound(), std::move(coeffs));
}

AffinePolynomial operator*(double lambda, const AffinePolynomial& f) {
  std::vector<double> coeffs(f.coefficients());
  for (double& c : coeffs) c *= lambda;
  return AffinePolynomial(f.var_count(), f.degree_bound(), std::move(coeffs));
}

}  // namespace pv
