#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace pv {

// Exponent vector of a monomial; entry i is the power of variable i.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

inline constexpr int kMaxVars = 8;

// Shared description of a monomial basis: the exponent list in graded
// lexicographic order (degree ascending, lexicographically descending within
// a degree), the Weyl weight of each monomial, and the layout of the dense
// coefficient grid used by the evaluators. Instances are immutable and cached
// per (nvars, degree, homogeneous).
class MonomialBasis {
public:
  static std::shared_ptr<const MonomialBasis> get(int nvars, int degree, bool homogeneous);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool homogeneous() const { return homogeneous_; }
  std::size_t size() const { return exponents_.size(); }
  const std::vector<MultiIndex>& exponents() const { return exponents_; }

  // Multinomial weight of each monomial: binom(d, alpha) for a homogeneous
  // basis, binom(d, (d-|alpha|, alpha)) for an affine one.
  const std::vector<double>& weights() const { return weights_; }

  // Position of alpha in exponents(), or -1 when alpha does not belong.
  std::ptrdiff_t index_of(const MultiIndex& alpha) const;

  // Dense grid layout: (degree+1)^nvars cells, last variable contiguous.
  std::size_t grid_size() const { return grid_size_; }
  std::size_t grid_offset(const MultiIndex& alpha) const;

private:
  MonomialBasis(int nvars, int degree, bool homogeneous);

  int nvars_;
  int degree_;
  bool homogeneous_;
  std::vector<MultiIndex> exponents_;
  std::vector<double> weights_;
  std::map<MultiIndex, std::size_t> index_;
  std::size_t grid_size_;
};

struct Term {
  MultiIndex alpha;
  double coeff;
};

class HomogeneousPolynomial;

// Real polynomial in n variables of degree at most d, stored as coefficients
// over the monomial basis plus a dense evaluation grid. Immutable after
// construction; copying is cheap at the sizes this library targets.
class AffinePolynomial {
public:
  // coeffs must be aligned with MonomialBasis::get(n, d, false)->exponents().
  AffinePolynomial(int n, int d, std::vector<double> coeffs);

  static AffinePolynomial zero(int n, int d);
  static AffinePolynomial from_terms(int n, int d, const std::vector<Term>& terms);
  static AffinePolynomial from_terms(int n, int d, std::initializer_list<Term> terms);

  int var_count() const { return basis_->nvars(); }
  int degree_bound() const { return basis_->degree(); }
  const MonomialBasis& basis() const { return *basis_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(const MultiIndex& alpha) const;
  bool is_zero() const;

  double evaluate(std::span<const double> x) const;
  // Writes the n partial derivatives into grad and returns the value.
  // Costs about twice a plain evaluation.
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;
  std::vector<double> gradient(std::span<const double> x) const;

  double weyl_norm() const { return weyl_norm_; }

private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<double> coeffs_;
  std::vector<double> grid_;
  double weyl_norm_;
};

// Homogeneous polynomial of exact degree d in n+1 variables (variable 0 is
// the homogenizing one). Same storage scheme as AffinePolynomial.
class HomogeneousPolynomial {
public:
  // coeffs aligned with MonomialBasis::get(n+1, d, true)->exponents().
  HomogeneousPolynomial(int n, int d, std::vector<double> coeffs);

  static HomogeneousPolynomial zero(int n, int d);
  static HomogeneousPolynomial from_terms(int n, int d, const std::vector<Term>& terms);

  // Number of affine variables; evaluation points have length n+1.
  int affine_vars() const { return basis_->nvars() - 1; }
  int degree() const { return basis_->degree(); }
  const MonomialBasis& basis() const { return *basis_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(const MultiIndex& alpha) const;
  bool is_zero() const;

  double evaluate(std::span<const double> y) const;
  double value_and_gradient(std::span<const double> y, std::span<double> grad) const;
  std::vector<double> gradient(std::span<const double> y) const;

  double weyl_norm() const { return weyl_norm_; }

private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<double> coeffs_;
  std::vector<double> grid_;
  double weyl_norm_;
};

// X0^(d-|alpha|) * X^alpha for every term; degree-d terms pass through.
HomogeneousPolynomial homogenize(const AffinePolynomial& f);
// Substitutes X0 = 1; inverse of homogenize.
AffinePolynomial dehomogenize(const HomogeneousPolynomial& F);

// Weyl (Bombieri) inner product: sum of f_a * g_a / binom(d, a). The affine
// overload is the inner product of the homogenizations, computed directly
// from affine coefficients.
double weyl_inner(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g);
double weyl_inner(const AffinePolynomial& f, const AffinePolynomial& g);

// Coordinates of f in the Weyl-orthonormal monomial frame: u_a = f_a / sqrt(w_a).
// The Euclidean norm of the result is weyl_norm().
std::vector<double> weyl_coordinates(const AffinePolynomial& f);
std::vector<double> weyl_coordinates(const HomogeneousPolynomial& f);

// The n partial derivatives as polynomials of degree bound d-1.
std::vector<AffinePolynomial> gradient_system(const AffinePolynomial& f);

// Coefficient-wise sum and scalar multiple; operands must share (n, d).
AffinePolynomial operator+(const AffinePolynomial& f, const AffinePolynomial& g);
AffinePolynomial operator*(double lambda, const AffinePolynomial& f);

}  // namespace pv
