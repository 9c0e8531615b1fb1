#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pv/errors.hpp"
#include "pv/polynomial.hpp"
#include "pv/randpoly.hpp"
#include "pv/rng.hpp"

using namespace pv;

namespace {

// Weyl-orthonormal coordinates pooled over many independent instances.
std::vector<double> pooled_coordinates(const DobroSpec& spec, int instances,
                                       std::uint64_t seed0) {
  std::vector<double> coords;
  for (int i = 0; i < instances; ++i) {
    const auto f = sample_dobro(spec, 1, 2, seed0 + static_cast<std::uint64_t>(i));
    const auto u = weyl_coordinates(f);
    coords.insert(coords.end(), u.begin(), u.end());
  }
  return coords;
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Kolmogorov-Smirnov distance against a reference CDF.
double ks_distance(std::vector<double> v, double (*cdf)(double)) {
  std::sort(v.begin(), v.end());
  const double m = static_cast<double>(v.size());
  double d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double c = cdf(v[i]);
    d = std::max(d, std::abs(c - static_cast<double>(i) / m));
    d = std::max(d, std::abs(c - static_cast<double>(i + 1) / m));
  }
  return d;
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }
double uniform_cdf(double t) { return std::clamp(0.5 * (t + 1.0), 0.0, 1.0); }

}  // namespace

TEST_CASE("model names") {
  CHECK(std::string(model_name(RandomModel::kss)) == "kss");
  CHECK(std::string(model_name(RandomModel::weyl_uniform)) == "weyl");
  CHECK(std::string(model_name(RandomModel::p_random)) == "prandom");
}

TEST_CASE("kss coordinates are standard normal") {
  const auto coords = pooled_coordinates({RandomModel::kss}, 35000, 11);
  REQUIRE(coords.size() == 105000);
  CHECK(std::abs(mean_of(coords)) < 0.015);
  CHECK(variance_of(coords) == doctest::Approx(1.0).epsilon(0.02));
  const double m = static_cast<double>(coords.size());
  CHECK(ks_distance(coords, normal_cdf) < 1.63 / std::sqrt(m));
}

TEST_CASE("weyl coordinates are uniform on [-1, 1]") {
  const auto coords = pooled_coordinates({RandomModel::weyl_uniform}, 35000, 13);
  for (double c : coords) CHECK(std::abs(c) <= 1.0);
  CHECK(variance_of(coords) == doctest::Approx(1.0 / 3.0).epsilon(0.03));
  const double m = static_cast<double>(coords.size());
  CHECK(ks_distance(coords, uniform_cdf) < 1.63 / std::sqrt(m));
}

TEST_CASE("p_random at p = 2 is a centered Gaussian of variance one half") {
  const auto coords = pooled_coordinates({RandomModel::p_random, 2.0}, 35000, 17);
  CHECK(std::abs(mean_of(coords)) < 0.015);
  CHECK(variance_of(coords) == doctest::Approx(0.5).epsilon(0.04));
  CHECK_THROWS_AS((void)sample_dobro({RandomModel::p_random, 1.5}, 1, 2, 1), DomainError);
  CHECK_THROWS_AS((void)model_parameters({RandomModel::p_random, 0.5}), DomainError);
}

TEST_CASE("sampling is deterministic in the seed and independent across seeds") {
  const DobroSpec spec{RandomModel::kss};
  const auto f1 = sample_dobro(spec, 2, 4, 101);
  const auto f2 = sample_dobro(spec, 2, 4, 101);
  const auto g = sample_dobro(spec, 2, 4, 102);
  CHECK(f1.coefficients() == f2.coefficients());
  CHECK(f1.coefficients() != g.coefficients());

  const auto fa = sample_dobro_affine(spec, 2, 4, 101);
  const auto fd = dehomogenize(f1);
  CHECK(fa.coefficients() == fd.coefficients());
}

TEST_CASE("monomial coefficients carry the sqrt of the Weyl weight") {
  // Instance norms concentrate around the coordinate dimension.
  const DobroSpec spec{RandomModel::kss};
  const int dim = static_cast<int>(weyl_coordinates(sample_dobro(spec, 2, 3, 1)).size());
  REQUIRE(dim == 10);
  double total = 0;
  const int reps = 4000;
  for (int i = 0; i < reps; ++i) {
    const auto f = sample_dobro(spec, 2, 3, 500 + static_cast<std::uint64_t>(i));
    const double nrm = f.weyl_norm();
    total += nrm * nrm;
  }
  CHECK(total / reps == doctest::Approx(dim).epsilon(0.05));
}

TEST_CASE("anticoncentration constant bounds small-ball probabilities") {
  const std::vector<DobroSpec> specs = {
      {RandomModel::kss}, {RandomModel::weyl_uniform}, {RandomModel::p_random, 2.0}};
  for (const auto& spec : specs) {
    CAPTURE(model_name(spec.model));
    const double rho = model_parameters(spec).anticoncentration_rho;
    const auto coords = pooled_coordinates(spec, 35000, 23);
    for (const double eps : {0.1, 0.01}) {
      double worst = 0;
      for (double center = -1.5; center <= 1.5; center += 0.25) {
        int hits = 0;
        for (double c : coords)
          if (std::abs(c - center) <= eps) ++hits;
        worst = std::max(worst,
                         static_cast<double>(hits) / static_cast<double>(coords.size()));
      }
      CHECK(worst <= (rho + 0.1) * eps);
    }
  }
}

TEST_CASE("model parameters match their closed forms") {
  const ModelParameters kss = model_parameters({RandomModel::kss});
  CHECK(kss.subgaussian_k == 0.5);
  CHECK(kss.anticoncentration_rho == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-15));
  CHECK(kss.product() == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));

  const ModelParameters weyl = model_parameters({RandomModel::weyl_uniform});
  CHECK(weyl.subgaussian_k == 0.5);
  CHECK(weyl.anticoncentration_rho == 1.0);
  CHECK(weyl.product() == 0.5);

  const ModelParameters pr = model_parameters({RandomModel::p_random, 2.0});
  CHECK(pr.anticoncentration_rho == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(pr.subgaussian_k == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-6));
  CHECK(pr.product() == doctest::Approx(2.0 / M_PI).epsilon(1e-6));

  for (const auto& spec : {DobroSpec{RandomModel::kss}, DobroSpec{RandomModel::weyl_uniform},
                           DobroSpec{RandomModel::p_random, 2.0},
                           DobroSpec{RandomModel::p_random, 4.0}}) {
    CHECK(model_parameters(spec).product() >= 0.25);
  }
}

TEST_CASE("p_random tails thin out as p grows") {
  const auto c2 = pooled_coordinates({RandomModel::p_random, 2.0}, 8000, 29);
  const auto c8 = pooled_coordinates({RandomModel::p_random, 8.0}, 8000, 29);
  const auto kurt = [](const std::vector<double>& v) {
    const double var = variance_of(v);
    double s = 0;
    for (double x : v) s += x * x * x * x;
    return s / static_cast<double>(v.size()) / (var * var);
  };
  // Gaussian kurtosis is 3; flatter densities push it toward the uniform 1.8.
  CHECK(kurt(c2) == doctest::Approx(3.0).epsilon(0.1));
  CHECK(kurt(c8) < 2.2);
}

TEST_CASE("smoothed instances scale with sigma and the base norm") {
  const auto base = sample_dobro_affine({RandomModel::kss}, 2, 3, 41);
  const double base_norm = base.weyl_norm();

  SUBCASE("tiny sigma stays within the stated envelope") {
    const auto q = smoothed_instance({base, 1e-12, {RandomModel::kss}}, 7);
    const auto diff = q + (-1.0) * base;
    CHECK(diff.weyl_norm() <= 1e-10 * base_norm);
  }
  SUBCASE("the displacement is exactly sigma |base| times the noise norm") {
    SplitMix64 rng(43);
    for (int rep = 0; rep < 40; ++rep) {
      const double sigma = 0.1 + rng.next_unit();
      const std::uint64_t s = rng.next();
      const auto q = smoothed_instance({base, sigma, {RandomModel::kss}}, s);
      const auto g = sample_dobro_affine({RandomModel::kss}, 2, 3, s);
      const auto diff = q + (-1.0) * base;
      CHECK(diff.weyl_norm() ==
            doctest::Approx(sigma * base_norm * g.weyl_norm()).epsilon(1e-12));
    }
  }
  SUBCASE("mean squared displacement matches sigma^2 |base|^2 dim") {
    const double sigma = 0.3;
    const int dim = static_cast<int>(weyl_coordinates(base).size());
    double total = 0;
    const int reps = 4000;
    for (int i = 0; i < reps; ++i) {
      const auto q =
          smoothed_instance({base, sigma, {RandomModel::kss}}, 900 + static_cast<std::uint64_t>(i));
      const auto diff = q + (-1.0) * base;
      const double d = diff.weyl_norm();
      total += d * d;
    }
    const double want = sigma * sigma * base_norm * base_norm * dim;
    CHECK(total / reps == doctest::Approx(want).epsilon(0.05));
  }
  SUBCASE("nonpositive sigma is rejected") {
    CHECK_THROWS_AS((void)smoothed_instance({base, 0.0, {RandomModel::kss}}, 1), DomainError);
    CHECK_THROWS_AS((void)smoothed_instance({base, -0.5, {RandomModel::kss}}, 1), DomainError);
  }
}
