#include "pv/amortize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pv/condition.hpp"
#include "pv/errors.hpp"
#include "pv/geometry.hpp"
#include "pv/rng.hpp"

namespace pv {

const char* regime_name(IntervalRegime r) {
  return r == IntervalRegime::lipschitz ? "lipschitz" : "bgt";
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  if (m == 0) return 0.0;
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

EstimateReport estimate_monte_carlo(const KappaEvaluator& kappa, int n, double a,
                                    const EstimatorSettings& settings) {
  if (settings.blocks < 1) throw DomainError("need at least one block");
  if (settings.samples < static_cast<std::uint64_t>(settings.blocks))
    throw DomainError("need at least one sample per block");

  EstimateReport report;
  std::vector<double> block_sum(static_cast<std::size_t>(settings.blocks), 0.0);
  std::vector<std::uint64_t> block_count(static_cast<std::size_t>(settings.blocks), 0);
  std::vector<double> retained;
  retained.reserve(settings.samples);
  std::vector<double> x(static_cast<std::size_t>(n));

  for (std::uint64_t i = 0; i < settings.samples; ++i) {
    SplitMix64 rng(mix_key(settings.seed, i, 0xE57));
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = a * rng.next_symmetric();
    const Kappa k = kappa(x);
    if (k.singular) {
      ++report.singular_count;
      continue;
    }
    const double v = ipow(k.value, n);
    const std::size_t b = static_cast<std::size_t>(
        i * static_cast<std::uint64_t>(settings.blocks) / settings.samples);
    block_sum[b] += v;
    ++block_count[b];
    retained.push_back(v);
  }

  std::vector<double> means;
  means.reserve(block_sum.size());
  for (std::size_t b = 0; b < block_sum.size(); ++b)
    if (block_count[b] > 0) means.push_back(block_sum[b] / static_cast<double>(block_count[b]));
  if (means.empty()) throw DomainError("every sample hit a singular zero");

  report.estimate = median_of(means);
  std::vector<double> dev;
  dev.reserve(means.size());
  for (double m : means) dev.push_back(std::abs(m - report.estimate));
  report.spread = median_of(std::move(dev));
  report.sample_count = retained.size();
  report.heavy_tail = heavy_tail_flag(std::move(retained));
  return report;
}

EstimateReport estimate_quadrature(const KappaEvaluator& kappa, int n, double a,
                                   const EstimatorSettings& settings) {
  if (n > 2) throw DomainError("quadrature is only provided for n <= 2");
  const int m = settings.cells_per_axis;
  if (m < 1) throw DomainError("need at least one quadrature cell per axis");
  const double h = 2.0 * a / m;

  EstimateReport report;
  long double weighted = 0.0L;
  long double total_weight = 0.0L;
  std::vector<double> x(static_cast<std::size_t>(n));

  auto visit = [&](double weight) {
    const Kappa k = kappa(x);
    if (k.singular) {
      ++report.singular_count;
      return;
    }
    weighted += static_cast<long double>(weight) * static_cast<long double>(ipow(k.value, n));
    total_weight += static_cast<long double>(weight);
    ++report.sample_count;
  };

  if (n == 1) {
    for (int i = 0; i <= m; ++i) {
      x[0] = -a + i * h;
      visit(i == 0 || i == m ? 0.5 : 1.0);
    }
  } else {
    for (int i = 0; i <= m; ++i) {
      x[0] = -a + i * h;
      const double wi = (i == 0 || i == m) ? 0.5 : 1.0;
      for (int j = 0; j <= m; ++j) {
        x[1] = -a + j * h;
        visit(wi * ((j == 0 || j == m) ? 0.5 : 1.0));
      }
    }
  }

  if (total_weight <= 0.0L) throw DomainError("every quadrature node hit a singular zero");
  report.estimate = static_cast<double>(weighted / total_weight);
  return report;
}

}  // namespace

bool heavy_tail_flag(std::vector<double> values) {
  if (values.empty()) return false;
  std::sort(values.begin(), values.end(), std::greater<double>());
  const std::size_t top =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.01 * values.size())));
  long double top_sum = 0.0L;
  long double all_sum = 0.0L;
  for (std::size_t i = 0; i < values.size(); ++i) {
    all_sum += values[i];
    if (i < top) top_sum += values[i];
  }
  if (all_sum <= 0.0L) return false;
  return top_sum > 0.5L * all_sum;
}

EstimateReport expectation_kappa_n(const AffinePolynomial& f, double a,
                                   const EstimatorSettings& settings) {
  if (!(a > 0.0)) throw DomainError("the half width a must be positive");
  const KappaEvaluator kappa(f);
  const int n = f.var_count();
  return settings.method == EstimatorSettings::Method::monte_carlo
             ? estimate_monte_carlo(kappa, n, a, settings)
             : estimate_quadrature(kappa, n, a, settings);
}

double cube_bound_from_expectation(int n, int d, double a, double expectation,
                                   IntervalRegime regime) {
  if (n < 1 || d < 1 || !(a > 0.0)) throw DomainError("invalid bound inputs");
  const double box = std::max(1.0, ipow(a, n));
  double factor;
  if (regime == IntervalRegime::lipschitz) {
    factor = ipow(static_cast<double>(d), n) * box * ipow(static_cast<double>(n), n) *
             std::exp2(4.5 * n);
  } else {
    if (d < 2) throw DomainError("the bgt regime needs degree at least 2");
    factor = ipow(static_cast<double>(d), 2 * n) * box *
             std::exp2(3.0 * n * n + 2.0 * n);
  }
  return std::max(1.0, factor * expectation);
}

CubeBoundReport amortized_cube_bound(const AffinePolynomial& f, double a, IntervalRegime regime,
                                     const EstimatorSettings& settings) {
  CubeBoundReport report;
  report.regime = regime;
  report.expectation = expectation_kappa_n(f, a, settings);
  report.bound = cube_bound_from_expectation(f.var_count(), f.degree_bound(), a,
                                             report.expectation.estimate, regime);
  return report;
}

namespace {

void validate(const BoundConfig& c) {
  if (c.n < 1 || c.d < 1) throw DomainError("n and d must be at least 1");
  if (!(c.a > 0.0)) throw DomainError("the half width a must be positive");
  if (!(c.c1 >= 1.0) || !(c.c2 >= 1.0)) throw DomainError("c1 and c2 must be at least 1");
  if (!(c.krho >= 0.25)) throw DomainError("krho is never below 1/4");
}

}  // namespace

double average_bound(const BoundConfig& config) {
  validate(config);
  const int n = config.n;
  const double product = config.c1 * config.c2 * config.krho;
  const double box = std::max(1.0, ipow(config.a, n));
  const double log2n = std::log2(static_cast<double>(n));
  double degree_part, two_part;
  if (config.regime == IntervalRegime::lipschitz) {
    degree_part = ipow(static_cast<double>(config.d), (n * n + 3 * n) / 2);
    two_part = std::exp2((n * n + 16.0 * n * log2n) / 2.0);
  } else {
    if (config.d < 2) throw DomainError("the bgt regime needs degree at least 2");
    degree_part = ipow(static_cast<double>(config.d), (n * n + 5 * n) / 2);
    two_part = std::exp2((7.0 * n * n + 9.0 * n * log2n) / 2.0);
  }
  return degree_part * box * two_part * ipow(product, n + 1);
}

double smoothed_bound(const BoundConfig& config) {
  if (!config.sigma.has_value() || !(*config.sigma > 0.0))
    throw DomainError("smoothed bounds need sigma > 0");
  return average_bound(config) * ipow(1.0 + 1.0 / *config.sigma, config.n + 1);
}

double kappa_tail_bound(const BoundConfig& config, double t) {
  validate(config);
  const int n = config.n;
  if (t < std::exp(static_cast<double>(n)))
    throw DomainError("the tail bound is only stated for t >= e^n");
  const double coeff_count = std::round(std::exp(
      std::lgamma(static_cast<double>(n + config.d) + 1.0) -
      std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(config.d) + 1.0)));
  const double product = config.c1 * config.c2 * config.krho;
  const double base = product * std::sqrt(coeff_count) /
                      std::sqrt(static_cast<double>(n) * (static_cast<double>(n) + 1.0));
  double bound = 4.0 * ipow(base, n + 1) *
                 std::pow(std::log(t), (n + 1) / 2.0) / std::pow(t, 1.0 + 1.0 / n);
  if (config.sigma.has_value()) {
    if (!(*config.sigma > 0.0)) throw DomainError("sigma must be positive");
    bound *= ipow(1.0 + 1.0 / *config.sigma, n + 1);
  }
  return bound;
}

}  // namespace pv
