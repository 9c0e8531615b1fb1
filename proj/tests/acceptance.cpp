// Acceptance suite: every release-gating property of the library, one
// [PASS]/[FAIL] line each. The process exit code is the number of failures.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pv/amortize.hpp"
#include "pv/benchmark.hpp"
#include "pv/condition.hpp"
#include "pv/errors.hpp"
#include "pv/geometry.hpp"
#include "pv/polynomial.hpp"
#include "pv/randpoly.hpp"
#include "pv/rng.hpp"
#include "pv/subdivide.hpp"

using namespace pv;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void report(int index, const std::string& name, const Outcome& outcome) {
  std::printf("[%s] %2d %s (%s)\n", outcome.pass ? "PASS" : "FAIL", index, name.c_str(),
              outcome.detail.c_str());
  std::fflush(stdout);
  if (!outcome.pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

AffinePolynomial random_instance(SplitMix64& rng, int& n, int& d, int d_lo = 2) {
  n = 1 + static_cast<int>(rng.next() % 3);
  d = d_lo + static_cast<int>(rng.next() % (7 - d_lo));
  return sample_dobro_affine({RandomModel::kss}, n, d, rng.next());
}

std::vector<double> random_point(int n, SplitMix64& rng, double scale = 1.0) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = scale * rng.next_symmetric();
  return x;
}

// 1. The two independent evaluation routes for the condition number agree.
Outcome criterion_dual_route() {
  SplitMix64 rng(1001);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    int n, d;
    const auto f = random_instance(rng, n, d);
    const auto x = random_point(n, rng);
    const Kappa kd = kappa_direct(f, x);
    const Kappa kp = kappa_projection(f, x);
    if (kd.singular || kp.singular) continue;
    const double gap = std::abs(kd.value - kp.value) / std::max(kd.value, kp.value);
    worst = std::max(worst, gap);
  }
  return {worst <= 1e-8, "1000 random (f, x); worst relative gap " + fmt(worst)};
}

// 2. At every point, value or gradient clears the 1/(2 sqrt(2d) kappa) floor.
Outcome criterion_fundamental_gap() {
  SplitMix64 rng(1002);
  double min_ratio = 1e300;
  for (int rep = 0; rep < 10000; ++rep) {
    int n, d;
    const auto f = random_instance(rng, n, d, 1);
    const auto x = random_point(n, rng);
    const FundamentalGap g = fundamental_gap(f, x);
    if (g.threshold == 0.0) continue;
    min_ratio = std::min(min_ratio, std::max(g.value_magnitude, g.gradient_norm) / g.threshold);
  }
  return {min_ratio > 1 - 1e-9, "10000 samples; min (max(|f|,|grad|))/threshold " + fmt(min_ratio)};
}

// 3. The normalized evaluators obey their Lipschitz constants and are
//    bounded by sqrt(1 + |x|^2).
Outcome criterion_lipschitz() {
  SplitMix64 rng(1003);
  double worst_value_q = 0.0, worst_grad_q = 0.0, worst_bound = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    int n, d;
    const auto f = random_instance(rng, n, d, 1);
    const auto x = random_point(n, rng, 2.0);
    auto y = x;
    const double h = std::pow(10.0, -3.0 * rng.next_unit());  // 1e-3 .. 1
    for (double& v : y) v += h * rng.next_symmetric();

    std::vector<double> gx(x.size()), gy(x.size());
    const double fx = normalized_value_and_gradient(f, x, gx);
    const double fy = normalized_value_and_gradient(f, y, gy);
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    const double dist = euclidean_norm(diff);
    if (dist > 0) {
      worst_value_q = std::max(worst_value_q, std::abs(fx - fy) / dist / value_lipschitz(d));
      std::vector<double> gdiff(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) gdiff[i] = gx[i] - gy[i];
      worst_grad_q =
          std::max(worst_grad_q, euclidean_norm(gdiff) / dist / gradient_lipschitz(d));
    }
    const double cap = std::sqrt(1.0 + squared_norm(x));
    worst_bound = std::max(worst_bound, std::max(std::abs(fx), euclidean_norm(gx)) / cap);
  }
  const bool pass = worst_value_q <= 1 + 1e-9 && worst_grad_q <= 1 + 1e-9 &&
                    worst_bound <= 1 + 1e-12;
  return {pass, "worst quotient/L: value " + fmt(worst_value_q) + ", gradient " +
                    fmt(worst_grad_q) + "; worst |.|/sqrt(1+|x|^2) " + fmt(worst_bound)};
}

// 4. Subdivisions verify cleanly and the certifying test implies the
//    interval test on every leaf.
Outcome criterion_subdivision() {
  std::uint64_t leaves_checked = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 5;
    const auto f =
        sample_dobro_affine({RandomModel::kss}, 2, d, 40000 + static_cast<std::uint64_t>(i));
    Subdivision s;
    try {
      s = pv_subdivide(f, 1.0, PredicateMode::cprime);
    } catch (const MaxDepthExceeded&) {
      return {false, "instance " + std::to_string(i) + " exhausted the depth budget"};
    }
    const VerifyReport r = verify_subdivision(s, f);
    if (!r.ok()) return {false, "instance " + std::to_string(i) + ": " + r.violations[0]};
    for (const Leaf& l : s.leaves) {
      if (!interval_predicate(f, l.cube).holds)
        return {false, "midpoint test held but interval test failed on a leaf of instance " +
                           std::to_string(i)};
    }
    leaves_checked += s.stats.leaf_count;
  }
  return {true, "100 instances verified, " + std::to_string(leaves_checked) + " leaves"};
}

// 5. Observed leaf counts stay below the amortized cube bound computed from
//    the measured moment of the condition number.
Outcome criterion_amortized_bound() {
  EstimatorSettings settings;
  settings.method = EstimatorSettings::Method::quadrature;
  settings.cells_per_axis = 4096;
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 5;
    const auto f =
        sample_dobro_affine({RandomModel::kss}, 2, d, 50000 + static_cast<std::uint64_t>(i));
    const Subdivision s = pv_subdivide(f, 1.0, PredicateMode::cprime);
    const CubeBoundReport r = amortized_cube_bound(f, 1.0, IntervalRegime::lipschitz, settings);
    const double ratio = static_cast<double>(s.stats.leaf_count) / r.bound;
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 1.0)
      return {false, "instance " + std::to_string(i) + ": leaves " +
                         std::to_string(s.stats.leaf_count) + " exceed bound " + fmt(r.bound)};
  }
  return {true, "20 instances; worst leaves/bound " + fmt(worst_ratio)};
}

// 6. Any cube around a point with volume below the local size bound passes
//    the midpoint test.
Outcome criterion_size_bound() {
  SplitMix64 rng(1006);
  int tested = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    int n, d;
    const auto f = random_instance(rng, n, d, 1);
    const auto x = random_point(n, rng);
    const double b = local_size_bound(f, x);
    if (b == 0.0) continue;
    const double w = std::pow(b * (0.02 + 0.97 * rng.next_unit()), 1.0 / n);
    Cube J{x, w};
    for (double& m : J.midpoint) m += 0.5 * w * rng.next_symmetric();
    if (J.volume() >= b) continue;
    if (!midpoint_predicate(f, J).holds)
      return {false, "cube below the size bound failed the midpoint test (rep " +
                         std::to_string(rep) + ")"};
    ++tested;
  }
  return {tested > 900, std::to_string(tested) + " cubes below the bound all certified"};
}

// 7. Mean leaf counts grow polynomially with the degree: bounded log-log
//    slope, no blowups, no depth exhaustion.
Outcome criterion_degree_scaling() {
  BenchConfig cfg;
  cfg.spec = {RandomModel::kss};
  cfg.n = 2;
  cfg.d_lo = 2;
  cfg.d_hi = 10;
  cfg.trials = 50;
  cfg.seed = 7000;
  const BenchResult r = run_bench(cfg);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const DegreeSummary& s : r.summaries) {
    if (s.exceeded > 0) return {false, "degree " + std::to_string(s.d) + " exhausted depth"};
    if (!(s.mean_leaves > 0) || !std::isfinite(s.mean_leaves))
      return {false, "degree " + std::to_string(s.d) + " produced a degenerate mean"};
    const double lx = std::log(static_cast<double>(s.d));
    const double ly = std::log(s.mean_leaves);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++m;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return {slope <= 5.0, "450 runs, degrees 2..10; log-log slope " + fmt(slope)};
}

// 8. The empirical tail of the squared condition number at a fixed point
//    decays at a super-linear polynomial rate.
Outcome criterion_tail_decay() {
  std::vector<double> kappa_sq;
  const std::vector<double> origin{0.0, 0.0};
  for (int i = 0; i < 10000; ++i) {
    const auto f =
        sample_dobro_affine({RandomModel::kss}, 2, 3, 80000 + static_cast<std::uint64_t>(i));
    const Kappa k = kappa_direct(f, origin);
    if (!k.singular) kappa_sq.push_back(k.value * k.value);
  }
  // Fit on t in [e^2, e^6]; grid points with fewer than 5 survivors are
  // dropped since their counts are too noisy to say anything about the rate.
  std::vector<double> lt, ls;
  for (int j = 0; j <= 8; ++j) {
    const double t = std::exp(2.0 + 0.5 * j);
    const auto count = std::count_if(kappa_sq.begin(), kappa_sq.end(),
                                     [&](double v) { return v >= t; });
    if (count < 5) break;
    lt.push_back(std::log(t));
    ls.push_back(std::log(static_cast<double>(count)));
  }
  if (lt.size() < 3)
    return {false, "only " + std::to_string(lt.size()) + " usable grid points"};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(lt.size());
  for (int j = 0; j < m; ++j) {
    sx += lt[j], sy += ls[j], sxx += lt[j] * lt[j], sxy += lt[j] * ls[j];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return {slope <= -1.2, "10000 draws, " + std::to_string(m) +
                             " grid points in [e^2, e^6]; survival slope of kappa^2 " +
                             fmt(slope)};
}

// 9. The closed-form bounds reproduce their hand-computed values exactly
//    and enforce their domains.
Outcome criterion_closed_forms() {
  BoundConfig cfg;
  cfg.n = 2;
  cfg.d = 2;
  if (average_bound(cfg) != 8388608.0)
    return {false, "average bound at (n=2, d=2, a=1, product 1) is " +
                       fmt(average_bound(cfg)) + ", expected 8388608"};
  cfg.sigma = 1.0;
  if (smoothed_bound(cfg) != 8.0 * 8388608.0)
    return {false, "smoothed bound at sigma=1 is not 8x the average bound"};
  cfg.sigma.reset();

  bool rejected = false;
  try {
    (void)kappa_tail_bound(cfg, std::exp(2.0) * (1 - 1e-6));
  } catch (const DomainError&) {
    rejected = true;
  }
  if (!rejected) return {false, "tail bound accepted t below e^n"};
  const double at_floor = kappa_tail_bound(cfg, std::exp(2.0));
  if (!(at_floor > 0.0) || !std::isfinite(at_floor))
    return {false, "tail bound at t = e^n is degenerate"};
  return {true, "average 8388608 exact, smoothing factor 8 exact, tail domain enforced"};
}

// 10. The benchmark CLI is byte-reproducible for a fixed seed.
Outcome criterion_reproducible_cli() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pv_acceptance";
  fs::create_directories(dir);
  const fs::path c1 = dir / "run1.csv";
  const fs::path c2 = dir / "run2.csv";
  const std::string base = std::string(PV_CLI_PATH) +
                           " bench --model kss --n 2 --d-range 2:4 --trials 5 --seed 1 --csv ";
  const std::string quiet = " > /dev/null 2>&1";
  if (std::system((base + c1.string() + quiet).c_str()) != 0)
    return {false, "first benchmark run failed"};
  if (std::system((base + c2.string() + quiet).c_str()) != 0)
    return {false, "second benchmark run failed"};

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string b1 = slurp(c1);
  const std::string b2 = slurp(c2);
  if (b1.empty()) return {false, "benchmark CSV is empty"};
  if (b1 != b2) return {false, "identical seeds produced different CSV bytes"};
  return {true, std::to_string(b1.size()) + " CSV bytes identical across runs"};
}

}  // namespace

int main() {
  std::printf("acceptance suite, library version %s\n", kVersion);
  report(1, "direct and projection condition numbers agree to 1e-8", criterion_dual_route());
  report(2, "value or gradient always clears the conditioning floor", criterion_fundamental_gap());
  report(3, "normalized evaluators respect Lipschitz and hemisphere bounds", criterion_lipschitz());
  report(4, "subdivisions verify and midpoint certificates imply interval ones",
         criterion_subdivision());
  report(5, "leaf counts stay below the amortized cube bound", criterion_amortized_bound());
  report(6, "cubes below the local size bound always certify", criterion_size_bound());
  report(7, "mean leaf counts scale polynomially in the degree", criterion_degree_scaling());
  report(8, "empirical squared condition number tail decays super-linearly",
         criterion_tail_decay());
  report(9, "closed-form bounds match hand values exactly", criterion_closed_forms());
  report(10, "benchmark CLI output is byte-reproducible", criterion_reproducible_cli());

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
