#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pv/benchmark.hpp"
#include "pv/errors.hpp"
#include "pv/randpoly.hpp"
#include "pv/subdivide.hpp"

using namespace pv;

namespace {

BenchConfig small_config() {
  BenchConfig c;
  c.spec = {RandomModel::kss};
  c.n = 2;
  c.d_lo = 2;
  c.d_hi = 3;
  c.trials = 4;
  c.seed = 5;
  return c;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("run_bench covers every (degree, trial) pair in order") {
  const BenchConfig cfg = small_config();
  const BenchResult r = run_bench(cfg);
  REQUIRE(r.trials.size() == 8);
  REQUIRE(r.summaries.size() == 2);

  std::size_t i = 0;
  for (int d = cfg.d_lo; d <= cfg.d_hi; ++d)
    for (int t = 0; t < cfg.trials; ++t, ++i) {
      CHECK(r.trials[i].d == d);
      CHECK(r.trials[i].trial == t);
    }

  // Seeds are distinct across trials, so instances are independent.
  std::vector<std::uint64_t> seeds;
  for (const auto& t : r.trials) seeds.push_back(t.seed);
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("each trial record reproduces a standalone subdivision") {
  const BenchConfig cfg = small_config();
  const BenchResult r = run_bench(cfg);
  for (const auto& t : r.trials) {
    REQUIRE_FALSE(t.exceeded);
    const auto f = sample_dobro_affine(cfg.spec, cfg.n, t.d, t.seed);
    const Subdivision s = pv_subdivide(f, cfg.a, cfg.mode, cfg.max_depth);
    CHECK(t.leaf_count == static_cast<std::int64_t>(s.stats.leaf_count));
    CHECK(t.depth_max == s.stats.max_depth);
    CHECK(t.value_branch == s.stats.value_branch);
    CHECK(t.gradient_branch == s.stats.gradient_branch);
  }
}

TEST_CASE("summaries aggregate the completed trials") {
  const BenchResult r = run_bench(small_config());
  for (const auto& s : r.summaries) {
    std::vector<double> leaves;
    int depth = 0;
    for (const auto& t : r.trials)
      if (t.d == s.d && !t.exceeded) {
        leaves.push_back(static_cast<double>(t.leaf_count));
        depth = std::max(depth, t.depth_max);
      }
    REQUIRE(s.completed == static_cast<int>(leaves.size()));
    CHECK(s.exceeded == 0);
    CHECK(s.depth_max == depth);

    double mean = 0;
    for (double v : leaves) mean += v;
    mean /= static_cast<double>(leaves.size());
    CHECK(s.mean_leaves == doctest::Approx(mean).epsilon(1e-12));

    std::sort(leaves.begin(), leaves.end());
    const std::size_t m = leaves.size();
    const double median =
        m % 2 == 1 ? leaves[m / 2] : 0.5 * (leaves[m / 2 - 1] + leaves[m / 2]);
    CHECK(s.median_leaves == doctest::Approx(median).epsilon(1e-12));
  }
}

TEST_CASE("run_bench is deterministic and timing is opt-in") {
  const BenchConfig cfg = small_config();
  const BenchResult r1 = run_bench(cfg);
  const BenchResult r2 = run_bench(cfg);
  REQUIRE(r1.trials.size() == r2.trials.size());
  for (std::size_t i = 0; i < r1.trials.size(); ++i) {
    CHECK(r1.trials[i].seed == r2.trials[i].seed);
    CHECK(r1.trials[i].leaf_count == r2.trials[i].leaf_count);
    CHECK(r1.trials[i].runtime_ms == 0.0);
  }

  BenchConfig timed = cfg;
  timed.timing = true;
  timed.d_lo = timed.d_hi = 2;
  timed.trials = 1;
  const BenchResult rt = run_bench(timed);
  CHECK(rt.trials[0].runtime_ms > 0.0);
}

TEST_CASE("exceeded trials are recorded and excluded from the summary") {
  BenchConfig cfg = small_config();
  // At depth cap 1 none of these instances certify, so every trial exceeds.
  cfg.max_depth = 1;
  const BenchResult r = run_bench(cfg);
  REQUIRE(r.trials.size() == 8);
  for (const auto& t : r.trials) {
    CHECK(t.exceeded);
    CHECK(t.leaf_count == 0);
  }
  for (const auto& s : r.summaries) {
    CHECK(s.completed == 0);
    CHECK(s.exceeded == 4);
    CHECK(s.mean_leaves == 0.0);
  }
  CHECK_THROWS_AS((void)[&] {
    BenchConfig bad = cfg;
    bad.max_depth = 0;
    return run_bench(bad);
  }(), DomainError);
}

TEST_CASE("CSV layout: header, trial rows, summary rows") {
  const BenchConfig cfg = small_config();
  const BenchResult r = run_bench(cfg);
  std::ostringstream os;
  write_bench_csv(os, r);
  const auto lines = split_lines(os.str());

  REQUIRE(lines.size() == 1 + 8 + 2 * 2);
  CHECK(lines[0] ==
        "model,n,d,a,trial,seed,leaf_count,depth_max,value_branch,gradient_branch,runtime_ms");
  for (std::size_t i = 1; i <= 8; ++i) {
    CHECK(lines[i].rfind("kss,2,", 0) == 0);
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 10);
  }
  CHECK(lines[9].find(",mean,") != std::string::npos);
  CHECK(lines[10].find(",median,") != std::string::npos);

  // Exceeded trials are written with leaf_count -1.
  BenchConfig capped = cfg;
  capped.max_depth = 1;
  capped.d_hi = 2;
  capped.trials = 1;
  std::ostringstream os2;
  write_bench_csv(os2, run_bench(capped));
  const auto capped_lines = split_lines(os2.str());
  CHECK(capped_lines[1].find(",-1,") != std::string::npos);
}
