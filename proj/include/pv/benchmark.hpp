#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pv/randpoly.hpp"
#include "pv/subdivide.hpp"

namespace pv {

struct BenchConfig {
  DobroSpec spec;
  int n = 2;
  int d_lo = 2;
  int d_hi = 6;
  int trials = 10;
  std::uint64_t seed = 0;
  double a = 1.0;
  PredicateMode mode = PredicateMode::cprime;
  int max_depth = 40;
  // When false, runtime_ms is written as 0 so repeated runs with the same
  // configuration produce byte-identical CSV files.
  bool timing = false;
};

struct TrialRecord {
  int d = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool exceeded = false;  // hit max_depth; counters below are then zero
  std::int64_t leaf_count = 0;
  int depth_max = 0;
  std::uint64_t value_branch = 0;
  std::uint64_t gradient_branch = 0;
  double runtime_ms = 0.0;
};

struct DegreeSummary {
  int d = 0;
  int completed = 0;
  int exceeded = 0;
  double mean_leaves = 0.0;
  double median_leaves = 0.0;
  int depth_max = 0;
};

struct BenchResult {
  BenchConfig config;
  std::vector<TrialRecord> trials;
  std::vector<DegreeSummary> summaries;
};

// One subdivision per (degree, trial) pair on a fresh random polynomial.
// The per-trial seed depends only on (seed, d, trial), never on execution
// order. Trials that exhaust max_depth are recorded, not fatal.
BenchResult run_bench(const BenchConfig& config);

// Trial rows ordered by (d, trial), then per-degree mean and median rows
// whose trial column holds "mean" / "median". Exceeded trials carry
// leaf_count -1 and are excluded from the summary statistics.
void write_bench_csv(std::ostream& os, const BenchResult& result);

}  // namespace pv
