#include "pv/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "pv/errors.hpp"
#include "pv/io.hpp"
#include "pv/rng.hpp"

namespace pv {

BenchResult run_bench(const BenchConfig& config) {
  if (config.trials < 1) throw DomainError("need at least one trial");
  if (config.d_lo < 1 || config.d_hi < config.d_lo) throw DomainError("bad degree range");

  BenchResult result;
  result.config = config;

  for (int d = config.d_lo; d <= config.d_hi; ++d) {
    DegreeSummary summary;
    summary.d = d;
    std::vector<double> leaves;
    leaves.reserve(static_cast<std::size_t>(config.trials));

    for (int trial = 0; trial < config.trials; ++trial) {
      TrialRecord rec;
      rec.d = d;
      rec.trial = trial;
      rec.seed = mix_key(config.seed, static_cast<std::uint64_t>(d),
                         static_cast<std::uint64_t>(trial));
      const AffinePolynomial f = sample_dobro_affine(config.spec, config.n, d, rec.seed);

      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Subdivision s = pv_subdivide(f, config.a, config.mode, config.max_depth);
        rec.leaf_count = static_cast<std::int64_t>(s.stats.leaf_count);
        rec.depth_max = s.stats.max_depth;
        rec.value_branch = s.stats.value_branch;
        rec.gradient_branch = s.stats.gradient_branch;
      } catch (const MaxDepthExceeded&) {
        rec.exceeded = true;
      }
      const auto t1 = std::chrono::steady_clock::now();
      if (config.timing)
        rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

      if (rec.exceeded) {
        ++summary.exceeded;
      } else {
        ++summary.completed;
        leaves.push_back(static_cast<double>(rec.leaf_count));
        summary.depth_max = std::max(summary.depth_max, rec.depth_max);
      }
      result.trials.push_back(std::move(rec));
    }

    if (!leaves.empty()) {
      double sum = 0.0;
      for (double v : leaves) sum += v;
      summary.mean_leaves = sum / static_cast<double>(leaves.size());
      std::sort(leaves.begin(), leaves.end());
      const std::size_t m = leaves.size();
      summary.median_leaves = m % 2 ? leaves[m / 2] : 0.5 * (leaves[m / 2 - 1] + leaves[m / 2]);
    }
    result.summaries.push_back(summary);
  }
  return result;
}

void write_bench_csv(std::ostream& os, const BenchResult& result) {
  const BenchConfig& c = result.config;
  const std::string model = model_name(c.spec.model);
  const std::string a = format_double(c.a);

  os << "model,n,d,a,trial,seed,leaf_count,depth_max,value_branch,gradient_branch,runtime_ms\n";
  for (const TrialRecord& rec : result.trials) {
    os << model << ',' << c.n << ',' << rec.d << ',' << a << ',' << rec.trial << ',' << rec.seed
       << ',';
    if (rec.exceeded)
      os << "-1," << c.max_depth << ",0,0,";
    else
      os << rec.leaf_count << ',' << rec.depth_max << ',' << rec.value_branch << ','
         << rec.gradient_branch << ',';
    os << format_double(rec.runtime_ms) << '\n';
  }
  for (const DegreeSummary& s : result.summaries) {
    os << model << ',' << c.n << ',' << s.d << ',' << a << ",mean,,"
       << (s.completed ? format_double(s.mean_leaves) : std::string("-1")) << ',' << s.depth_max
       << ",,,\n";
    os << model << ',' << c.n << ',' << s.d << ',' << a << ",median,,"
       << (s.completed ? format_double(s.median_leaves) : std::string("-1")) << ',' << s.depth_max
       << ",,,\n";
  }
}

}  // namespace pv
