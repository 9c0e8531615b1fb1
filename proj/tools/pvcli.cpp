#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pv/amortize.hpp"
#include "pv/benchmark.hpp"
#include "pv/condition.hpp"
#include "pv/errors.hpp"
#include "pv/geometry.hpp"
#include "pv/io.hpp"
#include "pv/randpoly.hpp"
#include "pv/subdivide.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMaxDepth = 3;
constexpr int kExitSingular = 4;

std::string join_args(int argc, char** argv) {
  std::ostringstream os;
  for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
  return os.str();
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw pv::DomainError("cannot parse coordinate \"" + item + "\"");
  }
  if (out.empty()) throw pv::DomainError("empty point");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw pv::DomainError("degree range must look like LO:HI, got \"" + text + "\"");
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

pv::PredicateMode parse_mode(const std::string& text) {
  if (text == "cprime") return pv::PredicateMode::cprime;
  if (text == "interval") return pv::PredicateMode::interval;
  throw pv::DomainError("unknown mode \"" + text + "\"");
}

pv::RandomModel parse_model(const std::string& text) {
  if (text == "kss") return pv::RandomModel::kss;
  if (text == "weyl") return pv::RandomModel::weyl_uniform;
  if (text == "prandom") return pv::RandomModel::p_random;
  throw pv::DomainError("unknown model \"" + text + "\"");
}

pv::AffinePolynomial load_affine(const std::string& path) {
  pv::PolynomialVariant p = pv::load_polynomial(path);
  if (std::holds_alternative<pv::HomogeneousPolynomial>(p))
    throw pv::DomainError("this command needs an affine polynomial (\"homogeneous\": false)");
  return std::get<pv::AffinePolynomial>(std::move(p));
}

void validate_ranges(int n, int d) {
  if (n < 1 || n > 4) throw pv::DomainError("n must be between 1 and 4");
  if (d < 1 || d > 20) throw pv::DomainError("d must be between 1 and 20");
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    pv::save_json(j, out_path);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct MeshArgs {
  std::string poly, mode = "cprime", out, svg;
  double a = 1.0;
  int max_depth = 40;
};

int cmd_mesh(const MeshArgs& args, const std::string& command) {
  const pv::AffinePolynomial f = load_affine(args.poly);
  validate_ranges(f.var_count(), f.degree_bound());
  if (!args.svg.empty() && f.var_count() != 2)
    throw pv::DomainError("--svg needs a plane curve (n = 2)");

  const auto t0 = std::chrono::steady_clock::now();
  const pv::Subdivision s = pv::pv_subdivide(f, args.a, parse_mode(args.mode), args.max_depth);

  std::optional<pv::PolylineSet> curve;
  if (!args.svg.empty()) curve = pv::extract_segments(f, s);

  nlohmann::json j = pv::subdivision_json(s);
  pv::RunManifest manifest;
  manifest.command = command;
  manifest.config = {{"poly", args.poly}, {"a", args.a},       {"mode", args.mode},
                     {"max_depth", args.max_depth}, {"out", args.out}, {"svg", args.svg}};
  manifest.wall_ms = elapsed_ms(t0);
  j["manifest"] = pv::manifest_json(manifest);
  emit(j, args.out);

  if (curve) {
    std::ofstream svg(args.svg);
    if (!svg) throw pv::DomainError("cannot write " + args.svg);
    svg << pv::subdivision_svg(s, &*curve);
  }
  std::cerr << "leaves: " << s.stats.leaf_count << ", max depth: " << s.stats.max_depth << "\n";
  return kExitOk;
}

struct KappaArgs {
  std::string poly, point, method = "both";
};

int cmd_kappa(const KappaArgs& args) {
  const pv::AffinePolynomial f = load_affine(args.poly);
  const std::vector<double> x = parse_point(args.point);
  if (static_cast<int>(x.size()) != f.var_count())
    throw pv::DomainError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                          std::to_string(f.var_count()));

  bool singular = false;
  std::optional<double> direct, projection;
  if (args.method == "both" || args.method == "direct") {
    const pv::Kappa k = pv::kappa_direct(f, x);
    singular = singular || k.singular;
    if (!k.singular) direct = k.value;
  }
  if (args.method == "both" || args.method == "projection") {
    const pv::Kappa k = pv::kappa_projection(f, x);
    singular = singular || k.singular;
    if (!k.singular) projection = k.value;
  }

  if (singular) {
    std::cout << "singular zero: kappa is infinite and the local size bound is 0\n";
    return kExitSingular;
  }
  if (direct) std::cout << "kappa_direct = " << pv::format_double(*direct) << "\n";
  if (projection) std::cout << "kappa_projection = " << pv::format_double(*projection) << "\n";
  if (direct && projection) {
    const double gap = std::abs(*direct - *projection) / std::max(*direct, *projection);
    std::cout << "relative_gap = " << pv::format_double(gap) << "\n";
  }
  const double used = direct ? *direct : *projection;
  std::cout << "size_bound = "
            << pv::format_double(pv::size_bound_from_kappa(used, f.var_count(), f.degree_bound()))
            << "\n";
  if (f.degree_bound() >= 2)
    std::cout << "size_bound_bgt = "
              << pv::format_double(
                     pv::size_bound_bgt_from_kappa(used, f.var_count(), f.degree_bound()))
              << "\n";
  return kExitOk;
}

struct SampleArgs {
  std::string model = "kss", out, base;
  int n = 2, d = 3;
  std::uint64_t seed = 0;
  double p = 2.0, sigma = 0.0;
  bool homogeneous = false;
  bool sigma_set = false;
};

int cmd_sample(const SampleArgs& args, const std::string& command) {
  validate_ranges(args.n, args.d);
  pv::DobroSpec spec{parse_model(args.model), args.p};

  const auto t0 = std::chrono::steady_clock::now();
  nlohmann::json j;
  if (!args.base.empty() || args.sigma_set) {
    if (args.base.empty() || !args.sigma_set)
      throw pv::DomainError("smoothed sampling needs both --base and --sigma");
    if (args.homogeneous) throw pv::DomainError("smoothed sampling is affine only");
    pv::SmoothingSpec smooth{load_affine(args.base), args.sigma, spec};
    j = pv::polynomial_json(pv::smoothed_instance(smooth, args.seed));
  } else if (args.homogeneous) {
    j = pv::polynomial_json(pv::sample_dobro(spec, args.n, args.d, args.seed));
  } else {
    j = pv::polynomial_json(pv::sample_dobro_affine(spec, args.n, args.d, args.seed));
  }

  pv::RunManifest manifest;
  manifest.command = command;
  manifest.seed = args.seed;
  manifest.config = {{"model", args.model}, {"n", args.n},         {"d", args.d},
                     {"p", args.p},         {"homogeneous", args.homogeneous},
                     {"base", args.base},   {"sigma", args.sigma_set ? nlohmann::json(args.sigma)
                                                                      : nlohmann::json()}};
  manifest.wall_ms = elapsed_ms(t0);
  j["manifest"] = pv::manifest_json(manifest);
  emit(j, args.out);
  return kExitOk;
}

struct BoundArgs {
  int n = 2, d = 2;
  double a = 1.0, c1 = 1.0, c2 = 1.0, krho = 1.0, sigma = 0.0;
  bool sigma_set = false;
  std::vector<double> tail_levels;
  std::string out;
};

int cmd_bound(const BoundArgs& args, const std::string& command) {
  pv::BoundConfig config;
  config.n = args.n;
  config.d = args.d;
  config.a = args.a;
  config.c1 = args.c1;
  config.c2 = args.c2;
  config.krho = args.krho;
  if (args.sigma_set) config.sigma = args.sigma;

  nlohmann::json j;
  j["config"] = {{"n", args.n}, {"d", args.d},   {"a", args.a},
                 {"c1", args.c1}, {"c2", args.c2}, {"krho", args.krho}};
  if (args.sigma_set) j["config"]["sigma"] = args.sigma;
  j["assumption_c1c2krho_at_least_1"] = config.assumption_met();
  if (!config.assumption_met())
    std::cerr << "note: c1*c2*krho < 1; the closed forms are stated under a product of at "
                 "least 1\n";

  nlohmann::json average;
  config.regime = pv::IntervalRegime::lipschitz;
  average["lipschitz"] = pv::average_bound(config);
  if (args.d >= 2) {
    config.regime = pv::IntervalRegime::bgt;
    average["bgt"] = pv::average_bound(config);
  }
  j["average_cube_bound"] = average;

  if (args.sigma_set) {
    nlohmann::json smoothed;
    config.regime = pv::IntervalRegime::lipschitz;
    smoothed["lipschitz"] = pv::smoothed_bound(config);
    if (args.d >= 2) {
      config.regime = pv::IntervalRegime::bgt;
      smoothed["bgt"] = pv::smoothed_bound(config);
    }
    j["smoothed_cube_bound"] = smoothed;
  }

  if (!args.tail_levels.empty()) {
    config.regime = pv::IntervalRegime::lipschitz;
    nlohmann::json tails = nlohmann::json::array();
    for (double t : args.tail_levels)
      tails.push_back({{"t", t}, {"bound", pv::kappa_tail_bound(config, t)}});
    j["kappa_tail_bound"] = tails;
  }

  pv::RunManifest manifest;
  manifest.command = command;
  manifest.config = j["config"];
  j["manifest"] = pv::manifest_json(manifest);
  emit(j, args.out);
  return kExitOk;
}

struct BenchArgs {
  std::string model = "kss", d_range = "2:6", mode = "cprime", csv;
  int n = 2, trials = 10, max_depth = 40;
  std::uint64_t seed = 0;
  double a = 1.0, p = 2.0;
  bool timing = false;
};

int cmd_bench(const BenchArgs& args, const std::string& command) {
  pv::BenchConfig config;
  config.spec = pv::DobroSpec{parse_model(args.model), args.p};
  config.n = args.n;
  const auto [lo, hi] = parse_range(args.d_range);
  config.d_lo = lo;
  config.d_hi = hi;
  validate_ranges(args.n, hi);
  config.trials = args.trials;
  config.seed = args.seed;
  config.a = args.a;
  config.mode = parse_mode(args.mode);
  config.max_depth = args.max_depth;
  config.timing = args.timing;

  const auto t0 = std::chrono::steady_clock::now();
  const pv::BenchResult result = pv::run_bench(config);

  std::ofstream csv(args.csv);
  if (!csv) throw pv::DomainError("cannot write " + args.csv);
  pv::write_bench_csv(csv, result);
  csv.close();

  pv::RunManifest manifest;
  manifest.command = command;
  manifest.seed = args.seed;
  manifest.config = {{"model", args.model}, {"n", args.n},
                     {"d_range", args.d_range}, {"trials", args.trials},
                     {"a", args.a},         {"mode", args.mode},
                     {"max_depth", args.max_depth}, {"p", args.p},
                     {"timing", args.timing}, {"csv", args.csv}};
  manifest.wall_ms = elapsed_ms(t0);
  pv::save_json(pv::manifest_json(manifest), args.csv + ".manifest.json");

  int exceeded = 0;
  for (const auto& s : result.summaries) exceeded += s.exceeded;
  std::cerr << "wrote " << args.csv << " (" << result.trials.size() << " trials, " << exceeded
            << " exceeded max depth)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive subdivision of real polynomial hypersurfaces with condition-number "
               "instrumentation"};
  app.require_subcommand(1);
  const std::string command = join_args(argc, argv);

  MeshArgs mesh_args;
  auto* mesh = app.add_subcommand("mesh", "Subdivide [-a,a]^n until every cube is certified");
  mesh->add_option("--poly", mesh_args.poly, "polynomial JSON file")->required();
  mesh->add_option("--a", mesh_args.a, "box half width")->check(CLI::PositiveNumber);
  mesh->add_option("--mode", mesh_args.mode, "exclusion predicate")
      ->check(CLI::IsMember({"cprime", "interval"}));
  mesh->add_option("--max-depth", mesh_args.max_depth, "subdivision depth cap")
      ->check(CLI::PositiveNumber);
  mesh->add_option("--out", mesh_args.out, "output JSON path (stdout when omitted)");
  mesh->add_option("--svg", mesh_args.svg, "also render the boxes and curve to this SVG (n=2)");

  KappaArgs kappa_args;
  auto* kappa = app.add_subcommand("kappa", "Condition number of f at a point, two ways");
  kappa->add_option("--poly", kappa_args.poly, "polynomial JSON file")->required();
  kappa->add_option("--point", kappa_args.point, "comma separated coordinates")->required();
  kappa->add_option("--method", kappa_args.method, "direct, projection, or both")
      ->check(CLI::IsMember({"both", "direct", "projection"}));

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Draw a random polynomial");
  sample->add_option("--model", sample_args.model, "coefficient model")
      ->check(CLI::IsMember({"kss", "weyl", "prandom"}));
  sample->add_option("--n", sample_args.n, "variables")->required();
  sample->add_option("--d", sample_args.d, "degree")->required();
  sample->add_option("--seed", sample_args.seed, "random seed");
  sample->add_option("--p", sample_args.p, "exponent for prandom")->check(CLI::PositiveNumber);
  sample->add_flag("--homogeneous", sample_args.homogeneous, "emit the degree-d form itself");
  sample->add_option("--base", sample_args.base, "base polynomial for smoothed sampling");
  auto* sigma_opt = sample->add_option("--sigma", sample_args.sigma, "relative noise level");
  sample->add_option("--out", sample_args.out, "output JSON path (stdout when omitted)");

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Closed-form cube-count and tail bounds");
  bound->add_option("--n", bound_args.n, "variables")->required();
  bound->add_option("--d", bound_args.d, "degree")->required();
  bound->add_option("--a", bound_args.a, "box half width")->check(CLI::PositiveNumber);
  bound->add_option("--c1", bound_args.c1, "first absolute constant");
  bound->add_option("--c2", bound_args.c2, "second absolute constant");
  bound->add_option("--krho", bound_args.krho, "product of the model parameters K and rho");
  auto* bound_sigma = bound->add_option("--sigma", bound_args.sigma, "smoothing level");
  bound->add_option("--t", bound_args.tail_levels, "tail levels t for the kappa tail bound");
  bound->add_option("--out", bound_args.out, "output JSON path (stdout when omitted)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Random-polynomial subdivision benchmark");
  bench->add_option("--model", bench_args.model, "coefficient model")
      ->check(CLI::IsMember({"kss", "weyl", "prandom"}));
  bench->add_option("--n", bench_args.n, "variables");
  bench->add_option("--d-range", bench_args.d_range, "degree range LO:HI");
  bench->add_option("--trials", bench_args.trials, "trials per degree")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "benchmark seed");
  bench->add_option("--a", bench_args.a, "box half width")->check(CLI::PositiveNumber);
  bench->add_option("--mode", bench_args.mode, "exclusion predicate")
      ->check(CLI::IsMember({"cprime", "interval"}));
  bench->add_option("--max-depth", bench_args.max_depth, "subdivision depth cap");
  bench->add_option("--p", bench_args.p, "exponent for prandom");
  bench->add_flag("--timing", bench_args.timing,
                  "record real runtimes (breaks byte-for-byte reproducibility)");
  bench->add_option("--csv", bench_args.csv, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  sample_args.sigma_set = sigma_opt->count() > 0;
  bound_args.sigma_set = bound_sigma->count() > 0;

  try {
    if (mesh->parsed()) return cmd_mesh(mesh_args, command);
    if (kappa->parsed()) return cmd_kappa(kappa_args);
    if (sample->parsed()) return cmd_sample(sample_args, command);
    if (bound->parsed()) return cmd_bound(bound_args, command);
    if (bench->parsed()) return cmd_bench(bench_args, command);
  } catch (const pv::MaxDepthExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMaxDepth;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
