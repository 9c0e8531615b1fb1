#include "pv/subdivide.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <sstream>

#include "pv/errors.hpp"

namespace pv {

const char* mode_name(PredicateMode m) {
  return m == PredicateMode::cprime ? "cprime" : "interval";
}

namespace {

PredicateResult run_predicate(const AffinePolynomial& f, const Cube& J, PredicateMode mode) {
  return mode == PredicateMode::cprime ? midpoint_predicate(f, J) : interval_predicate(f, J);
}

std::string point_string(const std::vector<double>& m) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << ")";
  return os.str();
}

}  // namespace

Subdivision pv_subdivide(const AffinePolynomial& f, double a, PredicateMode mode, int max_depth) {
  if (!(a > 0.0)) throw DomainError("the half width a must be positive");
  if (max_depth < 1) throw DomainError("max_depth must be at least 1");
  if (f.weyl_norm() == 0.0) throw ZeroPolynomial("cannot subdivide for the zero polynomial");
  const int n = f.var_count();

  Subdivision out;
  out.a = a;
  out.n = n;
  out.mode = mode;

  struct Item {
    Cube cube;
    int depth;
  };
  std::deque<Item> queue;
  queue.push_back({Cube{std::vector<double>(static_cast<std::size_t>(n), 0.0), 2.0 * a}, 0});

  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    ++out.stats.predicate_evaluations;
    const PredicateResult res = run_predicate(f, item.cube, mode);
    if (res.holds) {
      out.leaves.push_back({std::move(item.cube), res.branch, item.depth});
      continue;
    }
    if (item.depth >= max_depth) {
      throw MaxDepthExceeded(
          "cube at depth " + std::to_string(item.depth) + " around " +
              point_string(item.cube.midpoint) + " still fails the predicate",
          item.depth);
    }
    for (Cube& child : item.cube.children()) queue.push_back({std::move(child), item.depth + 1});
  }

  out.stats.leaf_count = out.leaves.size();
  for (const Leaf& leaf : out.leaves) {
    if (leaf.branch == Branch::value)
      ++out.stats.value_branch;
    else
      ++out.stats.gradient_branch;
    out.stats.max_depth = std::max(out.stats.max_depth, leaf.depth);
  }
  out.stats.depth_histogram.assign(static_cast<std::size_t>(out.stats.max_depth) + 1, 0);
  for (const Leaf& leaf : out.leaves)
    ++out.stats.depth_histogram[static_cast<std::size_t>(leaf.depth)];
  return out;
}

VerifyReport verify_subdivision(const Subdivision& s, const AffinePolynomial& f) {
  VerifyReport report;
  auto complain = [&report](std::size_t leaf, const std::string& what) {
    report.violations.push_back("leaf " + std::to_string(leaf) + ": " + what);
  };

  if (s.n != f.var_count()) {
    report.violations.push_back("subdivision dimension does not match the polynomial");
    return report;
  }
  if (s.leaves.empty()) {
    report.violations.push_back("no leaves: the box is not tiled");
    return report;
  }

  const int n = s.n;
  const double a = s.a;
  const double root_width = 2.0 * a;

  // Depth and integer cell coordinates per leaf, then a root-to-leaf path of
  // orthant choices. Dyadic widths make all of this exact.
  struct Path {
    std::vector<std::uint8_t> orthants;
    std::size_t leaf;
  };
  std::vector<Path> paths;
  paths.reserve(s.leaves.size());
  long double volume = 0.0L;

  for (std::size_t idx = 0; idx < s.leaves.size(); ++idx) {
    const Leaf& leaf = s.leaves[idx];
    const Cube& cube = leaf.cube;
    if (cube.dim() != n) {
      complain(idx, "wrong dimension");
      continue;
    }
    if (!(cube.width > 0.0)) {
      complain(idx, "nonpositive width");
      continue;
    }
    const double ratio = root_width / cube.width;
    const int depth = static_cast<int>(std::llround(std::log2(ratio)));
    if (depth < 0 || depth > 60 || cube.width != std::ldexp(root_width, -depth)) {
      complain(idx, "width is not a dyadic fraction of the box width");
      continue;
    }
    if (leaf.depth != depth) complain(idx, "stored depth disagrees with the width");

    const std::int64_t cells = std::int64_t{1} << depth;
    std::vector<std::int64_t> cell(static_cast<std::size_t>(n));
    bool aligned = true;
    for (int i = 0; i < n; ++i) {
      const double t = (cube.midpoint[static_cast<std::size_t>(i)] + a) / cube.width;
      const std::int64_t c = std::llround(t - 0.5);
      if (c < 0 || c >= cells || std::abs(t - (static_cast<double>(c) + 0.5)) > 1e-6) {
        complain(idx, "midpoint is off the dyadic lattice");
        aligned = false;
        break;
      }
      cell[static_cast<std::size_t>(i)] = c;
    }
    if (!aligned) continue;

    Path path;
    path.leaf = idx;
    path.orthants.resize(static_cast<std::size_t>(depth));
    for (int level = 0; level < depth; ++level) {
      std::uint8_t orth = 0;
      for (int i = 0; i < n; ++i) {
        const int bit = static_cast<int>(
            (cell[static_cast<std::size_t>(i)] >> (depth - 1 - level)) & 1);
        orth = static_cast<std::uint8_t>(orth | (bit << (n - 1 - i)));
      }
      path.orthants[static_cast<std::size_t>(level)] = orth;
    }
    paths.push_back(std::move(path));

    volume += static_cast<long double>(ipow(cube.width, n));
  }

  std::sort(paths.begin(), paths.end(),
            [](const Path& a, const Path& b) { return a.orthants < b.orthants; });
  for (std::size_t i = 0; i + 1 < paths.size(); ++i) {
    const auto& shorter = paths[i].orthants;
    const auto& longer = paths[i + 1].orthants;
    if (shorter.size() <= longer.size() &&
        std::equal(shorter.begin(), shorter.end(), longer.begin()))
      report.violations.push_back("leaves " + std::to_string(paths[i].leaf) + " and " +
                                  std::to_string(paths[i + 1].leaf) + " overlap");
  }

  const long double full = ipow(root_width, n);
  if (std::abs(static_cast<double>(volume - full)) > 1e-9 * static_cast<double>(full))
    report.violations.push_back("leaf volumes do not sum to the box volume");

  for (std::size_t idx = 0; idx < s.leaves.size(); ++idx) {
    const PredicateResult res = run_predicate(f, s.leaves[idx].cube, s.mode);
    if (!res.holds) complain(idx, "predicate fails on this leaf");
  }
  return report;
}

namespace {

// Zero crossing of the linear interpolant between (pa, va) and (pb, vb).
std::array<double, 2> edge_zero(const std::array<double, 2>& pa, double va,
                                const std::array<double, 2>& pb, double vb) {
  const double t = va / (va - vb);
  return {pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])};
}

}  // namespace

PolylineSet extract_segments(const AffinePolynomial& f, const Subdivision& s) {
  if (s.n != 2 || f.var_count() != 2)
    throw DimensionMismatch("segment extraction is only defined in the plane");
  PolylineSet out;
  for (const Leaf& leaf : s.leaves) {
    const double h = leaf.cube.width / 2.0;
    const double x0 = leaf.cube.midpoint[0] - h;
    const double x1 = leaf.cube.midpoint[0] + h;
    const double y0 = leaf.cube.midpoint[1] - h;
    const double y1 = leaf.cube.midpoint[1] + h;
    const std::array<double, 2> bl{x0, y0}, br{x1, y0}, tr{x1, y1}, tl{x0, y1};
    const double vbl = f.evaluate(bl);
    const double vbr = f.evaluate(br);
    const double vtr = f.evaluate(tr);
    const double vtl = f.evaluate(tl);
    const int code = (vbl >= 0.0 ? 1 : 0) | (vbr >= 0.0 ? 2 : 0) | (vtr >= 0.0 ? 4 : 0) |
                     (vtl >= 0.0 ? 8 : 0);
    if (code == 0 || code == 15) continue;

    const auto bottom = [&] { return edge_zero(bl, vbl, br, vbr); };
    const auto right = [&] { return edge_zero(br, vbr, tr, vtr); };
    const auto top = [&] { return edge_zero(tl, vtl, tr, vtr); };
    const auto left = [&] { return edge_zero(bl, vbl, tl, vtl); };
    auto emit = [&out](const std::array<double, 2>& p, const std::array<double, 2>& q) {
      out.segments.push_back({p[0], p[1], q[0], q[1]});
    };

    switch (code) {
      case 1: case 14: emit(bottom(), left()); break;
      case 2: case 13: emit(bottom(), right()); break;
      case 4: case 11: emit(right(), top()); break;
      case 8: case 7: emit(top(), left()); break;
      case 3: case 12: emit(left(), right()); break;
      case 6: case 9: emit(bottom(), top()); break;
      case 5: {  // bl and tr on one side: resolve the saddle at the center
        if (f.evaluate(leaf.cube.midpoint) >= 0.0) {
          emit(bottom(), right());
          emit(top(), left());
        } else {
          emit(bottom(), left());
          emit(right(), top());
        }
        break;
      }
      case 10: {
        if (f.evaluate(leaf.cube.midpoint) >= 0.0) {
          emit(bottom(), left());
          emit(right(), top());
        } else {
          emit(bottom(), right());
          emit(top(), left());
        }
        break;
      }
      default: break;
    }
  }
  out.certified = false;
  return out;
}

}  // namespace pv
