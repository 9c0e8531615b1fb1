#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pv/geometry.hpp"
#include "pv/polynomial.hpp"

namespace pv {

// Which exclusion test drives the subdivision. `cprime` is the midpoint
// test (cheap, slightly more cubes); `interval` is the enclosure test it
// implies.
enum class PredicateMode { cprime, interval };
const char* mode_name(PredicateMode m);

struct Leaf {
  Cube cube;
  Branch branch;
  int depth;
};

struct SubdivisionStats {
  std::uint64_t leaf_count = 0;
  std::uint64_t value_branch = 0;
  std::uint64_t gradient_branch = 0;
  std::uint64_t predicate_evaluations = 0;
  int max_depth = 0;
  std::vector<std::uint64_t> depth_histogram;  // leaves per depth
};

struct Subdivision {
  double a = 1.0;
  int n = 0;
  PredicateMode mode = PredicateMode::cprime;
  std::vector<Leaf> leaves;
  SubdivisionStats stats;
};

// Subdivides [-a, a]^n breadth first until every cube passes the chosen
// predicate. Cubes that pass are frozen and never revisited. Children are
// visited in the lexicographic order of Cube::children, so the leaf list is
// deterministic. Throws MaxDepthExceeded when a failing cube reaches
// max_depth.
Subdivision pv_subdivide(const AffinePolynomial& f, double a, PredicateMode mode,
                         int max_depth = 40);

struct VerifyReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Re-derives every structural guarantee of a finished subdivision: dyadic
// widths, lattice-aligned midpoints, pairwise disjoint interiors, exact
// tiling of [-a, a]^n, and the predicate holding on every leaf.
VerifyReport verify_subdivision(const Subdivision& s, const AffinePolynomial& f);

struct Segment {
  double x1, y1, x2, y2;
};

// Straight-line approximation of the zero set inside each leaf (n = 2 only),
// from corner signs with linear interpolation and a midpoint probe for the
// two ambiguous sign patterns. The output is a plot aid, not a certified
// isotopic curve, which is why `certified` is always false.
struct PolylineSet {
  std::vector<Segment> segments;
  bool certified = false;
};

PolylineSet extract_segments(const AffinePolynomial& f, const Subdivision& s);

}  // namespace pv
