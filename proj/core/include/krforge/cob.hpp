#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "krforge/errors.hpp"
#include "krforge/potential.hpp"

namespace krforge {

// Crossingless matching of boundary points 0..P-1: partner index per point (fixed-point-free involution).
using Matching = std::vector<std::uint8_t>;

// Loops of the closed curve X u Y formed by two matchings on the same boundary.
// Loops are numbered by their smallest boundary point.
struct LoopInfo {
  int count = 0;
  std::vector<int> loop_of_point;
  std::vector<int> points;  // boundary points per loop
};
LoopInfo loops_of(const Matching& x, const Matching& y);

// A morphism X -> Y is a combination of disjoint unions of disks, one per loop of X u Y, each
// decorated by x^e with e < n. A Key packs the exponents, 4 bits per loop.
using Key = std::uint64_t;
constexpr int kMaxLoops = 16;
inline int key_exp(Key k, int loop) { return static_cast<int>((k >> (4 * loop)) & 0xF); }
inline Key key_add(Key k, int loop, int e) { return k + (static_cast<Key>(e) << (4 * loop)); }

struct Morphism {
  std::vector<std::pair<Key, Scalar>> terms;  // sorted by key, no zero coefficients

  bool is_zero() const { return terms.empty(); }
  static Morphism identity(const Field* k) { return Morphism{{{0, k->one()}}}; }
  static Morphism from_map(const std::map<Key, Scalar>& m);
  // this += s * o
  void add(const Morphism& o, const Scalar& s);
  Morphism scaled(const Scalar& s) const;
  // c if this is c * identity (c != 0).
  std::optional<Scalar> identity_multiple() const;
  bool operator==(const Morphism& o) const { return terms == o.terms; }
};

// Connectivity of a surface glued from disks: per piece its component, per component its genus
// and the output loops it bounds. Decoration-independent, so it is cached per gluing pattern.
struct GlueShape {
  int pieces = 0;
  int out_loops = 0;
  std::vector<int> comp;
  std::vector<int> genus;
  std::vector<std::vector<int>> out;
};

class ShapeBuilder {
 public:
  int add_piece();
  // Glue along an interval (Euler characteristic drops by one) or along a circle (unchanged).
  void interval(int a, int b);
  void circle(int a, int b);
  // out_piece[l]: a piece touching output loop l.
  GlueShape finish(const std::vector<int>& out_piece);

 private:
  int find(int a);
  std::vector<int> parent_;
  std::vector<int> intervals_;  // per piece, attributed to the root on finish
};

// Evaluates x^exps[p] on every piece, neck-cuts each component onto its output loops, and adds
// c times the result to acc.
void evaluate_shape(const GlueShape& s, const std::vector<int>& exps, const Scalar& c, const Potential& w,
                    std::map<Key, Scalar>& acc);

// Quantum degree of one term: 2 * sum(e) - (n - 1) * sum over loops of (1 - points/2).
int qdeg(Key k, const LoopInfo& loops, int n);

// Crossingless tangles on a fixed boundary with interned matchings and cached gluing shapes.
class PlanarCategory {
 public:
  PlanarCategory(int points, std::shared_ptr<const Potential> w);

  int points() const { return points_; }
  const Potential& potential() const { return *w_; }
  std::shared_ptr<const Potential> potential_ptr() const { return w_; }
  int intern(const Matching& m);
  const Matching& matching(int id) const { return matchings_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(matchings_.size()); }

  const LoopInfo& loops(int x, int y);
  // g o f for f: x -> y, g: y -> z.
  Morphism compose(int x, int y, int z, const Morphism& g, const Morphism& f);
  // Maximum term degree (INT_MIN for the zero morphism).
  int qdeg(int x, int y, const Morphism& f);

  // Generators on a fixed source object x.
  Morphism dot(int x, int point);
  // Disk on the loop of (x, y) through `point`, identity elsewhere; requires that loop to have 4 points
  // and all others 2 (throws IllegalSite otherwise).
  Morphism saddle(int x, int y);

 private:
  int points_;
  std::shared_ptr<const Potential> w_;
  std::vector<Matching> matchings_;
  std::map<Matching, int> ids_;
  std::map<std::pair<int, int>, LoopInfo> loops_;
  std::map<std::tuple<int, int, int>, GlueShape> compose_shapes_;
};

// Filtered delooping of a circle with shift s: summand i has shift s + 2i + 1 - n; the inclusion of
// summand i is a cup decorated x^i, the projection to summand i a cap decorated b^i (dual basis).
struct Delooping {
  std::vector<int> shifts;
  std::vector<RingElement> cup;
  std::vector<RingElement> cap;
};
Delooping deloop(const Potential& w, int shift);

}  // namespace krforge
