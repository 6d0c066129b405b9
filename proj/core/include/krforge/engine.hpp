#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "krforge/cob.hpp"
#include "krforge/diagram.hpp"

namespace krforge {

struct Summand {
  int t = 0;
  int q = 0;
  int obj = 0;  // matching id in the complex's category
};

// Complex over crossingless tangles with boundary `labels` (point i carries edge label labels[i]).
// Differential entries are stored by source (out) and indexed by target (in).
class CategoryComplex {
 public:
  CategoryComplex(std::vector<int> labels, std::shared_ptr<const Potential> w);

  std::vector<int> labels;
  std::shared_ptr<PlanarCategory> cat;

  int add(const Summand& s);
  void set(int a, int b, Morphism f);
  const Morphism* get(int a, int b) const;
  void remove(int a);
  bool alive(int a) const { return alive_[static_cast<std::size_t>(a)]; }
  const Summand& summand(int a) const { return summands_[static_cast<std::size_t>(a)]; }
  int capacity() const { return static_cast<int>(summands_.size()); }
  int size() const { return live_; }
  const std::map<int, Morphism>& out(int a) const { return out_[static_cast<std::size_t>(a)]; }
  const std::set<int>& in(int b) const { return in_[static_cast<std::size_t>(b)]; }
  // Renumbers live summands consecutively, preserving order.
  void compact();
  std::vector<int> live() const;

 private:
  std::vector<Summand> summands_;
  std::vector<bool> alive_;
  std::vector<std::map<int, Morphism>> out_;
  std::vector<std::set<int>> in_;
  int live_ = 0;
};

// One summand (t = 0, q = 0) over the empty tangle: the unit for glue.
CategoryComplex unit_complex(std::shared_ptr<const Potential> w);
// Two-crossing slot complex on boundary labels (NW, NE, SE, SW).
CategoryComplex krasner_complex(int sign, const std::array<int, 4>& labels, std::shared_ptr<const Potential> w);

// Tensor product glued along every label shared between (or repeated within) the two boundaries.
// Closed circles are delooped on the fly. Throws BoundaryMismatch if a label occurs more than twice.
CategoryComplex glue(CategoryComplex& a, CategoryComplex& b);

// Eliminates the isomorphism a -> b; throws NotInvertible unless it is c * identity between equal shifts.
void gauss_eliminate(CategoryComplex& c, int a, int b);
// Eliminates isomorphisms until none remain. Returns the number of eliminations.
int simplify(CategoryComplex& c);

// Throws Inconsistent if d o d != 0 or an entry violates the filtration bound.
void check_complex(CategoryComplex& c);

// Free k[x]/w-module complex of a (1,1)-tangle: generator (t, shift), entries are ring elements.
struct ModuleComplex {
  std::shared_ptr<const Potential> w;
  std::vector<std::pair<int, int>> gens;
  std::vector<std::map<int, RingElement>> out;
};

// Finite-dimensional filtered complex: generators with (t, q), scalar entries.
struct ScalarComplex {
  const Field* k = nullptr;
  std::vector<std::pair<int, int>> gens;
  std::vector<std::map<int, Scalar>> out;
};

struct AssembleOptions {
  // Slot order; empty selects the greedy order starting at the marked edge.
  std::vector<int> order;
  // Run check_complex after every glue.
  bool check = false;
};

std::vector<int> greedy_order(const MatchedDiagram& d);
ModuleComplex assemble(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const AssembleOptions& opt = {});
void check_complex(const ModuleComplex& m);

ScalarComplex unreduced_complex(const ModuleComplex& m);
// Requires w(alpha) = 0 (NotARoot otherwise).
ScalarComplex reduced_complex(const ModuleComplex& m, const Scalar& alpha);

// Bigraded dimension table (t, q) -> dim.
using Table = std::map<std::pair<int, int>, long>;

enum class Mode { Unreduced, Reduced };
// Homology over Q of the graded theory Q[x]/x^n by the full resolution cube, without any
// simplification; at most max_slots slots (TooLarge otherwise).
Table brute_force_homology(const MatchedDiagram& d, int n, Mode mode, int max_slots = 6);

}  // namespace krforge
