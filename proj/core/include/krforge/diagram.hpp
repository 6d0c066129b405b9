#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krforge/errors.hpp"

namespace krforge {

enum Pos { NW = 0, NE = 1, SE = 2, SW = 3 };

// Basic matched tangle: two same-sign crossings twisting the strands NW-NE and SW-SE.
struct Slot {
  int sign = 1;                // +1 or -1
  std::array<int, 4> e{};      // edge labels at NW, NE, SE, SW
  bool operator==(const Slot&) const = default;
};

// Glued basic tangles. Every edge label occurs exactly twice among slot endpoints and boundary.
// A closed diagram has an empty boundary; a 4-ended tangle lists its boundary labels as NW, NE, SE, SW.
class MatchedDiagram {
 public:
  std::vector<Slot> slots;
  std::vector<int> boundary;
  std::optional<int> mark;
  // Per-slot orientation bit after orient(): 0 means NW and SE are incoming.
  std::vector<int> sigma;

  bool closed() const { return boundary.empty(); }
  bool oriented() const { return sigma.size() == slots.size(); }
  int writhe() const;
  std::vector<int> edges() const;
  // Connected components of the slot graph (boundary-only arcs excluded).
  int components() const;
  // Matched orientation classes up to one global reversal: 2^(components - 1).
  long orientation_classes() const;

  // Structural invariants and planarity; throws InconsistentDiagram.
  void validate() const;
  bool operator==(const MatchedDiagram&) const = default;
};

// Even continued fraction [a_1, ..., a_k] with p/q = a_k + 1/(a_{k-1} + 1/(... + a_1)).
std::vector<long> even_continued_fraction(long p, long q);
// Value of the nested fraction, as a reduced (num, den) pair with den >= 0.
std::pair<long, long> evaluate_continued_fraction(const std::vector<long>& a);

// Conway-style tangle algebra on matched tangles.
MatchedDiagram integer_tangle(long a);
MatchedDiagram tangle_sum(const MatchedDiagram& t, const MatchedDiagram& s);
// Reflection in the NW-SE diagonal: fraction f becomes 1/f.
MatchedDiagram tangle_reflect(const MatchedDiagram& t);
MatchedDiagram numerator_closure(const MatchedDiagram& t);

MatchedDiagram rational_tangle(long p, long q);
// Closed two-bridge link with fraction p/q (an odd/odd fraction is evenized by q -> q + p).
MatchedDiagram rational(long p, long q);
MatchedDiagram montesinos(const std::vector<std::pair<long, long>>& fractions);
MatchedDiagram pretzel(const std::vector<long>& p);
MatchedDiagram unknot();

MatchedDiagram orient(const MatchedDiagram& d);
MatchedDiagram mirror(const MatchedDiagram& d);
MatchedDiagram disjoint_union(const MatchedDiagram& a, const MatchedDiagram& b);
MatchedDiagram connected_sum(const MatchedDiagram& a, const MatchedDiagram& b);
// Relabels edges to 1..E in order of first appearance; keeps slot order.
MatchedDiagram canonical_labels(const MatchedDiagram& d);

MatchedDiagram parse_mpd(std::string_view text);
std::string emit_mpd(const MatchedDiagram& d);

// Mini-language: unknot | rational(p,q) | pretzel(a,b,...) | montesinos(p/q,...) | mpd:<text>,
// postfix '!' (mirror), infix '#' (connected sum), parentheses. Results are oriented and marked.
MatchedDiagram parse_diagram_expression(std::string_view text);

}  // namespace krforge
