#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "krforge/diagram.hpp"

using namespace krforge;

namespace {

// Oracle: shortest even tuple (|a_i| <= 6, length <= 4, nonzero except a trailing entry) evaluating to p/q,
// ties broken lexicographically.
std::vector<long> search_even_cf(long p, long q) {
  std::vector<long> vals{-6, -4, -2, 0, 2, 4, 6};
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<std::size_t> idx(len, 0);
    std::vector<std::vector<long>> hits;
    while (true) {
      std::vector<long> a;
      for (auto i : idx) a.push_back(vals[i]);
      bool interior_zero = false;
      for (std::size_t i = 0; i + 1 < a.size(); ++i) interior_zero |= a[i] == 0;
      if (!interior_zero) {
        // evaluate a_k + 1/(a_{k-1} + ...) with exact long arithmetic
        long num = a[0], den = 1;
        bool ok = true;
        for (std::size_t i = 1; i < a.size(); ++i) {
          if (num == 0) {
            ok = false;
            break;
          }
          long n2 = a[i] * num + den;
          den = num;
          num = n2;
        }
        if (ok && den != 0 && num * q == p * den) hits.push_back(a);
      }
      std::size_t pos = 0;
      while (pos < len && ++idx[pos] == vals.size()) idx[pos++] = 0;
      if (pos == len) break;
    }
    if (!hits.empty()) return hits.front();
  }
  return {};
}

}  // namespace

TEST_CASE("even continued fractions") {
  CHECK(even_continued_fraction(2, 1) == std::vector<long>{2});
  CHECK(search_even_cf(5, 2) == std::vector<long>{2, 2});
  CHECK(even_continued_fraction(5, 2) == std::vector<long>{2, 2});
  CHECK(search_even_cf(8, 3) == std::vector<long>{-2, 2, 2});
  CHECK(even_continued_fraction(8, 3) == std::vector<long>{-2, 2, 2});
  CHECK_THROWS_AS(even_continued_fraction(3, 1), Error);
  for (long q = 1; q <= 40; ++q)
    for (long p = -60; p <= 60; ++p) {
      if (std::gcd(p, q) != 1 || (p % 2 != 0 && q % 2 != 0)) continue;
      auto a = even_continued_fraction(p, q);
      CHECK(evaluate_continued_fraction(a) == std::make_pair(p, q));
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] % 2 == 0);
        if (i + 1 < a.size()) CHECK(a[i] != 0);
      }
    }
}

TEST_CASE("rational tangles and closures") {
  CHECK(rational_tangle(2, 1).slots.size() == 1);
  CHECK(rational_tangle(5, 2).slots.size() == 2);
  for (long q = 1; q <= 15; ++q)
    for (long p = -20; p <= 20; ++p) {
      if (std::gcd(p, q) != 1 || (p % 2 != 0 && q % 2 != 0)) continue;
      MatchedDiagram t = rational_tangle(p, q);
      long expect = 0;
      for (long a : even_continued_fraction(p, q)) expect += std::labs(a) / 2;
      CHECK(static_cast<long>(t.slots.size()) == expect);
      CHECK_NOTHROW(t.validate());
      if (p != 0 && !t.slots.empty()) CHECK_NOTHROW(orient(numerator_closure(t)));
    }
  MatchedDiagram tref = rational(3, 1);
  CHECK(tref.slots.size() == 3);
  CHECK(tref.components() == 1);
}

TEST_CASE("montesinos and pretzel") {
  MatchedDiagram p = orient(pretzel({2, -3, 5}));
  CHECK_NOTHROW(p.validate());
  CHECK(p.orientation_classes() == 1);
  CHECK(p.slots.size() == 7);
  CHECK_NOTHROW(orient(montesinos({{1, 5}, {2, 3}, {-1, 2}})));
  try {
    pretzel({3, 3, 3});
    FAIL("expected NotBipartiteCertificate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotBipartiteCertificate);
  }
  MatchedDiagram m = mirror(p);
  CHECK(m.writhe() == -p.writhe());
  CHECK(mirror(m) == p);
}

TEST_CASE("orientation") {
  MatchedDiagram u = orient(unknot());
  CHECK(u.oriented());
  CHECK(u.orientation_classes() == 1);
  MatchedDiagram two = orient(disjoint_union(unknot(), unknot()));
  CHECK(two.orientation_classes() == 2);
  MatchedDiagram p = orient(pretzel({2, -3, 5}));
  CHECK(orient(p) == p);
  MatchedDiagram bad = parse_mpd("T + 1 2 3 4\nT + 4 3 2 1\n");
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("mpd text") {
  MatchedDiagram u = parse_mpd("# unknot\nT + 1 2 2 1\n");
  CHECK(u.slots.size() == 1);
  MatchedDiagram p = parse_diagram_expression("pretzel(2,-3,5)");
  MatchedDiagram back = parse_mpd(emit_mpd(p));
  CHECK(orient(back) == p);
  CHECK_THROWS_AS(parse_mpd("T + 1 1 1 2\nT + 2 3 3 4\n"), Error);
  try {
    parse_mpd("T + 1 2 2 1\nT * 3 4 4 3\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse_mpd("T + 1 2 2 1\nT + 1 3 3 4\n");
    FAIL("expected InconsistentDiagram");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentDiagram);
  }
  // interleaved self-edges cannot be drawn in the plane
  CHECK_THROWS_AS(parse_mpd("T + 1 2 1 2\n"), Error);
}

TEST_CASE("connected sum") {
  MatchedDiagram p = parse_diagram_expression("pretzel(5,-3,2)");
  MatchedDiagram pp = connected_sum(p, p);
  CHECK(pp.slots.size() == 14);
  CHECK(pp.components() == 1);
  CHECK(pp.mark.has_value());
  CHECK_NOTHROW(pp.validate());
  CHECK(parse_diagram_expression("pretzel(5,-3,2) # pretzel(5,-3,2)").slots.size() == 14);
  CHECK(parse_diagram_expression("rational(3,1)!").writhe() == -parse_diagram_expression("rational(3,1)").writhe());
  MatchedDiagram nomark = p;
  nomark.mark.reset();
  CHECK_THROWS_AS(connected_sum(nomark, p), Error);
}
