#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "krforge/invariants.hpp"
#include "krforge/parse.hpp"
#include "support/enumerate.hpp"

using namespace krforge;

namespace {

std::shared_ptr<const Potential> pot(const std::string& s, const Field* k = Field::rationals()) {
  return std::make_shared<const Potential>(Potential::parse(s, k));
}

MatchedDiagram knot(const char* s) { return parse_diagram_expression(s); }

std::vector<int> js(const char* diagram, const std::string& w) { return analyze(knot(diagram), pot(w)).report.j; }

Rational s_tilde_at(const KnotAnalysis& a, long root) {
  for (const auto& r : a.report.roots)
    if (r.root == a.module.w->field()->from_int(root)) return r.s_tilde;
  FAIL("root not found");
  return 0;
}

Table shifted(const Table& t, int dq) {
  Table r;
  for (const auto& [tq, dim] : t) r[{tq.first, tq.second + dq}] = dim;
  return r;
}

// Dominance by exhaustive search over bijections between the expanded term lists.
Dominance dominance_by_bijection(const QPoly& f1, const QPoly& f2) {
  std::vector<int> a, b;
  for (const auto& [q, c] : f1)
    for (long i = 0; i < c; ++i) a.push_back(q);
  for (const auto& [q, c] : f2)
    for (long i = 0; i < c; ++i) b.push_back(q);
  if (a.size() != b.size()) return Dominance::Incomparable;
  if (a == b) return Dominance::Equal;
  bool ge = false, le = false;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool all_ge = true, all_le = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      all_ge &= a[i] >= b[perm[i]];
      all_le &= a[i] <= b[perm[i]];
    }
    ge |= all_ge;
    le |= all_le;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (ge) return Dominance::Greater;
  if (le) return Dominance::Less;
  return Dominance::Incomparable;
}

std::map<int, long> t_profile(const Table& t) {
  std::map<int, long> p;
  for (const auto& [tq, dim] : t) p[tq.first] += dim;
  return p;
}

}  // namespace

TEST_CASE("profile formulas") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> u;
    for (int r = 1; r <= n; ++r) u.push_back(2 * r - n - 1);
    CHECK(s_n(u) == 0);
    CHECK(s_quasi(u) == 0);
    CHECK(genus_bound(u) == 0);
    std::vector<int> shifted_u = u;
    for (int& x : shifted_u) x += 2 * (n - 1);
    CHECK(s_n(shifted_u) == 1);
    CHECK(s_quasi(shifted_u) == 1);
    CHECK(genus_bound(shifted_u) == 1);
  }
  CHECK(s_n({1, 3}) == 1);
  CHECK(genus_bound({-2, -2, 0}) == Rational(1, 2));
  CHECK(s_quasi({0, 2, 4, 4, 6}) == Rational(2, 5));
  CHECK_THROWS_AS(s_n({-2, -2, -2}), Error);
}

TEST_CASE("E_infinity shape errors") {
  CHECK(unreduced_js(PageTable{1, {{{0, -1}, 1}, {{0, 1}, 1}}}, 2) == std::vector<int>{-1, 1});
  CHECK(unreduced_js(PageTable{1, {{{0, 0}, 3}}}, 3) == std::vector<int>{0, 0, 0});
  CHECK_THROWS_AS(unreduced_js(PageTable{1, {{{0, -1}, 1}, {{2, 1}, 1}}}, 2), Error);
  CHECK_THROWS_AS(unreduced_js(PageTable{1, {{{0, -1}, 1}}}, 2), Error);
  CHECK(s_tilde(PageTable{1, {{{0, 2}, 1}}}, 2) == 1);
  CHECK(s_tilde(PageTable{1, {{{0, -3}, 1}}}, 4) == Rational(-1, 2));
  CHECK_THROWS_AS(s_tilde(PageTable{1, {{{0, 2}, 2}}}, 2), Error);
  CHECK_THROWS_AS(s_tilde(PageTable{1, {{{1, 2}, 1}}}, 2), Error);
}

TEST_CASE("dominance order agrees with the bijection search") {
  CHECK(compare_poincare({{1, 1}, {3, 1}}, {{-1, 1}, {1, 1}}) == Dominance::Greater);
  CHECK(compare_poincare({{-1, 1}, {3, 1}}, {{1, 2}}) == Dominance::Incomparable);
  CHECK(compare_poincare({{0, 2}}, {{0, 2}}) == Dominance::Equal);
  CHECK(compare_poincare({{0, 2}}, {{0, 3}}) == Dominance::Incomparable);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 2000; ++trial) {
    QPoly f1, f2;
    const int terms = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < terms; ++i) {
      ++f1[static_cast<int>(rng() % 7) - 3];
      ++f2[static_cast<int>(rng() % 7) - 3];
    }
    if (rng() % 4 == 0) ++f2[0];
    REQUIRE(compare_poincare(f1, f2) == dominance_by_bijection(f1, f2));
  }
}

TEST_CASE("Gornik potentials") {
  const Field* q = Field::rationals();
  CHECK(is_gornik(*pot("x^3-1")));
  CHECK(is_gornik(*pot("x^3-3x^2+3x-3")));
  CHECK(is_gornik(*pot("x^2-x")));
  CHECK_FALSE(is_gornik(*pot("x^3-x")));
  CHECK_FALSE(is_gornik(*pot("x^3")));
  CHECK_FALSE(is_gornik(*pot("x^4+x^2-1")));
  CHECK(is_gornik(*pot("x^5-2", q)));
}

TEST_CASE("unknot profiles") {
  for (const char* w : {"x^2", "x^2-1", "x^3-x", "x^4-1", "x^5-x"}) {
    const std::vector<int> j = js("unknot", w);
    const int n = static_cast<int>(j.size());
    for (int r = 1; r <= n; ++r) CHECK(j[static_cast<std::size_t>(r - 1)] == 2 * r - n - 1);
  }
}

TEST_CASE("trefoil s_n is -1") {
  for (int n = 2; n <= 5; ++n) {
    const KnotAnalysis a = analyze(knot("rational(3,1)"), pot("x^" + std::to_string(n) + "-1"));
    REQUIRE(a.report.s_n);
    CHECK(*a.report.s_n == -1);
    for (const auto& r : a.report.roots) CHECK(r.s_tilde == -1);
    CHECK(a.report.s_quasi == -1);
    CHECK(a.report.genus_bound == 1);
  }
}

TEST_CASE("pretzel(2,-3,5) invariants") {
  const MatchedDiagram p = knot("pretzel(2,-3,5)");
  const KnotAnalysis a2 = analyze(p, pot("x^2-1"));
  CHECK(a2.report.j == std::vector<int>{1, 3});
  CHECK(*a2.report.s_n == 1);
  CHECK(a2.report.genus_bound == 1);

  const KnotAnalysis a5 = analyze(p, pot("x^5-1"));
  CHECK(*a5.report.s_n == Rational(1, 4));

  const Field* gi = Field::parse("Q[i]/(i^2+1)");
  const KnotAnalysis b = analyze(p, pot("x^5-x", gi));
  REQUIRE(b.report.roots.size() == 5);
  CHECK_FALSE(b.report.s_n);
  for (const auto& r : b.report.roots) CHECK(r.s_tilde == (r.root.is_zero() ? Rational(0) : Rational(1, 4)));
  std::vector<Rational> st;
  for (const auto& r : b.report.roots) st.push_back(r.s_tilde);
  const Check c = red_unred_check(b.report.j, st);
  CHECK_MESSAGE(c.ok, c.detail);

  // s_5 is fractional, so x^5 - x and x^5 - 1 must differ on E_infinity.
  CHECK(a5.unreduced.einf.cells != b.unreduced.einf.cells);
}

TEST_CASE("integrality of s~ at the root 0 of x^n - x") {
  for (const char* k : {"rational(3,1)", "rational(5,2)", "pretzel(2,-3,5)", "rational(7,2)#rational(3,1)"})
    for (const char* w : {"x^3-x", "x^4-x", "x^5-x"}) {
      const KnotAnalysis a = analyze(knot(k), pot(w));
      const Rational s = s_tilde_at(a, 0);
      CHECK_MESSAGE(s.get_den() == 1, k, " ", w, " ", s.get_str());
    }
}

TEST_CASE("Gornik class shares pages and invariants with x^n - 1") {
  for (const char* k : {"rational(3,1)", "rational(5,2)", "rational(7,2)!"}) {
    const KnotAnalysis ref = analyze(knot(k), pot("x^3-1"));
    const KnotAnalysis g = analyze(knot(k), pot("x^3-3x^2+3x-3"));  // (x-1)^3 - 2
    CHECK(g.unreduced.pages == ref.unreduced.pages);
    REQUIRE(g.report.s_n);
    CHECK(*g.report.s_n == *ref.report.s_n);
    for (const auto& r : g.report.roots) CHECK(r.s_tilde == *g.report.s_n);
  }
}

TEST_CASE("affine change of variable moves the roots") {
  // x^2 - x = 4^-1 ((2x - 1)^2 - 1), so the root alpha of x^2 - 1 corresponds to (alpha + 1) / 2.
  for (const char* k : {"rational(3,1)", "pretzel(2,-3,5)", "rational(5,2)"}) {
    const KnotAnalysis a = analyze(knot(k), pot("x^2-1"));
    const KnotAnalysis b = analyze(knot(k), pot("x^2-x"));
    CHECK(s_tilde_at(a, -1) == s_tilde_at(b, 0));
    CHECK(s_tilde_at(a, 1) == s_tilde_at(b, 1));
  }
}

TEST_CASE("connected sum with a positive knot shifts E_infinity") {
  for (const char* w : {"x^2-1", "x^3-1", "x^3-x"}) {
    auto p = pot(w);
    const int n = p->n();
    const int shift = 2 * (n - 1) * -1;  // s_n of the positive trefoil
    for (const char* k : {"rational(5,2)", "rational(7,2)", "pretzel(2,-3,5)"}) {
      const KnotAnalysis a = analyze(knot(k), p);
      const KnotAnalysis b = analyze(connected_sum(knot(k), knot("rational(3,1)")), p);
      CHECK_MESSAGE(b.unreduced.einf.cells == shifted(a.unreduced.einf.cells, shift), k, " ", w);
    }
  }
}

TEST_CASE("consistency relations") {
  for (const char* k : {"rational(3,1)", "rational(5,2)", "pretzel(2,-3,5)"})
    for (const char* w : {"x^2-1", "x^3-x", "x^3+x+1"})
      for (const Check& c : consistency_report(knot(k), pot(w))) CHECK_MESSAGE(c.ok, k, " ", w, " ", c.name, ": ", c.detail);
}

TEST_CASE("KR classes over the trefoil") {
  const MatchedDiagram t = knot("rational(3,1)");
  CHECK(kr_classify(t, {pot("x^3-1"), pot("x^3-x"), pot("x^3-x-1")}) == std::vector<std::vector<int>>{{0}, {1, 2}});
  CHECK(kr_classify(t, {pot("x^2-1"), pot("x^2-x"), pot("x^2+5x+1")}).size() == 1);
  for (int n = 3; n <= 5; ++n) {
    std::vector<std::shared_ptr<const Potential>> ws;
    for (int l = 2; l <= n; ++l) ws.push_back(pot("x^" + std::to_string(n) + "-x^" + std::to_string(n - l)));
    CHECK(kr_classify(t, ws).size() >= static_cast<std::size_t>(n - 1));
  }
}

TEST_CASE("root multiplicities split the homology") {
  // x^2 (x - 1): per-t dimensions equal those of x^2 plus those of x.
  const auto diagrams = krforge::testing::all_diagrams(3);
  auto w = pot("x^3-x^2"), w2 = pot("x^2"), w1 = pot("x");
  int knots = 0;
  for (const auto& d : diagrams) {
    if (krforge::testing::link_components(d) != 1) continue;
    ++knots;
    std::map<int, long> expect = t_profile(compute_pages(unreduced_complex(assemble(d, w2))).einf.cells);
    for (const auto& [t, dim] : t_profile(compute_pages(unreduced_complex(assemble(d, w1))).einf.cells)) expect[t] += dim;
    REQUIRE_MESSAGE(t_profile(compute_pages(unreduced_complex(assemble(d, w))).einf.cells) == expect, emit_mpd(d));
  }
  CHECK(knots > 50);
}
