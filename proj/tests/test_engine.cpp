#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "krforge/spectral.hpp"
#include "support/enumerate.hpp"

using namespace krforge;

namespace {

std::shared_ptr<const Potential> pot(const char* s) {
  return std::make_shared<const Potential>(Potential::parse(s, Field::rationals()));
}

Table unreduced_e1(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const AssembleOptions& opt = {}) {
  return compute_pages(unreduced_complex(assemble(d, w, opt))).pages.front().cells;
}

Table reduced_e1(const MatchedDiagram& d, std::shared_ptr<const Potential> w) {
  const Scalar alpha = roots_in_field(*w, w->field()).front();
  return compute_pages(reduced_complex(assemble(d, w), alpha)).pages.front().cells;
}

const Matching kVertical{3, 2, 1, 0};
const Matching kHorizontal{1, 0, 3, 2};

}  // namespace

TEST_CASE("slot complexes square to zero") {
  for (const char* p : {"x^2", "x^3", "x^3-x", "x^4+x+1", "x^5-x"})
    for (int sign : {1, -1}) {
      CategoryComplex c = krasner_complex(sign, {1, 2, 3, 4}, pot(p));
      CHECK(c.size() == 3);
      CHECK_NOTHROW(check_complex(c));
      for (int a : c.live()) CHECK(c.summand(a).t == (sign > 0 ? 0 : -2) + a);
    }
}

TEST_CASE("gauss elimination on a category complex") {
  auto w = pot("x^3");
  CategoryComplex c({1, 2, 3, 4}, w);
  const int v = c.cat->intern(kVertical), h = c.cat->intern(kHorizontal);
  const int a = c.add({0, 0, v}), b = c.add({1, 0, v}), e = c.add({0, 2, h});
  c.set(a, b, Morphism::identity(Field::rationals()).scaled(Field::rationals()->from_int(3)));
  c.set(e, b, c.cat->saddle(h, v));
  CHECK(simplify(c) == 1);
  CHECK(c.size() == 1);
  CHECK(c.live() == std::vector<int>{e});

  CategoryComplex bad({1, 2, 3, 4}, w);
  const int u = bad.cat->intern(kVertical);
  const int x = bad.add({0, 0, u}), y = bad.add({1, 2, u});
  bad.set(x, y, bad.cat->dot(u, 0));
  CHECK_THROWS_AS(gauss_eliminate(bad, x, y), Error);
  CHECK(simplify(bad) == 0);
}

TEST_CASE("unknot and trefoil modules") {
  for (const char* p : {"x^2", "x^3", "x^3-x", "x^5-x"}) {
    const ModuleComplex u = assemble(parse_diagram_expression("unknot"), pot(p));
    REQUIRE(u.gens.size() == 1);
    CHECK(u.gens[0] == std::pair<int, int>{0, 0});
  }
  for (const char* p : {"x^2", "x^3-x", "x^4-1"}) {
    const ModuleComplex m = assemble(parse_diagram_expression("rational(3,1)"), pot(p));
    std::vector<int> ts;
    for (const auto& g : m.gens) ts.push_back(g.first);
    std::sort(ts.begin(), ts.end());
    CHECK(ts == std::vector<int>{0, 2, 3});
    CHECK_NOTHROW(check_complex(m));
  }
}

TEST_CASE("d squared vanishes after every glue") {
  AssembleOptions opt;
  opt.check = true;
  for (const char* p : {"x^2-1", "x^3-x"}) {
    CHECK_NOTHROW(assemble(parse_diagram_expression("pretzel(2,-3,5)"), pot(p), opt));
    CHECK_NOTHROW(assemble(parse_diagram_expression("rational(5,2)#rational(3,1)!"), pot(p), opt));
  }
}

TEST_CASE("engine E1 matches the cube oracle on small diagrams") {
  const auto diagrams = krforge::testing::all_diagrams(3);
  REQUIRE(diagrams.size() == 480);
  for (int n : {2, 3}) {
    std::vector<std::shared_ptr<const Potential>> ws{pot(n == 2 ? "x^2" : "x^3"), pot(n == 2 ? "x^2-1" : "x^3-x")};
    for (const auto& d : diagrams) {
      const Table un = brute_force_homology(d, n, Mode::Unreduced);
      const Table red = brute_force_homology(d, n, Mode::Reduced);
      for (const auto& w : ws) {
        REQUIRE_MESSAGE(unreduced_e1(d, w) == un, emit_mpd(d), " ", w->str());
        REQUIRE_MESSAGE(reduced_e1(d, w) == red, emit_mpd(d), " ", w->str());
      }
    }
  }
}

TEST_CASE("glue order does not change the pages") {
  const MatchedDiagram d = parse_diagram_expression("pretzel(2,-3,5)");
  auto w = pot("x^2-1");
  const SpectralReport ref = compute_pages(unreduced_complex(assemble(d, w)));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    AssembleOptions opt;
    opt.order.resize(d.slots.size());
    std::iota(opt.order.begin(), opt.order.end(), 0);
    if (trial == 0) std::reverse(opt.order.begin(), opt.order.end());
    else std::shuffle(opt.order.begin(), opt.order.end(), rng);
    const SpectralReport r = compute_pages(unreduced_complex(assemble(d, w, opt)));
    CHECK(r.pages == ref.pages);
  }
}

TEST_CASE("oracle guards") {
  CHECK_THROWS_AS(brute_force_homology(pretzel({3, -3, 3}), 2, Mode::Unreduced, 3), Error);
  MatchedDiagram d = unknot();
  d.mark.reset();
  CHECK_THROWS_AS(brute_force_homology(d, 2, Mode::Reduced), Error);
  CHECK(brute_force_homology(unknot(), 4, Mode::Unreduced) == Table{{{0, -3}, 1}, {{0, -1}, 1}, {{0, 1}, 1}, {{0, 3}, 1}});
}
