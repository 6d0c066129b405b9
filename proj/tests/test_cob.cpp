#include <climits>
#include <random>

#include "doctest.h"
#include "krforge/cob.hpp"

using namespace krforge;

namespace {

std::shared_ptr<const Potential> pot(const char* s) {
  return std::make_shared<const Potential>(Potential::parse(s, Field::rationals()));
}

const Matching kVertical{3, 2, 1, 0};    // NW-SW, NE-SE
const Matching kHorizontal{1, 0, 3, 2};  // NW-NE, SE-SW

const std::vector<Matching> kSix{
    {1, 0, 3, 2, 5, 4}, {5, 2, 1, 4, 3, 0}, {1, 0, 5, 4, 3, 2}, {3, 2, 1, 0, 5, 4}, {5, 4, 3, 2, 1, 0}};

Morphism random_morphism(PlanarCategory& c, int x, int y, std::mt19937& rng, int terms) {
  const int loops = c.loops(x, y).count;
  const int n = c.potential().n();
  std::map<Key, Scalar> m;
  for (int t = 0; t < terms; ++t) {
    Key k = 0;
    for (int l = 0; l < loops; ++l) k = key_add(k, l, static_cast<int>(rng() % static_cast<unsigned>(n)));
    auto& v = m.try_emplace(k, Field::rationals()->zero()).first->second;
    v += Field::rationals()->from_int(static_cast<long>(rng() % 7) - 3);
  }
  return Morphism::from_map(m);
}

}  // namespace

TEST_CASE("loops of two matchings") {
  LoopInfo same = loops_of(kVertical, kVertical);
  CHECK(same.count == 2);
  CHECK(same.points == std::vector<int>{2, 2});
  LoopInfo mixed = loops_of(kVertical, kHorizontal);
  CHECK(mixed.count == 1);
  CHECK(mixed.points == std::vector<int>{4});
  CHECK(loops_of(kSix[0], kSix[4]).count == 2);
}

TEST_CASE("identity is neutral") {
  auto w = pot("x^3-x");
  PlanarCategory c(4, w);
  const int v = c.intern(kVertical), h = c.intern(kHorizontal);
  std::mt19937 rng(7);
  const Morphism f = random_morphism(c, v, h, rng, 3);
  const Morphism id_v = Morphism::identity(Field::rationals());
  const Morphism id_h = Morphism::identity(Field::rationals());
  CHECK(c.compose(v, v, h, f, id_v) == f);
  CHECK(c.compose(v, h, h, id_h, f) == f);
}

TEST_CASE("composition is associative") {
  for (const char* p : {"x^2", "x^3-x", "x^3+x+1"}) {
    PlanarCategory c(6, pot(p));
    std::vector<int> ids;
    for (const auto& m : kSix) ids.push_back(c.intern(m));
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const int a = ids[rng() % 5], b = ids[rng() % 5], d = ids[rng() % 5], e = ids[rng() % 5];
      const Morphism f = random_morphism(c, a, b, rng, 2);
      const Morphism g = random_morphism(c, b, d, rng, 2);
      const Morphism h = random_morphism(c, d, e, rng, 2);
      const Morphism left = c.compose(a, d, e, h, c.compose(a, b, d, g, f));
      const Morphism right = c.compose(a, b, e, c.compose(b, d, e, h, g), f);
      REQUIRE(left == right);
    }
  }
}

TEST_CASE("graded composition adds quantum degrees") {
  PlanarCategory c(6, pot("x^3"));
  std::vector<int> ids;
  for (const auto& m : kSix) ids.push_back(c.intern(m));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int a = ids[rng() % 5], b = ids[rng() % 5], d = ids[rng() % 5];
    const Morphism f = random_morphism(c, a, b, rng, 1);
    const Morphism g = random_morphism(c, b, d, rng, 1);
    const Morphism gf = c.compose(a, b, d, g, f);
    if (gf.is_zero()) continue;
    const LoopInfo& l = c.loops(a, d);
    for (const auto& [k, v] : gf.terms) CHECK(qdeg(k, l, 3) == c.qdeg(a, b, f) + c.qdeg(b, d, g));
  }
}

TEST_CASE("quantum degree calibration") {
  for (int n = 2; n <= 5; ++n) {
    std::string s = "x^" + std::to_string(n);
    PlanarCategory c(4, pot(s.c_str()));
    const int v = c.intern(kVertical), h = c.intern(kHorizontal);
    CHECK(c.qdeg(v, v, Morphism::identity(Field::rationals())) == 0);
    CHECK(c.qdeg(v, v, c.dot(v, 0)) == 2);
    CHECK(c.qdeg(v, h, c.saddle(v, h)) == n - 1);
    CHECK(c.qdeg(v, v, Morphism{}) == INT_MIN);
  }
  PlanarCategory c(4, pot("x^3"));
  CHECK_THROWS_AS(c.saddle(c.intern(kVertical), c.intern(kVertical)), Error);
}

TEST_CASE("dots slide along a tube") {
  // Two saddles compose to a tube joining the two strands, so x on either strand agrees.
  for (const char* p : {"x^2", "x^3-x", "x^4+x+1", "x^5-x"}) {
    PlanarCategory c(4, pot(p));
    const int v = c.intern(kVertical), h = c.intern(kHorizontal);
    const Morphism tube = c.compose(v, h, v, c.saddle(h, v), c.saddle(v, h));
    Morphism diff = c.compose(v, v, v, c.dot(v, 0), tube);
    diff.add(c.compose(v, v, v, c.dot(v, 1), tube), Field::rationals()->from_int(-1));
    CHECK(diff.is_zero());
    // The horizontal saddle kills the dot difference as well (Krasner d^2 = 0).
    Morphism dd = c.compose(v, v, h, c.saddle(v, h), c.dot(v, 0));
    dd.add(c.compose(v, v, h, c.saddle(v, h), c.dot(v, 1)), Field::rationals()->from_int(-1));
    CHECK(dd.is_zero());
  }
}

TEST_CASE("delooping is a two-sided inverse") {
  for (const char* p : {"x^2", "x^3", "x^3-x", "x^3+x+1", "x^5-x"}) {
    auto w = pot(p);
    const int n = w->n();
    const Delooping dl = deloop(*w, 4);
    REQUIRE(dl.shifts.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      CHECK(dl.shifts[static_cast<std::size_t>(i)] == 4 + 2 * i + 1 - n);
      for (int j = 0; j < n; ++j) {
        const Scalar pair = w->trace(w->mul(dl.cup[static_cast<std::size_t>(i)], dl.cap[static_cast<std::size_t>(j)]));
        CHECK(pair == Field::rationals()->from_int(i == j ? 1 : 0));
      }
    }
    // sum_i cup_i (x) cap_i is the neck-cut of a tube.
    std::map<std::vector<int>, Scalar> lhs, rhs;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const Scalar& v = dl.cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (!v.is_zero()) lhs.emplace(std::vector<int>{i, k}, v);
      }
    for (const auto& [e, v] : w->neck_cut(0, 0, 2))
      if (!v.is_zero()) rhs.emplace(e, v);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("closed surfaces") {
  for (int n = 2; n <= 5; ++n) {
    std::string s = "x^" + std::to_string(n);
    auto w = pot(s.c_str());
    for (int e = 0; e < n; ++e) {
      const auto& sphere = w->neck_cut(e, 0, 0);
      const Scalar v = sphere.empty() ? Field::rationals()->zero() : sphere[0].second;
      CHECK(v == Field::rationals()->from_int(e == n - 1 ? 1 : 0));
    }
    const auto& torus = w->neck_cut(0, 1, 0);
    REQUIRE(torus.size() == 1);
    CHECK(torus[0].second == Field::rationals()->from_int(n));
  }
}
