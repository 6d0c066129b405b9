#include "krforge/cob.hpp"

#include <algorithm>
#include <climits>

namespace krforge {

LoopInfo loops_of(const Matching& x, const Matching& y) {
  const int p = static_cast<int>(x.size());
  LoopInfo info;
  info.loop_of_point.assign(static_cast<std::size_t>(p), -1);
  for (int s = 0; s < p; ++s) {
    if (info.loop_of_point[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = info.count++;
    int pts = 0;
    int cur = s;
    do {
      const int a = x[static_cast<std::size_t>(cur)];
      info.loop_of_point[static_cast<std::size_t>(cur)] = id;
      info.loop_of_point[static_cast<std::size_t>(a)] = id;
      pts += 2;
      cur = y[static_cast<std::size_t>(a)];
    } while (cur != s);
    info.points.push_back(pts);
  }
  if (info.count > kMaxLoops) fail(ErrorKind::TooLarge, "more than 16 loops in one morphism space");
  return info;
}

Morphism Morphism::from_map(const std::map<Key, Scalar>& m) {
  Morphism f;
  f.terms.reserve(m.size());
  for (const auto& [k, c] : m)
    if (!c.is_zero()) f.terms.emplace_back(k, c);
  return f;
}

void Morphism::add(const Morphism& o, const Scalar& s) {
  if (o.terms.empty() || s.is_zero()) return;
  std::vector<std::pair<Key, Scalar>> out;
  out.reserve(terms.size() + o.terms.size());
  auto a = terms.begin();
  auto b = o.terms.begin();
  while (a != terms.end() || b != o.terms.end()) {
    if (b == o.terms.end() || (a != terms.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms.end() || b->first < a->first) {
      out.emplace_back(b->first, b->second * s);
      ++b;
    } else {
      Scalar c = a->second + b->second * s;
      if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms = std::move(out);
}

Morphism Morphism::scaled(const Scalar& s) const {
  Morphism f;
  if (s.is_zero()) return f;
  f.terms.reserve(terms.size());
  for (const auto& [k, c] : terms) f.terms.emplace_back(k, c * s);
  return f;
}

std::optional<Scalar> Morphism::identity_multiple() const {
  if (terms.size() == 1 && terms[0].first == 0) return terms[0].second;
  return std::nullopt;
}

int ShapeBuilder::add_piece() {
  parent_.push_back(static_cast<int>(parent_.size()));
  intervals_.push_back(0);
  return parent_.back();
}

int ShapeBuilder::find(int a) {
  while (parent_[static_cast<std::size_t>(a)] != a) {
    parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
    a = parent_[static_cast<std::size_t>(a)];
  }
  return a;
}

void ShapeBuilder::interval(int a, int b) {
  circle(a, b);
  ++intervals_[static_cast<std::size_t>(a)];
}

void ShapeBuilder::circle(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) parent_[static_cast<std::size_t>(b)] = a;
}

GlueShape ShapeBuilder::finish(const std::vector<int>& out_piece) {
  GlueShape s;
  s.pieces = static_cast<int>(parent_.size());
  s.out_loops = static_cast<int>(out_piece.size());
  s.comp.assign(parent_.size(), -1);
  std::vector<int> root_comp(parent_.size(), -1);
  std::vector<int> chi;
  for (int p = 0; p < s.pieces; ++p) {
    const int r = find(p);
    if (root_comp[static_cast<std::size_t>(r)] < 0) {
      root_comp[static_cast<std::size_t>(r)] = static_cast<int>(chi.size());
      chi.push_back(0);
    }
    const int c = root_comp[static_cast<std::size_t>(r)];
    s.comp[static_cast<std::size_t>(p)] = c;
    chi[static_cast<std::size_t>(c)] += 1 - intervals_[static_cast<std::size_t>(p)];
  }
  s.out.assign(chi.size(), {});
  for (int l = 0; l < s.out_loops; ++l)
    s.out[static_cast<std::size_t>(s.comp[static_cast<std::size_t>(out_piece[static_cast<std::size_t>(l)])])].push_back(l);
  for (std::size_t c = 0; c < chi.size(); ++c) {
    const int twice_g = 2 - static_cast<int>(s.out[c].size()) - chi[c];
    if (twice_g < 0 || twice_g % 2 != 0) fail(ErrorKind::Inconsistent, "glued surface has non-integral genus");
    s.genus.push_back(twice_g / 2);
  }
  return s;
}

void evaluate_shape(const GlueShape& s, const std::vector<int>& exps, const Scalar& c, const Potential& w,
                    std::map<Key, Scalar>& acc) {
  const std::size_t nc = s.genus.size();
  std::vector<int> e(nc, 0);
  for (int p = 0; p < s.pieces; ++p) e[static_cast<std::size_t>(s.comp[static_cast<std::size_t>(p)])] += exps[static_cast<std::size_t>(p)];

  Scalar coeff = c;
  std::vector<const Potential::Expansion*> open;
  std::vector<std::size_t> which;
  for (std::size_t k = 0; k < nc; ++k) {
    const auto& ex = w.neck_cut(e[k], s.genus[k], static_cast<int>(s.out[k].size()));
    if (ex.empty()) return;
    if (s.out[k].empty()) {
      coeff *= ex[0].second;
    } else {
      open.push_back(&ex);
      which.push_back(k);
    }
  }
  // Cartesian product over the components that bound output loops.
  std::vector<std::size_t> idx(open.size(), 0);
  while (true) {
    Key key = 0;
    Scalar t = coeff;
    for (std::size_t i = 0; i < open.size(); ++i) {
      const auto& [ex, v] = (*open[i])[idx[i]];
      const auto& loops = s.out[which[i]];
      for (std::size_t j = 0; j < loops.size(); ++j) key = key_add(key, loops[j], ex[j]);
      t *= v;
    }
    auto [it, fresh] = acc.try_emplace(key, t);
    if (!fresh) it->second += t;
    std::size_t pos = 0;
    while (pos < open.size() && ++idx[pos] == open[pos]->size()) idx[pos++] = 0;
    if (pos == open.size()) break;
  }
}

int qdeg(Key k, const LoopInfo& loops, int n) {
  int d = 0;
  for (int l = 0; l < loops.count; ++l) d += 2 * key_exp(k, l) - (n - 1) * (1 - loops.points[static_cast<std::size_t>(l)] / 2);
  return d;
}

PlanarCategory::PlanarCategory(int points, std::shared_ptr<const Potential> w) : points_(points), w_(std::move(w)) {
  if (points > 2 * kMaxLoops) fail(ErrorKind::TooLarge, "tangle boundary exceeds 32 points");
}

int PlanarCategory::intern(const Matching& m) {
  auto [it, fresh] = ids_.try_emplace(m, static_cast<int>(matchings_.size()));
  if (fresh) matchings_.push_back(m);
  return it->second;
}

const LoopInfo& PlanarCategory::loops(int x, int y) {
  auto it = loops_.find({x, y});
  if (it == loops_.end()) it = loops_.emplace(std::make_pair(x, y), loops_of(matching(x), matching(y))).first;
  return it->second;
}

Morphism PlanarCategory::compose(int x, int y, int z, const Morphism& g, const Morphism& f) {
  if (f.is_zero() || g.is_zero()) return {};
  if (auto c = f.identity_multiple(); c && x == y) return g.scaled(*c);
  if (auto c = g.identity_multiple(); c && y == z) return f.scaled(*c);
  const LoopInfo& lf = loops(x, y);
  const LoopInfo& lg = loops(y, z);
  auto sit = compose_shapes_.find({x, y, z});
  if (sit == compose_shapes_.end()) {
    const LoopInfo& lo = loops(x, z);
    ShapeBuilder b;
    for (int i = 0; i < lf.count + lg.count; ++i) b.add_piece();
    const Matching& my = matching(y);
    for (int p = 0; p < points_; ++p)
      if (p < my[static_cast<std::size_t>(p)]) b.interval(lf.loop_of_point[static_cast<std::size_t>(p)], lf.count + lg.loop_of_point[static_cast<std::size_t>(p)]);
    std::vector<int> out(static_cast<std::size_t>(lo.count), -1);
    for (int p = 0; p < points_; ++p) {
      int& o = out[static_cast<std::size_t>(lo.loop_of_point[static_cast<std::size_t>(p)])];
      if (o < 0) o = lf.loop_of_point[static_cast<std::size_t>(p)];
    }
    sit = compose_shapes_.emplace(std::make_tuple(x, y, z), b.finish(out)).first;
  }
  const GlueShape& shape = sit->second;
  std::map<Key, Scalar> acc;
  std::vector<int> exps(static_cast<std::size_t>(shape.pieces), 0);
  for (const auto& [kf, cf] : f.terms) {
    for (int l = 0; l < lf.count; ++l) exps[static_cast<std::size_t>(l)] = key_exp(kf, l);
    for (const auto& [kg, cg] : g.terms) {
      for (int l = 0; l < lg.count; ++l) exps[static_cast<std::size_t>(lf.count + l)] = key_exp(kg, l);
      evaluate_shape(shape, exps, cf * cg, *w_, acc);
    }
  }
  return Morphism::from_map(acc);
}

int PlanarCategory::qdeg(int x, int y, const Morphism& f) {
  int best = INT_MIN;
  const LoopInfo& l = loops(x, y);
  for (const auto& t : f.terms) best = std::max(best, krforge::qdeg(t.first, l, w_->n()));
  return best;
}

Morphism PlanarCategory::dot(int x, int point) {
  if (point < 0 || point >= points_) fail(ErrorKind::IllegalSite, "dot on a point outside the boundary");
  const LoopInfo& l = loops(x, x);
  RingElement xe = w_->monomial(1);
  std::map<Key, Scalar> acc;
  for (int e = 0; e < w_->n(); ++e)
    if (!xe[static_cast<std::size_t>(e)].is_zero()) acc[key_add(0, l.loop_of_point[static_cast<std::size_t>(point)], e)] = xe[static_cast<std::size_t>(e)];
  return Morphism::from_map(acc);
}

Morphism PlanarCategory::saddle(int x, int y) {
  const LoopInfo& l = loops(x, y);
  int four = 0;
  for (int pts : l.points) {
    if (pts == 4) ++four;
    else if (pts != 2) fail(ErrorKind::IllegalSite, "objects do not differ by one saddle");
  }
  if (four != 1) fail(ErrorKind::IllegalSite, "objects do not differ by one saddle");
  return Morphism::identity(w_->field());
}

Delooping deloop(const Potential& w, int shift) {
  Delooping d;
  for (int i = 0; i < w.n(); ++i) {
    d.shifts.push_back(shift + 2 * i + 1 - w.n());
    d.cup.push_back(w.monomial(i));
    d.cap.push_back(w.dual_basis()[static_cast<std::size_t>(i)]);
  }
  return d;
}

}  // namespace krforge
