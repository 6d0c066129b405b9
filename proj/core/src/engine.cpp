#include "krforge/engine.hpp"

#include <algorithm>
#include <tuple>

namespace krforge {

CategoryComplex::CategoryComplex(std::vector<int> l, std::shared_ptr<const Potential> w)
    : labels(std::move(l)), cat(std::make_shared<PlanarCategory>(static_cast<int>(labels.size()), std::move(w))) {}

int CategoryComplex::add(const Summand& s) {
  summands_.push_back(s);
  alive_.push_back(true);
  out_.emplace_back();
  in_.emplace_back();
  ++live_;
  return static_cast<int>(summands_.size()) - 1;
}

void CategoryComplex::set(int a, int b, Morphism f) {
  auto& row = out_[static_cast<std::size_t>(a)];
  if (f.is_zero()) {
    if (row.erase(b)) in_[static_cast<std::size_t>(b)].erase(a);
    return;
  }
  row[b] = std::move(f);
  in_[static_cast<std::size_t>(b)].insert(a);
}

const Morphism* CategoryComplex::get(int a, int b) const {
  const auto& row = out_[static_cast<std::size_t>(a)];
  auto it = row.find(b);
  return it == row.end() ? nullptr : &it->second;
}

void CategoryComplex::remove(int a) {
  const auto ua = static_cast<std::size_t>(a);
  if (!alive_[ua]) return;
  for (const auto& [b, f] : out_[ua]) in_[static_cast<std::size_t>(b)].erase(a);
  for (int x : in_[ua]) out_[static_cast<std::size_t>(x)].erase(a);
  out_[ua].clear();
  in_[ua].clear();
  alive_[ua] = false;
  --live_;
}

std::vector<int> CategoryComplex::live() const {
  std::vector<int> r;
  for (int a = 0; a < capacity(); ++a)
    if (alive_[static_cast<std::size_t>(a)]) r.push_back(a);
  return r;
}

void CategoryComplex::compact() {
  if (live_ == capacity()) return;
  std::vector<int> idx(summands_.size(), -1);
  std::vector<Summand> s;
  for (int a : live()) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(s.size());
    s.push_back(summands_[static_cast<std::size_t>(a)]);
  }
  std::vector<std::map<int, Morphism>> out(s.size());
  std::vector<std::set<int>> in(s.size());
  for (std::size_t a = 0; a < summands_.size(); ++a) {
    if (idx[a] < 0) continue;
    for (auto& [b, f] : out_[a]) {
      const int nb = idx[static_cast<std::size_t>(b)];
      out[static_cast<std::size_t>(idx[a])].emplace(nb, std::move(f));
      in[static_cast<std::size_t>(nb)].insert(idx[a]);
    }
  }
  summands_ = std::move(s);
  alive_.assign(summands_.size(), true);
  out_ = std::move(out);
  in_ = std::move(in);
}

CategoryComplex unit_complex(std::shared_ptr<const Potential> w) {
  CategoryComplex c({}, std::move(w));
  c.add({0, 0, c.cat->intern({})});
  return c;
}

CategoryComplex krasner_complex(int sign, const std::array<int, 4>& labels, std::shared_ptr<const Potential> w) {
  const int n = w->n();
  CategoryComplex c(std::vector<int>(labels.begin(), labels.end()), w);
  PlanarCategory& k = *c.cat;
  const int ii = k.intern({3, 2, 1, 0});  // NW-SW, NE-SE
  const int eq = k.intern({1, 0, 3, 2});  // NW-NE, SE-SW
  Morphism dots = k.dot(ii, NW);
  dots.add(k.dot(ii, NE), w->field()->from_int(-1));
  if (sign > 0) {
    const int a = c.add({0, 1 - n, ii});
    const int b = c.add({1, -1 - n, ii});
    const int e = c.add({2, -2 * n, eq});
    c.set(a, b, dots);
    c.set(b, e, k.saddle(ii, eq));
  } else {
    const int e = c.add({-2, 2 * n, eq});
    const int b = c.add({-1, 1 + n, ii});
    const int a = c.add({0, n - 1, ii});
    c.set(e, b, k.saddle(eq, ii));
    c.set(b, a, dots);
  }
  return c;
}

namespace {

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

class Gluer {
 public:
  Gluer(CategoryComplex& a, CategoryComplex& b) : a_(a), b_(b), w_(a.cat->potential_ptr()), n_(w_->n()) {
    p1_ = static_cast<int>(a.labels.size());
    const int p = p1_ + static_cast<int>(b.labels.size());
    std::vector<int> all = a.labels;
    all.insert(all.end(), b.labels.begin(), b.labels.end());
    std::map<int, std::vector<int>> occ;
    for (int i = 0; i < p; ++i) occ[all[static_cast<std::size_t>(i)]].push_back(i);
    ident_.assign(static_cast<std::size_t>(p), -1);
    for (const auto& [lab, ps] : occ) {
      if (ps.size() > 2) fail(ErrorKind::BoundaryMismatch, "edge label " + std::to_string(lab) + " occurs more than twice");
      if (ps.size() == 2) {
        ident_[static_cast<std::size_t>(ps[0])] = ps[1];
        ident_[static_cast<std::size_t>(ps[1])] = ps[0];
      }
    }
    newidx_.assign(static_cast<std::size_t>(p), -1);
    std::vector<int> labels;
    for (int i = 0; i < p; ++i)
      if (ident_[static_cast<std::size_t>(i)] < 0) {
        newidx_[static_cast<std::size_t>(i)] = static_cast<int>(labels.size());
        labels.push_back(all[static_cast<std::size_t>(i)]);
        orig_.push_back(i);
      }
    out_ = std::make_unique<CategoryComplex>(std::move(labels), w_);
  }

  CategoryComplex run() {
    a_.compact();
    b_.compact();
    const int na = a_.size(), nb = b_.size();
    std::vector<int> base(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y) {
        const Summand& sa = a_.summand(x);
        const Summand& sb = b_.summand(y);
        const ObjGlue& og = object(sa.obj, sb.obj);
        const int c = static_cast<int>(og.circles.size());
        base[static_cast<std::size_t>(x) * static_cast<std::size_t>(nb) + static_cast<std::size_t>(y)] = out_->capacity();
        for (int i = 0; i < ipow(n_, c); ++i) {
          int q = sa.q + sb.q;
          for (int k = 0, r = i; k < c; ++k, r /= n_) q += 2 * (r % n_) + 1 - n_;
          out_->add({sa.t + sb.t, q, og.obj});
        }
      }
    auto at = [&](int x, int y) { return base[static_cast<std::size_t>(x) * static_cast<std::size_t>(nb) + static_cast<std::size_t>(y)]; };
    const Scalar one = w_->field()->one();
    const Morphism id = Morphism::identity(w_->field());
    for (int x = 0; x < na; ++x)
      for (const auto& [x2, f] : a_.out(x))
        for (int y = 0; y < nb; ++y) {
          const int m = b_.summand(y).obj;
          emit(at(x, y), at(x2, y), a_.summand(x).obj, a_.summand(x2).obj, m, m, f, id, one);
        }
    for (int y = 0; y < nb; ++y)
      for (const auto& [y2, g] : b_.out(y))
        for (int x = 0; x < na; ++x) {
          const int m = a_.summand(x).obj;
          const Scalar sign = w_->field()->from_int(a_.summand(x).t % 2 == 0 ? 1 : -1);
          emit(at(x, y), at(x, y2), m, m, b_.summand(y).obj, b_.summand(y2).obj, id, g, sign);
        }
    return std::move(*out_);
  }

 private:
  struct ObjGlue {
    int obj;
    std::vector<std::vector<int>> circles;  // combined point indices along each circle
  };
  struct MorphGlue {
    GlueShape shape;
    int l1, l2, cs, ct;
  };

  int arc(const Matching& x1, const Matching& x2, int p) const {
    return p < p1_ ? x1[static_cast<std::size_t>(p)] : p1_ + x2[static_cast<std::size_t>(p - p1_)];
  }

  const ObjGlue& object(int m1, int m2) {
    auto it = objs_.find({m1, m2});
    if (it != objs_.end()) return it->second;
    const Matching& x1 = a_.cat->matching(m1);
    const Matching& x2 = b_.cat->matching(m2);
    const int p = static_cast<int>(ident_.size());
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    Matching nm(orig_.size());
    for (int s : orig_) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      seen[static_cast<std::size_t>(s)] = true;
      int q = arc(x1, x2, s);
      seen[static_cast<std::size_t>(q)] = true;
      while (ident_[static_cast<std::size_t>(q)] >= 0) {
        const int r = ident_[static_cast<std::size_t>(q)];
        seen[static_cast<std::size_t>(r)] = true;
        q = arc(x1, x2, r);
        seen[static_cast<std::size_t>(q)] = true;
      }
      nm[static_cast<std::size_t>(newidx_[static_cast<std::size_t>(s)])] = static_cast<std::uint8_t>(newidx_[static_cast<std::size_t>(q)]);
      nm[static_cast<std::size_t>(newidx_[static_cast<std::size_t>(q)])] = static_cast<std::uint8_t>(newidx_[static_cast<std::size_t>(s)]);
    }
    ObjGlue og;
    for (int s = 0; s < p; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::vector<int> pts;
      int cur = s;
      do {
        const int q = arc(x1, x2, cur);
        seen[static_cast<std::size_t>(cur)] = true;
        seen[static_cast<std::size_t>(q)] = true;
        pts.push_back(cur);
        pts.push_back(q);
        cur = ident_[static_cast<std::size_t>(q)];
      } while (cur != s);
      og.circles.push_back(std::move(pts));
    }
    og.obj = out_->cat->intern(nm);
    return objs_.emplace(std::make_pair(m1, m2), std::move(og)).first->second;
  }

  const MorphGlue& morph(int x1, int y1, int x2, int y2) {
    auto key = std::make_tuple(x1, y1, x2, y2);
    auto it = morphs_.find(key);
    if (it != morphs_.end()) return it->second;
    const LoopInfo& l1 = a_.cat->loops(x1, y1);
    const LoopInfo& l2 = b_.cat->loops(x2, y2);
    const ObjGlue& src = object(x1, x2);
    const ObjGlue& tgt = object(y1, y2);
    auto piece = [&](int p) {
      return p < p1_ ? l1.loop_of_point[static_cast<std::size_t>(p)] : l1.count + l2.loop_of_point[static_cast<std::size_t>(p - p1_)];
    };
    ShapeBuilder b;
    for (int i = 0; i < l1.count + l2.count; ++i) b.add_piece();
    for (int p = 0; p < static_cast<int>(ident_.size()); ++p)
      if (p < ident_[static_cast<std::size_t>(p)]) b.interval(piece(p), piece(ident_[static_cast<std::size_t>(p)]));
    for (const auto* circles : {&src.circles, &tgt.circles})
      for (const auto& c : *circles) {
        const int cap = b.add_piece();
        for (int p : c) b.circle(cap, piece(p));
      }
    const LoopInfo& lo = out_->cat->loops(src.obj, tgt.obj);
    std::vector<int> outp(static_cast<std::size_t>(lo.count), -1);
    for (std::size_t np = 0; np < orig_.size(); ++np) {
      int& o = outp[static_cast<std::size_t>(lo.loop_of_point[np])];
      if (o < 0) o = piece(orig_[np]);
    }
    MorphGlue mg{b.finish(outp), l1.count, l2.count, static_cast<int>(src.circles.size()), static_cast<int>(tgt.circles.size())};
    return morphs_.emplace(key, std::move(mg)).first->second;
  }

  // Adds the delooped blocks of (f on the first factor) u (g on the second factor).
  void emit(int src, int tgt, int x1, int y1, int x2, int y2, const Morphism& f, const Morphism& g, const Scalar& sign) {
    const MorphGlue& mg = morph(x1, y1, x2, y2);
    const int ns = ipow(n_, mg.cs), nt = ipow(n_, mg.ct);
    std::vector<std::map<Key, Scalar>> acc(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt));
    std::vector<int> exps(static_cast<std::size_t>(mg.shape.pieces), 0);
    const int cup0 = mg.l1 + mg.l2, cap0 = cup0 + mg.cs;
    const auto& duals = w_->dual_basis();
    std::vector<int> jdig(static_cast<std::size_t>(mg.ct));
    std::vector<int> mono(static_cast<std::size_t>(mg.ct));
    for (const auto& [kf, cf] : f.terms) {
      for (int l = 0; l < mg.l1; ++l) exps[static_cast<std::size_t>(l)] = key_exp(kf, l);
      for (const auto& [kg, cg] : g.terms) {
        for (int l = 0; l < mg.l2; ++l) exps[static_cast<std::size_t>(mg.l1 + l)] = key_exp(kg, l);
        const Scalar c0 = cf * cg * sign;
        for (int si = 0; si < ns; ++si) {
          for (int k = 0, r = si; k < mg.cs; ++k, r /= n_) exps[static_cast<std::size_t>(cup0 + k)] = r % n_;
          for (int tj = 0; tj < nt; ++tj) {
            for (int k = 0, r = tj; k < mg.ct; ++k, r /= n_) jdig[static_cast<std::size_t>(k)] = r % n_;
            auto& dst = acc[static_cast<std::size_t>(si) * static_cast<std::size_t>(nt) + static_cast<std::size_t>(tj)];
            // Expand each cap decoration b^j into monomials.
            std::fill(mono.begin(), mono.end(), 0);
            while (true) {
              Scalar c = c0;
              for (int k = 0; k < mg.ct && !c.is_zero(); ++k) c *= duals[static_cast<std::size_t>(jdig[static_cast<std::size_t>(k)])][static_cast<std::size_t>(mono[static_cast<std::size_t>(k)])];
              if (!c.is_zero()) {
                for (int k = 0; k < mg.ct; ++k) exps[static_cast<std::size_t>(cap0 + k)] = mono[static_cast<std::size_t>(k)];
                evaluate_shape(mg.shape, exps, c, *w_, dst);
              }
              int pos = 0;
              while (pos < mg.ct && ++mono[static_cast<std::size_t>(pos)] == n_) mono[static_cast<std::size_t>(pos++)] = 0;
              if (pos == mg.ct) break;
            }
          }
        }
      }
    }
    for (int si = 0; si < ns; ++si)
      for (int tj = 0; tj < nt; ++tj) {
        Morphism m = Morphism::from_map(acc[static_cast<std::size_t>(si) * static_cast<std::size_t>(nt) + static_cast<std::size_t>(tj)]);
        if (!m.is_zero()) out_->set(src + si, tgt + tj, std::move(m));
      }
  }

  CategoryComplex& a_;
  CategoryComplex& b_;
  std::shared_ptr<const Potential> w_;
  int n_;
  int p1_ = 0;
  std::vector<int> ident_, newidx_, orig_;
  std::unique_ptr<CategoryComplex> out_;
  std::map<std::pair<int, int>, ObjGlue> objs_;
  std::map<std::tuple<int, int, int, int>, MorphGlue> morphs_;
};

bool is_pivot(const CategoryComplex& c, int a, int b, const Morphism& f) {
  const Summand& sa = c.summand(a);
  const Summand& sb = c.summand(b);
  return sa.obj == sb.obj && sa.q == sb.q && f.identity_multiple().has_value();
}

}  // namespace

CategoryComplex glue(CategoryComplex& a, CategoryComplex& b) {
  if (a.cat->potential_ptr() != b.cat->potential_ptr() && a.cat->potential().poly() != b.cat->potential().poly())
    fail(ErrorKind::BoundaryMismatch, "glued complexes use different potentials");
  return Gluer(a, b).run();
}

void gauss_eliminate(CategoryComplex& c, int a, int b) {
  const Morphism* p = c.get(a, b);
  if (p == nullptr || !is_pivot(c, a, b, *p)) fail(ErrorKind::NotInvertible, "pivot is not an isomorphism");
  const Scalar inv = p->identity_multiple()->inverse();
  std::vector<std::pair<int, Morphism>> srcs, tgts;
  for (int x : c.in(b))
    if (x != a) srcs.emplace_back(x, c.get(x, b)->scaled(inv));
  for (const auto& [y, g] : c.out(a))
    if (y != b) tgts.emplace_back(y, g);
  const int mid = c.summand(a).obj;
  const Scalar minus = c.cat->potential().field()->from_int(-1);
  for (const auto& [x, f] : srcs)
    for (const auto& [y, g] : tgts) {
      Morphism delta = c.cat->compose(c.summand(x).obj, mid, c.summand(y).obj, g, f);
      if (delta.is_zero()) continue;
      const Morphism* old = c.get(x, y);
      Morphism next = old ? *old : Morphism{};
      next.add(delta, minus);
      c.set(x, y, std::move(next));
    }
  c.remove(a);
  c.remove(b);
}

int simplify(CategoryComplex& c) {
  int count = 0;
  bool again = true;
  while (again) {
    again = false;
    for (int a = 0; a < c.capacity(); ++a) {
      if (!c.alive(a)) continue;
      // Cheapest pivot out of a by fill-in estimate.
      int best = -1;
      std::size_t cost = 0;
      for (const auto& [b, f] : c.out(a)) {
        if (!is_pivot(c, a, b, f)) continue;
        const std::size_t k = c.in(b).size();
        if (best < 0 || k < cost) {
          best = b;
          cost = k;
        }
      }
      if (best >= 0) {
        gauss_eliminate(c, a, best);
        ++count;
        again = true;
      }
    }
  }
  return count;
}

void check_complex(CategoryComplex& c) {
  const Scalar one = c.cat->potential().field()->one();
  for (int a : c.live()) {
    std::map<int, Morphism> dd;
    for (const auto& [b, f] : c.out(a)) {
      const int lim = c.summand(a).q - c.summand(b).q;
      if (c.summand(b).t != c.summand(a).t + 1) fail(ErrorKind::Inconsistent, "differential does not raise t by one");
      if (c.cat->qdeg(c.summand(a).obj, c.summand(b).obj, f) > lim) fail(ErrorKind::Inconsistent, "differential entry violates the filtration");
      for (const auto& [z, g] : c.out(b)) dd[z].add(c.cat->compose(c.summand(a).obj, c.summand(b).obj, c.summand(z).obj, g, f), one);
    }
    for (const auto& [z, m] : dd)
      if (!m.is_zero()) fail(ErrorKind::Inconsistent, "d o d is not zero");
  }
}

namespace {

struct CutDiagram {
  std::vector<Slot> slots;
  int first_slot = 0;
};

CutDiagram cut_at_mark(const MatchedDiagram& d) {
  if (!d.closed()) fail(ErrorKind::InconsistentDiagram, "diagram is not closed");
  if (!d.mark) fail(ErrorKind::NoMarkedEdge, "diagram has no marked edge");
  d.validate();
  CutDiagram cd{d.slots, -1};
  int top = 0;
  for (const auto& s : d.slots)
    for (int e : s.e) top = std::max(top, e);
  int seen = 0;
  for (std::size_t i = 0; i < cd.slots.size(); ++i)
    for (auto& e : cd.slots[i].e)
      if (e == *d.mark) {
        if (seen++ == 0) cd.first_slot = static_cast<int>(i);
        else e = top + 1;
      }
  if (seen != 2) fail(ErrorKind::NoMarkedEdge, "marked edge does not occur on the diagram");
  return cd;
}

std::vector<int> greedy(const CutDiagram& cd) {
  const int n = static_cast<int>(cd.slots.size());
  std::vector<int> order{cd.first_slot};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[static_cast<std::size_t>(cd.first_slot)] = true;
  std::map<int, int> count;
  for (int e : cd.slots[static_cast<std::size_t>(cd.first_slot)].e) ++count[e];
  while (static_cast<int>(order.size()) < n) {
    int best = -1, score = -1;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      int s = 0;
      for (int e : cd.slots[static_cast<std::size_t>(i)].e) {
        auto it = count.find(e);
        if (it != count.end() && it->second == 1) ++s;
      }
      if (s > score) {
        best = i;
        score = s;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
    for (int e : cd.slots[static_cast<std::size_t>(best)].e) ++count[e];
  }
  return order;
}

}  // namespace

std::vector<int> greedy_order(const MatchedDiagram& d) { return greedy(cut_at_mark(d)); }

ModuleComplex assemble(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const AssembleOptions& opt) {
  CutDiagram cd = cut_at_mark(d);
  std::vector<int> order = opt.order.empty() ? greedy(cd) : opt.order;
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<int>(i) || sorted.size() != cd.slots.size()) fail(ErrorKind::InconsistentDiagram, "glue order is not a permutation of the slots");
  }
  CategoryComplex c = unit_complex(w);
  for (int s : order) {
    const Slot& slot = cd.slots[static_cast<std::size_t>(s)];
    CategoryComplex k = krasner_complex(slot.sign, slot.e, w);
    c = glue(c, k);
    simplify(c);
    if (opt.check) check_complex(c);
  }
  c.compact();
  if (c.labels.size() != 2) fail(ErrorKind::Inconsistent, "assembled tangle is not a (1,1)-tangle");
  ModuleComplex m;
  m.w = w;
  for (int a = 0; a < c.capacity(); ++a) {
    m.gens.emplace_back(c.summand(a).t, c.summand(a).q);
    m.out.emplace_back();
    for (const auto& [b, f] : c.out(a)) {
      RingElement r = w->zero();
      for (const auto& [k, v] : f.terms) r[static_cast<std::size_t>(key_exp(k, 0))] = v;
      m.out.back().emplace(b, std::move(r));
    }
  }
  return m;
}

void check_complex(const ModuleComplex& m) {
  const Potential& w = *m.w;
  for (std::size_t a = 0; a < m.gens.size(); ++a) {
    std::map<int, RingElement> dd;
    for (const auto& [b, f] : m.out[a])
      for (const auto& [z, g] : m.out[static_cast<std::size_t>(b)]) {
        RingElement p = w.mul(g, f);
        auto [it, fresh] = dd.try_emplace(z, p);
        if (!fresh)
          for (std::size_t i = 0; i < p.size(); ++i) it->second[i] += p[i];
      }
    for (const auto& [z, r] : dd)
      for (const auto& v : r)
        if (!v.is_zero()) fail(ErrorKind::Inconsistent, "module complex has d o d != 0");
  }
}

ScalarComplex unreduced_complex(const ModuleComplex& m) {
  const Potential& w = *m.w;
  const int n = w.n();
  ScalarComplex s;
  s.k = w.field();
  for (const auto& [t, q] : m.gens)
    for (int j = 0; j < n; ++j) s.gens.emplace_back(t, q + 2 * j + 1 - n);
  s.out.resize(s.gens.size());
  for (std::size_t a = 0; a < m.gens.size(); ++a)
    for (const auto& [b, p] : m.out[a])
      for (int j = 0; j < n; ++j) {
        RingElement img = w.mul(p, w.monomial(j));
        for (int k = 0; k < n; ++k)
          if (!img[static_cast<std::size_t>(k)].is_zero())
            s.out[a * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)].emplace(b * n + k, img[static_cast<std::size_t>(k)]);
      }
  return s;
}

ScalarComplex reduced_complex(const ModuleComplex& m, const Scalar& alpha) {
  const Potential& w = *m.w;
  if (!w.poly().eval(alpha).is_zero()) fail(ErrorKind::NotARoot, alpha.str() + " is not a root of " + w.str());
  ScalarComplex s;
  s.k = alpha.field();
  s.gens = m.gens;
  s.out.resize(s.gens.size());
  for (std::size_t a = 0; a < m.gens.size(); ++a)
    for (const auto& [b, p] : m.out[a]) {
      Scalar v = w.evaluate(p, alpha);
      if (!v.is_zero()) s.out[a].emplace(b, std::move(v));
    }
  return s;
}

}  // namespace krforge
