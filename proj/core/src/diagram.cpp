#include "krforge/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace krforge {
namespace {

// Slot sign produced by a positive Conway twist.
constexpr int kConwaySign = -1;

struct Occurrence {
  int slot;  // -1 for the boundary
  int pos;
};

std::map<int, std::vector<Occurrence>> occurrences(const MatchedDiagram& d) {
  std::map<int, std::vector<Occurrence>> occ;
  for (int s = 0; s < static_cast<int>(d.slots.size()); ++s)
    for (int p = 0; p < 4; ++p) occ[d.slots[static_cast<std::size_t>(s)].e[static_cast<std::size_t>(p)]].push_back({s, p});
  for (int p = 0; p < static_cast<int>(d.boundary.size()); ++p) occ[d.boundary[static_cast<std::size_t>(p)]].push_back({-1, p});
  return occ;
}

int max_label(const MatchedDiagram& d) {
  int m = 0;
  for (const auto& s : d.slots)
    for (int e : s.e) m = std::max(m, e);
  for (int e : d.boundary) m = std::max(m, e);
  return m;
}

MatchedDiagram shift_labels(MatchedDiagram d, int offset) {
  for (auto& s : d.slots)
    for (int& e : s.e) e += offset;
  for (int& e : d.boundary) e += offset;
  if (d.mark) *d.mark += offset;
  return d;
}

int in_bit(int sigma, int pos) { return sigma ^ (pos == NE || pos == SW ? 1 : 0); }

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Merges boundary labels pairwise, then drops the listed boundary positions.
MatchedDiagram glue_boundary(MatchedDiagram d, const std::vector<std::pair<int, int>>& joins,
                             std::vector<int> new_boundary) {
  UnionFind uf;
  for (auto [a, b] : joins) uf.unite(a, b);
  for (auto& s : d.slots)
    for (int& e : s.e) e = uf.find(e);
  for (int& e : new_boundary) e = uf.find(e);
  d.boundary = std::move(new_boundary);
  if (d.mark) d.mark = uf.find(*d.mark);
  d.sigma.clear();
  auto occ = occurrences(d);
  for (const auto& [label, list] : occ)
    if (list.size() != 2) fail(ErrorKind::InconsistentDiagram, "tangle gluing leaves a closed loop without crossings");
  return d;
}

long gcd_l(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

}  // namespace

int MatchedDiagram::writhe() const {
  int w = 0;
  for (const auto& s : slots) w += 2 * s.sign;
  return w;
}

std::vector<int> MatchedDiagram::edges() const {
  std::vector<int> out;
  for (const auto& [label, list] : occurrences(*this)) out.push_back(label);
  return out;
}

int MatchedDiagram::components() const {
  std::vector<int> parent(slots.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& [label, list] : occurrences(*this))
    if (list.size() == 2 && list[0].slot >= 0 && list[1].slot >= 0)
      parent[static_cast<std::size_t>(find(list[0].slot))] = find(list[1].slot);
  int c = 0;
  for (int s = 0; s < static_cast<int>(slots.size()); ++s) c += find(s) == s;
  return c;
}

long MatchedDiagram::orientation_classes() const {
  int c = components();
  return c == 0 ? 1 : 1L << (c - 1);
}

void MatchedDiagram::validate() const {
  if (!boundary.empty() && boundary.size() != 4)
    fail(ErrorKind::InconsistentDiagram, "a tangle must have exactly 4 boundary points");
  for (const auto& s : slots)
    if (s.sign != 1 && s.sign != -1) fail(ErrorKind::InconsistentDiagram, "slot sign must be + or -");
  auto occ = occurrences(*this);
  for (const auto& [label, list] : occ)
    if (list.size() != 2)
      fail(ErrorKind::InconsistentDiagram, "edge " + std::to_string(label) + " occurs " + std::to_string(list.size()) + " times");
  if (mark && !occ.count(*mark)) fail(ErrorKind::InconsistentDiagram, "marked edge " + std::to_string(*mark) + " does not exist");
  if (!sigma.empty() && sigma.size() != slots.size()) fail(ErrorKind::InconsistentDiagram, "orientation size mismatch");

  // Rotation system: slots are 4-valent vertices with ports clockwise NW, NE, SE, SW; the boundary is
  // one more vertex seen from outside. Each connected component must satisfy V - E + F = 2.
  const int nv = static_cast<int>(slots.size()) + (boundary.empty() ? 0 : 1);
  if (nv == 0) return;
  auto half = [&](Occurrence o) { return o.slot >= 0 ? 4 * o.slot + o.pos : 4 * static_cast<int>(slots.size()) + (4 - o.pos) % 4; };
  std::vector<int> mate(static_cast<std::size_t>(4 * nv));
  std::vector<int> parent(static_cast<std::size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& [label, list] : occ) {
    int a = half(list[0]), b = half(list[1]);
    mate[static_cast<std::size_t>(a)] = b;
    mate[static_cast<std::size_t>(b)] = a;
    parent[static_cast<std::size_t>(find(a / 4))] = find(b / 4);
  }
  int comps = 0;
  for (int v = 0; v < nv; ++v) comps += find(v) == v;
  std::vector<char> seen(mate.size(), 0);
  int faces = 0;
  for (std::size_t h = 0; h < mate.size(); ++h) {
    if (seen[h]) continue;
    ++faces;
    for (std::size_t k = h; !seen[k];) {
      seen[k] = 1;
      int m = mate[k];
      k = static_cast<std::size_t>(4 * (m / 4) + (m % 4 + 1) % 4);
    }
  }
  const int ne = 2 * nv;
  if (nv - ne + faces != 2 * comps) fail(ErrorKind::InconsistentDiagram, "gluing is not planar");
}

// ---------------------------------------------------------------- continued fractions

std::vector<long> even_continued_fraction(long p, long q) {
  if (q <= 0) fail(ErrorKind::OddFraction, "denominator must be positive");
  if (gcd_l(p, q) != 1) fail(ErrorKind::OddFraction, std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
  if (p % 2 != 0 && q % 2 != 0) fail(ErrorKind::OddFraction, std::to_string(p) + "/" + std::to_string(q) + " has odd numerator and denominator");
  std::vector<long> rev;
  long num = p, den = q;  // current value num/den, den > 0
  while (true) {
    // nearest even integer to num/den (never a tie, since num/den is never an odd integer)
    long a = 2 * static_cast<long>(std::floor((static_cast<long double>(num) / den + 1) / 2));
    rev.push_back(a);
    long rn = num - a * den;  // remainder rn/den
    if (rn == 0) break;
    num = den;
    den = rn;
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::pair<long, long> evaluate_continued_fraction(const std::vector<long>& a) {
  long num = a.at(0), den = 1;
  for (std::size_t i = 1; i < a.size(); ++i) {
    // a_i + 1/(num/den) = (a_i num + den)/num
    long n2 = a[i] * num + den, d2 = num;
    num = n2;
    den = d2;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long g = gcd_l(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

// ---------------------------------------------------------------- tangle algebra

MatchedDiagram integer_tangle(long a) {
  if (a % 2 != 0) fail(ErrorKind::OddFraction, "integer tangle [" + std::to_string(a) + "] is not a matched tangle");
  MatchedDiagram t;
  const long k = std::labs(a) / 2;
  if (k == 0) {
    t.boundary = {1, 1, 2, 2};
    return t;
  }
  // top labels 1..k+1, bottom labels k+2..2k+2
  for (long i = 0; i < k; ++i) {
    Slot s;
    s.sign = (a > 0 ? 1 : -1) * kConwaySign;
    s.e = {static_cast<int>(1 + i), static_cast<int>(2 + i), static_cast<int>(k + 3 + i), static_cast<int>(k + 2 + i)};
    t.slots.push_back(s);
  }
  t.boundary = {1, static_cast<int>(k + 1), static_cast<int>(2 * k + 2), static_cast<int>(k + 2)};
  return t;
}

MatchedDiagram tangle_sum(const MatchedDiagram& t, const MatchedDiagram& s) {
  if (t.boundary.size() != 4 || s.boundary.size() != 4) fail(ErrorKind::BoundaryMismatch, "tangle sum needs two 4-ended tangles");
  MatchedDiagram r = t;
  MatchedDiagram s2 = shift_labels(s, max_label(t));
  r.slots.insert(r.slots.end(), s2.slots.begin(), s2.slots.end());
  r.mark.reset();
  return glue_boundary(r, {{t.boundary[NE], s2.boundary[NW]}, {t.boundary[SE], s2.boundary[SW]}},
                       {t.boundary[NW], s2.boundary[NE], s2.boundary[SE], t.boundary[SW]});
}

MatchedDiagram tangle_reflect(const MatchedDiagram& t) {
  MatchedDiagram r = t;
  for (auto& s : r.slots) {
    s.e = {s.e[NE], s.e[NW], s.e[SW], s.e[SE]};
    s.sign = -s.sign;
  }
  if (r.boundary.size() == 4) r.boundary = {t.boundary[NW], t.boundary[SW], t.boundary[SE], t.boundary[NE]};
  r.sigma.clear();
  return r;
}

MatchedDiagram numerator_closure(const MatchedDiagram& t) {
  if (t.boundary.size() != 4) fail(ErrorKind::BoundaryMismatch, "closure needs a 4-ended tangle");
  return glue_boundary(t, {{t.boundary[NW], t.boundary[NE]}, {t.boundary[SW], t.boundary[SE]}}, {});
}

MatchedDiagram rational_tangle(long p, long q) {
  auto a = even_continued_fraction(p, q);
  MatchedDiagram t = integer_tangle(a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) t = tangle_sum(tangle_reflect(t), integer_tangle(a[i]));
  return t;
}

MatchedDiagram rational(long p, long q) {
  if (q <= 0 || gcd_l(p, q) != 1) fail(ErrorKind::OddFraction, "rational link needs a reduced fraction with q > 0");
  if (p % 2 != 0 && q % 2 != 0) q += std::labs(p);
  MatchedDiagram d = numerator_closure(rational_tangle(p, q));
  return d;
}

MatchedDiagram montesinos(const std::vector<std::pair<long, long>>& fractions) {
  if (fractions.empty()) fail(ErrorKind::ParseError, "montesinos needs at least one fraction");
  std::vector<std::pair<long, long>> f = fractions;
  for (auto& [p, q] : f) {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    if (q == 0 || gcd_l(p, q) != 1) fail(ErrorKind::OddFraction, "montesinos fractions must be reduced with q >= 1");
  }
  // Integer twists move freely between the tangles when their total is kept, so search shifts
  // p_i -> p_i + k_i q_i (|k_i| <= 2) with an even compensating integer tangle, making every fraction
  // even/odd and minimizing the slot count. The normalization M(#A/1, ...) is one of the candidates.
  auto cost = [](long p, long q) {
    long c = 0;
    for (long a : even_continued_fraction(p, q)) c += std::labs(a) / 2;
    return c;
  };
  const std::size_t n = f.size();
  std::vector<int> k(n, -2), best_k;
  long best_cost = -1;
  while (true) {
    long total = 0, c = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      long p = f[i].first + k[i] * f[i].second;
      total += k[i];
      if (p % 2 != 0 && f[i].second % 2 != 0) ok = false;
      else c += cost(p, f[i].second);
    }
    if (ok && total % 2 == 0) {
      c += std::labs(total) / 2;
      if (best_cost < 0 || c < best_cost) {
        best_cost = c;
        best_k = k;
      }
    }
    std::size_t pos = 0;
    while (pos < n && ++k[pos] == 3) k[pos++] = -2;
    if (pos == n) break;
  }
  if (best_cost < 0) {
    long odd = 0;
    std::ostringstream msg;
    for (auto [p, q] : f) odd += (p % 2 != 0 && q % 2 != 0);
    msg << "no even denominator after normalization: #A = " << odd << ", fractions";
    for (auto [p, q] : f) msg << ' ' << ((p % 2 != 0 && q % 2 != 0) ? p - q : p) << '/' << q;
    fail(ErrorKind::NotBipartiteCertificate, msg.str());
  }
  long extra = 0;
  for (int v : best_k) extra -= v;
  MatchedDiagram t;
  bool first = true;
  auto add = [&](MatchedDiagram piece) {
    t = first ? std::move(piece) : tangle_sum(t, piece);
    first = false;
  };
  if (extra != 0) add(integer_tangle(extra));
  for (std::size_t i = 0; i < n; ++i) add(rational_tangle(f[i].first + best_k[i] * f[i].second, f[i].second));
  return numerator_closure(t);
}

MatchedDiagram pretzel(const std::vector<long>& p) {
  std::vector<std::pair<long, long>> f;
  for (long a : p) {
    if (a == 0) fail(ErrorKind::ParseError, "pretzel entries must be nonzero");
    f.push_back({a > 0 ? 1 : -1, std::labs(a)});
  }
  return montesinos(f);
}

MatchedDiagram unknot() { return parse_mpd("T + 1 2 2 1\nmark 1\n"); }

// ---------------------------------------------------------------- orientation and combinators

MatchedDiagram orient(const MatchedDiagram& d) {
  d.validate();
  MatchedDiagram r = d;
  const int n = static_cast<int>(d.slots.size());
  auto occ = occurrences(d);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));  // (other slot, required xor)
  for (const auto& [label, list] : occ) {
    if (list[0].slot < 0 || list[1].slot < 0) continue;
    // in(s1,p1) != in(s2,p2)  <=>  sigma1 ^ sigma2 = 1 ^ f(p1) ^ f(p2)
    int x = 1 ^ in_bit(0, list[0].pos) ^ in_bit(0, list[1].pos);
    adj[static_cast<std::size_t>(list[0].slot)].push_back({list[1].slot, x});
    adj[static_cast<std::size_t>(list[1].slot)].push_back({list[0].slot, x});
  }
  std::vector<int> sigma(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (sigma[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<int> comp;
    std::queue<int> queue;
    sigma[static_cast<std::size_t>(root)] = 0;
    queue.push(root);
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop();
      comp.push_back(s);
      for (auto [t, x] : adj[static_cast<std::size_t>(s)]) {
        int want = sigma[static_cast<std::size_t>(s)] ^ x;
        if (sigma[static_cast<std::size_t>(t)] < 0) {
          sigma[static_cast<std::size_t>(t)] = want;
          queue.push(t);
        } else if (sigma[static_cast<std::size_t>(t)] != want) {
          fail(ErrorKind::InconsistentDiagram, "no matched orientation exists");
        }
      }
    }
    // Canonical choice: the lowest edge of the component leaves its first endpoint.
    int best = -1;
    Occurrence first{0, 0};
    for (int s : comp)
      for (int p = 0; p < 4; ++p) {
        int e = d.slots[static_cast<std::size_t>(s)].e[static_cast<std::size_t>(p)];
        if (best < 0 || e < best || (e == best && (s < first.slot || (s == first.slot && p < first.pos)))) {
          best = e;
          first = {s, p};
        }
      }
    if (in_bit(sigma[static_cast<std::size_t>(first.slot)], first.pos) != 0)
      for (int s : comp) sigma[static_cast<std::size_t>(s)] ^= 1;
  }
  r.sigma = sigma;
  return r;
}

MatchedDiagram mirror(const MatchedDiagram& d) {
  MatchedDiagram r = d;
  for (auto& s : r.slots) s.sign = -s.sign;
  return r;
}

MatchedDiagram disjoint_union(const MatchedDiagram& a, const MatchedDiagram& b) {
  if (!a.closed() || !b.closed()) fail(ErrorKind::BoundaryMismatch, "disjoint union of closed diagrams only");
  MatchedDiagram r = a;
  MatchedDiagram b2 = shift_labels(b, max_label(a));
  r.slots.insert(r.slots.end(), b2.slots.begin(), b2.slots.end());
  if (!r.mark) r.mark = b2.mark;
  if (a.oriented() && b.oriented()) {
    r.sigma.insert(r.sigma.end(), b2.sigma.begin(), b2.sigma.end());
  } else {
    r.sigma.clear();
  }
  return r;
}

MatchedDiagram connected_sum(const MatchedDiagram& a, const MatchedDiagram& b) {
  if (!a.mark || !b.mark) fail(ErrorKind::NoMarkedEdge, "connected sum needs marked edges on both diagrams");
  if (!a.closed() || !b.closed()) fail(ErrorKind::BoundaryMismatch, "connected sum of closed diagrams only");
  MatchedDiagram u = disjoint_union(a, b);
  const int m1 = *a.mark, m2 = *b.mark + max_label(a);
  const int fresh = max_label(u) + 1;
  auto occ = occurrences(u);
  const auto& o1 = occ.at(m1);
  const auto& o2 = occ.at(m2);
  for (int swap = 0; swap < 2; ++swap) {
    MatchedDiagram r = u;
    auto set = [&](Occurrence o, int label) { r.slots[static_cast<std::size_t>(o.slot)].e[static_cast<std::size_t>(o.pos)] = label; };
    set(o1[0], m1);
    set(o2[swap], m1);
    set(o1[1], fresh);
    set(o2[1 - swap], fresh);
    r.mark = m1;
    r.sigma.clear();
    try {
      r.validate();
    } catch (const Error&) {
      continue;
    }
    return orient(canonical_labels(r));
  }
  fail(ErrorKind::InconsistentDiagram, "no planar splice at the marked edges");
}

MatchedDiagram canonical_labels(const MatchedDiagram& d) {
  std::map<int, int> m;
  auto relabel = [&](int e) {
    auto it = m.find(e);
    if (it != m.end()) return it->second;
    int v = static_cast<int>(m.size()) + 1;
    m[e] = v;
    return v;
  };
  MatchedDiagram r = d;
  for (auto& s : r.slots)
    for (int& e : s.e) e = relabel(e);
  for (int& e : r.boundary) e = relabel(e);
  if (r.mark) r.mark = relabel(*r.mark);
  return r;
}

// ---------------------------------------------------------------- mpd text

MatchedDiagram parse_mpd(std::string_view text) {
  MatchedDiagram d;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::vector<std::pair<std::string, int>> tok;  // token, column
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tok.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (tok.empty()) continue;
    auto err = [&](int col, const std::string& what) {
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ", column " + std::to_string(col) + ": " + what);
    };
    auto label = [&](const std::pair<std::string, int>& t) {
      const std::string& s = t.first;
      if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        err(t.second, "expected a nonnegative edge label, got '" + s + "'");
      return std::stoi(s);
    };
    const std::string& kw = tok[0].first;
    if (kw == "T") {
      if (tok.size() != 6) err(tok[0].second, "slot line needs a sign and 4 edge labels");
      Slot s;
      if (tok[1].first == "+") s.sign = 1;
      else if (tok[1].first == "-") s.sign = -1;
      else err(tok[1].second, "expected '+' or '-'");
      for (int k = 0; k < 4; ++k) s.e[static_cast<std::size_t>(k)] = label(tok[static_cast<std::size_t>(k) + 2]);
      d.slots.push_back(s);
    } else if (kw == "mark") {
      if (tok.size() != 2) err(tok[0].second, "mark needs one edge label");
      if (d.mark) err(tok[0].second, "duplicate mark");
      d.mark = label(tok[1]);
    } else if (kw == "boundary") {
      if (tok.size() != 5) err(tok[0].second, "boundary needs 4 edge labels");
      for (int k = 1; k <= 4; ++k) d.boundary.push_back(label(tok[static_cast<std::size_t>(k)]));
    } else {
      err(tok[0].second, "unknown keyword '" + kw + "'");
    }
  }
  if (d.slots.empty()) fail(ErrorKind::ParseError, "diagram has no slots");
  d.validate();
  return d;
}

std::string emit_mpd(const MatchedDiagram& d) {
  std::ostringstream out;
  for (const auto& s : d.slots)
    out << "T " << (s.sign > 0 ? '+' : '-') << ' ' << s.e[0] << ' ' << s.e[1] << ' ' << s.e[2] << ' ' << s.e[3] << '\n';
  if (!d.boundary.empty())
    out << "boundary " << d.boundary[0] << ' ' << d.boundary[1] << ' ' << d.boundary[2] << ' ' << d.boundary[3] << '\n';
  if (d.mark) out << "mark " << *d.mark << '\n';
  return out.str();
}

// ---------------------------------------------------------------- expression language

namespace {

class DiagramParser {
 public:
  explicit DiagramParser(std::string_view s) : s_(s) {}

  MatchedDiagram parse() {
    MatchedDiagram d = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected trailing input");
    return d;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) error("expected an integer");
    if (pos_ - digits > 9) error("integer too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  MatchedDiagram finish(MatchedDiagram d) {
    if (!d.mark) d.mark = d.edges().front();
    return orient(canonical_labels(d));
  }

  MatchedDiagram sum() {
    MatchedDiagram d = postfix();
    while (eat('#')) d = connected_sum(d, postfix());
    return d;
  }

  MatchedDiagram postfix() {
    MatchedDiagram d = atom();
    while (eat('!')) d = mirror(d);
    return d;
  }

  MatchedDiagram atom() {
    if (eat('(')) {
      MatchedDiagram d = sum();
      expect(')');
      return d;
    }
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name == "unknot") return finish(unknot());
    if (name == "rational") {
      expect('(');
      long p = integer();
      expect(',');
      long q = integer();
      expect(')');
      return finish(rational(p, q));
    }
    if (name == "pretzel") {
      expect('(');
      std::vector<long> v{integer()};
      while (eat(',')) v.push_back(integer());
      expect(')');
      return finish(pretzel(v));
    }
    if (name == "montesinos") {
      expect('(');
      std::vector<std::pair<long, long>> v;
      do {
        long p = integer(), q = 1;
        if (eat('/')) q = integer();
        v.push_back({p, q});
      } while (eat(','));
      expect(')');
      return finish(montesinos(v));
    }
    pos_ = start;
    error(name.empty() ? "expected a diagram" : "unknown diagram builder '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MatchedDiagram parse_diagram_expression(std::string_view text) { return DiagramParser(text).parse(); }

}  // namespace krforge
