#include <gmpxx.h>

#include <algorithm>
#include <numeric>

#include "krforge/engine.hpp"

// Cube-of-resolutions homology: every slot is resolved in one of its three states, every state is a
// tensor power of Q[x]/x^n over its circles, and ranks are computed block by block in (t, q).

namespace krforge {

namespace {

struct State {
  std::vector<int> circles;  // sorted representatives
  std::vector<int> at;       // label -> position of its circle in `circles`
  int index(int label) const { return at[static_cast<std::size_t>(label)]; }
};

// Resolution of slot s in local state st: true means the II picture (NW-SW, NE-SE).
bool vertical(int sign, int st) { return sign > 0 ? st < 2 : st > 0; }

int local_shift(int sign, int st, int n) {
  if (sign > 0) return st == 0 ? 1 - n : st == 1 ? -1 - n : -2 * n;
  return st == 0 ? 2 * n : st == 1 ? 1 + n : n - 1;
}

int local_t(int sign, int st) { return sign > 0 ? st : st - 2; }

State resolve(const MatchedDiagram& d, const std::vector<int>& st, int labels) {
  std::vector<int> parent(static_cast<std::size_t>(labels));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (std::size_t i = 0; i < d.slots.size(); ++i) {
    const auto& e = d.slots[i].e;
    if (vertical(d.slots[i].sign, st[i])) {
      unite(e[NW], e[SW]);
      unite(e[NE], e[SE]);
    } else {
      unite(e[NW], e[NE]);
      unite(e[SW], e[SE]);
    }
  }
  State s;
  std::vector<bool> used(static_cast<std::size_t>(labels), false);
  for (const auto& sl : d.slots)
    for (int e : sl.e) used[static_cast<std::size_t>(e)] = true;
  s.at.assign(static_cast<std::size_t>(labels), -1);
  for (int l = 0; l < labels; ++l)
    if (used[static_cast<std::size_t>(l)] && find(l) == l) {
      s.at[static_cast<std::size_t>(l)] = static_cast<int>(s.circles.size());
      s.circles.push_back(l);
    }
  for (int l = 0; l < labels; ++l)
    if (used[static_cast<std::size_t>(l)]) s.at[static_cast<std::size_t>(l)] = s.at[static_cast<std::size_t>(find(l))];
  return s;
}

// Exact rational with int64 parts; every operation reports overflow instead of wrapping.
struct Small {
  std::int64_t num = 0, den = 1;
};

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

Small normalize(std::int64_t num, std::int64_t den) {
  if (den == 1) return {num, 1};
  if (den < 0) {
    num = checked_mul(num, -1);
    den = checked_mul(den, -1);
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Small{num / g, den / g} : Small{num, den};
}

// a - f * b
Small sub_mul(const Small& a, const Small& f, const Small& b) {
  if ((a.den | f.den | b.den) == 1) return {checked_sub(a.num, checked_mul(f.num, b.num)), 1};
  const Small fb = normalize(checked_mul(f.num, b.num), checked_mul(f.den, b.den));
  return normalize(checked_sub(checked_mul(a.num, fb.den), checked_mul(fb.num, a.den)), checked_mul(a.den, fb.den));
}

template <class T>
using Row = std::vector<std::pair<int, T>>;  // sorted by column, no zeros

bool is_zero(const Small& v) { return v.num == 0; }
bool is_zero(const mpq_class& v) { return v == 0; }
Small quotient(const Small& a, const Small& b) { return normalize(checked_mul(a.num, b.den), checked_mul(a.den, b.num)); }
mpq_class quotient(const mpq_class& a, const mpq_class& b) { return a / b; }
Small sub_mul_any(const Small& a, const Small& f, const Small& b) { return sub_mul(a, f, b); }
mpq_class sub_mul_any(const mpq_class& a, const mpq_class& f, const mpq_class& b) { return a - f * b; }

// row -= f * pivot, both sparse and sorted.
template <class T>
void eliminate(Row<T>& row, const T& f, const Row<T>& pivot, Row<T>& out) {
  out.clear();
  std::size_t i = 0, j = 0;
  const T zero{};
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      T v = sub_mul_any(zero, f, pivot[j].second);
      out.emplace_back(pivot[j++].first, std::move(v));
    } else {
      T v = sub_mul_any(row[i].second, f, pivot[j].second);
      if (!is_zero(v)) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  row.swap(out);
}

// Sparse integer matrix in row-compressed form.
struct Sparse {
  std::vector<std::size_t> start{0};
  std::vector<std::pair<int, long>> entries;
  std::size_t rows() const { return start.size() - 1; }
};

// Rank over Q of the rows `ids` of m. Columns must lie in [0, columns).
template <class T>
long rank_of(const Sparse& m, const std::vector<int>& ids, std::vector<int>& pivot_of, std::vector<Row<T>>& pivots) {
  long r = 0;
  pivots.clear();
  Row<T> row, scratch;
  std::vector<int> touched;
  for (int id : ids) {
    row.clear();
    for (std::size_t e = m.start[static_cast<std::size_t>(id)]; e < m.start[static_cast<std::size_t>(id) + 1]; ++e)
      row.emplace_back(m.entries[e].first, T(m.entries[e].second));
    while (!row.empty()) {
      const int p = pivot_of[static_cast<std::size_t>(row.front().first)];
      if (p < 0) break;
      const Row<T>& piv = pivots[static_cast<std::size_t>(p)];
      const T f = quotient(row.front().second, piv.front().second);
      eliminate(row, f, piv, scratch);
    }
    if (!row.empty()) {
      pivot_of[static_cast<std::size_t>(row.front().first)] = static_cast<int>(pivots.size());
      touched.push_back(row.front().first);
      pivots.push_back(row);
      ++r;
    }
  }
  for (int c : touched) pivot_of[static_cast<std::size_t>(c)] = -1;
  return r;
}

// int64 arithmetic with a GMP fallback on overflow.
long rank(const Sparse& m, const std::vector<int>& ids, std::vector<int>& pivot_of) {
  static thread_local std::vector<Row<Small>> small;
  try {
    return rank_of(m, ids, pivot_of, small);
  } catch (const Overflow&) {
    std::fill(pivot_of.begin(), pivot_of.end(), -1);
    std::vector<Row<mpq_class>> big;
    return rank_of(m, ids, pivot_of, big);
  }
}

}  // namespace

Table brute_force_homology(const MatchedDiagram& d, int n, Mode mode, int max_slots) {
  if (static_cast<int>(d.slots.size()) > max_slots) fail(ErrorKind::TooLarge, "cube oracle limited to " + std::to_string(max_slots) + " slots");
  if (!d.closed()) fail(ErrorKind::InconsistentDiagram, "diagram is not closed");
  if (mode == Mode::Reduced && !d.mark) fail(ErrorKind::NoMarkedEdge, "reduced mode needs a marked edge");
  d.validate();
  int labels = 1;
  for (const auto& s : d.slots)
    for (int e : s.e) labels = std::max(labels, e + 1);
  const int k = static_cast<int>(d.slots.size());
  long nstates = 1;
  for (int i = 0; i < k; ++i) nstates *= 3;

  // Generators of state s are indexed by the base-n code of their circle exponents;
  // id[offset[s] + code] is the generator id, or -1 outside the reduced subcomplex.
  std::vector<State> states;
  std::vector<std::vector<int>> digits;
  std::vector<long> offset;
  std::vector<int> id;
  std::vector<std::pair<long, long>> gens;  // (state, code)
  std::map<std::pair<int, int>, std::vector<int>> block;  // (t,q) -> generator ids
  std::vector<long> pw{1};
  for (int i = 0; i < 2 * k + 2; ++i) pw.push_back(pw.back() * n);
  for (long s = 0; s < nstates; ++s) {
    std::vector<int> st(static_cast<std::size_t>(k));
    for (int i = 0, r = static_cast<int>(s); i < k; ++i, r /= 3) st[static_cast<std::size_t>(i)] = r % 3;
    digits.push_back(st);
    states.push_back(resolve(d, st, labels));
    const State& S = states.back();
    int t = 0, q = 0;
    for (int i = 0; i < k; ++i) {
      t += local_t(d.slots[static_cast<std::size_t>(i)].sign, st[static_cast<std::size_t>(i)]);
      q += local_shift(d.slots[static_cast<std::size_t>(i)].sign, st[static_cast<std::size_t>(i)], n);
    }
    const int c = static_cast<int>(S.circles.size());
    const int marked = mode == Mode::Reduced ? S.index(*d.mark) : -1;
    offset.push_back(static_cast<long>(id.size()));
    for (long code = 0; code < pw[static_cast<std::size_t>(c)]; ++code) {
      int qq = q, top = 0;
      for (int j = 0; j < c; ++j) {
        const int x = static_cast<int>(code / pw[static_cast<std::size_t>(j)] % n);
        qq += 2 * x + 1 - n;
        if (j == marked) top = x;
      }
      if (marked >= 0 && top != n - 1) {
        id.push_back(-1);
        continue;
      }
      if (marked >= 0) qq -= n - 1;
      id.push_back(static_cast<int>(gens.size()));
      block[{t, qq}].push_back(static_cast<int>(gens.size()));
      gens.emplace_back(s, code);
    }
  }

  // Differential as sparse rows: image of each generator.
  Sparse image;
  image.entries.reserve(gens.size() * static_cast<std::size_t>(k));
  std::vector<int> e;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto [s, gcode] = gens[g];
    const auto& st = digits[static_cast<std::size_t>(s)];
    const State& S = states[static_cast<std::size_t>(s)];
    e.assign(S.circles.size(), 0);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = static_cast<int>(gcode / pw[j] % n);
    auto& all = image.entries;
    const std::size_t first = all.size();
    auto add = [&](long state, long code, long v) {
      const int to = id[static_cast<std::size_t>(offset[static_cast<std::size_t>(state)] + code)];
      if (to >= 0) all.emplace_back(to, v);  // -1: outside the reduced subcomplex
    };
    long stride = 1;
    int tsum = 0;
    for (int i = 0; i < k; ++i, stride *= 3) {
      const Slot& sl = d.slots[static_cast<std::size_t>(i)];
      const int si = st[static_cast<std::size_t>(i)];
      const int sign = tsum % 2 == 0 ? 1 : -1;
      tsum += local_t(sl.sign, si);
      if (si == 2) continue;
      const long s2 = s + stride;
      const State& T = states[static_cast<std::size_t>(s2)];
      const bool dots = (sl.sign > 0 && si == 0) || (sl.sign < 0 && si == 1);
      if (dots) {
        // x on the NW-SW strand minus x on the NE-SE strand; circles are unchanged.
        for (int which = 0; which < 2; ++which) {
          const int c = S.index(which == 0 ? sl.e[NW] : sl.e[NE]);
          if (e[static_cast<std::size_t>(c)] + 1 >= n) continue;
          add(s2, gcode + pw[static_cast<std::size_t>(c)], which == 0 ? sign : -sign);
        }
        continue;
      }
      // Saddle: map exponents through the change of circles.
      const int a1 = sl.e[NW], a2 = vertical(sl.sign, si) ? sl.e[NE] : sl.e[SW];
      const int c1 = S.index(a1), c2 = S.index(a2);
      long base = 0;
      // circles untouched by the saddle keep their exponents
      for (std::size_t c = 0; c < S.circles.size(); ++c) {
        if (static_cast<int>(c) == c1 || static_cast<int>(c) == c2) continue;
        base += e[c] * pw[static_cast<std::size_t>(T.index(S.circles[c]))];
      }
      if (c1 != c2) {
        const int sum = e[static_cast<std::size_t>(c1)] + e[static_cast<std::size_t>(c2)];
        if (sum >= n) continue;
        add(s2, base + sum * pw[static_cast<std::size_t>(T.index(a1))], sign);
      } else {
        const int t1 = T.index(a1), t2 = T.index(vertical(sl.sign, si) ? sl.e[SW] : sl.e[NE]);
        const int ex = e[static_cast<std::size_t>(c1)];
        for (int i2 = ex; i2 < n; ++i2) {
          const int j2 = n - 1 - i2 + ex;
          add(s2, base + i2 * pw[static_cast<std::size_t>(t1)] + j2 * pw[static_cast<std::size_t>(t2)], sign);
        }
      }
    }
    std::sort(all.begin() + static_cast<std::ptrdiff_t>(first), all.end());
    std::size_t w = first;
    for (std::size_t r = first; r < all.size(); ++r) {
      if (w > first && all[w - 1].first == all[r].first) all[w - 1].second += all[r].second;
      else all[w++] = all[r];
    }
    all.resize(w);
    all.erase(std::remove_if(all.begin() + static_cast<std::ptrdiff_t>(first), all.end(), [](const auto& p) { return p.second == 0; }), all.end());
    image.start.push_back(all.size());
  }

  Table out;
  std::map<std::pair<int, int>, long> rk;  // rank of d restricted to block (t,q)
  std::vector<int> pivot_of(gens.size(), -1);
  for (const auto& [tq, ids] : block) rk[tq] = rank(image, ids, pivot_of);
  for (const auto& [tq, ids] : block) {
    long dim = static_cast<long>(ids.size()) - rk[tq];
    auto prev = rk.find({tq.first - 1, tq.second});
    if (prev != rk.end()) dim -= prev->second;
    if (dim != 0) out[tq] = dim;
  }
  return out;
}

}  // namespace krforge
