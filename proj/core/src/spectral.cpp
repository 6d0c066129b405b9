#include "krforge/spectral.hpp"

#include <set>
#include <sstream>

namespace krforge {

namespace {

Table dims(const ScalarComplex& c, const std::vector<bool>& alive) {
  Table t;
  for (std::size_t a = 0; a < c.gens.size(); ++a)
    if (alive[a]) ++t[c.gens[a]];
  return t;
}

}  // namespace

SpectralReport compute_pages(ScalarComplex c) {
  const std::size_t n = c.gens.size();
  std::vector<std::set<int>> in(n);
  int max_drop = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& [b, v] : c.out[a]) {
      const auto& ga = c.gens[a];
      const auto& gb = c.gens[static_cast<std::size_t>(b)];
      if (gb.first != ga.first + 1) fail(ErrorKind::Inconsistent, "differential does not raise t by one");
      const int drop = ga.second - gb.second;
      if (drop < 0) fail(ErrorKind::Inconsistent, "differential raises the quantum filtration");
      if (drop % 2 != 0) fail(ErrorKind::OddDrop, "odd quantum drop " + std::to_string(drop));
      max_drop = std::max(max_drop, drop);
      in[static_cast<std::size_t>(b)].insert(static_cast<int>(a));
    }
  std::vector<bool> alive(n, true);

  SpectralReport r;
  std::set<int> drops;
  auto drop_of = [&](int a, int b) { return c.gens[static_cast<std::size_t>(a)].second - c.gens[static_cast<std::size_t>(b)].second; };

  for (int stage = 0;; ++stage) {
    const int want = 2 * stage;
    while (true) {
      // Markowitz choice among entries of the current drop.
      int pa = -1, pb = -1;
      std::size_t cost = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        for (const auto& [b, v] : c.out[a]) {
          if (drop_of(static_cast<int>(a), b) != want) continue;
          const std::size_t k = (c.out[a].size() - 1) * (in[static_cast<std::size_t>(b)].size() - 1);
          if (pa < 0 || k < cost) {
            pa = static_cast<int>(a);
            pb = b;
            cost = k;
          }
        }
      }
      if (pa < 0) break;
      drops.insert(want);
      if (stage > 0) r.arrows.push_back({stage, c.gens[static_cast<std::size_t>(pa)], c.gens[static_cast<std::size_t>(pb)]});
      const Scalar inv = c.out[static_cast<std::size_t>(pa)].at(pb).inverse();
      std::vector<std::pair<int, Scalar>> srcs, tgts;
      for (int x : in[static_cast<std::size_t>(pb)])
        if (x != pa) srcs.emplace_back(x, c.out[static_cast<std::size_t>(x)].at(pb) * inv);
      for (const auto& [y, v] : c.out[static_cast<std::size_t>(pa)])
        if (y != pb) tgts.emplace_back(y, v);
      for (const auto& [x, f] : srcs)
        for (const auto& [y, g] : tgts) {
          auto& row = c.out[static_cast<std::size_t>(x)];
          auto it = row.find(y);
          if (it == row.end()) {
            row.emplace(y, -(f * g));
            in[static_cast<std::size_t>(y)].insert(x);
          } else {
            it->second -= f * g;
            if (it->second.is_zero()) {
              row.erase(it);
              in[static_cast<std::size_t>(y)].erase(x);
            }
          }
        }
      for (int z : {pa, pb}) {
        const auto uz = static_cast<std::size_t>(z);
        for (const auto& [y, v] : c.out[uz]) in[static_cast<std::size_t>(y)].erase(z);
        for (int x : in[uz]) c.out[static_cast<std::size_t>(x)].erase(z);
        c.out[uz].clear();
        in[uz].clear();
        alive[uz] = false;
      }
    }
    r.pages.push_back({stage + 1, dims(c, alive)});
    bool empty = true;
    for (std::size_t a = 0; a < n && empty; ++a) empty = !alive[a] || c.out[a].empty();
    if (empty) break;
    if (want > max_drop + 2 * static_cast<int>(n)) fail(ErrorKind::Inconsistent, "spectral sequence failed to stabilize");
  }
  r.einf = r.pages.back();
  r.drops.assign(drops.begin(), drops.end());
  r.significant = significant_pages(r);
  return r;
}

std::vector<int> significant_pages(const SpectralReport& r) {
  std::vector<int> s;
  for (std::size_t i = 1; i < r.pages.size(); ++i)
    if (!(r.pages[i] == r.pages[i - 1])) s.push_back(r.pages[i].page);
  return s;
}

std::string poincare(const Table& t) {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [tq, dim] : t) {
    if (!first) os << " + ";
    first = false;
    const auto [tt, q] = tq;
    std::string mono;
    if (tt != 0) mono += tt == 1 ? std::string("t") : "t^" + std::to_string(tt);
    if (q != 0) mono += q == 1 ? std::string("q") : "q^" + std::to_string(q);
    if (mono.empty()) os << dim;
    else if (dim == 1) os << mono;
    else os << dim << mono;
  }
  return os.str();
}

std::string to_json(const PageTable& p) {
  std::ostringstream os;
  os << "{\"page\": " << p.page << ", \"cells\": [";
  bool first = true;
  for (const auto& [tq, dim] : p.cells) {
    os << (first ? "" : ", ") << "[" << tq.first << ", " << tq.second << ", " << dim << "]";
    first = false;
  }
  os << "]}";
  return os.str();
}

}  // namespace krforge
