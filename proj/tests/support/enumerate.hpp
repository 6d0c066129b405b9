#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "krforge/diagram.hpp"

namespace krforge::testing {

// Every closed matched diagram with 1..max_slots slots, up to slot permutation, 180-degree slot
// rotation and edge relabelling, with every sign vector (again up to the diagram's symmetries).
// Diagrams are planar, admit a matched orientation, and carry mark = 1.
inline std::vector<MatchedDiagram> all_diagrams(int max_slots) {
  std::vector<MatchedDiagram> out;
  for (int k = 1; k <= max_slots; ++k) {
    const int m = 4 * k;
    // Endpoint e = 4 * slot + position; a transform maps endpoints to endpoints.
    std::vector<std::vector<int>> transforms;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (int rot = 0; rot < (1 << k); ++rot) {
        std::vector<int> t(static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e) {
          const int s = e / 4, p = (rot >> s & 1) ? (e + 2) % 4 : e % 4;
          t[static_cast<std::size_t>(e)] = perm[static_cast<std::size_t>(s)] * 4 + p;
        }
        transforms.push_back(std::move(t));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<int> pr(static_cast<std::size_t>(m), -1);
    auto at = [&](int e) -> int& { return pr[static_cast<std::size_t>(e)]; };

    // Euler characteristic of the ribbon graph: faces - slots = 2 * components.
    auto planar = [&] {
      std::vector<char> seen(static_cast<std::size_t>(m), 0);
      int faces = 0;
      for (int e = 0; e < m; ++e) {
        if (seen[static_cast<std::size_t>(e)]) continue;
        ++faces;
        for (int x = e; !seen[static_cast<std::size_t>(x)];) {
          seen[static_cast<std::size_t>(x)] = 1;
          const int y = at(x);
          x = (y & ~3) | ((y + 1) & 3);
        }
      }
      std::vector<int> parent(static_cast<std::size_t>(k));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
        return a;
      };
      for (int e = 0; e < m; ++e) parent[static_cast<std::size_t>(find(e / 4))] = find(at(e) / 4);
      int comps = 0;
      for (int s = 0; s < k; ++s) comps += find(s) == s;
      return faces - k == 2 * comps;
    };

    // -1 if t(pr) < pr lexicographically, 0 if equal, 1 if greater.
    auto compare = [&](const std::vector<int>& t) {
      std::vector<int> r(static_cast<std::size_t>(m));
      for (int e = 0; e < m; ++e) r[static_cast<std::size_t>(t[static_cast<std::size_t>(e)])] = t[static_cast<std::size_t>(at(e))];
      for (int e = 0; e < m; ++e)
        if (r[static_cast<std::size_t>(e)] != at(e)) return r[static_cast<std::size_t>(e)] < at(e) ? -1 : 1;
      return 0;
    };

    auto emit = [&] {
      if (!planar()) return;
      std::vector<const std::vector<int>*> aut;
      for (const auto& t : transforms) {
        const int c = compare(t);
        if (c < 0) return;
        if (c == 0) aut.push_back(&t);
      }
      MatchedDiagram d;
      std::vector<int> label(static_cast<std::size_t>(m), 0);
      for (int e = 0, next = 1; e < m; ++e)
        if (!label[static_cast<std::size_t>(e)]) label[static_cast<std::size_t>(e)] = label[static_cast<std::size_t>(at(e))] = next++;
      for (int s = 0; s < k; ++s) {
        Slot sl;
        for (int p = 0; p < 4; ++p) sl.e[static_cast<std::size_t>(p)] = label[static_cast<std::size_t>(4 * s + p)];
        d.slots.push_back(sl);
      }
      d.mark = 1;
      try {
        d.validate();
        orient(d);
      } catch (const Error&) {
        return;
      }
      for (int mask = 0; mask < (1 << k); ++mask) {
        bool minimal = true;
        for (const auto* t : aut) {
          int image = 0;
          for (int s = 0; s < k; ++s)
            if (mask >> s & 1) image |= 1 << ((*t)[static_cast<std::size_t>(4 * s)] / 4);
          if (image < mask) {
            minimal = false;
            break;
          }
        }
        if (!minimal) continue;
        MatchedDiagram x = d;
        for (int s = 0; s < k; ++s) x.slots[static_cast<std::size_t>(s)].sign = (mask >> s & 1) ? -1 : 1;
        out.push_back(orient(x));
      }
    };

    auto pair_up = [&](auto&& self) -> void {
      int i = 0;
      while (i < m && at(i) >= 0) ++i;
      if (i == m) {
        emit();
        return;
      }
      for (int j = i + 1; j < m; ++j)
        if (at(j) < 0) {
          at(i) = j;
          at(j) = i;
          self(self);
          at(i) = at(j) = -1;
        }
    };
    pair_up(pair_up);
  }
  return out;
}

// Number of closed components: the strands of a slot join NW-NE and SW-SE.
inline int link_components(const MatchedDiagram& d) {
  std::map<int, int> parent;
  auto find = [&](int a) {
    while (parent.count(a) && parent[a] != a) a = parent[a];
    return a;
  };
  for (const auto& s : d.slots)
    for (const auto& [x, y] : {std::pair{s.e[NW], s.e[NE]}, std::pair{s.e[SW], s.e[SE]}}) {
      parent.try_emplace(x, x);
      parent.try_emplace(y, y);
      parent[find(x)] = find(y);
    }
  int c = 0;
  for (const auto& [k, v] : parent) c += find(k) == k;
  return c;
}

}  // namespace krforge::testing
