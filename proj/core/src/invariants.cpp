#include "krforge/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <sstream>

#include "krforge/roots.hpp"

namespace krforge {

namespace {

Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string list(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

std::vector<int> unreduced_js(const PageTable& einf, int n) {
  std::vector<int> j;
  for (const auto& [tq, dim] : einf.cells) {
    if (tq.first != 0) fail(ErrorKind::UnexpectedEinf, "unreduced E_infinity has support at t = " + std::to_string(tq.first));
    for (long i = 0; i < dim; ++i) j.push_back(tq.second);
  }
  if (static_cast<int>(j.size()) != n)
    fail(ErrorKind::UnexpectedEinf, "unreduced E_infinity has dimension " + std::to_string(j.size()) + ", expected " + std::to_string(n));
  return j;
}

Rational s_tilde(const PageTable& einf, int n) {
  if (einf.cells.size() != 1 || einf.cells.begin()->second != 1 || einf.cells.begin()->first.first != 0)
    fail(ErrorKind::UnexpectedEinf, "reduced E_infinity is not one-dimensional at t = 0: " + poincare(einf.cells));
  return ratio(einf.cells.begin()->first.second, 2L * (n - 1));
}

Rational s_n(const std::vector<int>& j) {
  const int n = static_cast<int>(j.size());
  std::optional<Rational> s;
  for (int r = 1; r <= n; ++r) {
    const Rational v = ratio(j[static_cast<std::size_t>(r - 1)] + n + 1 - 2 * r, 2L * (n - 1));
    if (s && *s != v) fail(ErrorKind::Inconsistent, "profile " + list(j) + " is not a shifted unknot");
    s = v;
  }
  return *s;
}

Rational s_quasi(const std::vector<int>& j) {
  const long n = static_cast<long>(j.size());
  long sum = 0;
  for (int x : j) sum += x;
  return ratio(sum, 2 * n * (n - 1));
}

Rational genus_bound(const std::vector<int>& j) {
  const int n = static_cast<int>(j.size());
  long best = 0;
  for (int r = 1; r <= n; ++r) best = std::max(best, std::labs(j[static_cast<std::size_t>(r - 1)] - 2L * r + n + 1));
  return ratio(best, 2L * (n - 1));
}

QPoly q_polynomial(const PageTable& p) {
  QPoly f;
  for (const auto& [tq, dim] : p.cells) f[tq.second] += dim;
  return f;
}

std::string poincare(const QPoly& f) {
  Table t;
  for (const auto& [q, c] : f)
    if (c != 0) t[{0, q}] = c;
  return poincare(t);
}

std::string_view dominance_name(Dominance d) {
  switch (d) {
    case Dominance::Equal: return "equal";
    case Dominance::Greater: return ">=";
    case Dominance::Less: return "<=";
    case Dominance::Incomparable: return "incomparable";
  }
  return "?";
}

Dominance compare_poincare(const QPoly& f1, const QPoly& f2) {
  auto expand = [](const QPoly& f) {
    std::vector<int> e;
    for (const auto& [q, c] : f)
      for (long i = 0; i < c; ++i) e.push_back(q);
    return e;
  };
  const auto a = expand(f1), b = expand(f2);
  if (a.size() != b.size()) return Dominance::Incomparable;
  bool ge = true, le = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ge &= a[i] >= b[i];
    le &= a[i] <= b[i];
  }
  if (ge && le) return Dominance::Equal;
  if (ge) return Dominance::Greater;
  if (le) return Dominance::Less;
  return Dominance::Incomparable;
}

bool is_gornik(const Potential& w) {
  const Poly& p = w.poly();
  const int n = p.degree();
  const Field* k = p.field();
  if (n < 1 || (k->characteristic() != 0 && n % static_cast<long>(k->characteristic()) == 0)) return false;
  const Scalar b = -(p.coeff(n - 1) / k->from_int(n));
  const Poly shifted = p.substitute_linear(k->one(), b);
  for (int i = 1; i < n; ++i)
    if (!shifted.coeff(i).is_zero()) return false;
  return !shifted.coeff(0).is_zero();
}

KnotAnalysis analyze(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const AssembleOptions& opt) {
  return analyze(assemble(d, w, opt));
}

KnotAnalysis analyze(ModuleComplex m) {
  KnotAnalysis a;
  const std::shared_ptr<const Potential> w = m.w;
  const int n = w->n();
  a.module = std::move(m);
  a.unreduced = compute_pages(unreduced_complex(a.module));
  InvariantReport& r = a.report;
  r.potential = w->str();
  r.field = w->field()->name();
  r.j = unreduced_js(a.unreduced.einf, n);
  if (is_gornik(*w)) r.s_n = s_n(r.j);
  for (const Scalar& alpha : roots_in_field(w->poly(), w->field())) {
    a.reduced.push_back(compute_pages(reduced_complex(a.module, alpha)));
    r.roots.push_back({alpha, s_tilde(a.reduced.back().einf, n)});
  }
  r.s_quasi = s_quasi(r.j);
  r.genus_bound = genus_bound(r.j);
  return a;
}

std::vector<std::vector<int>> kr_classify(const MatchedDiagram& d, const std::vector<std::shared_ptr<const Potential>>& potentials, int jobs) {
  std::vector<std::vector<Table>> seqs(potentials.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < potentials.size();) {
      try {
        for (const auto& p : compute_pages(unreduced_complex(assemble(d, potentials[i]))).pages) seqs[i].push_back(p.cells);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < potentials.size(); ++i) {
    std::size_t g = 0;
    while (g < groups.size()) {
      const auto first = static_cast<std::size_t>(groups[g].front());
      if (seqs[first] == seqs[i] && potentials[first]->n() == potentials[i]->n()) break;
      ++g;
    }
    if (g == groups.size()) groups.emplace_back();
    groups[g].push_back(static_cast<int>(i));
  }
  return groups;
}

Check mirror_check(const std::vector<int>& j, const std::vector<int>& jm) {
  Check c{"mirror duality", j.size() == jm.size(), "j(K) = " + list(j) + ", j(mirror) = " + list(jm)};
  for (std::size_t i = 0; c.ok && i < j.size(); ++i) c.ok = jm[i] == -j[j.size() - 1 - i];
  return c;
}

Check red_unred_check(const std::vector<int>& j, std::vector<Rational> st) {
  const int n = static_cast<int>(j.size());
  Check c{"reduced/unreduced bound", static_cast<int>(st.size()) == n, ""};
  std::sort(st.begin(), st.end());
  std::ostringstream os;
  os << "j = " << list(j) << ", s~ =";
  for (const auto& s : st) os << ' ' << s.get_str();
  c.detail = os.str();
  for (int i = 0; c.ok && i < n; ++i) c.ok = abs(j[static_cast<std::size_t>(i)] - 2 * (n - 1) * st[static_cast<std::size_t>(i)]) <= n - 1;
  return c;
}

Check sandwich_check(const std::vector<int>& j1, const std::vector<int>& j2, const std::vector<int>& j12) {
  const int n = static_cast<int>(j1.size());
  const int lo = j1.front() + j2.front() + 1 - n, hi = j1.back() + j2.back() - 1 + n;
  Check c{"connected-sum sandwich", true, "[" + std::to_string(lo) + ", " + std::to_string(hi) + "] contains " + list(j12)};
  for (int x : j12) c.ok &= lo <= x && x <= hi;
  return c;
}

Check quasi_defect_check(const std::vector<int>& j1, const std::vector<int>& j2, const std::vector<int>& j12) {
  const Rational defect = abs(s_quasi(j12) - s_quasi(j1) - s_quasi(j2));
  return {"quasi-homomorphism defect", defect <= Rational(3, 2), "defect " + defect.get_str()};
}

std::vector<Check> consistency_report(const MatchedDiagram& d, std::shared_ptr<const Potential> w) {
  const KnotAnalysis k = analyze(d, w);
  const KnotAnalysis m = analyze(mirror(d), w);
  const KnotAnalysis kk = analyze(connected_sum(d, d), w);
  std::vector<Check> out;
  out.push_back(mirror_check(k.report.j, m.report.j));
  std::vector<Rational> st;
  for (const auto& r : k.report.roots) st.push_back(r.s_tilde);
  if (static_cast<int>(st.size()) == w->n()) out.push_back(red_unred_check(k.report.j, st));
  out.push_back(sandwich_check(k.report.j, k.report.j, kk.report.j));
  out.push_back(quasi_defect_check(k.report.j, k.report.j, kk.report.j));
  for (std::size_t i = 0; i < k.report.roots.size(); ++i) {
    const Rational& s = k.report.roots[i].s_tilde;
    const Rational& sm = m.report.roots[i].s_tilde;
    const Rational& ss = kk.report.roots[i].s_tilde;
    const std::string root = k.report.roots[i].root.str();
    out.push_back({"s~ mirror antisymmetry at " + root, sm == -s, s.get_str() + " vs " + sm.get_str()});
    out.push_back({"s~ additivity at " + root, ss == 2 * s, "K#K " + ss.get_str() + ", 2K " + Rational(2 * s).get_str()});
  }
  return out;
}

}  // namespace krforge
