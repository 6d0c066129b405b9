#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krforge/spectral.hpp"

namespace krforge {

using Rational = mpq_class;

// Sorted quantum degrees j_1 <= ... <= j_n of an unreduced E_infinity page.
// Throws UnexpectedEinf unless the page has total dimension n, all at t = 0.
std::vector<int> unreduced_js(const PageTable& einf, int n);

// Quantum degree of a one-dimensional reduced E_infinity at t = 0, divided by 2(n-1).
Rational s_tilde(const PageTable& einf, int n);

// (j_r + n + 1 - 2r) / 2(n-1), which must not depend on r (Inconsistent otherwise).
Rational s_n(const std::vector<int>& j);
Rational s_quasi(const std::vector<int>& j);
// max_r |j_r - 2r + n + 1| / 2(n-1)
Rational genus_bound(const std::vector<int>& j);

// Laurent polynomial in q with nonnegative coefficients.
using QPoly = std::map<int, long>;
QPoly q_polynomial(const PageTable& p);
std::string poincare(const QPoly& f);

enum class Dominance { Equal, Greater, Less, Incomparable };
std::string_view dominance_name(Dominance d);
// F1 >= F2 iff F1 - F2 is a sum of q^u - q^v with u >= v. Different total coefficient sums are incomparable.
Dominance compare_poincare(const QPoly& f1, const QPoly& f2);

// (x - b)^n - c with c != 0.
bool is_gornik(const Potential& w);

struct RootInvariant {
  Scalar root;
  Rational s_tilde;
};

struct InvariantReport {
  std::string potential;
  std::string field;
  std::vector<int> j;
  std::optional<Rational> s_n;  // Gornik potentials only
  std::vector<RootInvariant> roots;  // every root of the potential in its field
  Rational s_quasi;
  Rational genus_bound;
};

struct KnotAnalysis {
  ModuleComplex module;
  SpectralReport unreduced;
  std::vector<SpectralReport> reduced;  // parallel to report.roots
  InvariantReport report;
};

// Assembles d once and extracts every invariant of a separable potential.
KnotAnalysis analyze(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const AssembleOptions& opt = {});
KnotAnalysis analyze(ModuleComplex m);

// Indices of `potentials` grouped by equal unreduced page sequences over d, each group ascending,
// groups ordered by their first index. `jobs` workers compute the page sequences; the grouping does
// not depend on it.
std::vector<std::vector<int>> kr_classify(const MatchedDiagram& d, const std::vector<std::shared_ptr<const Potential>>& potentials, int jobs = 1);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

// j_i(mirror K) = -j_{n+1-i}(K)
Check mirror_check(const std::vector<int>& j, const std::vector<int>& j_mirror);
// |j_i - 2(n-1) s~_i| <= n - 1 with the s~ sorted ascending; needs all n roots.
Check red_unred_check(const std::vector<int>& j, std::vector<Rational> s_tildes);
// j_1(K1) + j_1(K2) + 1 - n <= j_i(K1 # K2) <= j_n(K1) + j_n(K2) - 1 + n
Check sandwich_check(const std::vector<int>& j1, const std::vector<int>& j2, const std::vector<int>& j12);
// |s(K1 # K2) - s(K1) - s(K2)| <= 3/2
Check quasi_defect_check(const std::vector<int>& j1, const std::vector<int>& j2, const std::vector<int>& j12);

// Computes K, its mirror and K # K, and checks the relations above plus mirror antisymmetry and
// additivity of every s~.
std::vector<Check> consistency_report(const MatchedDiagram& d, std::shared_ptr<const Potential> w);

}  // namespace krforge
