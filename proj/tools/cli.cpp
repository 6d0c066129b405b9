#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "krforge/parse.hpp"
#include "krforge/roots.hpp"

namespace krforge::cli {

namespace fs = std::filesystem;

namespace {

std::string rational_str(const Rational& r) { return r.get_str(); }

ordered_json cells_json(const Table& t) {
  ordered_json cells = ordered_json::array();
  for (const auto& [tq, dim] : t) cells.push_back({tq.first, tq.second, dim});
  return cells;
}

ordered_json page_json(const PageTable& p) {
  return {{"page", p.page}, {"cells", cells_json(p.cells)}, {"poincare", poincare(p.cells)}};
}

ordered_json report_json(const SpectralReport& r, bool all_pages) {
  ordered_json j;
  if (all_pages) {
    j["pages"] = ordered_json::array();
    for (const auto& p : r.pages) j["pages"].push_back(page_json(p));
  }
  j["einf"] = page_json(r.einf);
  j["significant"] = r.significant;
  j["drops"] = r.drops;
  j["arrows"] = ordered_json::array();
  for (const auto& a : r.arrows)
    j["arrows"].push_back({{"page", a.page}, {"from", {a.from.first, a.from.second}}, {"to", {a.to.first, a.to.second}}});
  return j;
}

ordered_json invariants_json(const InvariantReport& r) {
  ordered_json j;
  j["potential"] = r.potential;
  j["field"] = r.field;
  j["j"] = r.j;
  j["s_n"] = r.s_n ? ordered_json(rational_str(*r.s_n)) : ordered_json(nullptr);
  j["s_tilde"] = ordered_json::object();
  for (const auto& root : r.roots) j["s_tilde"][root.root.str()] = rational_str(root.s_tilde);
  j["s_quasi"] = rational_str(r.s_quasi);
  j["genus_bound"] = rational_str(r.genus_bound);
  return j;
}

MatchedDiagram load_diagram(const std::string& text) {
  if (text.rfind("mpd:", 0) == 0) return parse_mpd(std::string_view(text).substr(4));
  return parse_diagram_expression(text);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string cache_key(const MatchedDiagram& d, const Potential& w) {
  return "krforge-module-v1\n" + w.field()->name() + "\n" + w.str() + "\n" + emit_mpd(d);
}

ordered_json module_json(const ModuleComplex& m, const std::string& key) {
  ordered_json j;
  j["key"] = key;
  j["gens"] = ordered_json::array();
  for (const auto& g : m.gens) j["gens"].push_back({g.first, g.second});
  j["out"] = ordered_json::array();
  for (const auto& row : m.out) {
    ordered_json r = ordered_json::array();
    for (const auto& [b, e] : row) {
      ordered_json coeffs = ordered_json::array();
      for (const Scalar& c : e) coeffs.push_back(c.str());
      r.push_back({b, coeffs});
    }
    j["out"].push_back(r);
  }
  return j;
}

std::optional<ModuleComplex> module_from_json(const ordered_json& j, const std::string& key, std::shared_ptr<const Potential> w) {
  if (j.value("key", std::string{}) != key) return std::nullopt;
  ModuleComplex m;
  m.w = w;
  for (const auto& g : j.at("gens")) m.gens.emplace_back(g.at(0).get<int>(), g.at(1).get<int>());
  for (const auto& r : j.at("out")) {
    auto& row = m.out.emplace_back();
    for (const auto& entry : r) {
      RingElement e;
      for (const auto& c : entry.at(1)) e.push_back(parse_element(c.get<std::string>(), w->field()));
      if (e.size() != static_cast<std::size_t>(w->n())) return std::nullopt;
      row.emplace(entry.at(0).get<int>(), std::move(e));
    }
  }
  if (m.out.size() != m.gens.size()) return std::nullopt;
  return m;
}

}  // namespace

std::string cache_dir() {
  const char* env = std::getenv("KRFORGE_CACHE_DIR");
  return env ? std::string(env) : std::string{};
}

ModuleComplex cached_assemble(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const std::string& dir) {
  if (dir.empty()) return assemble(d, w);
  const std::string key = cache_key(d, *w);
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".json";
  const fs::path path = fs::path(dir) / name.str();
  // A missing, unreadable, corrupt or colliding entry is recomputed and overwritten.
  try {
    std::ifstream in(path);
    if (in) {
      if (auto m = module_from_json(ordered_json::parse(in), key, w)) return std::move(*m);
    }
  } catch (const std::exception&) {
  }
  ModuleComplex m = assemble(d, w);
  try {
    fs::create_directories(dir);
    std::ostringstream tmp_name;
    tmp_name << name.str() << ".tmp." << ::getpid() << "." << std::this_thread::get_id();
    const fs::path tmp = fs::path(dir) / tmp_name.str();
    {
      std::ofstream out(tmp);
      out << module_json(m, key).dump();
      if (!out) throw std::runtime_error("write failed");
    }
    fs::rename(tmp, path);
  } catch (const std::exception& e) {
    warn(std::string("module cache disabled: ") + e.what());
  }
  return m;
}

ordered_json run_compute(const JobSpec& spec, const std::string& cache) {
  const Field* k = Field::parse(spec.field);
  auto w = std::make_shared<const Potential>(Potential::parse(spec.potential, k));
  if (w->n() < 2) fail(ErrorKind::ParseError, "potential must have degree at least 2: " + spec.potential);
  if (spec.mode == JobMode::Reduced && !spec.root) fail(ErrorKind::ParseError, "reduced mode needs a root");
  if (spec.mode != JobMode::Reduced && spec.root) fail(ErrorKind::ParseError, "a root is only meaningful in reduced mode");
  const MatchedDiagram d = load_diagram(spec.diagram);
  if (spec.oracle && static_cast<int>(d.slots.size()) > spec.max_slots)
    fail(ErrorKind::TooLarge, std::to_string(d.slots.size()) + " slots exceed --max-slots " + std::to_string(spec.max_slots));

  ordered_json j;
  j["diagram"] = spec.label.empty() ? spec.diagram : spec.label;
  j["slots"] = d.slots.size();
  j["writhe"] = d.writhe();
  j["potential"] = w->str();
  j["field"] = k->name();
  j["n"] = w->n();
  j["separable"] = w->separable();

  ModuleComplex m = cached_assemble(d, w, cache);
  std::optional<SpectralReport> unreduced;
  std::vector<std::pair<Scalar, SpectralReport>> reduced;
  ordered_json invariants = nullptr;
  if (spec.mode == JobMode::Both && w->separable()) {
    KnotAnalysis a = analyze(std::move(m));
    unreduced = std::move(a.unreduced);
    for (std::size_t i = 0; i < a.reduced.size(); ++i) reduced.emplace_back(a.report.roots[i].root, std::move(a.reduced[i]));
    invariants = invariants_json(a.report);
  } else {
    if (spec.mode != JobMode::Reduced) unreduced = compute_pages(unreduced_complex(m));
    std::vector<Scalar> roots;
    if (spec.mode == JobMode::Reduced) roots.push_back(parse_element(*spec.root, k));
    else roots = roots_in_field(w->poly(), k);
    for (const Scalar& alpha : roots) reduced.emplace_back(alpha, compute_pages(reduced_complex(m, alpha)));
  }

  if (unreduced) j["unreduced"] = report_json(*unreduced, spec.all_pages);
  j["reduced"] = ordered_json::array();
  for (const auto& [alpha, r] : reduced) {
    ordered_json rj{{"root", alpha.str()}};
    rj.update(report_json(r, spec.all_pages));
    j["reduced"].push_back(rj);
  }
  j["invariants"] = invariants;

  if (spec.oracle) {
    // The cube oracle computes the graded theory x^n over Q, whose homology is E_1 for any
    // potential of degree n.
    ordered_json o;
    bool agrees = true;
    if (unreduced) {
      const Table t = brute_force_homology(d, w->n(), Mode::Unreduced, spec.max_slots);
      o["unreduced"] = poincare(t);
      agrees = agrees && t == unreduced->pages.front().cells;
    }
    if (!reduced.empty()) {
      const Table t = brute_force_homology(d, w->n(), Mode::Reduced, spec.max_slots);
      o["reduced"] = poincare(t);
      for (const auto& [alpha, r] : reduced) agrees = agrees && t == r.pages.front().cells;
    }
    o["agrees"] = agrees;
    j["oracle"] = o;
  }
  return j;
}

ordered_json run_classify(const ClassifySpec& spec, int jobs) {
  const Field* k = Field::parse(spec.field);
  const MatchedDiagram d = load_diagram(spec.diagram);
  std::vector<std::shared_ptr<const Potential>> ws;
  for (const auto& p : spec.potentials) ws.push_back(std::make_shared<const Potential>(Potential::parse(p, k)));
  if (spec.degree > 0) {
    if (spec.degree < 2 || spec.range < 0) fail(ErrorKind::ParseError, "batch needs degree >= 2 and range >= 0");
    const int free = spec.degree - 1;  // a_0 .. a_{n-2}
    std::vector<int> a(static_cast<std::size_t>(free), -spec.range);
    while (true) {
      std::vector<Scalar> c;
      for (int v : a) c.push_back(k->from_int(v));
      c.push_back(k->zero());
      c.push_back(k->one());
      auto w = std::make_shared<const Potential>(Poly(k, c));
      if (w->separable()) ws.push_back(w);
      std::size_t i = 0;
      while (i < a.size() && a[i] == spec.range) a[i++] = -spec.range;
      if (i == a.size()) break;
      ++a[i];
    }
  }
  if (ws.empty()) fail(ErrorKind::ParseError, "no potentials to classify");
  const auto groups = kr_classify(d, ws, jobs);

  ordered_json j;
  j["diagram"] = spec.diagram;
  j["field"] = k->name();
  j["batch"] = ws.size();
  j["classes"] = groups.size();
  j["groups"] = ordered_json::array();
  for (const auto& g : groups) {
    const auto& rep = ws[static_cast<std::size_t>(g.front())];
    const SpectralReport r = compute_pages(unreduced_complex(assemble(d, rep)));
    ordered_json members = ordered_json::array();
    for (int i : g) members.push_back(ws[static_cast<std::size_t>(i)]->str());
    j["groups"].push_back({{"representative", rep->str()},
                           {"size", g.size()},
                           {"significant", r.significant},
                           {"einf", poincare(r.einf.cells)},
                           {"members", members}});
  }
  return j;
}

namespace {

struct Calibration {
  std::string name;
  bool ok = true;
  std::vector<std::string> notes;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

}  // namespace

ordered_json run_selftest(bool corrupt_shift) {
  const Field* Q = Field::rationals();
  auto pot = [Q](const char* s) { return std::make_shared<const Potential>(Potential::parse(s, Q)); };
  auto observe = [corrupt_shift](Table t) {
    if (!corrupt_shift) return t;
    Table shifted;
    for (const auto& [tq, dim] : t) shifted[{tq.first, tq.second + 2}] = dim;
    return shifted;
  };
  std::vector<Calibration> out;

  {
    Calibration c{"unknot normalization"};
    const MatchedDiagram u = parse_diagram_expression("unknot");
    for (const char* p : {"x^2", "x^2-1", "x^3", "x^3-x", "x^5-x"}) {
      auto w = pot(p);
      const ModuleComplex m = assemble(u, w);
      Table expect_un;
      for (int i = 0; i < w->n(); ++i) expect_un[{0, 2 * i + 1 - w->n()}] = 1;
      c.expect(observe(compute_pages(unreduced_complex(m)).einf.cells) == expect_un, std::string("unreduced ") + p);
      for (const Scalar& alpha : roots_in_field(w->poly(), Q))
        c.expect(observe(compute_pages(reduced_complex(m, alpha)).einf.cells) == Table{{{0, 0}, 1}},
                 std::string("reduced ") + p + " at " + alpha.str());
    }
    out.push_back(c);
  }
  {
    Calibration c{"trefoil graded homology"};
    const MatchedDiagram d = parse_diagram_expression("rational(3,1)");
    const ModuleComplex m = assemble(d, pot("x^2"));
    c.expect(observe(compute_pages(reduced_complex(m, Q->zero())).einf.cells) == Table{{{0, -2}, 1}, {{2, -6}, 1}, {{3, -8}, 1}},
             "reduced x^2");
    const SpectralReport r = compute_pages(unreduced_complex(assemble(d, pot("x^3-x"))));
    c.expect(observe(r.pages.front().cells) ==
                 Table{{{0, -6}, 1}, {{0, -4}, 1}, {{0, -2}, 1}, {{2, -8}, 1}, {{2, -6}, 1}, {{3, -14}, 1}, {{3, -12}, 1}},
             "E_1 for x^3-x");
    c.expect(!r.significant.empty() && r.significant.front() == 3, "x^3-x first significant page");
    out.push_back(c);
  }
  {
    Calibration c{"slice-torus normalization"};
    for (const char* p : {"x^2-1", "x^3-1", "x^4-1"}) {
      auto w = pot(p);
      const PageTable einf{1, observe(compute_pages(unreduced_complex(assemble(parse_diagram_expression("rational(3,1)"), w))).einf.cells)};
      try {
        c.expect(s_n(unreduced_js(einf, w->n())) == -1, std::string("trefoil s_n for ") + p);
      } catch (const Error& e) {
        c.expect(false, std::string(p) + ": " + e.what());
      }
    }
    out.push_back(c);
  }
  {
    Calibration c{"delooping"};
    for (const char* p : {"x^2", "x^3-x", "x^4+x+1", "x^5-x"}) {
      const Potential w = Potential::parse(p, Q);
      const Delooping dl = deloop(w, 0);
      for (int i = 0; i < w.n(); ++i) {
        c.expect(dl.shifts[static_cast<std::size_t>(i)] == 2 * i + 1 - w.n(), std::string("shift in ") + p);
        for (int k = 0; k < w.n(); ++k) {
          const Scalar e = w.trace(w.mul(dl.cup[static_cast<std::size_t>(i)], dl.cap[static_cast<std::size_t>(k)]));
          c.expect(e == (i == k ? Q->one() : Q->zero()), std::string("cap o cup in ") + p);
        }
      }
    }
    out.push_back(c);
  }
  {
    Calibration c{"cube oracle"};
    for (const char* k : {"unknot", "rational(3,1)", "rational(3,1)!", "rational(5,2)", "rational(7,2)!"}) {
      const MatchedDiagram d = parse_diagram_expression(k);
      for (const char* p : {"x^2", "x^3", "x^3-x"}) {
        auto w = pot(p);
        const ModuleComplex m = assemble(d, w);
        c.expect(observe(compute_pages(unreduced_complex(m)).pages.front().cells) ==
                     brute_force_homology(d, w->n(), Mode::Unreduced),
                 std::string(k) + " unreduced " + p);
        c.expect(observe(compute_pages(reduced_complex(m, Q->zero())).pages.front().cells) ==
                     brute_force_homology(d, w->n(), Mode::Reduced),
                 std::string(k) + " reduced " + p);
      }
    }
    out.push_back(c);
  }

  ordered_json j;
  bool all = true;
  j["calibrations"] = ordered_json::array();
  for (const auto& c : out) {
    all = all && c.ok;
    std::string detail;
    for (const auto& n : c.notes) detail += (detail.empty() ? "" : "; ") + n;
    j["calibrations"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.ok ? "ok" : "mismatch: " + detail}});
  }
  j["ok"] = all;
  return j;
}

namespace {

// Rows are quantum degrees (descending), columns homological degrees.
std::string grid(const ordered_json& cells) {
  if (cells.empty()) return "    (zero)\n";
  std::map<std::pair<int, int>, long> t;
  std::set<int> qs;
  int tmin = 0, tmax = 0;
  bool first = true;
  for (const auto& c : cells) {
    const int tt = c.at(0).get<int>(), q = c.at(1).get<int>();
    t[{tt, q}] = c.at(2).get<long>();
    qs.insert(q);
    tmin = first ? tt : std::min(tmin, tt);
    tmax = first ? tt : std::max(tmax, tt);
    first = false;
  }
  bool same_parity = true;
  for (int q : qs) same_parity = same_parity && ((q - *qs.begin()) % 2 == 0);
  const int step = same_parity ? 2 : 1;
  std::ostringstream os;
  os << "    " << std::setw(6) << "q\\t";
  for (int tt = tmin; tt <= tmax; ++tt) os << std::setw(4) << tt;
  os << "\n";
  for (int q = *qs.rbegin(); q >= *qs.begin(); q -= step) {
    os << "    " << std::setw(6) << q;
    for (int tt = tmin; tt <= tmax; ++tt) {
      auto it = t.find({tt, q});
      os << std::setw(4) << (it == t.end() ? std::string(".") : std::to_string(it->second));
    }
    os << "\n";
  }
  return os.str();
}

void render_report(std::ostringstream& os, const ordered_json& r) {
  if (r.contains("pages"))
    for (const auto& p : r["pages"]) os << "  E_" << p["page"].get<int>() << ": " << p["poincare"].get<std::string>() << "\n" << grid(p["cells"]);
  os << "  E_inf: " << r["einf"]["poincare"].get<std::string>() << "\n";
  if (!r.contains("pages")) os << grid(r["einf"]["cells"]);
  os << "  significant pages:";
  if (r["significant"].empty()) os << " none";
  for (const auto& p : r["significant"]) os << " E_" << p.get<int>();
  os << "\n";
  for (const auto& a : r["arrows"])
    os << "  d_" << a["page"].get<int>() << ": (" << a["from"][0] << "," << a["from"][1] << ") -> (" << a["to"][0] << "," << a["to"][1] << ")\n";
}

}  // namespace

std::string render_compute(const ordered_json& j) {
  std::ostringstream os;
  os << j["diagram"].get<std::string>() << "  [" << j["slots"] << " slots, writhe " << j["writhe"] << "]\n";
  os << "potential " << j["potential"].get<std::string>() << " over " << j["field"].get<std::string>()
     << (j["separable"].get<bool>() ? "" : " (not separable)") << "\n";
  if (j.contains("unreduced")) {
    os << "unreduced\n";
    render_report(os, j["unreduced"]);
  }
  for (const auto& r : j["reduced"]) {
    os << "reduced at x = " << r["root"].get<std::string>() << "\n";
    render_report(os, r);
  }
  if (!j["invariants"].is_null()) {
    const auto& inv = j["invariants"];
    os << "invariants\n  j = (";
    for (std::size_t i = 0; i < inv["j"].size(); ++i) os << (i ? ", " : "") << inv["j"][i];
    os << ")\n";
    if (!inv["s_n"].is_null()) os << "  s_n = " << inv["s_n"].get<std::string>() << "\n";
    for (const auto& [root, s] : inv["s_tilde"].items()) os << "  s~(" << root << ") = " << s.get<std::string>() << "\n";
    os << "  s_quasi = " << inv["s_quasi"].get<std::string>() << "\n";
    os << "  genus bound = " << inv["genus_bound"].get<std::string>() << "\n";
  }
  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    os << "cube oracle: " << (o["agrees"].get<bool>() ? "agrees" : "DISAGREES") << " with E_1\n";
    if (o.contains("unreduced")) os << "  unreduced " << o["unreduced"].get<std::string>() << "\n";
    if (o.contains("reduced")) os << "  reduced " << o["reduced"].get<std::string>() << "\n";
  }
  return os.str();
}

std::string render_classify(const ordered_json& j) {
  std::ostringstream os;
  os << j["diagram"].get<std::string>() << " over " << j["field"].get<std::string>() << ": " << j["batch"] << " potentials, "
     << j["classes"] << " classes\n";
  for (const auto& g : j["groups"]) {
    os << "  " << g["representative"].get<std::string>() << "  x" << g["size"] << "  significant:";
    if (g["significant"].empty()) os << " none";
    for (const auto& p : g["significant"]) os << " E_" << p.get<int>();
    os << "  E_inf: " << g["einf"].get<std::string>() << "\n";
  }
  return os.str();
}

std::string render_selftest(const ordered_json& j) {
  std::ostringstream os;
  for (const auto& c : j["calibrations"])
    os << (c["ok"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << ": " << c["detail"].get<std::string>() << "\n";
  os << (j["ok"].get<bool>() ? "selftest passed\n" : "selftest FAILED\n");
  return os.str();
}

ordered_json error_json(const Error& e) {
  return {{"error", {{"kind", std::string(error_name(e.kind()))}, {"exit_code", exit_code(e.kind())}, {"message", e.what()}}}};
}

std::vector<std::string> run_parallel(std::size_t count, int jobs, const std::function<std::string(std::size_t)>& f) {
  std::vector<std::string> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) results[i] = f(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs) && static_cast<std::size_t>(t) < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace krforge::cli
