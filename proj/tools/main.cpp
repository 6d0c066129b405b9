#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace krforge;
using namespace krforge::cli;

namespace {

std::string exit_code_help() {
  std::ostringstream os;
  os << "Exit codes:\n  0   success\n  1   usage error\n";
  for (int k = 0; k <= static_cast<int>(ErrorKind::Inconsistent); ++k) {
    const auto kind = static_cast<ErrorKind>(k);
    os << "  " << exit_code(kind) << "  " << error_name(kind) << "\n";
  }
  os << "A batch exits with the code of its first failing job; the other jobs still run.\n"
        "Set KRFORGE_CACHE_DIR to memoize assembled module complexes on disk.\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void report_error(const Error& e, const std::string& context) {
  std::cerr << "error: " << error_name(e.kind()) << ": " << (context.empty() ? "" : context + ": ") << e.what() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"krforge: deformed sl(n) link homology and its spectral sequences"};
  app.require_subcommand(1);
  app.footer(exit_code_help());

  // compute
  auto* compute = app.add_subcommand("compute", "Spectral sequence pages and invariants for diagrams x potentials");
  std::vector<std::string> diagrams, mpds, potentials{"x^2"};
  std::string field = "Q", root, mode = "both", pages = "einf", format = "table";
  int jobs = 1, max_slots = 6;
  bool oracle = false;
  compute->add_option("-d,--diagram", diagrams, "Diagram expression, e.g. 'pretzel(2,-3,5)', 'rational(3,1)!#unknot'");
  compute->add_option("--mpd", mpds, "Marked planar diagram file")->check(CLI::ExistingFile);
  compute->add_option("-p,--potential", potentials, "Monic potential in x, e.g. 'x^3-x'")->capture_default_str();
  compute->add_option("-k,--field", field, "Q, F<p> or an extension such as 'Q[i]/(i^2+1)'")->capture_default_str();
  compute->add_option("--root", root, "Root of the potential for the reduced theory (reduced mode only)");
  compute->add_option("--mode", mode, "Which theory to compute")->check(CLI::IsMember({"unreduced", "reduced", "both"}))->capture_default_str();
  compute->add_option("--pages", pages, "Report only E_inf or every page")->check(CLI::IsMember({"einf", "all"}))->capture_default_str();
  compute->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  compute->add_option("-j,--jobs", jobs, "Worker threads; output order does not depend on it")->check(CLI::PositiveNumber)->capture_default_str();
  compute->add_option("--max-slots", max_slots, "Size limit for the cube oracle")->check(CLI::PositiveNumber)->capture_default_str();
  compute->add_flag("--oracle", oracle, "Compare E_1 with the brute-force resolution cube");

  // classify
  auto* classify = app.add_subcommand("classify", "Group potentials by their spectral sequence pages on one diagram");
  ClassifySpec cspec;
  std::string cformat = "table";
  int cjobs = 1;
  classify->add_option("-d,--diagram", cspec.diagram, "Diagram expression")->required();
  classify->add_option("-k,--field", cspec.field, "Coefficient field")->capture_default_str();
  classify->add_option("-p,--potential", cspec.potentials, "Potentials to classify");
  classify->add_option("--degree", cspec.degree, "Add every separable monic potential of this degree with a_{n-1} = 0 ...");
  classify->add_option("--range", cspec.range, "... and integer coefficients in [-range, range]")->capture_default_str();
  classify->add_option("-j,--jobs", cjobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  classify->add_option("--format", cformat, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the built-in calibrations");
  std::string sformat = "table";
  bool corrupt = false;
  selftest->add_option("--format", sformat, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  selftest->add_flag("--debug-corrupt-shift", corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*compute) {
    if (!root.empty() && mode != "reduced") {
      std::cerr << "error: --root requires --mode reduced\n";
      return 1;
    }
    if (root.empty() && mode == "reduced") {
      std::cerr << "error: --mode reduced requires --root\n";
      return 1;
    }
    if (diagrams.empty() && mpds.empty()) {
      std::cerr << "error: give at least one --diagram or --mpd\n";
      return 1;
    }
    std::vector<JobSpec> specs;
    int first_code = 0;
    for (const auto& d : diagrams)
      for (const auto& p : potentials) specs.push_back({d, d, p});
    for (const auto& path : mpds) {
      std::string text;
      try {
        text = read_file(path);
      } catch (const Error& e) {
        report_error(e, path);
        if (!first_code) first_code = exit_code(e.kind());
        continue;
      }
      for (const auto& p : potentials) specs.push_back({"mpd:" + text, path, p});
    }
    for (auto& s : specs) {
      s.field = field;
      s.mode = mode == "unreduced" ? JobMode::Unreduced : mode == "reduced" ? JobMode::Reduced : JobMode::Both;
      if (!root.empty()) s.root = root;
      s.all_pages = pages == "all";
      s.oracle = oracle;
      s.max_slots = max_slots;
    }
    const std::string cache = cache_dir();
    const bool json = format == "json";
    std::vector<int> codes(specs.size(), 0);
    std::vector<std::string> errors(specs.size());
    const auto out = run_parallel(specs.size(), jobs, [&](std::size_t i) -> std::string {
      try {
        const ordered_json r = run_compute(specs[i], cache);
        return json ? r.dump(2) : render_compute(r);
      } catch (const Error& e) {
        codes[i] = exit_code(e.kind());
        errors[i] = std::string("error: ") + std::string(error_name(e.kind())) + ": " + specs[i].label + " / " + specs[i].potential + ": " + e.what();
        if (!json) return std::string{};
        ordered_json err = error_json(e);
        err["diagram"] = specs[i].label;
        err["potential"] = specs[i].potential;
        return err.dump(2);
      }
    });
    if (json && out.size() > 1) std::cout << "[\n";
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!errors[i].empty()) std::cerr << errors[i] << "\n";
      if (json) std::cout << out[i] << (i + 1 < out.size() ? ",\n" : "\n");
      else if (!out[i].empty()) std::cout << (i ? "\n" : "") << out[i];
      if (!first_code) first_code = codes[i];
    }
    if (json && out.size() > 1) std::cout << "]\n";
    return first_code;
  }

  if (*classify) {
    try {
      const ordered_json r = run_classify(cspec, cjobs);
      std::cout << (cformat == "json" ? r.dump(2) + "\n" : render_classify(r));
      return 0;
    } catch (const Error& e) {
      report_error(e, cspec.diagram);
      if (cformat == "json") std::cout << error_json(e).dump(2) << "\n";
      return exit_code(e.kind());
    }
  }

  if (*selftest) {
    try {
      const ordered_json r = run_selftest(corrupt);
      std::cout << (sformat == "json" ? r.dump(2) + "\n" : render_selftest(r));
      return r["ok"].get<bool>() ? 0 : exit_code(ErrorKind::Inconsistent);
    } catch (const Error& e) {
      report_error(e, "selftest");
      return exit_code(e.kind());
    }
  }
  return 1;
}
