#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "krforge/invariants.hpp"

namespace krforge::cli {

using nlohmann::ordered_json;

enum class JobMode { Unreduced, Reduced, Both };

struct JobSpec {
  std::string diagram;  // mini-language expression; "mpd:<text>" for diagram files
  std::string label;    // shown in reports; defaults to `diagram`
  std::string potential = "x^2";
  std::string field = "Q";
  JobMode mode = JobMode::Both;
  std::optional<std::string> root;  // required iff mode == Reduced
  bool all_pages = false;
  bool oracle = false;  // compare E_1 with the cube oracle
  int max_slots = 6;
};

// Directory for memoized module complexes, or empty when caching is off.
std::string cache_dir();

// Assembles d, consulting and filling the on-disk cache when `dir` is non-empty.
ModuleComplex cached_assemble(const MatchedDiagram& d, std::shared_ptr<const Potential> w, const std::string& dir);

// Throws krforge::Error on invalid input or failed computation.
ordered_json run_compute(const JobSpec& spec, const std::string& cache);

struct ClassifySpec {
  std::string diagram;
  std::string field = "Q";
  std::vector<std::string> potentials;
  // Monic degree-`degree` potentials with a_{degree-1} = 0 and integer a_i in [-range, range];
  // only separable ones are kept. Off when degree == 0.
  int degree = 0;
  int range = 2;
};

ordered_json run_classify(const ClassifySpec& spec, int jobs);

// One entry per calibration: {"name", "ok", "detail"}. `corrupt_shift` offsets every computed
// quantum degree by 2, which the calibrations must catch.
ordered_json run_selftest(bool corrupt_shift);

std::string render_compute(const ordered_json& report);
std::string render_classify(const ordered_json& report);
std::string render_selftest(const ordered_json& report);

ordered_json error_json(const Error& e);

// Runs f(i) for i in [0, count) on `jobs` threads; results land in index order.
std::vector<std::string> run_parallel(std::size_t count, int jobs, const std::function<std::string(std::size_t)>& f);

}  // namespace krforge::cli
