#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "doctest.h"

using namespace krforge;
using namespace krforge::cli;

TEST_CASE("compute report layout") {
  JobSpec s;
  s.diagram = "pretzel(2,-3,5)";
  s.potential = "x^2-1";
  const ordered_json j = run_compute(s, "");
  CHECK(j["diagram"] == "pretzel(2,-3,5)");
  CHECK(j["n"] == 2);
  CHECK(j["separable"] == true);
  CHECK(j["unreduced"]["einf"]["poincare"] == "q + q^3");
  CHECK_FALSE(j["unreduced"].contains("pages"));
  REQUIRE(j["reduced"].size() == 2);
  CHECK(j["reduced"][0]["root"] == "-1");
  CHECK(j["reduced"][1]["einf"]["poincare"] == "q^2");
  CHECK(j["invariants"]["j"] == ordered_json::array({1, 3}));
  CHECK(j["invariants"]["s_n"] == "1");
  CHECK(j["invariants"]["s_tilde"]["1"] == "1");
  CHECK(j["invariants"]["genus_bound"] == "1");
  CHECK_FALSE(j.contains("oracle"));
}

TEST_CASE("compute modes and the oracle") {
  JobSpec s;
  s.diagram = "rational(3,1)";
  s.potential = "x^3-x";
  s.mode = JobMode::Reduced;
  s.root = "0";
  s.all_pages = true;
  s.oracle = true;
  const ordered_json j = run_compute(s, "");
  CHECK_FALSE(j.contains("unreduced"));
  REQUIRE(j["reduced"].size() == 1);
  CHECK(j["reduced"][0]["pages"].size() >= 2);
  CHECK(j["invariants"].is_null());
  CHECK(j["oracle"]["agrees"] == true);

  s.max_slots = 2;
  CHECK_THROWS_AS(run_compute(s, ""), Error);
  s.root.reset();
  CHECK_THROWS_AS(run_compute(s, ""), Error);
  s.mode = JobMode::Unreduced;
  s.oracle = false;
  const ordered_json u = run_compute(s, "");
  CHECK(u["reduced"].size() == 3);
  CHECK(u["invariants"].is_null());
  CHECK(u["unreduced"]["significant"] == ordered_json::array({3, 5}));

  s.root = "5";
  s.mode = JobMode::Reduced;
  try {
    run_compute(s, "");
    FAIL("expected NotARoot");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotARoot);
    CHECK(error_json(e)["error"]["exit_code"] == exit_code(ErrorKind::NotARoot));
  }
}

TEST_CASE("module cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "krforge_test_cache";
  std::filesystem::remove_all(dir);
  JobSpec s;
  s.diagram = "rational(5,2)#rational(3,1)!";
  s.potential = "x^3-x";
  const ordered_json fresh = run_compute(s, "");
  CHECK(run_compute(s, dir.string()) == fresh);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    CHECK(e.path().extension() == ".json");
  }
  CHECK(files == 1);
  CHECK(run_compute(s, dir.string()) == fresh);
  for (const auto& e : std::filesystem::directory_iterator(dir)) std::ofstream(e.path()) << "{\"key\": 1}";
  CHECK(run_compute(s, dir.string()) == fresh);
  std::filesystem::remove_all(dir);
}

TEST_CASE("classify batches") {
  ClassifySpec c;
  c.diagram = "rational(3,1)";
  c.potentials = {"x^3-1", "x^3-x", "x^3-x-1"};
  const ordered_json j = run_classify(c, 2);
  CHECK(j["classes"] == 2);
  CHECK(j["groups"][1]["members"] == ordered_json::array({"x^3-x", "x^3-x-1"}));
  c.potentials.clear();
  c.degree = 3;
  c.range = 1;
  const ordered_json b = run_classify(c, 1);
  CHECK(b["batch"] == 8);  // x^3 + a_1 x + a_0 with a_i in {-1, 0, 1}; only x^3 is inseparable
  CHECK(run_classify(c, 3) == b);
}

TEST_CASE("selftest catches a corrupted grading") {
  const ordered_json good = run_selftest(false);
  CHECK(good["ok"] == true);
  const ordered_json bad = run_selftest(true);
  CHECK(bad["ok"] == false);
  bool named = false;
  for (const auto& c : bad["calibrations"]) named = named || (c["name"] == "unknot normalization" && c["ok"] == false);
  CHECK(named);
}

TEST_CASE("parallel runner keeps index order") {
  const auto out = run_parallel(50, 4, [](std::size_t i) { return std::to_string(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == std::to_string(i * i));
}
