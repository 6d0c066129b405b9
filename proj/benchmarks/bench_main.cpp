#include <benchmark/benchmark.h>

#include "krforge/invariants.hpp"
#include "krforge/parse.hpp"

using namespace krforge;

namespace {

std::shared_ptr<const Potential> pot(const char* s) {
  return std::make_shared<const Potential>(Potential::parse(s, Field::rationals()));
}

const char* const kKnots[] = {"rational(3,1)", "pretzel(2,-3,5)", "pretzel(5,-3,2)#pretzel(5,-3,2)",
                              "pretzel(9,-7,6)#pretzel(-7,5,-4)"};

// range(0): knot index, range(1): n for x^n - x
void BM_Assemble(benchmark::State& state) {
  const MatchedDiagram d = parse_diagram_expression(kKnots[state.range(0)]);
  const std::string w = "x^" + std::to_string(state.range(1)) + "-x";
  auto p = pot(w.c_str());
  std::size_t gens = 0;
  for (auto _ : state) {
    const ModuleComplex m = assemble(d, p);
    gens = m.gens.size();
    benchmark::DoNotOptimize(gens);
  }
  state.SetLabel(std::string(kKnots[state.range(0)]) + " " + w);
  state.counters["gens"] = static_cast<double>(gens);
  state.counters["slots"] = static_cast<double>(d.slots.size());
}
BENCHMARK(BM_Assemble)->ArgsProduct({{0, 1, 2, 3}, {2, 3, 5}})->Unit(benchmark::kMillisecond);

void BM_Pages(benchmark::State& state) {
  const MatchedDiagram d = parse_diagram_expression(kKnots[state.range(0)]);
  const std::string w = "x^" + std::to_string(state.range(1)) + "-x";
  const ModuleComplex m = assemble(d, pot(w.c_str()));
  for (auto _ : state) {
    SpectralReport r = compute_pages(unreduced_complex(m));
    benchmark::DoNotOptimize(r);
  }
  state.SetLabel(std::string(kKnots[state.range(0)]) + " " + w);
}
BENCHMARK(BM_Pages)->ArgsProduct({{0, 1, 2, 3}, {2, 3, 5}})->Unit(benchmark::kMillisecond);

void BM_CubeOracle(benchmark::State& state) {
  const MatchedDiagram d = parse_diagram_expression(state.range(0) == 0 ? "rational(3,1)" : "rational(3,1)#rational(3,1)");
  for (auto _ : state) {
    Table t = brute_force_homology(d, static_cast<int>(state.range(1)), Mode::Unreduced);
    benchmark::DoNotOptimize(t);
  }
  state.counters["slots"] = static_cast<double>(d.slots.size());
}
BENCHMARK(BM_CubeOracle)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const MatchedDiagram d = parse_diagram_expression("rational(3,1)");
  std::vector<std::shared_ptr<const Potential>> ws;
  for (const char* w : {"x^4-1", "x^4-x", "x^4-x^2", "x^4+x^2+x+11/8", "x^4-2*x^2+2*x-5/4", "x^4+x+1", "x^4-x^2+1"})
    ws.push_back(pot(w));
  for (auto _ : state) benchmark::DoNotOptimize(kr_classify(d, ws));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
