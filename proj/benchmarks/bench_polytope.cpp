#include <benchmark/benchmark.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "gctoric/construct.hpp"
#include "gctoric/morse.hpp"
#include "gctoric/polytope.hpp"

using namespace gct;

namespace {

polytope::HPolytope load(const std::string& name) {
    std::ifstream in(std::string(GCTORIC_DATA_DIR) + "/polytopes/" + name);
    return polytope::polytope_from_json(nlohmann::json::parse(in));
}

const char* const kFiles[] = {"unit-square.json", "pentagon.json", "cube.json", "prism.json", "octahedron.json"};

}  // namespace

static void BM_Vertices(benchmark::State& state) {
    auto p = load(kFiles[state.range(0)]);
    state.SetLabel(kFiles[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(polytope::vertices(p));
}
BENCHMARK(BM_Vertices)->DenseRange(0, 4);

static void BM_Delzant(benchmark::State& state) {
    auto p = load(kFiles[state.range(0)]);
    state.SetLabel(kFiles[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(polytope::is_delzant(p));
}
BENCHMARK(BM_Delzant)->DenseRange(0, 4);

static void BM_Certify(benchmark::State& state) {
    auto p = load("prism.json");
    for (auto _ : state) benchmark::DoNotOptimize(construct::certify(p));
}
BENCHMARK(BM_Certify);

static void BM_Betti(benchmark::State& state) {
    auto p = load("cube.json");
    for (auto _ : state) benchmark::DoNotOptimize(morse::betti(p));
}
BENCHMARK(BM_Betti);
