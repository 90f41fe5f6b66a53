#include <benchmark/benchmark.h>

#include <random>

#include "gctoric/gclin.hpp"

using namespace gct;
using algebra::Blade;
using algebra::ExactForm;
using algebra::FloatForm;

namespace {

GaussianRational small_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    return {Rational(d(rng)), Rational(d(rng))};
}

ExactForm dense_form(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ExactForm f(m);
    for (Blade b = 0; b < (Blade{1} << m); ++b) f.add(b, small_scalar(rng));
    return f;
}

algebra::GVector<GaussianRational> gvector(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    algebra::GVector<GaussianRational> v(m);
    for (int j = 0; j < 2 * m; ++j) v[j] = small_scalar(rng);
    return v;
}

// e^{i omega} for the standard symplectic form on R^m, m even.
ExactForm symplectic_spinor(int m) {
    ExactForm omega(m);
    for (int k = 1; k < m; k += 2) omega += ExactForm::monomial(m, {k, k + 1}, GaussianRational::i());
    return algebra::exp_form(omega);
}

}  // namespace

static void BM_WedgeExact(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    auto a = dense_form(m, 1), b = dense_form(m, 2);
    for (auto _ : state) benchmark::DoNotOptimize(algebra::wedge(a, b));
}
BENCHMARK(BM_WedgeExact)->DenseRange(2, 6, 2);

static void BM_WedgeFloat(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    FloatForm a = algebra::to_float(dense_form(m, 1)), b = algebra::to_float(dense_form(m, 2));
    for (auto _ : state) benchmark::DoNotOptimize(algebra::wedge(a, b));
}
BENCHMARK(BM_WedgeFloat)->DenseRange(2, 8, 2);

static void BM_CliffordExact(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    auto a = dense_form(m, 3);
    auto v = gvector(m, 4);
    for (auto _ : state) benchmark::DoNotOptimize(algebra::clifford(v, a));
}
BENCHMARK(BM_CliffordExact)->DenseRange(2, 8, 2);

static void BM_Annihilator(benchmark::State& state) {
    int m = static_cast<int>(state.range(0));
    auto phi = symplectic_spinor(m);
    for (auto _ : state) benchmark::DoNotOptimize(gclin::annihilator(phi));
}
BENCHMARK(BM_Annihilator)->DenseRange(2, 6, 2);
