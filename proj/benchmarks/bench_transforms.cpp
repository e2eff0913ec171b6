#include <benchmark/benchmark.h>

#include <cmath>

#include "shearlet/classify.hpp"
#include "shearlet/frames.hpp"
#include "shearlet/generators.hpp"
#include "shearlet/transform2d.hpp"
#include "shearlet/transform3d.hpp"

using namespace shearlet;

namespace {

const generators::Generator& gen2() {
    static const generators::Generator g = generators::default_2d();
    return g;
}
const generators::Generator& gen3() {
    static const generators::Generator g = generators::default_3d();
    return g;
}

// Single coefficient at a regular disk point; range(0) is j in a = 2^-j.
void BM_Coefficient2D(benchmark::State& state) {
    const regions::Region2D disk(regions::Disk{});
    const double a = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(transform2d::coefficient2d(disk, gen2(), {a, 0.0, {1.0, 0.0}}));
}
BENCHMARK(BM_Coefficient2D)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_Coefficient3D(benchmark::State& state) {
    const regions::Region3D ball(regions::Ball{});
    const double a = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(transform3d::coefficient3d(ball, gen3(), {a, {0.0, 0.0}, {1.0, 0.0, 0.0}, 1}));
}
BENCHMARK(BM_Coefficient3D)->DenseRange(3, 7, 2)->Unit(benchmark::kMicrosecond);

void BM_Classify2DScan(benchmark::State& state) {
    const regions::Region2D disk(regions::Disk{});
    for (auto _ : state) benchmark::DoNotOptimize(classify::classify2d(disk, gen2(), {1.0, 0.0}));
}
BENCHMARK(BM_Classify2DScan)->Unit(benchmark::kMillisecond);

void BM_DeltaMultiplier(benchmark::State& state) {
    const frames::FrameConfig cfg;
    const frames::Spectrum sp(gen3(), cfg);
    for (auto _ : state) benchmark::DoNotOptimize(frames::delta_multiplier(sp, {8.0, 1.0, 1.0}, cfg));
}
BENCHMARK(BM_DeltaMultiplier)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
