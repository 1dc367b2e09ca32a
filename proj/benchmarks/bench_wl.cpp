#include <benchmark/benchmark.h>

#include "gwl/construct.hpp"
#include "gwl/invariants.hpp"
#include "gwl/wl.hpp"

using namespace gwl;

static void BM_StableColoring2(benchmark::State& state) {
    colored_group cg = colored_group::uncolored(make_dihedral(int(state.range(0))));
    wl_options opt{.threads = 1};
    for (auto _ : state) {
        coloring c = stable_coloring(cg, 2, wl_version::II, opt);
        benchmark::DoNotOptimize(c.class_count);
    }
    state.SetComplexityN(cg.g.order());
}
BENCHMARK(BM_StableColoring2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Complexity();

static void BM_StableColoring3(benchmark::State& state) {
    colored_group cg = colored_group::uncolored(make_dihedral(int(state.range(0))));
    wl_options opt{.threads = 0};
    for (auto _ : state) {
        coloring c = stable_coloring(cg, 3, wl_version::I, opt);
        benchmark::DoNotOptimize(c.class_count);
    }
    state.SetComplexityN(cg.g.order());
}
BENCHMARK(BM_StableColoring3)->Arg(4)->Arg(8)->Arg(16)->Complexity();

static void BM_JointCompare(benchmark::State& state) {
    colored_group a = colored_group::uncolored(make_dihedral(8));
    colored_group b = colored_group::uncolored(make_quaternion8());
    colored_group c16 = colored_group::uncolored(make_cyclic(16));
    for (auto _ : state) {
        joint_result r = joint_compare(a, c16, 3, wl_version::II);
        benchmark::DoNotOptimize(r.equivalent);
        benchmark::DoNotOptimize(b.g.order());
    }
}
BENCHMARK(BM_JointCompare);

static void BM_NormalSubgroups(benchmark::State& state) {
    group g = make_symmetric(4);
    for (auto _ : state) {
        auto ns = normal_subgroups(g);
        benchmark::DoNotOptimize(ns.size());
    }
}
BENCHMARK(BM_NormalSubgroups);

static void BM_CompositionFactors(benchmark::State& state) {
    group g = direct_product(make_symmetric(4), make_cyclic(2));
    for (auto _ : state) {
        auto report = composition_factors(g);
        benchmark::DoNotOptimize(report.factors.size());
    }
}
BENCHMARK(BM_CompositionFactors);

BENCHMARK_MAIN();
