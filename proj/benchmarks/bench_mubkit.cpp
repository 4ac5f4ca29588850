// Microbenchmarks for the hot paths: field construction, basis construction,
// group enumeration, orbit closure, and the certification tests.

#include <benchmark/benchmark.h>

#include <random>

#include "mubkit/orbits.hpp"

namespace {

mubkit::Field field_for_q(int q) {
    switch (q) {
        case 2: return mubkit::Field(2, 1);
        case 3: return mubkit::Field(3, 1);
        case 4: return mubkit::Field(2, 2);
        case 5: return mubkit::Field(5, 1);
        case 7: return mubkit::Field(7, 1);
        case 8: return mubkit::Field(2, 3);
        case 9: return mubkit::Field(3, 2);
        default: throw mubkit::DomainError("unsupported q");
    }
}

void BM_field_tables(benchmark::State &state) {
    const int q = static_cast<int>(state.range(0));
    for (auto _ : state) {
        mubkit::Field f = field_for_q(q);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_field_tables)->Arg(4)->Arg(8)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_canonical_mub(benchmark::State &state) {
    const mubkit::Field f = field_for_q(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        mubkit::StateSet set = mubkit::canonical_mub(f);
        benchmark::DoNotOptimize(set);
    }
}
BENCHMARK(BM_canonical_mub)->Arg(2)->Arg(3)->Arg(5)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_enumerate_group(benchmark::State &state) {
    const mubkit::Field f = field_for_q(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        mubkit::GroupTable table = mubkit::enumerate_group(f);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_enumerate_group)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_orbit_random_seed(benchmark::State &state) {
    const mubkit::Field f = field_for_q(static_cast<int>(state.range(0)));
    const auto generators = mubkit::clifford_generators(f);
    std::mt19937_64 gen(1);
    const Eigen::VectorXcd seed = mubkit::haar_random_state(f.q(), gen);
    for (auto _ : state) {
        mubkit::Orbit o = mubkit::orbit(seed, generators, f);
        benchmark::DoNotOptimize(o);
    }
}
BENCHMARK(BM_orbit_random_seed)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_check_2design_mub(benchmark::State &state) {
    const mubkit::Field f = field_for_q(static_cast<int>(state.range(0)));
    const mubkit::StateSet mub = mubkit::canonical_mub(f);
    for (auto _ : state) {
        mubkit::DesignReport r = mubkit::check_2design(mub, 1e-7);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_check_2design_mub)->Arg(3)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_potential_exhaustive(benchmark::State &state) {
    const mubkit::Field f = field_for_q(static_cast<int>(state.range(0)));
    const mubkit::GroupTable table = mubkit::enumerate_group(f);
    for (auto _ : state) {
        mubkit::PotentialResult r = mubkit::unitary_2design_potential(table);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_potential_exhaustive)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_stabilizer_scan(benchmark::State &state) {
    const mubkit::Field f = field_for_q(static_cast<int>(state.range(0)));
    const mubkit::GroupTable table = mubkit::enumerate_group(f);
    const Eigen::VectorXcd psi = mubkit::canonical_mub(f).states[0];
    for (auto _ : state) {
        mubkit::Stabilizer s = mubkit::stabilizer(psi, table);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_stabilizer_scan)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
