// Serial references against OpenMP kernels. Thread count follows ARRFROB_THREADS.
#include "arrfrob/parallel.hpp"

#include <benchmark/benchmark.h>

using namespace arrfrob;

namespace {

Family lines5() {
    std::vector<std::vector<Rational>> b{{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}};
    return Family(2, b, {Rational(1), Rational(2), Rational(3), Rational(1, 2), Rational(5, 3)});
}

Family space5() {
    std::vector<std::vector<Rational>> b{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, -2, 3}};
    return Family(3, b, {Rational(1), Rational(2, 3), Rational(3), Rational(5, 2), Rational(1)});
}

void potential_rows(benchmark::State& st, bool parallel) {
    Family fam = lines5();
    WAlgebra alg(fam, default_anchor(fam));
    auto z = sample_good_point(fam, 3);
    auto tuples = alg.multisets(5);
    for (auto _ : st) {
        auto rows = parallel ? potential_rows_parallel(alg, z, tuples) : potential_rows_serial(alg, z, tuples);
        benchmark::DoNotOptimize(rows);
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(tuples.size()));
}

void k_operators(benchmark::State& st, bool parallel) {
    Family fam = space5();
    GmSystem gm(fam);
    auto z = sample_good_point(fam, 5);
    for (auto _ : st) {
        auto K = parallel ? k_operators_parallel(gm, z) : k_operators_serial(gm, z);
        benchmark::DoNotOptimize(K);
    }
}

void critical_batch(benchmark::State& st, bool parallel) {
    Family fam = lines5();
    std::vector<std::vector<Rational>> zs;
    for (int i = 0; i < 16; ++i) zs.push_back(sample_good_point(fam, 100 + i));
    for (auto _ : st) {
        auto cs = parallel ? solve_critical_parallel(fam, zs) : solve_critical_serial(fam, zs);
        benchmark::DoNotOptimize(cs);
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(zs.size()));
}

}  // namespace

BENCHMARK_CAPTURE(potential_rows, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(potential_rows, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(k_operators, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(k_operators, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(critical_batch, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(critical_batch, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
