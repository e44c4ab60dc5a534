#include "arrfrob/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <omp.h>

namespace arrfrob {

int thread_count() {
    if (const char* env = std::getenv("ARRFROB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return omp_get_max_threads();
}

namespace {

// Runs body(i) for i in [0, count) on a team; the first exception is rethrown on the caller.
template <class F> void parallel_for(int count, int threads, F body) {
    if (threads <= 0) threads = thread_count();
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(arrfrob_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<PotentialRow> potential_rows_serial(const WAlgebra& alg, const std::vector<Rational>& z,
                                                const std::vector<Subset>& tuples) {
    return potential_rows(alg, z, tuples);
}

std::vector<PotentialRow> potential_rows_parallel(const WAlgebra& alg, const std::vector<Rational>& z,
                                                  const std::vector<Subset>& tuples, int threads) {
    std::vector<PotentialRow> rows(tuples.size());
    parallel_for(static_cast<int>(tuples.size()), threads, [&](int i) {
        std::vector<Rational> zl = z;
        rows[i] = potential_rows(alg, zl, {tuples[i]}).front();
    });
    return rows;
}

std::vector<Matrix<Rational>> k_operators_serial(const GmSystem& gm, const std::vector<Rational>& z) {
    std::vector<Matrix<Rational>> out;
    for (int j = 0; j < gm.family().n(); ++j) out.push_back(gm.k_operator(j, z));
    return out;
}

std::vector<Matrix<Rational>> k_operators_parallel(const GmSystem& gm, const std::vector<Rational>& z, int threads) {
    std::vector<Matrix<Rational>> out(gm.family().n());
    parallel_for(gm.family().n(), threads, [&](int j) {
        std::vector<Rational> zl = z;
        out[j] = gm.k_operator(j, zl);
    });
    return out;
}

std::vector<CriticalSet> solve_critical_serial(const Family& fam, const std::vector<std::vector<Rational>>& zs) {
    std::vector<CriticalSet> out;
    for (const auto& z : zs) out.push_back(solve_critical(fam, z));
    return out;
}

std::vector<CriticalSet> solve_critical_parallel(const Family& fam, const std::vector<std::vector<Rational>>& zs,
                                                 int threads) {
    std::vector<CriticalSet> out(zs.size());
    parallel_for(static_cast<int>(zs.size()), threads, [&](int i) { out[i] = solve_critical(fam, zs[i]); });
    return out;
}

}  // namespace arrfrob
