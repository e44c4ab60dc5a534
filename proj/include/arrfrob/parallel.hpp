#ifndef ARRFROB_PARALLEL_HPP
#define ARRFROB_PARALLEL_HPP

#include "arrfrob/frobenius.hpp"

namespace arrfrob {

// Worker count: ARRFROB_THREADS if set and positive, otherwise the OpenMP default.
int thread_count();

// Serial references and their OpenMP counterparts; results are identical and in input order.
std::vector<PotentialRow> potential_rows_serial(const WAlgebra& alg, const std::vector<Rational>& z,
                                                const std::vector<Subset>& tuples);
std::vector<PotentialRow> potential_rows_parallel(const WAlgebra& alg, const std::vector<Rational>& z,
                                                  const std::vector<Subset>& tuples, int threads = 0);

std::vector<Matrix<Rational>> k_operators_serial(const GmSystem& gm, const std::vector<Rational>& z);
std::vector<Matrix<Rational>> k_operators_parallel(const GmSystem& gm, const std::vector<Rational>& z, int threads = 0);

std::vector<CriticalSet> solve_critical_serial(const Family& fam, const std::vector<std::vector<Rational>>& zs);
std::vector<CriticalSet> solve_critical_parallel(const Family& fam, const std::vector<std::vector<Rational>>& zs,
                                                 int threads = 0);

}  // namespace arrfrob

#endif
