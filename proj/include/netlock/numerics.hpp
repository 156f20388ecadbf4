#pragma once

#include <functional>

#include "netlock/types.hpp"

namespace netlock {

struct PowerIterationResult {
  Vector vector;      // unit Euclidean norm, non-negative for non-negative input
  double eigenvalue;  // Rayleigh quotient at the returned vector
  int iterations;
};

/// Dominant eigenpair of a symmetric non-negative matrix by shifted power
/// iteration. The shift (max row sum) makes the Perron root dominant even on
/// bipartite structures. Throws NumericalError if the vector change does not
/// drop below `tol` within `max_iters`.
PowerIterationResult power_iteration_symmetric(const Matrix& m, double tol = 1e-10,
                                               int max_iters = 10000);

/// Same routine on a sparse matrix.
PowerIterationResult power_iteration_symmetric(const SparseMatrix& m, double tol = 1e-10,
                                               int max_iters = 10000);

struct ParallelOptions {
  int workers = 0;  // 0 = hardware concurrency
};

/// Runs body(i) for i in [0, count) on up to `workers` threads. The body must
/// only write to per-index slots; results are therefore deterministic.
void parallel_for(Index count, const ParallelOptions& opts,
                  const std::function<void(Index)>& body);

}  // namespace netlock
