#include "netlock/numerics.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

namespace netlock {
namespace {

template <typename MatrixT>
PowerIterationResult power_iteration_impl(const MatrixT& m, double tol, int max_iters) {
  const Index n = m.rows();
  if (n == 0) throw ConfigError("power iteration: empty matrix");
  if (m.rows() != m.cols()) throw ConfigError("power iteration: matrix not square");

  // Shift by the max row sum so the Perron root strictly dominates in modulus.
  Vector row_sums = m * Vector::Ones(n);
  const double shift = row_sums.cwiseAbs().maxCoeff();
  if (shift == 0.0) {
    // Zero matrix: by convention eigenvalue 0 with the uniform unit vector.
    return {Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))), 0.0, 0};
  }

  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 1; it <= max_iters; ++it) {
    Vector w = m * v + shift * v;
    const double norm = w.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw NumericalError("power iteration: degenerate iterate");
    w /= norm;
    const double delta = (w - v).cwiseAbs().maxCoeff();
    v = w;
    if (delta < tol) {
      // v is non-negative up to roundoff for a non-negative matrix; clean up.
      v = v.cwiseMax(0.0);
      v /= v.norm();
      const double eigenvalue = v.dot(m * v);
      return {v, eigenvalue, it};
    }
  }
  throw NumericalError("power iteration: no convergence after " + std::to_string(max_iters) +
                       " iterations");
}

}  // namespace

PowerIterationResult power_iteration_symmetric(const Matrix& m, double tol, int max_iters) {
  return power_iteration_impl(m, tol, max_iters);
}

PowerIterationResult power_iteration_symmetric(const SparseMatrix& m, double tol, int max_iters) {
  return power_iteration_impl(m, tol, max_iters);
}

void parallel_for(Index count, const ParallelOptions& opts,
                  const std::function<void(Index)>& body) {
  if (count <= 0) return;
  int workers = opts.workers > 0 ? opts.workers
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(std::min<Index>(workers, count));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const Index i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace netlock
