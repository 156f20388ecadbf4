#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netlock/types.hpp"

namespace netlock {

struct Edge {
  Index i;
  Index j;
  double weight = 1.0;
};

/// Undirected weighted contact network. The weight matrix is symmetric with a
/// zero diagonal and non-negative finite entries; a sparse copy is kept for
/// fast products in the integrator. Immutable after construction and safe to
/// share read-only across threads.
class Network {
 public:
  Network(Index n, Matrix weights);

  Index n() const { return n_; }
  const Matrix& weights() const { return weights_; }
  const SparseMatrix& sparse() const { return sparse_; }
  std::int64_t edge_count() const { return edge_count_; }

  /// Unordered node pairs with positive weight, ordered (i < j) row-major.
  std::vector<Edge> edges() const;

  /// Neighbor lists on the unweighted topology (edge present iff weight > 0).
  const std::vector<std::vector<Index>>& adjacency_lists() const { return adjacency_; }

 private:
  Index n_;
  Matrix weights_;
  SparseMatrix sparse_;
  std::int64_t edge_count_;
  std::vector<std::vector<Index>> adjacency_;
};

/// Builds a network from an explicit edge list. Rejects self-loops,
/// out-of-range indices, non-positive weights, and duplicate pairs, naming the
/// offending entry.
Network build_network(Index n, const std::vector<Edge>& edges);

/// Fraction of realized ties: 2 * edge_count / (n * (n - 1)). Requires n >= 2.
double density(const Network& net);

/// Edge-list text format: one edge per line "i j weight", 0-based indices,
/// '#' comments, optional weight column (default 1.0).
Network load_edge_list(const std::string& path, Index n_hint = -1);
void save_edge_list(const Network& net, const std::string& path);

}  // namespace netlock
