#include "netlock/generators.hpp"

#include <set>
#include <utility>

namespace netlock {
namespace {

void check_lattice_args(Index n, int mean_degree) {
  if (n <= 0) throw ConfigError("generator: agent count must be positive");
  if (mean_degree <= 0 || mean_degree % 2 != 0)
    throw ConfigError("generator: mean_degree must be a positive even integer, got " +
                      std::to_string(mean_degree));
  if (mean_degree >= n)
    throw ConfigError("generator: mean_degree must be smaller than the agent count");
}

}  // namespace

Network generate_ring_lattice(Index n, int mean_degree) {
  check_lattice_args(n, mean_degree);
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (int step = 1; step <= mean_degree / 2; ++step) {
      const Index j = (i + step) % n;
      w(i, j) = 1.0;
      w(j, i) = 1.0;
    }
  }
  return Network(n, std::move(w));
}

Network generate_small_world(Index n, int mean_degree, double rewire_prob, RngSeed seed) {
  check_lattice_args(n, mean_degree);
  if (rewire_prob < 0.0 || rewire_prob > 1.0)
    throw ConfigError("generator: rewire_prob must lie in [0, 1]");

  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (int step = 1; step <= mean_degree / 2; ++step) {
      const Index j = (i + step) % n;
      w(i, j) = 1.0;
      w(j, i) = 1.0;
    }

  // Rewire the far endpoint of each original lattice edge, scanning by source
  // node then step, as in the classic construction. Dead draws (self loops or
  // existing edges) are retried; the edge is kept in place if no valid target
  // shows up, so the edge count never changes.
  Rng rng(seed);
  for (int step = 1; step <= mean_degree / 2; ++step) {
    for (Index i = 0; i < n; ++i) {
      const Index j = (i + step) % n;
      if (rng.uniform_real() >= rewire_prob) continue;
      if (w(i, j) == 0.0) continue;  // already rewired away by an earlier pass
      for (int attempt = 0; attempt < 64; ++attempt) {
        const Index target = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        if (target == i || w(i, target) > 0.0) continue;
        w(i, j) = 0.0;
        w(j, i) = 0.0;
        w(i, target) = 1.0;
        w(target, i) = 1.0;
        break;
      }
    }
  }
  return Network(n, std::move(w));
}

Network generate_random(Index n, std::int64_t edge_count, RngSeed seed) {
  if (n <= 0) throw ConfigError("generator: agent count must be positive");
  const std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (edge_count < 0 || edge_count > max_edges)
    throw ConfigError("generator: edge_count " + std::to_string(edge_count) +
                      " exceeds the maximum " + std::to_string(max_edges));

  Rng rng(seed);
  std::set<std::pair<Index, Index>> chosen;
  Matrix w = Matrix::Zero(n, n);
  while (static_cast<std::int64_t>(chosen.size()) < edge_count) {
    Index i = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    Index j = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (!chosen.insert({i, j}).second) continue;
    w(i, j) = 1.0;
    w(j, i) = 1.0;
  }
  return Network(n, std::move(w));
}

Network generate_scale_free(Index n, int attach_count, RngSeed seed) {
  if (n <= 0) throw ConfigError("generator: agent count must be positive");
  if (attach_count < 1 || attach_count >= n)
    throw ConfigError("generator: attach_count must satisfy 1 <= attach_count < n, got " +
                      std::to_string(attach_count));

  Rng rng(seed);
  Matrix w = Matrix::Zero(n, n);
  // Endpoint urn: every edge contributes both endpoints, so a uniform draw is
  // degree-proportional.
  std::vector<Index> urn;
  const Index core = attach_count + 1;
  for (Index i = 0; i < core; ++i)
    for (Index j = i + 1; j < core; ++j) {
      w(i, j) = 1.0;
      w(j, i) = 1.0;
      urn.push_back(i);
      urn.push_back(j);
    }

  for (Index v = core; v < n; ++v) {
    std::set<Index> targets;
    while (static_cast<int>(targets.size()) < attach_count) {
      const Index pick = urn[rng.uniform_index(urn.size())];
      targets.insert(pick);
    }
    for (Index t : targets) {
      w(v, t) = 1.0;
      w(t, v) = 1.0;
      urn.push_back(v);
      urn.push_back(t);
    }
  }
  return Network(n, std::move(w));
}

}  // namespace netlock
