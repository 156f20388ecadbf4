#pragma once

#include <cstdint>

#include "netlock/network.hpp"
#include "netlock/rng.hpp"

namespace netlock {

/// Ring lattice: every agent is linked with weight 1 to the mean_degree/2
/// nearest neighbors on each side. Requires even mean_degree < n.
Network generate_ring_lattice(Index n, int mean_degree);

/// Watts-Strogatz small world: ring lattice, then each edge is rewired
/// independently with probability rewire_prob to a uniform non-duplicate,
/// non-self target. Edge count is preserved; rewire_prob = 0 reproduces the
/// ring lattice bit-exactly.
Network generate_small_world(Index n, int mean_degree, double rewire_prob, RngSeed seed);

/// Erdos-Renyi G(n, m): exactly edge_count distinct unordered pairs chosen
/// uniformly without replacement, weight 1.
Network generate_random(Index n, std::int64_t edge_count, RngSeed seed);

/// Barabasi-Albert preferential attachment: seed clique of attach_count + 1
/// nodes, then each arriving node attaches attach_count weight-1 edges to
/// existing nodes with probability proportional to current degree.
Network generate_scale_free(Index n, int attach_count, RngSeed seed);

}  // namespace netlock
