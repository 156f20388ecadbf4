#include "netlock/centrality.hpp"

#include <deque>
#include <vector>

#include "netlock/numerics.hpp"

namespace netlock {

std::string to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::degree: return "degree";
    case CentralityKind::eigenvector: return "eigenvector";
    case CentralityKind::betweenness: return "betweenness";
    case CentralityKind::closeness: return "closeness";
  }
  throw ConfigError("unknown centrality kind");
}

CentralityVector degree_centrality(const Network& net) {
  return {CentralityKind::degree, net.weights().rowwise().sum()};
}

CentralityVector eigenvector_centrality(const Network& net, double* eigenvalue_out) {
  if (net.edge_count() == 0)
    throw ConfigError("eigenvector centrality: network has no edges");
  const PowerIterationResult res = power_iteration_symmetric(net.sparse(), 1e-10, 10000);
  if (eigenvalue_out) *eigenvalue_out = res.eigenvalue;
  return {CentralityKind::eigenvector, res.vector};
}

CentralityVector betweenness_centrality(const Network& net) {
  const Index n = net.n();
  const auto& adj = net.adjacency_lists();
  Vector b = Vector::Zero(n);

  // Brandes (2001) on the unweighted topology; dependencies are accumulated
  // per source, which counts each ordered pair once.
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<std::vector<Index>> predecessors(static_cast<std::size_t>(n));
  std::vector<double> sigma(static_cast<std::size_t>(n));
  std::vector<Index> dist(static_cast<std::size_t>(n));
  std::vector<double> delta(static_cast<std::size_t>(n));

  for (Index s = 0; s < n; ++s) {
    order.clear();
    for (Index v = 0; v < n; ++v) {
      predecessors[static_cast<std::size_t>(v)].clear();
      sigma[static_cast<std::size_t>(v)] = 0.0;
      dist[static_cast<std::size_t>(v)] = -1;
      delta[static_cast<std::size_t>(v)] = 0.0;
    }
    sigma[static_cast<std::size_t>(s)] = 1.0;
    dist[static_cast<std::size_t>(s)] = 0;
    std::deque<Index> queue{s};
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (Index w : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
        if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] + 1) {
          sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
          predecessors[static_cast<std::size_t>(w)].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Index w = *it;
      for (Index v : predecessors[static_cast<std::size_t>(w)])
        delta[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(v)] /
                                              sigma[static_cast<std::size_t>(w)] *
                                              (1.0 + delta[static_cast<std::size_t>(w)]);
      if (w != s) b(w) += delta[static_cast<std::size_t>(w)];
    }
  }
  // Each unordered pair was seen from both endpoints as a source, which is
  // exactly the ordered-pair count the definition asks for.
  return {CentralityKind::betweenness, b};
}

CentralityVector closeness_centrality(const Network& net) {
  const Index n = net.n();
  if (n < 2) throw ConfigError("closeness centrality: needs at least 2 agents");
  const auto& adj = net.adjacency_lists();
  Vector c(n);
  std::vector<Index> dist(static_cast<std::size_t>(n));
  for (Index s = 0; s < n; ++s) {
    for (Index v = 0; v < n; ++v) dist[static_cast<std::size_t>(v)] = -1;
    dist[static_cast<std::size_t>(s)] = 0;
    std::deque<Index> queue{s};
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      for (Index w : adj[static_cast<std::size_t>(v)])
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
    }
    double total = 0.0;
    for (Index v = 0; v < n; ++v) {
      if (v == s) continue;
      const Index d = dist[static_cast<std::size_t>(v)];
      total += d < 0 ? static_cast<double>(n) : static_cast<double>(d);
    }
    c(s) = 1.0 / total;
  }
  return {CentralityKind::closeness, c};
}

CentralityVector compute_centrality(const Network& net, CentralityKind kind) {
  switch (kind) {
    case CentralityKind::degree: return degree_centrality(net);
    case CentralityKind::eigenvector: return eigenvector_centrality(net);
    case CentralityKind::betweenness: return betweenness_centrality(net);
    case CentralityKind::closeness: return closeness_centrality(net);
  }
  throw ConfigError("unknown centrality kind");
}

}  // namespace netlock
