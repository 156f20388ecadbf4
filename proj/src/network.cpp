#include "netlock/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "netlock/io.hpp"

namespace netlock {

Network::Network(Index n, Matrix weights) : n_(n), weights_(std::move(weights)) {
  if (n_ <= 0) throw ConfigError("network: agent count must be positive");
  if (weights_.rows() != n_ || weights_.cols() != n_)
    throw ConfigError("network: weight matrix must be n x n");

  edge_count_ = 0;
  adjacency_.assign(static_cast<std::size_t>(n_), {});
  std::vector<Eigen::Triplet<double>> triplets;
  for (Index i = 0; i < n_; ++i) {
    if (weights_(i, i) != 0.0)
      throw ConfigError("network: non-zero diagonal at agent " + std::to_string(i));
    for (Index j = 0; j < n_; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0)
        throw ConfigError("network: invalid weight at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      if (w != weights_(j, i))
        throw ConfigError("network: asymmetric weights at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      if (w > 0.0) {
        adjacency_[static_cast<std::size_t>(i)].push_back(j);
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), w);
        if (i < j) ++edge_count_;
      }
    }
  }
  sparse_.resize(n_, n_);
  sparse_.setFromTriplets(triplets.begin(), triplets.end());
  sparse_.makeCompressed();
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Index i = 0; i < n_; ++i)
    for (Index j = i + 1; j < n_; ++j)
      if (weights_(i, j) > 0.0) out.push_back({i, j, weights_(i, j)});
  return out;
}

Network build_network(Index n, const std::vector<Edge>& edges) {
  if (n <= 0) throw ConfigError("build_network: agent count must be positive");
  Matrix w = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    const std::string where = "edge #" + std::to_string(k) + " (" + std::to_string(e.i) + ", " +
                              std::to_string(e.j) + ")";
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw ConfigError("build_network: index out of range at " + where);
    if (e.i == e.j) throw ConfigError("build_network: self-loop at " + where);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw ConfigError("build_network: non-positive weight at " + where);
    if (w(e.i, e.j) != 0.0) throw ConfigError("build_network: duplicate pair at " + where);
    w(e.i, e.j) = e.weight;
    w(e.j, e.i) = e.weight;
  }
  return Network(n, std::move(w));
}

double density(const Network& net) {
  if (net.n() < 2) throw ConfigError("density: needs at least 2 agents");
  const double n = static_cast<double>(net.n());
  return 2.0 * static_cast<double>(net.edge_count()) / (n * (n - 1.0));
}

Network load_edge_list(const std::string& path, Index n_hint) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list: " + path);
  std::vector<Edge> edges;
  Index max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    long long i, j;
    if (!(ss >> i)) continue;  // blank or comment-only line
    double w = 1.0;
    if (!(ss >> j))
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'i j [weight]'");
    std::string rest;
    if (ss >> rest) {
      try {
        std::size_t used = 0;
        w = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(rest);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": bad weight '" + rest + "'");
      }
    }
    edges.push_back({static_cast<Index>(i), static_cast<Index>(j), w});
    max_index = std::max({max_index, static_cast<Index>(i), static_cast<Index>(j)});
  }
  const Index n = n_hint >= 0 ? n_hint : max_index + 1;
  if (n <= 0) throw ConfigError(path + ": no edges and no agent count given");
  return build_network(n, edges);
}

void save_edge_list(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write edge list: " + path);
  out << "# i j weight\n";
  for (const Edge& e : net.edges())
    out << e.i << ' ' << e.j << ' ' << format_double(e.weight) << '\n';
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace netlock
