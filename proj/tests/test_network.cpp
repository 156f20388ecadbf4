#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "netlock/centrality.hpp"
#include "netlock/generators.hpp"
#include "netlock/io.hpp"

using namespace netlock;

namespace {

// Oracle: all-pairs hop distances by BFS, independent of the library's
// traversal code.
std::vector<std::vector<int>> bfs_distances(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    dist[s][s] = 0;
    std::vector<int> frontier{s};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int u = 0; u < n; ++u)
          if (w(v, u) > 0.0 && dist[s][u] < 0) {
            dist[s][u] = dist[s][v] + 1;
            next.push_back(u);
          }
      frontier = std::move(next);
    }
  }
  return dist;
}

// Oracle: betweenness by exhaustive enumeration of every shortest path
// (viable for n <= 7).
Vector brute_betweenness(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  const auto dist = bfs_distances(w);
  Vector b = Vector::Zero(n);

  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || dist[s][t] < 0) continue;
      std::vector<std::vector<int>> paths;
      std::vector<int> stack{s};
      std::function<void(int)> dfs = [&](int v) {
        if (v == t) {
          paths.push_back(stack);
          return;
        }
        for (int u = 0; u < n; ++u)
          if (w(v, u) > 0.0 && dist[s][u] == dist[s][v] + 1 && dist[u][t] == dist[v][t] - 1) {
            stack.push_back(u);
            dfs(u);
            stack.pop_back();
          }
      };
      dfs(s);
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        int through = 0;
        for (const auto& path : paths)
          if (std::find(path.begin(), path.end(), v) != path.end()) ++through;
        b(v) += static_cast<double>(through) / static_cast<double>(paths.size());
      }
    }
  return b;
}

Vector max_degree_over_seeds(Index n, int count, bool scale_free) {
  Vector maxima(count);
  for (int s = 0; s < count; ++s) {
    const RngSeed seed{static_cast<std::uint64_t>(s)};
    const Network net =
        scale_free ? generate_scale_free(n, 1, seed) : generate_small_world(n, 2, 0.1, seed);
    maxima(s) = degree_centrality(net).values.maxCoeff();
  }
  return maxima;
}

void check_network_invariants(const Network& net) {
  const Matrix& w = net.weights();
  CHECK(w.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(w.minCoeff() >= 0.0);
  CHECK(w.allFinite());
}

}  // namespace

TEST_SUITE_BEGIN("netgen");

TEST_CASE("build_network constructs symmetric weighted networks") {
  const Network path = build_network(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(path.edge_count() == 2);
  CHECK(path.weights()(0, 1) == 1.0);
  CHECK(path.weights()(1, 0) == 1.0);
  CHECK(path.weights()(0, 2) == 0.0);

  const Network heavy = build_network(2, {{0, 1, 832.0}});
  CHECK(heavy.weights()(0, 1) == 832.0);
  CHECK(heavy.weights()(1, 0) == 832.0);
}

TEST_CASE("build_network rejects invalid edges with the offending entry named") {
  CHECK_THROWS_WITH_AS(build_network(3, {{0, 0, 1.0}}), doctest::Contains("self-loop"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(build_network(3, {{0, 5, 1.0}}), doctest::Contains("out of range"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(build_network(3, {{0, 1, 0.0}}), doctest::Contains("non-positive"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(build_network(3, {{0, 1, 1.0}, {1, 0, 2.0}}),
                       doctest::Contains("duplicate"), ConfigError);
}

TEST_CASE("ring lattice shapes") {
  const Network cycle = generate_ring_lattice(4, 2);
  CHECK(cycle.edge_count() == 4);
  CHECK(degree_centrality(cycle).values.minCoeff() == 2.0);
  CHECK(degree_centrality(cycle).values.maxCoeff() == 2.0);

  const Network big = generate_ring_lattice(1000, 2);
  CHECK(big.edge_count() == 1000);

  const Network k5 = generate_ring_lattice(5, 4);
  CHECK(k5.edge_count() == 10);  // complete graph

  CHECK_THROWS_AS(generate_ring_lattice(10, 3), ConfigError);
  CHECK_THROWS_AS(generate_ring_lattice(4, 4), ConfigError);
}

TEST_CASE("small world preserves edge count and matches the lattice at p = 0") {
  const Network lattice = generate_ring_lattice(40, 4);
  const Network unrewired = generate_small_world(40, 4, 0.0, RngSeed{9});
  CHECK((lattice.weights() - unrewired.weights()).cwiseAbs().maxCoeff() == 0.0);

  const Network sw = generate_small_world(1000, 4, 0.1, RngSeed{7});
  CHECK(sw.edge_count() == 2000);

  const Network again = generate_small_world(1000, 4, 0.1, RngSeed{7});
  CHECK((sw.weights() - again.weights()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random network: exact edge count, saturated and empty cases") {
  const Network triangle = generate_random(3, 3, RngSeed{1});
  CHECK(triangle.edge_count() == 3);
  CHECK(triangle.weights()(0, 1) == 1.0);
  CHECK(triangle.weights()(0, 2) == 1.0);
  CHECK(triangle.weights()(1, 2) == 1.0);

  const Network sparse = generate_random(1000, 1000, RngSeed{3});
  CHECK(sparse.edge_count() == 1000);
  CHECK(degree_centrality(sparse).values.mean() == doctest::Approx(2.0));

  const Network empty = generate_random(10, 0, RngSeed{0});
  CHECK(empty.edge_count() == 0);

  CHECK_THROWS_AS(generate_random(3, 4, RngSeed{0}), ConfigError);

  const Network again = generate_random(200, 400, RngSeed{5});
  const Network twice = generate_random(200, 400, RngSeed{5});
  CHECK((again.weights() - twice.weights()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scale free: tree at minimum size, heavier tails than small world") {
  const Network tiny = generate_scale_free(3, 1, RngSeed{2});
  CHECK(tiny.edge_count() == 2);

  const Network ba = generate_scale_free(1000, 1, RngSeed{4});
  CHECK(degree_centrality(ba).values.mean() == doctest::Approx(2.0).epsilon(0.01));

  // Degree-distribution comparison over 20 seeds: preferential attachment
  // produces hubs far above anything the rewired lattice reaches.
  const Vector ba_max = max_degree_over_seeds(1000, 20, true);
  const Vector sw_max = max_degree_over_seeds(1000, 20, false);
  CHECK(ba_max.maxCoeff() > sw_max.maxCoeff());

  CHECK_THROWS_AS(generate_scale_free(3, 0, RngSeed{0}), ConfigError);
  CHECK_THROWS_AS(generate_scale_free(3, 3, RngSeed{0}), ConfigError);
}

TEST_CASE("generator outputs satisfy the network invariants for many seeds") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    check_network_invariants(generate_small_world(60, 4, 0.2, RngSeed{seed}));
    check_network_invariants(generate_random(60, 120, RngSeed{seed}));
    check_network_invariants(generate_scale_free(60, 2, RngSeed{seed}));
  }
  check_network_invariants(generate_ring_lattice(60, 6));
}

TEST_CASE("density") {
  CHECK(density(generate_ring_lattice(3, 2)) == 1.0);  // triangle
  const Network sw = generate_small_world(1000, 4, 0.1, RngSeed{7});
  CHECK(density(sw) == doctest::Approx(4.0 / 999.0).epsilon(1e-12));
  const Network empty = generate_random(10, 0, RngSeed{0});
  CHECK(density(empty) == 0.0);
  CHECK_THROWS_AS(density(build_network(1, {})), ConfigError);
}

TEST_CASE("degree centrality counts weighted strength") {
  const Network path = build_network(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const Vector deg = degree_centrality(path).values;
  CHECK(deg(0) == 1.0);
  CHECK(deg(1) == 2.0);
  CHECK(deg(2) == 1.0);

  const Network heavy = build_network(2, {{0, 1, 832.0}});
  CHECK(degree_centrality(heavy).values(0) == 832.0);
  CHECK(degree_centrality(heavy).values(1) == 832.0);

  const Network empty = generate_random(4, 0, RngSeed{0});
  CHECK(degree_centrality(empty).values.cwiseAbs().maxCoeff() == 0.0);

  // Unit-weight sum property: total degree is twice the edge count.
  const Network sw = generate_small_world(100, 4, 0.3, RngSeed{11});
  CHECK(degree_centrality(sw).values.sum() ==
        doctest::Approx(2.0 * static_cast<double>(sw.edge_count())));
}

TEST_CASE("eigenvector centrality") {
  const Network k3 = generate_ring_lattice(3, 2);
  const Vector nu = eigenvector_centrality(k3).values;
  for (int i = 0; i < 3; ++i) CHECK(nu(i) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));

  // Star with center 0: oracle via dense symmetric eigendecomposition.
  const Network star = build_network(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  Eigen::SelfAdjointEigenSolver<Matrix> dense(star.weights());
  const Vector principal = dense.eigenvectors().col(3).cwiseAbs();
  const Vector star_nu = eigenvector_centrality(star).values;
  CHECK((star_nu - principal).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(star_nu(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(star_nu(1) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-9));

  // Residual oracle on generated networks, including a bipartite-risk cycle.
  for (const Network& net :
       {generate_small_world(80, 4, 0.2, RngSeed{3}), generate_ring_lattice(50, 2),
        generate_scale_free(80, 2, RngSeed{5})}) {
    double eigenvalue = 0.0;
    const Vector v = eigenvector_centrality(net, &eigenvalue).values;
    CHECK(v.minCoeff() >= 0.0);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((net.weights() * v - eigenvalue * v).cwiseAbs().maxCoeff() < 1e-8);
  }

  CHECK_THROWS_AS(eigenvector_centrality(generate_random(4, 0, RngSeed{0})), ConfigError);
}

TEST_CASE("betweenness centrality: closed forms and the enumeration oracle") {
  const Network path = build_network(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const Vector b = betweenness_centrality(path).values;
  CHECK(b(0) == 0.0);
  CHECK(b(1) == 2.0);  // ordered pairs (0,2) and (2,0)
  CHECK(b(2) == 0.0);

  const Network k3 = generate_ring_lattice(3, 2);
  CHECK(betweenness_centrality(k3).values.cwiseAbs().maxCoeff() == 0.0);

  const Network c5 = generate_ring_lattice(5, 2);
  const Vector b5 = betweenness_centrality(c5).values;
  const Vector oracle5 = brute_betweenness(c5.weights());
  CHECK((b5 - oracle5).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((b5.array() - b5(0)).abs().maxCoeff() < 1e-12);  // symmetry
}

TEST_CASE("closeness centrality: closed forms and the distance convention") {
  const Network path = build_network(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const Vector c = closeness_centrality(path).values;
  CHECK(c(0) == doctest::Approx(1.0 / 3.0));
  CHECK(c(1) == doctest::Approx(1.0 / 2.0));
  CHECK(c(2) == doctest::Approx(1.0 / 3.0));

  const Network k3 = generate_ring_lattice(3, 2);
  CHECK(closeness_centrality(k3).values(0) == doctest::Approx(0.5));

  // Two disconnected edges: unreachable pairs enter as d = n = 4.
  const Network split = build_network(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const Vector cs = closeness_centrality(split).values;
  for (int i = 0; i < 4; ++i) CHECK(cs(i) == doctest::Approx(1.0 / 9.0));

  CHECK_THROWS_AS(closeness_centrality(build_network(1, {})), ConfigError);
}

TEST_CASE("path centralities agree with brute force on connected graphs up to n = 7") {
  std::vector<Network> nets;
  nets.push_back(generate_ring_lattice(6, 2));
  nets.push_back(generate_ring_lattice(7, 4));
  nets.push_back(
      build_network(7, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {1, 4, 1}, {2, 5, 1}, {2, 6, 1}}));
  nets.push_back(
      build_network(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {3, 4, 1}, {4, 5, 1}}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Network net = generate_random(7, 9, RngSeed{seed});
    const auto dist = bfs_distances(net.weights());
    bool connected = true;
    for (int i = 0; i < 7 && connected; ++i)
      for (int j = 0; j < 7; ++j)
        if (dist[i][j] < 0) {
          connected = false;
          break;
        }
    if (connected) nets.push_back(net);
  }

  for (const Network& net : nets) {
    const Vector b = betweenness_centrality(net).values;
    const Vector oracle = brute_betweenness(net.weights());
    CHECK((b - oracle).cwiseAbs().maxCoeff() < 1e-10);

    const auto dist = bfs_distances(net.weights());
    const Vector c = closeness_centrality(net).values;
    for (Index i = 0; i < net.n(); ++i) {
      double total = 0.0;
      for (Index j = 0; j < net.n(); ++j)
        if (j != i)
          total += dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < 0
                       ? static_cast<double>(net.n())
                       : dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      CHECK(c(i) == doctest::Approx(1.0 / total).epsilon(1e-12));
    }
  }
}

TEST_CASE("edge list round trip") {
  const Network net = generate_small_world(30, 4, 0.3, RngSeed{21});
  const std::string path = "test_net.edges";
  save_edge_list(net, path);
  const Network loaded = load_edge_list(path, net.n());
  CHECK((net.weights() - loaded.weights()).cwiseAbs().maxCoeff() == 0.0);

  // Weight column optional, comments ignored.
  write_text_file("test_net2.edges", "# comment\n0 1\n1 2 2.5\n");
  const Network parsed = load_edge_list("test_net2.edges");
  CHECK(parsed.n() == 3);
  CHECK(parsed.weights()(0, 1) == 1.0);
  CHECK(parsed.weights()(1, 2) == 2.5);

  write_text_file("test_net3.edges", "0 1\n1 notanumber\n");
  CHECK_THROWS_WITH_AS(load_edge_list("test_net3.edges"), doctest::Contains(":2"), ConfigError);
}

TEST_SUITE_END();
