#pragma once

#include <string>

#include "netlock/network.hpp"

namespace netlock {

enum class CentralityKind { degree, eigenvector, betweenness, closeness };

std::string to_string(CentralityKind kind);

struct CentralityVector {
  CentralityKind kind;
  Vector values;
};

/// Node strength: values_i = sum_j A_ij.
CentralityVector degree_centrality(const Network& net);

/// Principal eigenvector of the weight matrix by power iteration
/// (tolerance 1e-10, max 10000 iterations), non-negative, unit Euclidean norm.
/// Requires at least one edge. The dominant eigenvalue estimate is returned
/// through `eigenvalue_out` when non-null.
CentralityVector eigenvector_centrality(const Network& net, double* eigenvalue_out = nullptr);

/// Brandes accumulation over all ordered pairs j != k on the unweighted
/// topology; pairs with no connecting path contribute nothing.
CentralityVector betweenness_centrality(const Network& net);

/// values_i = 1 / sum_{j != i} d(i, j) with hop-count distances; unreachable
/// pairs enter as d = n. Requires n >= 2.
CentralityVector closeness_centrality(const Network& net);

CentralityVector compute_centrality(const Network& net, CentralityKind kind);

}  // namespace netlock
