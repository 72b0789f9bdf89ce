#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "network/graph.hpp"

namespace debatenet {

struct DegreeCentrality {
  double in = 0.0;
  double out = 0.0;
  double ratio = 0.0;  // out / max(in, 1)
};

// Throws DataError for a user not in the graph.
DegreeCentrality degree_centralities(const ReplyGraph& g, std::string_view user);

struct HitsResult {
  std::vector<double> authority;
  std::vector<double> hub;
  bool degenerate = false;  // edgeless graph: all scores zero
  bool converged = false;
  int iterations = 0;
  bool exact_limit = false;  // iteration stalled; limit taken from an eigendecomposition
};

// Power iteration a <- W^T h, h <- W a, each L2-normalised per step, starting
// from a uniform hub vector. If max_iter is reached first, the iteration's limit is
// computed directly (graphs up to 2000 nodes).
HitsResult hits(const ReplyGraph& g, double tol = 1e-10, int max_iter = 1000);

enum class PathMetric {
  Hops,           // every edge has length 1
  InverseWeight,  // edge length 1 / weight
};

// Brandes accumulation of sum_{s != v != t} sigma_st(v) / sigma_st over ordered pairs.
std::vector<double> betweenness(const ReplyGraph& g, PathMetric metric = PathMetric::Hops);

struct CentralityVector {
  double in_degree = 0.0;
  double out_degree = 0.0;
  double degree_ratio = 0.0;
  double authority = 0.0;
  double hub = 0.0;
  double betweenness = 0.0;
  bool degenerate = false;
  // The user was not a node of the graph; scores are the isolated-node zeros.
  bool absent = false;

  static constexpr std::size_t kSize = 6;
  static const std::array<std::string_view, kSize>& names();
  std::array<double, kSize> values() const;
  double get(std::string_view name) const;
};

struct CentralityOptions {
  double hits_tol = 1e-10;
  int hits_max_iter = 1000;
  PathMetric path_metric = PathMetric::Hops;
};

// All six centralities for every node of an already built graph.
class GraphCentralities {
 public:
  GraphCentralities(const ReplyGraph& g, const CentralityOptions& opts = {});
  CentralityVector of(std::string_view user) const;

 private:
  const ReplyGraph* graph_;
  HitsResult hits_;
  std::vector<double> betweenness_;
};

// Throws IneligibleError when the user has no comment before cutoff.
CentralityVector centrality_snapshot(const Discussion& d, const std::string& user, Timestamp cutoff,
                                     const GraphOptions& gopts = {},
                                     const CentralityOptions& copts = {});

}  // namespace debatenet
