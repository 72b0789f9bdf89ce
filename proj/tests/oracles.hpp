#pragma once

// Independent reference implementations used by the unit and acceptance tests.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "network/graph.hpp"
#include "util/rng.hpp"

namespace oracle {

// Betweenness by enumerating every simple path: for each ordered pair (s, t)
// keep the paths of minimum hop count and credit each interior node with its
// share of them. Exact for the small graphs it is used on.
inline std::vector<double> betweenness_by_enumeration(std::size_t n, const std::vector<std::vector<int>>& adj) {
  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> cur{s};
      std::vector<char> on(n, 0);
      on[s] = 1;
      std::function<void(std::size_t)> dfs = [&](std::size_t u) {
        if (u == t) {
          paths.push_back(cur);
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (adj[u][v] && !on[v]) {
            on[v] = 1;
            cur.push_back(v);
            dfs(v);
            cur.pop_back();
            on[v] = 0;
          }
        }
      };
      dfs(s);
      if (paths.empty()) continue;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (const auto& p : paths) best = std::min(best, p.size());
      double total = 0.0;
      std::vector<double> through(n, 0.0);
      for (const auto& p : paths) {
        if (p.size() != best) continue;
        total += 1.0;
        for (std::size_t k = 1; k + 1 < p.size(); ++k) through[p[k]] += 1.0;
      }
      for (std::size_t v = 0; v < n; ++v) bc[v] += through[v] / total;
    }
  }
  return bc;
}

// Dense power iteration for the principal eigenvector of W^T W, started from
// the same uniform hub vector the library uses.
inline Eigen::VectorXd hits_authority_dense(const Eigen::MatrixXd& w, int iterations = 20000) {
  const Eigen::Index n = w.rows();
  const Eigen::MatrixXd m = w.transpose() * w;
  Eigen::VectorXd a = w.transpose() * Eigen::VectorXd::Ones(n);
  if (a.norm() == 0.0) return Eigen::VectorXd::Zero(n);
  a.normalize();
  for (int i = 0; i < iterations; ++i) {
    Eigen::VectorXd next = m * a;
    next.normalize();
    if ((next - a).lpNorm<Eigen::Infinity>() < 1e-15) {
      a = next;
      break;
    }
    a = next;
  }
  return a;
}

inline double cosine_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 1.0;
  return 1.0 - a.dot(b) / (na * nb);
}

// Brute-force AUC over every positive/negative pairing.
inline double auc_pairs(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

// Double difference of the four group-period means.
inline double double_difference(const std::vector<double>& y, const std::vector<int>& g, const std::vector<int>& t) {
  double sum[2][2] = {{0, 0}, {0, 0}}, cnt[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum[g[i]][t[i]] += y[i];
    cnt[g[i]][t[i]] += 1.0;
  }
  auto mean = [&](int gg, int tt) { return sum[gg][tt] / cnt[gg][tt]; };
  return (mean(1, 1) - mean(1, 0)) - (mean(0, 1) - mean(0, 0));
}

// Random digraph as (node names, weighted edges, dense adjacency).
struct RandomGraph {
  std::vector<std::string> nodes;
  std::vector<std::tuple<std::string, std::string, double>> edges;
  Eigen::MatrixXd w;
};

inline RandomGraph random_digraph(debatenet::Rng& rng, std::size_t n, double p, int max_weight) {
  RandomGraph g;
  g.w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%03zu", i);
    g.nodes.push_back(buf);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !rng.bernoulli(p)) continue;
      const double wt = static_cast<double>(1 + rng.index(static_cast<std::size_t>(max_weight)));
      g.edges.emplace_back(g.nodes[i], g.nodes[j], wt);
      g.w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = wt;
    }
  }
  return g;
}

}  // namespace oracle
