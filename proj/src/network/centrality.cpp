#include "network/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include <Eigen/Dense>

#include "util/error.hpp"

namespace debatenet {

DegreeCentrality degree_centralities(const ReplyGraph& g, std::string_view user) {
  const auto idx = g.index_of(user);
  if (!idx) throw DataError("user '" + std::string(user) + "' is not in the reply graph");
  DegreeCentrality d;
  for (const auto& e : g.in_edges(*idx)) d.in += e.weight;
  for (const auto& e : g.out_edges(*idx)) d.out += e.weight;
  d.ratio = d.out / std::max(d.in, 1.0);
  return d;
}

namespace {

double normalize(std::vector<double>& v) {
  double ss = 0.0;
  for (double x : v) ss += x * x;
  const double norm = std::sqrt(ss);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return norm;
}

constexpr std::size_t kExactLimitMaxNodes = 2000;

// Limit of authority power iteration started from `start`: its projection onto the
// leading eigenspace of W^T W that it overlaps.
std::vector<double> authority_limit(const ReplyGraph& g, const std::vector<double>& start) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (const auto& e : g.out_edges(static_cast<std::size_t>(u))) {
      w(u, static_cast<Eigen::Index>(e.to)) += e.weight;
    }
  }
  const Eigen::MatrixXd m = w.transpose() * w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const double scale = std::max(std::abs(vals(n - 1)), 1.0);
  Eigen::Index hi = n - 1;
  while (hi >= 0) {
    Eigen::Index lo = hi;
    while (lo > 0 && vals(hi) - vals(lo - 1) <= 1e-9 * scale) --lo;
    Eigen::VectorXd proj = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = lo; k <= hi; ++k) proj += vecs.col(k) * vecs.col(k).dot(x0);
    if (proj.norm() > 1e-9 * x0.norm()) {
      return std::vector<double>(proj.data(), proj.data() + n);
    }
    hi = lo - 1;
  }
  return start;
}

}  // namespace

HitsResult hits(const ReplyGraph& g, double tol, int max_iter) {
  const std::size_t n = g.node_count();
  HitsResult r;
  r.authority.assign(n, 0.0);
  r.hub.assign(n, 0.0);
  if (g.edge_count() == 0) {
    r.degenerate = true;
    r.converged = true;
    return r;
  }
  std::vector<double> hub(n, 1.0);
  normalize(hub);
  std::vector<double> auth(n, 0.0);
  std::vector<double> next_auth(n);
  std::vector<double> next_hub(n);
  std::vector<double> start(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& e : g.out_edges(u)) start[e.to] += e.weight * hub[u];
  }
  for (int it = 1; it <= max_iter; ++it) {
    std::fill(next_auth.begin(), next_auth.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& e : g.out_edges(u)) next_auth[e.to] += e.weight * hub[u];
    }
    normalize(next_auth);
    std::fill(next_hub.begin(), next_hub.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& e : g.out_edges(u)) next_hub[u] += e.weight * next_auth[e.to];
    }
    normalize(next_hub);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      delta = std::max(delta, std::abs(next_auth[i] - auth[i]));
      delta = std::max(delta, std::abs(next_hub[i] - hub[i]));
    }
    auth.swap(next_auth);
    hub.swap(next_hub);
    r.iterations = it;
    if (delta < tol) {
      r.converged = true;
      break;
    }
  }
  if (!r.converged && max_iter > 0 && n <= kExactLimitMaxNodes) {
    auth = authority_limit(g, start);
    normalize(auth);
    std::fill(hub.begin(), hub.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& e : g.out_edges(u)) hub[u] += e.weight * auth[e.to];
    }
    normalize(hub);
    r.converged = true;
    r.exact_limit = true;
  }
  r.authority = std::move(auth);
  r.hub = std::move(hub);
  return r;
}

namespace {

void accumulate(std::size_t s, const std::vector<std::size_t>& order,
                const std::vector<std::vector<std::size_t>>& preds, const std::vector<double>& sigma,
                std::vector<double>& delta, std::vector<double>& bc) {
  std::fill(delta.begin(), delta.end(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t w = *it;
    for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != s) bc[w] += delta[w];
  }
}

}  // namespace

std::vector<double> betweenness(const ReplyGraph& g, PathMetric metric) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n);
  std::vector<double> dist(n);
  std::vector<double> delta(n);
  std::vector<std::size_t> order;
  order.reserve(n);
  constexpr double inf = std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), inf);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0.0;

    if (metric == PathMetric::Hops) {
      std::deque<std::size_t> queue{s};
      while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (const auto& e : g.out_edges(v)) {
          if (dist[e.to] == inf) {
            dist[e.to] = dist[v] + 1.0;
            queue.push_back(e.to);
          }
          if (dist[e.to] == dist[v] + 1.0) {
            sigma[e.to] += sigma[v];
            preds[e.to].push_back(v);
          }
        }
      }
    } else {
      // Dijkstra; path lengths within a relative 1e-12 are treated as ties.
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      std::vector<char> done(n, 0);
      pq.push({0.0, s});
      while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        order.push_back(v);
        for (const auto& e : g.out_edges(v)) {
          const double nd = d + 1.0 / e.weight;
          const double tieband = 1e-12 * std::max(1.0, nd);
          if (nd < dist[e.to] - tieband) {
            dist[e.to] = nd;
            sigma[e.to] = sigma[v];
            preds[e.to].assign(1, v);
            pq.push({nd, e.to});
          } else if (std::abs(nd - dist[e.to]) <= tieband && !done[e.to]) {
            sigma[e.to] += sigma[v];
            preds[e.to].push_back(v);
          }
        }
      }
    }
    accumulate(s, order, preds, sigma, delta, bc);
  }
  return bc;
}

const std::array<std::string_view, CentralityVector::kSize>& CentralityVector::names() {
  static const std::array<std::string_view, kSize> n{"in_degree", "out_degree", "degree_ratio",
                                                     "authority", "hub",        "betweenness"};
  return n;
}

std::array<double, CentralityVector::kSize> CentralityVector::values() const {
  return {in_degree, out_degree, degree_ratio, authority, hub, betweenness};
}

double CentralityVector::get(std::string_view name) const {
  const auto& n = names();
  const auto v = values();
  for (std::size_t i = 0; i < kSize; ++i) {
    if (n[i] == name) return v[i];
  }
  throw ConfigError("unknown centrality '" + std::string(name) + "'");
}

GraphCentralities::GraphCentralities(const ReplyGraph& g, const CentralityOptions& opts)
    : graph_(&g), hits_(hits(g, opts.hits_tol, opts.hits_max_iter)),
      betweenness_(betweenness(g, opts.path_metric)) {}

CentralityVector GraphCentralities::of(std::string_view user) const {
  CentralityVector c;
  c.degenerate = hits_.degenerate;
  const auto idx = graph_->index_of(user);
  if (!idx) {
    c.absent = true;
    return c;
  }
  const DegreeCentrality d = degree_centralities(*graph_, user);
  c.in_degree = d.in;
  c.out_degree = d.out;
  c.degree_ratio = d.ratio;
  c.authority = hits_.authority[*idx];
  c.hub = hits_.hub[*idx];
  c.betweenness = betweenness_[*idx];
  return c;
}

CentralityVector centrality_snapshot(const Discussion& d, const std::string& user, Timestamp cutoff,
                                     const GraphOptions& gopts, const CentralityOptions& copts) {
  bool commented = false;
  for (const auto& c : d.comments) {
    if (c.author == user && c.created_at < cutoff) {
      commented = true;
      break;
    }
  }
  if (!commented) {
    throw IneligibleError("user '" + user + "' has no comment before the cutoff in discussion '" +
                          d.post.id + "'");
  }
  const ReplyGraph g = build_reply_graph(d, cutoff, gopts);
  return GraphCentralities(g, copts).of(user);
}

}  // namespace debatenet
