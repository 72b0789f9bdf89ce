#include "network/graph.hpp"

#include <algorithm>
#include <set>

#include "util/error.hpp"
#include "util/text_io.hpp"

namespace debatenet {

std::size_t ReplyGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

double ReplyGraph::total_weight() const {
  double w = 0.0;
  for (const auto& es : out_) {
    for (const auto& e : es) w += e.weight;
  }
  return w;
}

std::optional<std::size_t> ReplyGraph::index_of(std::string_view user) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), user);
  if (it == nodes_.end() || *it != user) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

double ReplyGraph::weight(std::size_t from, std::size_t to) const {
  for (const auto& e : out_[from]) {
    if (e.to == to) return e.weight;
  }
  return 0.0;
}

void ReplyGraph::finalize(const std::map<std::pair<std::size_t, std::size_t>, double>& weights) {
  out_.assign(nodes_.size(), {});
  in_.assign(nodes_.size(), {});
  for (const auto& [key, w] : weights) {
    out_[key.first].push_back({key.second, w});
    in_[key.second].push_back({key.first, w});
  }
}

ReplyGraph ReplyGraph::from_edges(
    std::vector<std::string> nodes,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  ReplyGraph g;
  std::set<std::string> all(nodes.begin(), nodes.end());
  for (const auto& [f, t, w] : edges) {
    all.insert(f);
    all.insert(t);
  }
  g.nodes_.assign(all.begin(), all.end());
  std::map<std::pair<std::size_t, std::size_t>, double> weights;
  for (const auto& [f, t, w] : edges) {
    if (!(w > 0.0)) throw DataError("edge weight must be positive");
    if (f == t) {
      ++g.self_replies_;
      continue;
    }
    weights[{*g.index_of(f), *g.index_of(t)}] += w;
  }
  g.finalize(weights);
  return g;
}

ReplyGraph build_reply_graph(const Discussion& d, Timestamp cutoff, const GraphOptions& opts) {
  ReplyGraph g;
  std::set<std::string> users{d.op_author};
  for (const auto& c : d.comments) {
    if (c.created_at < cutoff) users.insert(c.author);
  }
  g.nodes_.assign(users.begin(), users.end());

  std::map<std::pair<std::size_t, std::size_t>, double> weights;
  for (const auto& c : d.comments) {
    if (c.created_at >= cutoff || c.orphan) continue;
    if (opts.exclude_replies_to_comment && c.parent_id == *opts.exclude_replies_to_comment) continue;
    const std::string* parent_author = d.author_of(c.parent_id);
    if (!parent_author) continue;
    if (*parent_author == c.author) {
      ++g.self_replies_;
      continue;
    }
    const auto from = *g.index_of(c.author);
    // Under clock skew the parent can postdate the cutoff; such replies are skipped.
    auto to = g.index_of(*parent_author);
    if (!to) continue;
    weights[{from, *to}] += 1.0;
  }
  if (!opts.weighted) {
    for (auto& [_, w] : weights) w = 1.0;
  }
  g.finalize(weights);
  return g;
}

std::string ReplyGraph::to_edge_list() const {
  std::string out;
  for (std::size_t u = 0; u < nodes_.size(); ++u) {
    for (const auto& e : out_[u]) {
      out += nodes_[u];
      out += '\t';
      out += nodes_[e.to];
      out += '\t';
      out += format_double(e.weight);
      out += '\n';
    }
  }
  return out;
}

}  // namespace debatenet
