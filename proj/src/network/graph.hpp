#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "corpus/corpus.hpp"

namespace debatenet {

struct GraphOptions {
  bool weighted = true;
  // Drop replies whose parent is this comment (robustness check).
  std::optional<std::string> exclude_replies_to_comment;
};

// Directed user-level reply graph. Node ids are sorted lexicographically so
// indices are stable for a given node set.
class ReplyGraph {
 public:
  struct Edge {
    std::size_t to;
    double weight;
  };

  ReplyGraph() = default;

  // Builds from explicit (from, to, weight) triples; self-loops are dropped and counted.
  static ReplyGraph from_edges(std::vector<std::string> nodes,
                               const std::vector<std::tuple<std::string, std::string, double>>& edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;
  double total_weight() const;
  const std::vector<std::string>& nodes() const { return nodes_; }
  std::optional<std::size_t> index_of(std::string_view user) const;

  const std::vector<Edge>& out_edges(std::size_t u) const { return out_[u]; }
  const std::vector<Edge>& in_edges(std::size_t u) const { return in_[u]; }
  double weight(std::size_t from, std::size_t to) const;

  std::size_t self_replies_dropped() const { return self_replies_; }

  // "from<TAB>to<TAB>weight" per edge, sorted by (from, to).
  std::string to_edge_list() const;

 private:
  friend ReplyGraph build_reply_graph(const Discussion&, Timestamp, const GraphOptions&);
  void finalize(const std::map<std::pair<std::size_t, std::size_t>, double>& weights);

  std::vector<std::string> nodes_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
  std::size_t self_replies_ = 0;
};

// Edges from comments created strictly before cutoff: one increment per reply,
// from the reply's author to the parent's author. Nodes are the OP plus every
// author with a comment before cutoff.
ReplyGraph build_reply_graph(const Discussion& d, Timestamp cutoff, const GraphOptions& opts = {});

}  // namespace debatenet
