#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "network/centrality.hpp"
#include "network/graph.hpp"
#include "oracles.hpp"
#include "util/error.hpp"

using namespace debatenet;
using fixtures::comment;
using fixtures::post;

namespace {

Discussion two_replies() {
  return fixtures::single(post("p1", "op", 100) + comment("c1", "a", "p1", "p1", 110, "x") +
                          comment("c2", "a", "p1", "p1", 120, "y") + comment("c3", "b", "c1", "p1", 130, "z"));
}

ReplyGraph graph(std::vector<std::string> nodes, std::vector<std::tuple<std::string, std::string, double>> edges) {
  return ReplyGraph::from_edges(std::move(nodes), edges);
}

double at(const ReplyGraph& g, const std::vector<double>& v, const std::string& u) { return v[*g.index_of(u)]; }

}  // namespace

TEST_CASE("reply graph weights and cutoff") {
  const auto d = two_replies();
  const auto g = build_reply_graph(d, 125);
  CHECK(g.weight(*g.index_of("a"), *g.index_of("op")) == 2.0);
  CHECK(g.edge_count() == 1);
  GraphOptions unweighted;
  unweighted.weighted = false;
  const auto gu = build_reply_graph(d, 125, unweighted);
  CHECK(gu.weight(*gu.index_of("a"), *gu.index_of("op")) == 1.0);
  const auto empty = build_reply_graph(d, 100);
  CHECK(empty.edge_count() == 0);
  CHECK(empty.node_count() == 1);
}

TEST_CASE("edge list export") {
  const auto g = build_reply_graph(two_replies(), kEndOfConversation);
  CHECK(g.to_edge_list() == "a\top\t2\nb\ta\t1\n");
}

TEST_CASE("self replies are dropped and counted") {
  const auto d = fixtures::single(post("p1", "op", 100) + comment("c1", "a", "p1", "p1", 110, "x") +
                                  comment("c2", "a", "c1", "p1", 120, "y"));
  const auto g = build_reply_graph(d, kEndOfConversation);
  CHECK(g.self_replies_dropped() == 1);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("excluding replies to one comment") {
  const auto d = two_replies();
  GraphOptions o;
  o.exclude_replies_to_comment = "c1";
  const auto g = build_reply_graph(d, kEndOfConversation, o);
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(*g.index_of("b"), *g.index_of("a")) == 0.0);
}

TEST_CASE("degree centralities") {
  const auto star = graph({"c", "l1", "l2", "l3"}, {{"l1", "c", 1}, {"l2", "c", 1}, {"l3", "c", 1}});
  CHECK(degree_centralities(star, "c").in == 3.0);
  const auto g = graph({"u", "v", "w"}, {{"u", "v", 1}, {"u", "w", 1}});
  const auto d = degree_centralities(g, "u");
  CHECK(d.out == 2.0);
  CHECK(d.in == 0.0);
  CHECK(d.ratio == 2.0);
  CHECK(degree_centralities(g, "v").ratio == 0.0);
  CHECK_THROWS_AS(degree_centralities(g, "nobody"), DataError);
}

TEST_CASE("hits closed forms") {
  SUBCASE("single edge") {
    const auto g = graph({"a", "b", "c"}, {{"a", "b", 1}});
    const auto h = hits(g);
    CHECK(at(g, h.hub, "a") == doctest::Approx(1.0));
    CHECK(at(g, h.authority, "b") == doctest::Approx(1.0));
    CHECK(at(g, h.hub, "b") == 0.0);
    CHECK(at(g, h.authority, "a") == 0.0);
    CHECK(at(g, h.hub, "c") == 0.0);
  }
  SUBCASE("two sources, one target") {
    const auto g = graph({"s1", "s2", "t"}, {{"s1", "t", 1}, {"s2", "t", 1}});
    const auto h = hits(g);
    CHECK(at(g, h.hub, "s1") == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(at(g, h.hub, "s2") == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(at(g, h.authority, "t") == doctest::Approx(1.0));
  }
  SUBCASE("edgeless graph is degenerate") {
    const auto h = hits(graph({"a", "b"}, {}));
    CHECK(h.degenerate);
    CHECK(h.authority == std::vector<double>{0.0, 0.0});
  }
}

TEST_CASE("hits fixed point and dense oracle on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rg = oracle::random_digraph(rng, 3 + rng.index(20), 0.2, 4);
    const auto g = ReplyGraph::from_edges(rg.nodes, rg.edges);
    if (g.edge_count() == 0) continue;
    const auto h = hits(g);
    Eigen::VectorXd a(static_cast<Eigen::Index>(g.node_count())), hub(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a(i) = h.authority[static_cast<std::size_t>(i)];
      hub(i) = h.hub[static_cast<std::size_t>(i)];
    }
    Eigen::VectorXd fixed = rg.w.transpose() * hub;
    fixed.normalize();
    CHECK((a - fixed).lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK(oracle::cosine_distance(a, oracle::hits_authority_dense(rg.w)) < 1e-6);
    CHECK(a.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("betweenness examples") {
  const auto path = graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}});
  const auto bp = betweenness(path);
  CHECK(at(path, bp, "b") == 1.0);
  CHECK(at(path, bp, "a") == 0.0);
  CHECK(at(path, bp, "c") == 0.0);

  const auto cycle = graph({"a", "b", "c", "d"}, {{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}});
  // Each source reaches the others at distances 1, 2, 3: three interior credits per source.
  for (double v : betweenness(cycle)) CHECK(v == doctest::Approx(3.0));

  const auto dag = graph({"a", "b", "c", "d"}, {{"a", "b", 1}, {"a", "c", 1}, {"b", "d", 1}, {"c", "d", 1}});
  const auto bd = betweenness(dag);
  CHECK(at(dag, bd, "d") == 0.0);
  CHECK(at(dag, bd, "b") == doctest::Approx(0.5));
}

TEST_CASE("betweenness ignores multiplicity with hop distances") {
  const auto light = graph({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}});
  const auto heavy = graph({"a", "b", "c"}, {{"a", "b", 9}, {"b", "c", 9}, {"a", "c", 1}});
  CHECK(betweenness(light) == betweenness(heavy));
  // With inverse-weight lengths the heavy two-hop route is shorter.
  CHECK(at(heavy, betweenness(heavy, PathMetric::InverseWeight), "b") == doctest::Approx(1.0));
}

TEST_CASE("brandes equals exhaustive enumeration on small graphs") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const auto rg = oracle::random_digraph(rng, n, 0.35, 3);
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) adj[i][j] = rg.w(Eigen::Index(i), Eigen::Index(j)) > 0;
    }
    const auto g = ReplyGraph::from_edges(rg.nodes, rg.edges);
    const auto got = betweenness(g);
    const auto want = oracle::betweenness_by_enumeration(n, adj);
    for (std::size_t v = 0; v < n; ++v) CHECK(got[v] == doctest::Approx(want[v]).epsilon(1e-12));
  }
}

TEST_CASE("graph invariants on a generated thread") {
  std::string lines = post("p1", "op", 0);
  Rng rng(4);
  for (int i = 1; i <= 60; ++i) {
    const std::string parent = i == 1 || rng.bernoulli(0.2) ? "p1" : "c" + std::to_string(1 + rng.index(i - 1));
    lines += comment("c" + std::to_string(i), "u" + std::to_string(rng.index(8)), parent, "p1", i * 10, "x");
  }
  const auto d = fixtures::single(lines);
  Timestamp prev = 0;
  ReplyGraph prev_g = build_reply_graph(d, prev);
  for (Timestamp cut : {100, 250, 400, 601, static_cast<int>(1e9)}) {
    const auto g = build_reply_graph(d, cut);
    double in = 0, out = 0;
    for (const auto& u : g.nodes()) {
      const auto dc = degree_centralities(g, u);
      in += dc.in;
      out += dc.out;
    }
    CHECK(in == g.total_weight());
    CHECK(out == g.total_weight());
    // Monotone time: earlier weights never exceed later ones.
    for (std::size_t a = 0; a < prev_g.node_count(); ++a) {
      for (const auto& e : prev_g.out_edges(a)) {
        const auto fa = g.index_of(prev_g.nodes()[a]);
        const auto fb = g.index_of(prev_g.nodes()[e.to]);
        REQUIRE(fa);
        REQUIRE(fb);
        CHECK(e.weight <= g.weight(*fa, *fb));
      }
    }
    GraphOptions uo;
    uo.weighted = false;
    const auto gu = build_reply_graph(d, cut, uo);
    CHECK(gu.nodes() == g.nodes());
    CHECK(gu.edge_count() == g.edge_count());
    for (std::size_t a = 0; a < gu.node_count(); ++a) {
      for (const auto& e : gu.out_edges(a)) {
        CHECK(e.weight == 1.0);
        CHECK(g.weight(a, e.to) > 0.0);
      }
    }
    // Betweenness vanishes for nodes lacking in- or out-edges.
    const auto bc = betweenness(g);
    const auto hr = hits(g);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      if (g.in_edges(v).empty() || g.out_edges(v).empty()) CHECK(bc[v] == 0.0);
      CHECK(hr.authority[v] >= 0.0);
      CHECK(hr.authority[v] <= 1.0 + 1e-12);
    }
    prev_g = g;
  }
}

TEST_CASE("snapshot before an award: winner's out-degree exceeds in-degree") {
  const auto d = fixtures::single(
      post("p1", "op", 100) + comment("w1", "winner", "p1", "p1", 110, "a") +
      comment("o1", "op", "w1", "p1", 115, "hmm") + comment("w2", "winner", "o1", "p1", 120, "b") +
      comment("k1", "other", "p1", "p1", 121, "c") + comment("w3", "winner", "k1", "p1", 125, "d") +
      comment("a1", "op", "w3", "p1", 130, "\xe2\x88\x86"));
  const auto c = centrality_snapshot(d, "winner", 130);
  CHECK(c.out_degree > c.in_degree);
  CHECK(c.out_degree == 3.0);
  CHECK(c.in_degree == 1.0);
  CHECK(c.degree_ratio == 3.0);
}

TEST_CASE("snapshot at end of conversation equals the full graph") {
  const auto d = two_replies();
  const auto snap = centrality_snapshot(d, "a", kEndOfConversation);
  const auto g = build_reply_graph(d, kEndOfConversation);
  const auto full = GraphCentralities(g).of("a");
  CHECK(snap.values() == full.values());
  CHECK(snap.in_degree == 1.0);
  CHECK(snap.out_degree == 2.0);
}

TEST_CASE("snapshot on an empty graph is all zeros and degenerate") {
  const auto d = fixtures::single(post("p1", "op", 100) + comment("c1", "lost", "gone", "p1", 110, "x"));
  const auto c = centrality_snapshot(d, "lost", kEndOfConversation);
  CHECK(c.degenerate);
  for (double v : c.values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(centrality_snapshot(d, "lost", 110), IneligibleError);
}

TEST_CASE("absent users get isolated zeros") {
  const auto g = graph({"a", "b"}, {{"a", "b", 1}});
  const auto c = GraphCentralities(g).of("zed");
  CHECK(c.absent);
  for (double v : c.values()) CHECK(v == 0.0);
  CHECK(CentralityVector::names().size() == 6);
  CHECK(c.get("hub") == 0.0);
  CHECK_THROWS(c.get("pagerank"));
}
