#include "debatenet/debatenet.h"

#include <cstring>
#include <new>
#include <string>

#include "corpus/stats.hpp"
#include "did/did.hpp"
#include "learn/evaluation.hpp"
#include "network/centrality.hpp"
#include "pipeline/config.hpp"
#include "pipeline/stages.hpp"
#include "util/error.hpp"

struct dn_config {
  debatenet::RunConfig cfg;
};

struct dn_corpus {
  debatenet::Corpus corpus;
};

namespace {

thread_local std::string last_error;

dn_status fail(dn_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
dn_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const debatenet::ConfigError& e) {
    return fail(DN_ERR_CONFIG, e.what());
  } catch (const debatenet::DataError& e) {
    return fail(DN_ERR_DATA, e.what());
  } catch (const debatenet::IoError& e) {
    return fail(DN_ERR_DATA, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DN_ERR_INTERNAL, "unknown error");
  }
}

dn_status copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf) return cap == 0 ? (needed ? DN_OK : fail(DN_ERR_ARGUMENT, "no output buffer")) : fail(DN_ERR_ARGUMENT, "null buffer");
  if (cap < s.size() + 1) {
    if (cap > 0) buf[0] = '\0';
    return fail(DN_ERR_BUFFER, "output buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return DN_OK;
}

std::string node_name(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%020zu", i);
  return buf;
}

debatenet::ReplyGraph graph_from_arrays(size_t n_nodes, const size_t* from, const size_t* to, const double* weight,
                                        size_t n_edges) {
  std::vector<std::string> nodes(n_nodes);
  for (size_t i = 0; i < n_nodes; ++i) nodes[i] = node_name(i);
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (size_t e = 0; e < n_edges; ++e) {
    if (from[e] >= n_nodes || to[e] >= n_nodes) throw debatenet::DataError("edge endpoint out of range");
    const double w = weight ? weight[e] : 1.0;
    if (!(w > 0.0)) throw debatenet::DataError("edge weights must be positive");
    edges.emplace_back(nodes[from[e]], nodes[to[e]], w);
  }
  // Zero-padded names sort in numeric order, so graph indices equal node ids.
  return debatenet::ReplyGraph::from_edges(std::move(nodes), edges);
}

}  // namespace

extern "C" {

const char* dn_last_error(void) { return last_error.c_str(); }

const char* dn_version(void) { return "1.0.0"; }

dn_status dn_config_new(dn_config** out) {
  if (!out) return fail(DN_ERR_ARGUMENT, "null output handle");
  return guarded([&] {
    *out = new dn_config{};
    return DN_OK;
  });
}

dn_status dn_config_load(const char* path, dn_config** out) {
  if (!out || !path) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new dn_config{debatenet::RunConfig::load(path)};
    return DN_OK;
  });
}

dn_status dn_config_set(dn_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    cfg->cfg.set(key, value);
    return DN_OK;
  });
}

dn_status dn_config_get(const dn_config* cfg, const char* key, char* buf, size_t cap, size_t* needed) {
  if (!cfg || !key) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(cfg->cfg.get(key), buf, cap, needed); });
}

dn_status dn_config_hash(const dn_config* cfg, const char* stage, char* buf, size_t cap, size_t* needed) {
  if (!cfg || !stage) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(cfg->cfg.hash(debatenet::parse_stage(stage)), buf, cap, needed); });
}

void dn_config_free(dn_config* cfg) { delete cfg; }

dn_status dn_run_stage(const dn_config* cfg, const char* stage, char* summary, size_t cap, size_t* needed) {
  if (!cfg || !stage) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto res = debatenet::run_stage(debatenet::parse_stage(stage), cfg->cfg);
    if (!summary && cap == 0 && !needed) return DN_OK;
    return copy_out(res.summary, summary, cap, needed);
  });
}

dn_status dn_corpus_load(const char* path, dn_corpus** out) {
  if (!out || !path) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new dn_corpus{debatenet::load_corpus_files({path})};
    return DN_OK;
  });
}

size_t dn_corpus_discussion_count(const dn_corpus* corpus) { return corpus ? corpus->corpus.discussions.size() : 0; }

size_t dn_corpus_comment_count(const dn_corpus* corpus) {
  if (!corpus) return 0;
  size_t n = 0;
  for (const auto& d : corpus->corpus.discussions) n += d.comments.size();
  return n;
}

dn_status dn_corpus_stats_json(const dn_corpus* corpus, const dn_config* cfg, char* buf, size_t cap,
                               size_t* needed) {
  if (!corpus) return fail(DN_ERR_ARGUMENT, "null corpus");
  return guarded([&] {
    const debatenet::DeltaRules rules = cfg ? debatenet::delta_rules(cfg->cfg) : debatenet::DeltaRules{};
    return copy_out(debatenet::corpus_stats(corpus->corpus, rules).to_json(), buf, cap, needed);
  });
}

void dn_corpus_free(dn_corpus* corpus) { delete corpus; }

dn_status dn_auc(const double* scores, const int* labels, size_t n, double* out) {
  if ((!scores || !labels) && n > 0) return fail(DN_ERR_ARGUMENT, "null array");
  if (!out) return fail(DN_ERR_ARGUMENT, "null output");
  return guarded([&] {
    *out = debatenet::auc(std::vector<double>(scores, scores + n), std::vector<int>(labels, labels + n));
    return DN_OK;
  });
}

dn_status dn_betweenness(size_t n_nodes, const size_t* from, const size_t* to, const double* weight,
                         size_t n_edges, int inverse_weight, double* out) {
  if ((!from || !to) && n_edges > 0) return fail(DN_ERR_ARGUMENT, "null edge array");
  if (!out && n_nodes > 0) return fail(DN_ERR_ARGUMENT, "null output");
  return guarded([&] {
    const auto g = graph_from_arrays(n_nodes, from, to, weight, n_edges);
    const auto b = debatenet::betweenness(
        g, inverse_weight ? debatenet::PathMetric::InverseWeight : debatenet::PathMetric::Hops);
    std::copy(b.begin(), b.end(), out);
    return DN_OK;
  });
}

dn_status dn_hits(size_t n_nodes, const size_t* from, const size_t* to, const double* weight, size_t n_edges,
                  double tol, int max_iter, double* authority, double* hub) {
  if ((!from || !to) && n_edges > 0) return fail(DN_ERR_ARGUMENT, "null edge array");
  if ((!authority || !hub) && n_nodes > 0) return fail(DN_ERR_ARGUMENT, "null output");
  return guarded([&] {
    const auto g = graph_from_arrays(n_nodes, from, to, weight, n_edges);
    const auto h = debatenet::hits(g, tol, max_iter);
    std::copy(h.authority.begin(), h.authority.end(), authority);
    std::copy(h.hub.begin(), h.hub.end(), hub);
    return DN_OK;
  });
}

dn_status dn_did(const double* y, const int* g, const int* t, const size_t* pair, size_t n, int cluster_by_pair,
                 dn_did_result* out) {
  if (!y || !g || !t || !pair || !out) return fail(DN_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<debatenet::PanelObservation> panel(n);
    for (size_t i = 0; i < n; ++i) {
      if ((g[i] != 0 && g[i] != 1) || (t[i] != 0 && t[i] != 1)) {
        throw debatenet::DataError("g and t must be 0 or 1");
      }
      panel[i].pair_id = std::to_string(pair[i]);
      panel[i].g = g[i];
      panel[i].t = t[i];
      panel[i].y = y[i];
      panel[i].centrality = "y";
    }
    debatenet::DidOptions opts;
    opts.cluster_by_pair = cluster_by_pair != 0;
    const auto r = debatenet::did_estimate(panel, opts);
    for (int j = 0; j < 4; ++j) {
      out->beta[j] = r.beta[j];
      out->se[j] = r.se[j];
      out->t_stats[j] = r.t_stats[j];
      out->p_values[j] = r.p_values[j];
    }
    out->n_obs = r.n_obs;
    return DN_OK;
  });
}

}  // extern "C"
