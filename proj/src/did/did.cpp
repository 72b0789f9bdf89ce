#include "did/did.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "did/ols.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/text_io.hpp"

namespace debatenet {

std::string_view variant_name(PanelVariant v) {
  switch (v) {
    case PanelVariant::Main: return "main";
    case PanelVariant::ExcludeWinningReplies: return "exclude_winning_replies";
    case PanelVariant::Unweighted: return "unweighted";
  }
  return "main";
}

PanelVariant parse_variant(std::string_view name) {
  if (name == "main") return PanelVariant::Main;
  if (name == "exclude_winning_replies" || name == "exclude-winning" || name == "exclude_winning") {
    return PanelVariant::ExcludeWinningReplies;
  }
  if (name == "unweighted") return PanelVariant::Unweighted;
  throw ConfigError("unknown variant '" + std::string(name) + "'");
}

namespace {

std::string awarded_comment(const Discussion& d, const MatchedPair& p, const DeltaRules& rules) {
  for (const auto& a : detect_deltas(d, rules)) {
    if (a.from_op && a.recipient == p.treated_user && a.award_time == p.cutoff_time) {
      return a.awarded_comment_id;
    }
  }
  throw DataError("no OP award to '" + p.treated_user + "' at time " + std::to_string(p.cutoff_time) +
                  " in discussion '" + p.discussion_id + "'");
}

}  // namespace

std::vector<PairSnapshots> snapshot_pairs(const std::vector<MatchedPair>& pairs, const Corpus& corpus,
                                          PanelVariant variant, const PanelOptions& opts) {
  if (pairs.empty()) throw DataError("panel needs at least one matched pair");
  std::vector<PairSnapshots> out(pairs.size());
  parallel_for(pairs.size(), opts.threads, [&](std::size_t i) {
    const MatchedPair& p = pairs[i];
    const Discussion* d = corpus.find(p.discussion_id);
    if (!d) throw DataError("pair references unknown discussion '" + p.discussion_id + "'");
    GraphOptions before_opts;
    before_opts.weighted = variant != PanelVariant::Unweighted;
    GraphOptions after_opts = before_opts;
    if (variant == PanelVariant::ExcludeWinningReplies) {
      after_opts.exclude_replies_to_comment = awarded_comment(*d, p, opts.rules);
    }
    const ReplyGraph gb = build_reply_graph(*d, p.cutoff_time, before_opts);
    const ReplyGraph ga = build_reply_graph(*d, kEndOfConversation, after_opts);
    const GraphCentralities cb(gb, opts.centrality);
    const GraphCentralities ca(ga, opts.centrality);
    PairSnapshots& s = out[i];
    s.pair_id = p.pair_id();
    s.user = {p.control_user, p.treated_user};
    for (int g = 0; g < 2; ++g) {
      s.before[g] = cb.of(s.user[g]);
      s.after[g] = ca.of(s.user[g]);
    }
  });
  return out;
}

std::vector<PanelObservation> panel_from_snapshots(const std::vector<PairSnapshots>& snaps,
                                                   std::string_view centrality, PanelVariant variant) {
  std::vector<PanelObservation> obs;
  obs.reserve(snaps.size() * 4);
  for (const auto& s : snaps) {
    for (int g = 0; g < 2; ++g) {
      for (int t = 0; t < 2; ++t) {
        const CentralityVector& c = t == 0 ? s.before[g] : s.after[g];
        obs.push_back(PanelObservation{s.pair_id, s.user[g], g, t, c.get(centrality),
                                       std::string(centrality), variant, c.absent});
      }
    }
  }
  return obs;
}

std::vector<PanelObservation> build_panel(const std::vector<MatchedPair>& pairs, const Corpus& corpus,
                                          std::string_view centrality, PanelVariant variant,
                                          const PanelOptions& opts) {
  return panel_from_snapshots(snapshot_pairs(pairs, corpus, variant, opts), centrality, variant);
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string DidResult::stars() const { return significance_stars(p_values[3]); }

DidResult did_estimate(const std::vector<PanelObservation>& panel, const DidOptions& opts) {
  if (panel.empty()) throw DataError("empty panel");
  std::map<std::string, std::set<std::pair<int, int>>> cells;
  std::map<std::string, std::size_t> counts;
  for (const auto& o : panel) {
    if (o.centrality != panel.front().centrality || o.variant != panel.front().variant) {
      throw DataError("panel mixes centralities or variants");
    }
    cells[o.pair_id].insert({o.g, o.t});
    ++counts[o.pair_id];
  }
  for (const auto& [pid, c] : cells) {
    if (c.size() != 4 || counts[pid] != 4) {
      throw DataError("unbalanced panel: pair '" + pid + "' does not have one observation per (G,T) cell");
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(panel.size());
  Eigen::MatrixXd x(n, 4);
  Eigen::VectorXd y(n);
  std::vector<std::size_t> cluster(panel.size());
  std::map<std::string, std::size_t> cluster_id;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = panel[static_cast<std::size_t>(i)];
    x(i, 0) = 1.0;
    x(i, 1) = o.t;
    x(i, 2) = o.g;
    x(i, 3) = o.t * o.g;
    y(i) = o.y;
    cluster[static_cast<std::size_t>(i)] =
        cluster_id.try_emplace(o.pair_id, cluster_id.size()).first->second;
  }
  const std::vector<std::string> names{"intercept", "T", "G", "TxG"};
  const OlsResult fit = opts.cluster_by_pair ? ols_clustered(x, y, cluster, names) : ols(x, y, names);

  DidResult r;
  for (int j = 0; j < 4; ++j) {
    r.beta[j] = fit.beta(j);
    r.se[j] = fit.se(j);
    r.t_stats[j] = fit.t_stats(j);
    r.p_values[j] = fit.p_values(j);
  }
  r.n_obs = panel.size();
  r.centrality = panel.front().centrality;
  r.variant = panel.front().variant;
  return r;
}

std::string did_csv(const std::vector<DidResult>& results) {
  std::string out = csv_line({"centrality", "variant", "n_obs", "beta0", "beta1", "beta2", "beta3", "se0",
                              "se1", "se2", "se3", "t3", "p3", "stars"});
  for (const auto& r : results) {
    std::vector<std::string> row{r.centrality, std::string(variant_name(r.variant)), std::to_string(r.n_obs)};
    for (double b : r.beta) row.push_back(format_double(b));
    for (double s : r.se) row.push_back(format_double(s));
    row.push_back(format_double(r.t_stats[3]));
    row.push_back(format_double(r.p_values[3]));
    row.push_back(r.stars());
    out += csv_line(row);
  }
  return out;
}

std::string did_table(const std::vector<DidResult>& results) {
  std::vector<PanelVariant> variants;
  std::vector<std::string> rows;
  std::map<std::pair<std::string, PanelVariant>, const DidResult*> cell;
  for (const auto& r : results) {
    if (std::find(variants.begin(), variants.end(), r.variant) == variants.end()) variants.push_back(r.variant);
    if (std::find(rows.begin(), rows.end(), r.centrality) == rows.end()) rows.push_back(r.centrality);
    cell[{r.centrality, r.variant}] = &r;
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  char buf[64];
  const std::size_t w0 = 16;
  const std::size_t w = 26;
  std::string out = pad("Centrality", w0);
  for (auto v : variants) out += pad(std::string(variant_name(v)), w);
  out += "\n" + std::string(w0 + w * variants.size(), '-') + "\n";
  for (const auto& name : rows) {
    std::string coef = pad(name, w0);
    std::string se = pad("", w0);
    for (auto v : variants) {
      auto it = cell.find({name, v});
      if (it == cell.end()) {
        coef += pad("", w);
        se += pad("", w);
        continue;
      }
      std::snprintf(buf, sizeof buf, "%.3f%s", it->second->beta[3], it->second->stars().c_str());
      coef += pad(buf, w);
      std::snprintf(buf, sizeof buf, "(%.3f)", it->second->se[3]);
      se += pad(buf, w);
    }
    out += coef + "\n" + se + "\n";
  }
  out += std::string(w0 + w * variants.size(), '-') + "\n";
  std::string nrow = pad("Observations", w0);
  for (auto v : variants) {
    std::size_t n = 0;
    for (const auto& r : results) {
      if (r.variant == v) n = std::max(n, r.n_obs);
    }
    nrow += pad(std::to_string(n), w);
  }
  out += nrow + "\n";
  out += "*** p<0.001, ** p<0.01, * p<0.05\n";
  return out;
}

}  // namespace debatenet
