#include "pipeline/stages.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "corpus/stats.hpp"
#include "did/did.hpp"
#include "json.hpp"
#include "text/features.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/text_io.hpp"

namespace debatenet {

using ojson = nlohmann::ordered_json;

DeltaRules delta_rules(const RunConfig& cfg) {
  DeltaRules r;
  r.markers = cfg.get_list("delta_markers");
  if (r.markers.empty()) throw ConfigError("delta_markers must name at least one marker");
  r.strip_quoted_lines = cfg.get_bool("strip_quoted_lines");
  r.ignore_authors = cfg.get_list("ignore_authors");
  return r;
}

MatchOptions match_options(const RunConfig& cfg) {
  MatchOptions o;
  o.excluded_users = cfg.get_list("excluded_users");
  return o;
}

LexiconSet lexicons(const RunConfig& cfg) {
  const std::string dir = cfg.get("lexicon_dir");
  return dir.empty() ? LexiconSet::defaults() : LexiconSet::from_directory(dir);
}

CentralityOptions centrality_options(const RunConfig& cfg) {
  CentralityOptions o;
  o.hits_tol = cfg.get_double("hits_tol");
  o.hits_max_iter = static_cast<int>(cfg.get_uint("hits_max_iter"));
  o.path_metric = cfg.get("betweenness_metric") == "inverse_weight" ? PathMetric::InverseWeight : PathMetric::Hops;
  return o;
}

SynthParams synth_params(const RunConfig& cfg) {
  SynthParams p;
  p.n_discussions = cfg.get_uint("synth.n_discussions");
  p.comments_per_discussion = cfg.get_uint("synth.comments_per_discussion");
  p.reply_preferential_strength = cfg.get_double("synth.reply_preferential_strength");
  p.delta_probability = cfg.get_double("synth.delta_probability");
  p.seed = cfg.is_set("synth.seed") ? cfg.get_uint("synth.seed") : cfg.get_uint("seed");
  p.user_pool = cfg.get_uint("synth.user_pool");
  p.challengers_per_discussion = cfg.get_uint("synth.challengers_per_discussion");
  p.op_reply_probability = cfg.get_double("synth.op_reply_probability");
  p.peer_delta_probability = cfg.get_double("synth.peer_delta_probability");
  p.op_overlap = cfg.get_double("synth.op_overlap");
  p.network_signal = cfg.get_double("synth.network_signal");
  p.language_signal = cfg.get_double("synth.language_signal");
  p.post_award_attention = cfg.get_double("synth.post_award_attention");
  p.validate();
  return p;
}

ModelSpec model_spec(const RunConfig& cfg, Family family) {
  ModelSpec spec = default_spec(family, cfg.get_uint("seed"));
  const std::string prefix = "model." + std::string(family_name(family)) + ".";
  for (const auto& key : RunConfig::keys()) {
    if (key.rfind(prefix, 0) != 0 || !cfg.is_set(key)) continue;
    const std::string name = key.substr(prefix.size());
    spec.hyperparameters[name] = name == "bootstrap" ? (cfg.get_bool(key) ? 1.0 : 0.0) : cfg.get_double(key);
  }
  spec.threads = cfg.threads();
  return spec;
}

std::vector<std::string> feature_set_columns(const RunConfig& cfg, const std::string& set) {
  std::vector<std::string> language;
  for (auto n : LanguageFeatureVector::names()) language.emplace_back(n);
  std::vector<std::string> network;
  if (cfg.get("network_features") == "all") {
    for (auto n : CentralityVector::names()) network.emplace_back(n);
  } else {
    network = {"degree_ratio"};
  }
  if (set == "language") return language;
  if (set == "network") return network;
  if (set == "all") {
    language.insert(language.end(), network.begin(), network.end());
    return language;
  }
  throw ConfigError("unknown feature set '" + set + "'");
}

MatchResult match_corpus(const Corpus& corpus, const DeltaRules& rules, const MatchOptions& opts,
                         unsigned threads) {
  std::vector<MatchResult> per(corpus.discussions.size());
  parallel_for(per.size(), threads, [&](std::size_t i) {
    const Discussion& d = corpus.discussions[i];
    // Peer awards are passed too: their recipients are never controls.
    per[i] = match_challengers(d, detect_deltas(d, rules), opts);
  });
  MatchResult all;
  for (auto& r : per) {
    all.pairs.insert(all.pairs.end(), r.pairs.begin(), r.pairs.end());
    all.dropped_no_control += r.dropped_no_control;
    all.dropped_no_prior_comment += r.dropped_no_prior_comment;
    all.repeat_awards += r.repeat_awards;
  }
  return all;
}

LabeledDataset build_feature_table(const Corpus& corpus, const std::vector<MatchedPair>& pairs,
                                   const LexiconSet& lex, const GraphOptions& gopts,
                                   const CentralityOptions& copts, unsigned threads) {
  constexpr std::size_t kLang = LanguageFeatureVector::kSize;
  constexpr std::size_t kNet = CentralityVector::kSize;
  LabeledDataset ds;
  for (auto n : LanguageFeatureVector::names()) ds.feature_names.emplace_back(n);
  for (auto n : CentralityVector::names()) ds.feature_names.emplace_back(n);
  ds.x = Matrix(pairs.size() * 2, kLang + kNet);
  ds.y.resize(pairs.size() * 2);
  ds.pair_id.resize(pairs.size() * 2);
  ds.user.resize(pairs.size() * 2);
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const MatchedPair& p = pairs[i];
    const Discussion* d = corpus.find(p.discussion_id);
    if (!d) throw DataError("pair references unknown discussion '" + p.discussion_id + "'");
    const ReplyGraph g = build_reply_graph(*d, p.cutoff_time, gopts);
    const GraphCentralities gc(g, copts);
    const std::string* users[2] = {&p.treated_user, &p.control_user};
    for (int k = 0; k < 2; ++k) {
      const std::size_t r = 2 * i + static_cast<std::size_t>(k);
      const auto lang = extract_language_features(*users[k], *d, p.cutoff_time, lex).values();
      const auto net = gc.of(*users[k]).values();
      for (std::size_t c = 0; c < kLang; ++c) ds.x(r, c) = lang[c];
      for (std::size_t c = 0; c < kNet; ++c) ds.x(r, kLang + c) = net[c];
      ds.y[r] = k == 0 ? 1 : 0;
      ds.pair_id[r] = p.pair_id();
      ds.user[r] = *users[k];
    }
  });
  return ds;
}

std::string pairs_csv(const std::vector<MatchedPair>& pairs) {
  std::string out = csv_line({"discussion_id", "treated", "control", "cutoff", "similarity"});
  for (const auto& p : pairs) {
    out += csv_line({p.discussion_id, p.treated_user, p.control_user, std::to_string(p.cutoff_time),
                     format_double(p.match_similarity, 17)});
  }
  return out;
}

std::vector<MatchedPair> parse_pairs_csv(const CsvTable& t) {
  const std::size_t cd = t.column("discussion_id"), ct = t.column("treated"), cc = t.column("control"),
                    cu = t.column("cutoff"), cs = t.column("similarity");
  std::vector<MatchedPair> out;
  for (const auto& row : t.rows) {
    MatchedPair p;
    p.discussion_id = row[cd];
    p.treated_user = row[ct];
    p.control_user = row[cc];
    try {
      p.cutoff_time = std::stoll(row[cu]);
      p.match_similarity = std::stod(row[cs]);
    } catch (const std::exception&) {
      throw DataError("malformed pair row for discussion '" + row[cd] + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// Provenance header lines for CSV and text artifacts.
std::string meta_lines(const RunConfig& cfg, Stage s) {
  std::string out = "# stage=" + std::string(stage_name(s)) + "\n# config_hash=" + cfg.hash(s) + "\n";
  for (const auto& [k, v] : cfg.resolved()) out += "# config." + k + "=" + v + "\n";
  return out;
}

ojson meta_json(const RunConfig& cfg, Stage s) {
  ojson j;
  j["stage"] = std::string(stage_name(s));
  j["config_hash"] = cfg.hash(s);
  ojson c = ojson::object();
  for (const auto& [k, v] : cfg.resolved()) c[k] = v;
  j["config"] = std::move(c);
  return j;
}

std::string dump(const ojson& j) { return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n"; }

void require_present(const std::string& path, Stage producer) {
  if (!file_exists(path)) {
    throw DataError("missing artifact '" + path + "'; run the '" + std::string(stage_name(producer)) +
                    "' stage first");
  }
}

void require_hash(const std::string& path, const std::string& found, const RunConfig& cfg, Stage producer) {
  const std::string expected = cfg.hash(producer);
  if (found != expected) {
    throw DataError("artifact '" + path + "' was produced with config hash '" + found + "' but the current config hashes to '" +
                    expected + "'; rerun the '" + std::string(stage_name(producer)) + "' stage");
  }
}

CsvTable load_csv(const RunConfig& cfg, const std::string& file, Stage producer) {
  const std::string path = cfg.output_path(file);
  require_present(path, producer);
  CsvTable t = parse_csv(read_file(path));
  auto it = t.meta.find("config_hash");
  require_hash(path, it == t.meta.end() ? "" : it->second, cfg, producer);
  return t;
}

ojson load_json(const RunConfig& cfg, const std::string& file, Stage producer) {
  const std::string path = cfg.output_path(file);
  require_present(path, producer);
  ojson j;
  try {
    j = ojson::parse(read_file(path));
  } catch (const ojson::parse_error& e) {
    throw DataError("artifact '" + path + "' is not valid JSON: " + e.what());
  }
  const std::string found = j.contains("config_hash") && j["config_hash"].is_string() ? j["config_hash"].get<std::string>() : "";
  require_hash(path, found, cfg, producer);
  return j;
}

Corpus load_corpus_artifact(const RunConfig& cfg, const std::string& file, Stage producer) {
  const std::string path = cfg.output_path(file);
  require_present(path, producer);
  Corpus c = load_corpus_files({path});
  auto it = c.meta.find("config_hash");
  require_hash(path, it == c.meta.end() ? "" : it->second, cfg, producer);
  return c;
}

void stamp_corpus(Corpus& c, const RunConfig& cfg, Stage s) {
  c.meta.clear();
  c.meta["stage"] = std::string(stage_name(s));
  c.meta["config_hash"] = cfg.hash(s);
  for (const auto& [k, v] : cfg.resolved()) c.meta["config." + k] = v;
}

ojson pairs_report_json(const RunConfig& cfg, const MatchResult& m) {
  ojson j = meta_json(cfg, Stage::Pairs);
  std::set<std::string> discussions;
  for (const auto& p : m.pairs) discussions.insert(p.discussion_id);
  j["pairs"] = m.pairs.size();
  j["discussions_with_pairs"] = discussions.size();
  j["dropped_no_control"] = m.dropped_no_control;
  j["dropped_no_prior_comment"] = m.dropped_no_prior_comment;
  j["repeat_awards"] = m.repeat_awards;
  return j;
}

StageResult write_pairs(const RunConfig& cfg, const Corpus& corpus, StageResult res) {
  const MatchResult m = match_corpus(corpus, delta_rules(cfg), match_options(cfg), cfg.threads());
  const std::string pairs_path = cfg.output_path("pairs.csv");
  const std::string report_path = cfg.output_path("pairs_report.json");
  write_file(pairs_path, meta_lines(cfg, Stage::Pairs) + pairs_csv(m.pairs));
  write_file(report_path, dump(pairs_report_json(cfg, m)));
  res.artifacts.push_back(pairs_path);
  res.artifacts.push_back(report_path);
  if (!res.summary.empty()) res.summary += "; ";
  res.summary += std::to_string(m.pairs.size()) + " matched pairs (" + std::to_string(m.dropped_no_control) +
                 " awards without a control)";
  return res;
}

StageResult run_synth(const RunConfig& cfg) {
  const SynthParams p = synth_params(cfg);
  SynthCorpus sc = gen_corpus(p, cfg.threads());
  stamp_corpus(sc.corpus, cfg, Stage::Synth);
  const std::string corpus_path = cfg.output_path("synthetic_corpus.jsonl");
  const std::string truth_path = cfg.output_path("synthetic_truth.json");
  write_file(corpus_path, corpus_to_jsonl(sc.corpus));
  ojson j = meta_json(cfg, Stage::Synth);
  j.update(ojson::parse(sc.truth.to_json(p)));
  write_file(truth_path, dump(j));
  return {{corpus_path, truth_path},
          std::to_string(sc.truth.posts) + " discussions, " + std::to_string(sc.truth.comments) + " comments, " +
              std::to_string(sc.truth.posts_with_op_delta) + " with an OP award"};
}

StageResult run_ingest(const RunConfig& cfg) {
  ParseOptions popts;
  popts.validate_post_length = cfg.get_bool("validate_post_length");
  popts.min_post_chars = cfg.get_uint("min_post_chars");
  Corpus corpus;
  std::vector<std::string> inputs = cfg.get_list("input");
  if (inputs.empty()) {
    corpus = load_corpus_artifact(cfg, "synthetic_corpus.jsonl", Stage::Synth);
    // Re-apply the ingest rules to the generated lines.
    if (popts.validate_post_length) corpus = parse_corpus_text(corpus_to_jsonl(corpus), popts);
  } else {
    corpus = load_corpus_files(inputs, popts);
  }
  stamp_corpus(corpus, cfg, Stage::Ingest);

  const std::string corpus_path = cfg.output_path("corpus.jsonl");
  const std::string skip_path = cfg.output_path("skip_report.json");
  const std::string deltas_path = cfg.output_path("deltas.csv");
  write_file(corpus_path, corpus_to_jsonl(corpus));
  ojson skip = meta_json(cfg, Stage::Ingest);
  skip.update(ojson::parse(corpus.skips.to_json()));
  write_file(skip_path, dump(skip));

  const DeltaRules rules = delta_rules(cfg);
  std::vector<std::vector<DeltaAward>> awards(corpus.discussions.size());
  parallel_for(awards.size(), cfg.threads(), [&](std::size_t i) { awards[i] = detect_deltas(corpus.discussions[i], rules); });
  std::string deltas = meta_lines(cfg, Stage::Ingest) +
                       csv_line({"discussion_id", "awarder", "recipient", "awarded_comment_id", "award_comment_id",
                                 "award_time", "from_op"});
  std::size_t n_awards = 0;
  for (const auto& list : awards) {
    for (const auto& a : list) {
      deltas += csv_line({a.discussion_id, a.awarder, a.recipient, a.awarded_comment_id, a.award_comment_id,
                          std::to_string(a.award_time), a.from_op ? "1" : "0"});
      ++n_awards;
    }
  }
  write_file(deltas_path, deltas);

  StageResult res{{corpus_path, skip_path, deltas_path},
                  std::to_string(corpus.discussions.size()) + " discussions, " + std::to_string(corpus.skips.total()) +
                      " skipped or flagged records, " + std::to_string(n_awards) + " awards"};
  return write_pairs(cfg, corpus, std::move(res));
}

StageResult run_pairs(const RunConfig& cfg) {
  const Corpus corpus = load_corpus_artifact(cfg, "corpus.jsonl", Stage::Ingest);
  return write_pairs(cfg, corpus, {});
}

StageResult run_stats(const RunConfig& cfg) {
  const Corpus corpus = load_corpus_artifact(cfg, "corpus.jsonl", Stage::Ingest);
  const CorpusSummary s = corpus_stats(corpus, delta_rules(cfg));
  ojson j = meta_json(cfg, Stage::Stats);
  j.update(ojson::parse(s.to_json()));
  const std::string path = cfg.output_path("corpus_stats.json");
  write_file(path, dump(j));
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu posts, %zu comments, %zu with an OP award (%.2f%%)", s.posts, s.comments,
                s.posts_with_op_delta, 100.0 * s.fraction_posts_with_op_delta);
  return {{path}, buf};
}

LabeledDataset load_features(const RunConfig& cfg) {
  const CsvTable t = load_csv(cfg, "features.csv", Stage::Features);
  LabeledDataset ds;
  const std::size_t cp = t.column("pair_id"), cu = t.column("user"), cl = t.column("label");
  std::vector<std::size_t> cols;
  for (auto n : LanguageFeatureVector::names()) ds.feature_names.emplace_back(n);
  for (auto n : CentralityVector::names()) ds.feature_names.emplace_back(n);
  for (const auto& n : ds.feature_names) cols.push_back(t.column(n));
  ds.x = Matrix(t.rows.size(), cols.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    ds.pair_id.push_back(row[cp]);
    ds.user.push_back(row[cu]);
    ds.y.push_back(row[cl] == "1" ? 1 : 0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string& cell = row[cols[c]];
      try {
        ds.x(r, c) = cell == "nan" ? std::nan("") : std::stod(cell);
      } catch (const std::exception&) {
        throw DataError("features.csv: bad value '" + cell + "' in column " + ds.feature_names[c]);
      }
    }
  }
  ds.validate();
  return ds;
}

StageResult run_features(const RunConfig& cfg) {
  const Corpus corpus = load_corpus_artifact(cfg, "corpus.jsonl", Stage::Ingest);
  const auto pairs = parse_pairs_csv(load_csv(cfg, "pairs.csv", Stage::Pairs));
  GraphOptions gopts;
  gopts.weighted = cfg.get_bool("network_weighted");
  const LabeledDataset ds =
      build_feature_table(corpus, pairs, lexicons(cfg), gopts, centrality_options(cfg), cfg.threads());
  std::vector<std::string> header{"pair_id", "user", "label"};
  header.insert(header.end(), ds.feature_names.begin(), ds.feature_names.end());
  std::string out = meta_lines(cfg, Stage::Features) + csv_line(header);
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    std::vector<std::string> row{ds.pair_id[r], ds.user[r], std::to_string(ds.y[r])};
    for (double v : ds.x.row(r)) row.push_back(format_double(v));
    out += csv_line(row);
  }
  const std::string path = cfg.output_path("features.csv");
  write_file(path, out);
  return {{path}, std::to_string(ds.rows()) + " feature rows over " + std::to_string(pairs.size()) + " pairs"};
}

ojson cv_json(const CvReport& r) {
  ojson j;
  j["family"] = r.family;
  j["feature_set"] = r.feature_set;
  j["folds"] = r.folds;
  j["mean"] = r.mean;
  j["sd"] = r.sd;
  return j;
}

StageResult run_train(const RunConfig& cfg) {
  const LabeledDataset ds = load_features(cfg);
  const std::size_t k = cfg.get_uint("cv_folds");
  const std::uint64_t seed = cfg.get_uint("seed");
  ojson j = meta_json(cfg, Stage::Train);
  ojson sets = ojson::object();
  for (const auto& set : cfg.get_list("feature_sets")) sets[set] = feature_set_columns(cfg, set);
  j["feature_sets"] = sets;
  ojson reports = ojson::array();
  std::string best;
  double best_auc = -1.0;
  for (const auto& fname : cfg.get_list("models")) {
    const ModelSpec spec = model_spec(cfg, parse_family(fname));
    for (const auto& set : cfg.get_list("feature_sets")) {
      const CvReport r = cross_validate(spec, ds.with_features(feature_set_columns(cfg, set)), k, seed, set);
      reports.push_back(cv_json(r));
      if (r.mean > best_auc) {
        best_auc = r.mean;
        best = fname + "/" + set;
      }
    }
  }
  j["reports"] = std::move(reports);
  const std::string path = cfg.output_path("cv_reports.json");
  write_file(path, dump(j));
  char buf[160];
  std::snprintf(buf, sizeof buf, "best mean AUC %.3f (%s)", best_auc, best.c_str());
  return {{path}, buf};
}

StageResult run_importance(const RunConfig& cfg) {
  const LabeledDataset ds = load_features(cfg);
  std::vector<std::string> network;
  for (auto n : CentralityVector::names()) network.emplace_back(n);
  const ModelSpec spec = model_spec(cfg, Family::RandomForest);
  const auto entries = cv_permutation_importance(spec, ds.with_features(network), cfg.get_uint("cv_folds"),
                                                 cfg.get_uint("importance_repeats"), cfg.get_uint("seed"));
  const std::string path = cfg.output_path("importance.csv");
  write_file(path, meta_lines(cfg, Stage::Importance) + importance_csv(entries));
  std::string top;
  double share = -1.0;
  for (const auto& e : entries) {
    if (e.share > share) {
      share = e.share;
      top = e.feature;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "top network feature %s (share %.3f)", top.c_str(), share);
  return {{path}, buf};
}

StageResult run_did(const RunConfig& cfg) {
  const Corpus corpus = load_corpus_artifact(cfg, "corpus.jsonl", Stage::Ingest);
  const auto pairs = parse_pairs_csv(load_csv(cfg, "pairs.csv", Stage::Pairs));
  PanelOptions popts;
  popts.rules = delta_rules(cfg);
  popts.centrality = centrality_options(cfg);
  popts.threads = cfg.threads();
  DidOptions dopts;
  dopts.cluster_by_pair = cfg.get_bool("did_cluster_by_pair");

  std::string panel_csv = meta_lines(cfg, Stage::Did) +
                          csv_line({"pair_id", "user", "G", "T", "centrality", "variant", "y", "absent"});
  std::vector<DidResult> results;
  for (const auto& vname : cfg.get_list("did_variants")) {
    const PanelVariant variant = parse_variant(vname);
    const auto snaps = snapshot_pairs(pairs, corpus, variant, popts);
    for (const auto& c : cfg.get_list("did_centralities")) {
      const auto panel = panel_from_snapshots(snaps, c, variant);
      for (const auto& o : panel) {
        panel_csv += csv_line({o.pair_id, o.user, std::to_string(o.g), std::to_string(o.t), o.centrality,
                               std::string(variant_name(o.variant)), format_double(o.y), o.carried_zero ? "1" : "0"});
      }
      results.push_back(did_estimate(panel, dopts));
    }
  }
  const std::string panel_path = cfg.output_path("did_panel.csv");
  const std::string did_path = cfg.output_path("did.csv");
  const std::string table_path = cfg.output_path("did_table.txt");
  write_file(panel_path, panel_csv);
  write_file(did_path, meta_lines(cfg, Stage::Did) + did_csv(results));
  write_file(table_path, meta_lines(cfg, Stage::Did) + did_table(results));
  return {{panel_path, did_path, table_path},
          std::to_string(results.size()) + " DID estimates over " + std::to_string(pairs.size()) + " pairs"};
}

std::vector<DidResult> parse_did_csv(const CsvTable& t) {
  std::vector<DidResult> out;
  for (const auto& row : t.rows) {
    DidResult r;
    r.centrality = row[t.column("centrality")];
    r.variant = parse_variant(row[t.column("variant")]);
    r.n_obs = std::stoull(row[t.column("n_obs")]);
    for (int j = 0; j < 4; ++j) {
      r.beta[j] = std::stod(row[t.column("beta" + std::to_string(j))]);
      r.se[j] = std::stod(row[t.column("se" + std::to_string(j))]);
    }
    r.t_stats[3] = std::stod(row[t.column("t3")]);
    r.p_values[3] = std::stod(row[t.column("p3")]);
    out.push_back(std::move(r));
  }
  return out;
}

struct GroupMoments {
  double mean = std::nan("");
  double sd = std::nan("");
  std::size_t n = 0;
};

GroupMoments moments(const LabeledDataset& ds, std::size_t col, int label) {
  std::vector<double> v;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    if (ds.y[r] == label && std::isfinite(ds.x(r, col))) v.push_back(ds.x(r, col));
  }
  GroupMoments m;
  m.n = v.size();
  if (v.empty()) return m;
  double s = 0.0;
  for (double x : v) s += x;
  m.mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return m;
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

StageResult run_report(const RunConfig& cfg) {
  const ojson stats = load_json(cfg, "corpus_stats.json", Stage::Stats);
  const LabeledDataset ds = load_features(cfg);
  const ojson cv = load_json(cfg, "cv_reports.json", Stage::Train);
  const auto did = parse_did_csv(load_csv(cfg, "did.csv", Stage::Did));
  std::vector<std::vector<std::string>> importance;
  const bool have_importance = file_exists(cfg.output_path("importance.csv"));
  if (have_importance) {
    const CsvTable t = load_csv(cfg, "importance.csv", Stage::Importance);
    for (const auto& row : t.rows) {
      importance.push_back({row[t.column("feature")], row[t.column("importance")], row[t.column("share")]});
    }
  }

  ojson j = meta_json(cfg, Stage::Report);
  std::string txt = meta_lines(cfg, Stage::Report);
  char buf[256];

  j["corpus"] = stats;
  j["corpus"].erase("config");
  std::snprintf(buf, sizeof buf,
                "\nCorpus\n  posts %zu, comments %zu, challengers %zu\n  posts with an OP award %zu (%.2f%%)\n",
                stats.value("posts", std::size_t{0}), stats.value("comments", std::size_t{0}),
                stats.value("challengers", std::size_t{0}), stats.value("posts_with_op_delta", std::size_t{0}),
                100.0 * stats.value("fraction_posts_with_op_delta", 0.0));
  txt += buf;

  txt += "\nFeature means by outcome (sd in parentheses)\n";
  std::snprintf(buf, sizeof buf, "  %-24s %-24s %-24s\n", "feature", "persuasive", "non-persuasive");
  txt += buf;
  ojson means = ojson::array();
  for (std::size_t c = 0; c < ds.feature_names.size(); ++c) {
    const GroupMoments pos = moments(ds, c, 1), neg = moments(ds, c, 0);
    char a[64], b[64];
    std::snprintf(a, sizeof a, "%.3f (%.3f)", pos.mean, pos.sd);
    std::snprintf(b, sizeof b, "%.3f (%.3f)", neg.mean, neg.sd);
    std::snprintf(buf, sizeof buf, "  %-24s %-24s %-24s\n", ds.feature_names[c].c_str(), a, b);
    txt += buf;
    means.push_back({{"feature", ds.feature_names[c]},
                     {"persuasive_mean", number_or_null(pos.mean)},
                     {"persuasive_sd", number_or_null(pos.sd)},
                     {"non_persuasive_mean", number_or_null(neg.mean)},
                     {"non_persuasive_sd", number_or_null(neg.sd)}});
  }
  j["feature_means"] = std::move(means);

  std::vector<std::string> sets, families;
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> auc;
  for (const auto& r : cv["reports"]) {
    const std::string f = r["family"], s = r["feature_set"];
    if (std::find(families.begin(), families.end(), f) == families.end()) families.push_back(f);
    if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
    auc[{f, s}] = {r["mean"].get<double>(), r["sd"].get<double>()};
  }
  txt += "\nCross-validated AUC by feature set (mean +/- sd)\n";
  std::snprintf(buf, sizeof buf, "  %-22s", "model");
  txt += buf;
  for (const auto& s : sets) {
    std::snprintf(buf, sizeof buf, " %-18s", s.c_str());
    txt += buf;
  }
  txt += "\n";
  ojson auc_json = ojson::array();
  for (const auto& f : families) {
    std::snprintf(buf, sizeof buf, "  %-22s", f.c_str());
    txt += buf;
    for (const auto& s : sets) {
      auto it = auc.find({f, s});
      if (it == auc.end()) {
        std::snprintf(buf, sizeof buf, " %-18s", "");
      } else {
        char cell[48];
        std::snprintf(cell, sizeof cell, "%.3f +/- %.3f", it->second.first, it->second.second);
        std::snprintf(buf, sizeof buf, " %-18s", cell);
        auc_json.push_back({{"family", f}, {"feature_set", s}, {"mean", it->second.first}, {"sd", it->second.second}});
      }
      txt += buf;
    }
    txt += "\n";
  }
  j["auc"] = std::move(auc_json);

  if (have_importance) {
    txt += "\nNetwork feature importance (random forest, permutation)\n";
    ojson imp = ojson::array();
    for (const auto& e : importance) {
      std::snprintf(buf, sizeof buf, "  %-16s share %s\n", e[0].c_str(), e[2].c_str());
      txt += buf;
      imp.push_back({{"feature", e[0]}, {"importance", std::stod(e[1])}, {"share", std::stod(e[2])}});
    }
    j["importance"] = std::move(imp);
  }

  txt += "\nDifference-in-differences effect of an award (T x G)\n" + did_table(did);
  ojson did_json = ojson::array();
  for (const auto& r : did) {
    did_json.push_back({{"centrality", r.centrality},
                        {"variant", std::string(variant_name(r.variant))},
                        {"beta3", r.beta[3]},
                        {"se3", r.se[3]},
                        {"p3", r.p_values[3]},
                        {"stars", r.stars()},
                        {"n_obs", r.n_obs}});
  }
  j["did"] = std::move(did_json);

  const std::string txt_path = cfg.output_path("report.txt");
  const std::string json_path = cfg.output_path("report.json");
  write_file(txt_path, txt);
  write_file(json_path, dump(j));
  return {{txt_path, json_path}, "report written"};
}

}  // namespace

StageResult run_stage(Stage stage, const RunConfig& cfg) {
  switch (stage) {
    case Stage::Synth: return run_synth(cfg);
    case Stage::Ingest: return run_ingest(cfg);
    case Stage::Stats: return run_stats(cfg);
    case Stage::Pairs: return run_pairs(cfg);
    case Stage::Features: return run_features(cfg);
    case Stage::Train: return run_train(cfg);
    case Stage::Importance: return run_importance(cfg);
    case Stage::Did: return run_did(cfg);
    case Stage::Report: return run_report(cfg);
  }
  throw ConfigError("unknown stage");
}

}  // namespace debatenet
