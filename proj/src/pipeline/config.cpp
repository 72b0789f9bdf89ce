#include "pipeline/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>

#include "did/did.hpp"
#include "learn/models.hpp"
#include "network/centrality.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/text_io.hpp"

namespace debatenet {

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::Synth: return "synth";
    case Stage::Ingest: return "ingest";
    case Stage::Stats: return "stats";
    case Stage::Pairs: return "pairs";
    case Stage::Features: return "features";
    case Stage::Train: return "train";
    case Stage::Importance: return "importance";
    case Stage::Did: return "did";
    case Stage::Report: return "report";
  }
  return "?";
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> v{Stage::Synth, Stage::Ingest,     Stage::Stats, Stage::Pairs, Stage::Features,
                                    Stage::Train, Stage::Importance, Stage::Did,   Stage::Report};
  return v;
}

Stage parse_stage(std::string_view name) {
  for (Stage s : all_stages()) {
    if (stage_name(s) == name) return s;
  }
  throw ConfigError("unknown stage '" + std::string(name) + "'");
}

namespace {

enum class Kind { Str, Int, UInt, Double, Bool, List };

struct KeySpec {
  std::string key;
  std::string fallback;
  Kind kind;
  std::vector<Stage> owners;  // empty: never hashed
  std::function<void(const std::string&)> check;
};

bool parse_bool(const std::string& v, bool& out) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return out = true, true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return out = false, true;
  return false;
}

template <class T>
bool parse_number(const std::string& v, T& out) {
  if (v.empty()) return false;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_real(const std::string& v, double& out) {
  if (v.empty()) return false;
  try {
    std::size_t pos = 0;
    out = std::stod(v, &pos);
    return pos == v.size() && std::isfinite(out);
  } catch (...) {
    return false;
  }
}

std::vector<std::string> list_of(const std::string& v) {
  std::vector<std::string> out;
  for (const auto& part : split(v, ',')) {
    std::string t = trim(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

auto one_of(std::vector<std::string> allowed) {
  return [allowed](const std::string& v) {
    for (const auto& item : list_of(v)) {
      if (std::find(allowed.begin(), allowed.end(), item) == allowed.end()) {
        throw ConfigError("value '" + item + "' is not one of the allowed values");
      }
    }
  };
}

const std::vector<KeySpec>& registry() {
  using S = Stage;
  static const std::vector<KeySpec> specs = [] {
    std::vector<std::string> family_names;
    for (Family f : all_families()) family_names.emplace_back(family_name(f));
    std::vector<std::string> centralities;
    for (auto n : CentralityVector::names()) centralities.emplace_back(n);
    const std::vector<S> model_owners{S::Train, S::Importance};
    const std::vector<S> centrality_owners{S::Features, S::Did};

    std::vector<KeySpec> v{
        {"output_dir", "out", Kind::Str, {}, nullptr},
        {"threads", "0", Kind::UInt, {}, nullptr},
        {"seed", "1", Kind::UInt, {S::Synth, S::Train, S::Importance}, nullptr},

        {"input", "", Kind::List, {S::Ingest}, nullptr},
        {"validate_post_length", "false", Kind::Bool, {S::Ingest}, nullptr},
        {"min_post_chars", "500", Kind::UInt, {S::Ingest}, nullptr},
        {"delta_markers", "\xe2\x88\x86,\xce\x94,!delta", Kind::List, {S::Ingest}, nullptr},
        {"strip_quoted_lines", "true", Kind::Bool, {S::Ingest}, nullptr},
        {"ignore_authors", "DeltaBot", Kind::List, {S::Ingest}, nullptr},

        {"excluded_users", "[deleted],AutoModerator,DeltaBot", Kind::List, {S::Pairs}, nullptr},

        {"lexicon_dir", "", Kind::Str, {S::Features}, nullptr},
        {"network_weighted", "true", Kind::Bool, {S::Features}, nullptr},
        {"betweenness_metric", "hops", Kind::Str, centrality_owners, one_of({"hops", "inverse_weight"})},
        {"hits_tol", "1e-10", Kind::Double, centrality_owners, nullptr},
        {"hits_max_iter", "1000", Kind::UInt, centrality_owners, nullptr},

        {"models", "decision_tree,random_forest,adaboost,logistic_regression,gaussian_nb", Kind::List,
         {S::Train}, one_of(family_names)},
        {"feature_sets", "language,network,all", Kind::List, {S::Train}, one_of({"language", "network", "all"})},
        {"network_features", "degree_ratio", Kind::Str, {S::Train}, one_of({"degree_ratio", "all"})},
        {"cv_folds", "5", Kind::UInt, model_owners, nullptr},
        {"importance_repeats", "10", Kind::UInt, {S::Importance}, nullptr},

        {"did_variants", "main,exclude_winning_replies", Kind::List, {S::Did},
         [](const std::string& v) {
           for (const auto& item : list_of(v)) parse_variant(item);
         }},
        {"did_centralities", "in_degree,out_degree,degree_ratio,authority,hub,betweenness", Kind::List, {S::Did},
         one_of(centralities)},
        {"did_cluster_by_pair", "false", Kind::Bool, {S::Did}, nullptr},

        {"synth.n_discussions", "20", Kind::UInt, {S::Synth}, nullptr},
        {"synth.comments_per_discussion", "30", Kind::UInt, {S::Synth}, nullptr},
        {"synth.reply_preferential_strength", "1", Kind::Double, {S::Synth}, nullptr},
        {"synth.delta_probability", "0.6", Kind::Double, {S::Synth}, nullptr},
        {"synth.seed", "", Kind::UInt, {S::Synth}, nullptr},
        {"synth.user_pool", "60", Kind::UInt, {S::Synth}, nullptr},
        {"synth.challengers_per_discussion", "8", Kind::UInt, {S::Synth}, nullptr},
        {"synth.op_reply_probability", "0.2", Kind::Double, {S::Synth}, nullptr},
        {"synth.peer_delta_probability", "0.02", Kind::Double, {S::Synth}, nullptr},
        {"synth.op_overlap", "0.35", Kind::Double, {S::Synth}, nullptr},
        {"synth.network_signal", "1", Kind::Double, {S::Synth}, nullptr},
        {"synth.language_signal", "0.5", Kind::Double, {S::Synth}, nullptr},
        {"synth.post_award_attention", "3", Kind::Double, {S::Synth}, nullptr},
    };
    const std::vector<std::pair<std::string, Kind>> model_keys{
        {"random_forest.n_trees", Kind::UInt},     {"random_forest.max_features", Kind::UInt},
        {"random_forest.max_depth", Kind::UInt},   {"random_forest.min_samples_leaf", Kind::UInt},
        {"random_forest.bootstrap", Kind::Bool},   {"decision_tree.max_depth", Kind::UInt},
        {"decision_tree.max_features", Kind::UInt}, {"decision_tree.min_samples_leaf", Kind::UInt},
        {"adaboost.rounds", Kind::UInt},           {"logistic_regression.l2", Kind::Double},
        {"logistic_regression.tol", Kind::Double}, {"logistic_regression.max_iter", Kind::UInt},
        {"gaussian_nb.var_floor", Kind::Double},
    };
    for (const auto& [k, kind] : model_keys) v.push_back({"model." + k, "", kind, model_owners, nullptr});
    return v;
  }();
  return specs;
}

const KeySpec& spec_of(const std::string& key) {
  for (const auto& s : registry()) {
    if (s.key == key) return s;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void check_value(const KeySpec& s, const std::string& v) {
  if (v.empty()) return;  // empty means "use the built-in default" or "unset"
  bool ok = true;
  switch (s.kind) {
    case Kind::Str:
    case Kind::List: break;
    case Kind::Int: {
      std::int64_t x;
      ok = parse_number(v, x);
      break;
    }
    case Kind::UInt: {
      std::uint64_t x;
      ok = parse_number(v, x);
      break;
    }
    case Kind::Double: {
      double x;
      ok = parse_real(v, x);
      break;
    }
    case Kind::Bool: {
      bool b;
      ok = parse_bool(v, b);
      break;
    }
  }
  if (!ok) throw ConfigError("invalid value '" + v + "' for key '" + s.key + "'");
  if (s.check) {
    try {
      s.check(v);
    } catch (const ConfigError& e) {
      throw ConfigError("key '" + s.key + "': " + e.what());
    }
  }
}

std::set<Stage> closure(Stage s, bool synth_input) {
  std::set<Stage> out{s};
  switch (s) {
    case Stage::Synth: break;
    case Stage::Ingest:
      if (synth_input) out.insert(Stage::Synth);
      break;
    case Stage::Stats:
    case Stage::Pairs: out.merge(closure(Stage::Ingest, synth_input)); break;
    case Stage::Features:
    case Stage::Did: out.merge(closure(Stage::Pairs, synth_input)); break;
    case Stage::Train:
    case Stage::Importance: out.merge(closure(Stage::Features, synth_input)); break;
    case Stage::Report:
      for (Stage up : {Stage::Stats, Stage::Train, Stage::Importance, Stage::Did}) {
        out.merge(closure(up, synth_input));
      }
      break;
  }
  return out;
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& s : registry()) values_[s.key] = s.fallback;
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.key);
    return out;
  }();
  return k;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const KeySpec& s = spec_of(key);
  const std::string v = trim(value);
  check_value(s, v);
  values_[key] = v;
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = line.substr(eq + 1);
    // Trailing comments need whitespace before '#' so values like "#x" survive.
    const auto hash = value.find(" #");
    if (hash != std::string::npos) value.resize(hash);
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      cfg.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  return parse(text);
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  std::int64_t v = 0;
  if (!parse_number(get(key), v)) throw ConfigError("key '" + key + "' is not an integer");
  return v;
}

std::uint64_t RunConfig::get_uint(const std::string& key) const {
  std::uint64_t v = 0;
  if (!parse_number(get(key), v)) throw ConfigError("key '" + key + "' is not a nonnegative integer");
  return v;
}

double RunConfig::get_double(const std::string& key) const {
  double v = 0.0;
  if (!parse_real(get(key), v)) throw ConfigError("key '" + key + "' is not a number");
  return v;
}

bool RunConfig::get_bool(const std::string& key) const {
  bool b = false;
  if (!parse_bool(get(key), b)) throw ConfigError("key '" + key + "' is not a boolean");
  return b;
}

std::vector<std::string> RunConfig::get_list(const std::string& key) const { return list_of(get(key)); }

unsigned RunConfig::threads() const {
  const auto t = get_uint("threads");
  return t == 0 ? default_thread_count() : static_cast<unsigned>(t);
}

std::string RunConfig::output_path(const std::string& file) const {
  std::string dir = get("output_dir");
  if (dir.empty()) dir = ".";
  if (dir.back() != '/') dir += '/';
  return dir + file;
}

std::string RunConfig::canonical(Stage s) const {
  const std::set<Stage> stages = closure(s, get("input").empty());
  std::string out;
  for (const auto& spec : registry()) {
    const bool used = std::any_of(spec.owners.begin(), spec.owners.end(),
                                  [&](Stage o) { return stages.count(o) > 0; });
    if (used) out += spec.key + "=" + values_.at(spec.key) + "\n";
  }
  return out;
}

std::string RunConfig::hash(Stage s) const { return to_hex(fnv1a64(canonical(s))); }

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : registry()) {
    if (spec.key != "threads" && spec.key != "output_dir") out.emplace_back(spec.key, values_.at(spec.key));
  }
  return out;
}

}  // namespace debatenet
