#include "synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace debatenet {

namespace {

// Frequent words first: sampling weight falls off with rank.
constexpr const char* kFunctionWords[] = {
    "the", "a", "to", "of", "and", "is", "that", "it", "in", "you", "i", "not", "be", "this",
    "for", "are", "we", "but", "have", "with", "they", "an", "on", "as", "if", "more", "people",
    "would", "can", "so", "what", "do", "just", "there", "because", "maybe", "think", "my", "our",
    "some", "than", "when", "about", "good", "bad", "probably", "really", "also", "only", "like",
};

constexpr const char* kContentWords[] = {
    "policy", "tax", "school", "market", "health", "law", "vote", "election", "energy", "climate",
    "price", "wage", "city", "rent", "housing", "crime", "police", "court", "rights", "speech",
    "freedom", "religion", "science", "evidence", "study", "data", "history", "culture", "media",
    "internet", "privacy", "family", "children", "parents", "teacher", "student", "college", "debt",
    "loan", "job", "work", "company", "profit", "worker", "union", "government", "state", "country",
    "border", "trade", "war", "peace", "army", "weapon", "gun", "safety", "risk", "cost", "benefit",
    "value", "moral", "ethics", "animal", "meat", "diet", "food", "farm", "water", "car",
    "transit", "bike", "road", "traffic", "doctor", "hospital", "drug", "vaccine", "insurance",
    "welfare", "poverty", "income", "wealth", "inequality", "class", "merit", "talent", "luck",
    "effort", "reward", "punishment", "prison", "justice", "fairness", "equality", "language",
    "art", "music", "film", "book", "game", "sport", "team", "player", "fan", "money", "bank",
    "currency", "growth", "recession", "inflation", "argument", "point", "view", "reason", "claim",
    "example", "case", "problem", "solution", "change", "system", "society", "community", "group",
    "individual", "choice", "option", "result", "effect", "cause", "impact", "future", "past",
    "generation", "technology", "robot", "automation", "phone", "social", "network", "friend",
    "identity", "gender", "age", "experience", "knowledge", "truth", "belief", "opinion", "fact",
    "clearly", "usually", "often", "rarely", "actually", "entirely", "strongly", "wrong", "right",
    "better", "worse", "important", "harmful", "useful", "fair", "unfair", "great", "terrible",
    "matters", "helps", "hurts", "means", "shows", "suggests", "ignores", "assumes", "depends",
    "happened", "changed", "argued", "seen", "working", "living", "paying", "voting", "growing",
};

constexpr std::size_t kFunctionCount = std::size(kFunctionWords);
constexpr std::size_t kContentCount = std::size(kContentWords);

struct UserTraits {
  std::string name;
  double verbosity = 0.0;
  double activity = 0.0;
};

class TextSampler {
 public:
  explicit TextSampler(Rng& rng) : rng_(rng) {
    function_weights_.resize(kFunctionCount);
    for (std::size_t i = 0; i < kFunctionCount; ++i) function_weights_[i] = 1.0 / static_cast<double>(i + 2);
  }

  std::string word(const std::vector<std::size_t>& topic, double overlap) {
    if (!topic.empty() && rng_.bernoulli(overlap)) return kContentWords[topic[rng_.index(topic.size())]];
    if (rng_.bernoulli(0.5)) return kFunctionWords[rng_.weighted(function_weights_)];
    return kContentWords[rng_.index(kContentCount)];
  }

  std::string sentence(const std::vector<std::size_t>& topic, double overlap, std::size_t words) {
    std::string s;
    for (std::size_t w = 0; w < words; ++w) {
      std::string tok = word(topic, overlap);
      if (w == 0) tok[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
      if (w > 0) s += ' ';
      s += tok;
      if (w + 1 < words && rng_.bernoulli(0.06)) s += ',';
    }
    s += rng_.bernoulli(0.15) ? "?" : ".";
    return s;
  }

 private:
  Rng& rng_;
  std::vector<double> function_weights_;
};

std::string numbered(const char* prefix, std::size_t n, int width) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
  return buf;
}

struct Node {
  std::string id;
  std::string author;
  double replies = 0.0;
};

Discussion generate_discussion(const SynthParams& p, const std::vector<UserTraits>& pool, std::size_t index,
                               DiscussionTruth& truth) {
  Rng rng(derive_seed(p.seed, index + 1));
  TextSampler text(rng);

  const std::string post_id = numbered("s", index + 1, 5);
  const std::string op = numbered("op", index + 1, 5);
  truth.id = post_id;
  truth.op_author = op;

  std::vector<std::size_t> members(pool.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  rng.shuffle(members);
  members.resize(std::min(p.challengers_per_discussion, members.size()));
  std::sort(members.begin(), members.end());
  std::vector<double> activity(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) activity[i] = std::exp(0.5 * pool[members[i]].activity);

  std::vector<std::size_t> topic(kContentCount);
  for (std::size_t i = 0; i < topic.size(); ++i) topic[i] = i;
  rng.shuffle(topic);
  topic.resize(30);

  Discussion d;
  d.title = "CMV: " + text.sentence(topic, 0.8, 6 + rng.index(5));
  d.op_author = op;
  d.post.id = post_id;
  d.post.author = op;
  d.post.post_id = post_id;
  d.post.created_at = 1'400'000'000 + static_cast<Timestamp>(index) * 200'000;
  std::string body;
  while (body.size() < 520) {
    if (!body.empty()) body += ' ';
    body += text.sentence(topic, 0.6, 8 + rng.index(8));
  }
  d.post.body = body;

  const std::size_t m = p.comments_per_discussion;
  std::size_t award_at = m;  // position of the OP award reply, m when none
  if (m >= 3 && rng.bernoulli(p.delta_probability)) {
    const std::size_t lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.4 * m)));
    const std::size_t hi = std::max(lo, static_cast<std::size_t>(0.7 * m));
    award_at = lo + rng.index(hi - lo + 1);
    if (award_at >= m) award_at = m - 1;
  }

  std::vector<Node> nodes{{post_id, op, 0.0}};
  std::map<std::string, double> out_deg, in_deg;
  std::map<std::string, std::string> last_comment;  // user -> latest comment id
  std::string recipient;
  Timestamp now = d.post.created_at;

  auto add_comment = [&](const std::string& author, std::size_t parent, std::string body_text) {
    Comment c;
    c.id = post_id + "_" + numbered("c", d.comments.size() + 1, 4);
    c.author = author;
    c.parent_id = nodes[parent].id;
    c.post_id = post_id;
    now += 30 + static_cast<Timestamp>(rng.index(600));
    c.created_at = now;
    c.body = std::move(body_text);
    nodes[parent].replies += 1.0;
    if (author != nodes[parent].author) {
      out_deg[author] += 1.0;
      in_deg[nodes[parent].author] += 1.0;
    }
    if (author != op) last_comment[author] = c.id;
    nodes.push_back({c.id, author, 0.0});
    d.comments.push_back(std::move(c));
  };

  std::vector<double> weights;
  for (std::size_t k = 0; k < m; ++k) {
    if (k == award_at) {
      std::vector<std::string> eligible;
      for (const auto& [user, id] : last_comment) eligible.push_back(user);
      if (eligible.empty()) continue;
      std::vector<double> ratio(eligible.size());
      for (std::size_t i = 0; i < eligible.size(); ++i) {
        ratio[i] = out_deg[eligible[i]] / std::max(in_deg[eligible[i]], 1.0);
      }
      double mean = 0.0, sd = 0.0;
      for (double r : ratio) mean += r;
      mean /= static_cast<double>(ratio.size());
      for (double r : ratio) sd += (r - mean) * (r - mean);
      sd = ratio.size() > 1 ? std::sqrt(sd / static_cast<double>(ratio.size() - 1)) : 0.0;
      std::vector<double> w(eligible.size());
      for (std::size_t i = 0; i < eligible.size(); ++i) {
        const double z = sd > 0.0 ? (ratio[i] - mean) / sd : 0.0;
        double verbosity = 0.0;
        for (const auto& u : pool) {
          if (u.name == eligible[i]) verbosity = u.verbosity;
        }
        w[i] = std::exp(p.network_signal * z + p.language_signal * verbosity);
      }
      recipient = eligible[rng.weighted(w)];
      const std::string awarded = last_comment[recipient];
      std::size_t parent = 0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == awarded) parent = i;
      }
      add_comment(op, parent, "\xe2\x88\x86 " + text.sentence(topic, 0.3, 5 + rng.index(6)));
      truth.op_awards.push_back({recipient, awarded, d.comments.back().id, d.comments.back().created_at});
      continue;
    }

    weights.assign(nodes.size(), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      weights[i] = std::pow(nodes[i].replies + 1.0, p.reply_preferential_strength);
      if (!recipient.empty() && nodes[i].author == recipient) weights[i] *= p.post_award_attention;
    }
    const std::size_t parent = rng.weighted(weights);
    const std::string& parent_author = nodes[parent].author;

    std::string author;
    if (parent != 0 && parent_author != op && rng.bernoulli(p.op_reply_probability)) {
      author = op;
    } else {
      std::vector<double> w = activity;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (pool[members[i]].name == parent_author && members.size() > 1) w[i] = 0.0;
      }
      author = pool[members[rng.weighted(w)]].name;
    }

    double verbosity = 0.0;
    for (std::size_t i : members) {
      if (pool[i].name == author) verbosity = pool[i].verbosity;
    }
    const std::size_t sentences = 1 + rng.index(3) + static_cast<std::size_t>(std::lround(std::max(0.0, verbosity)));
    std::string body_text;
    for (std::size_t s = 0; s < sentences; ++s) {
      if (s > 0) body_text += ' ';
      body_text += text.sentence(topic, p.op_overlap, 6 + rng.index(9));
    }
    if (rng.bernoulli(0.05 * (1.0 + std::max(0.0, verbosity)))) {
      body_text += " See https://example.org/" + text.word(topic, 1.0) + " for more.";
    }
    if (author != op && parent != 0 && parent_author != op && parent_author != author &&
        rng.bernoulli(p.peer_delta_probability)) {
      body_text += " !delta";
      ++truth.peer_awards;
    }
    add_comment(author, parent, std::move(body_text));
  }
  d.reindex();
  return d;
}

}  // namespace

void SynthParams::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0,1]");
  };
  prob(delta_probability, "delta_probability");
  prob(op_reply_probability, "op_reply_probability");
  prob(peer_delta_probability, "peer_delta_probability");
  prob(op_overlap, "op_overlap");
  if (!(reply_preferential_strength >= 0.0)) throw ConfigError("reply_preferential_strength must be >= 0");
  if (!(post_award_attention > 0.0)) throw ConfigError("post_award_attention must be > 0");
  if (user_pool == 0 || challengers_per_discussion == 0) throw ConfigError("user pool must be nonempty");
  if (!std::isfinite(network_signal) || !std::isfinite(language_signal)) {
    throw ConfigError("award signals must be finite");
  }
}

SynthCorpus gen_corpus(const SynthParams& params, unsigned threads) {
  params.validate();
  Rng trait_rng(derive_seed(params.seed, 0));
  std::vector<UserTraits> pool(params.user_pool);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].name = numbered("user", i + 1, 4);
    pool[i].verbosity = trait_rng.normal();
    pool[i].activity = trait_rng.normal();
  }

  SynthCorpus out;
  out.corpus.discussions.resize(params.n_discussions);
  out.truth.discussions.resize(params.n_discussions);
  parallel_for(params.n_discussions, threads, [&](std::size_t i) {
    out.corpus.discussions[i] = generate_discussion(params, pool, i, out.truth.discussions[i]);
  });
  out.truth.posts = params.n_discussions;
  for (const auto& d : out.corpus.discussions) out.truth.comments += d.comments.size();
  for (const auto& t : out.truth.discussions) {
    if (!t.op_awards.empty()) ++out.truth.posts_with_op_delta;
    out.truth.peer_awards += t.peer_awards;
  }
  return out;
}

std::string SynthTruth::to_json(const SynthParams& p) const {
  nlohmann::ordered_json j;
  auto& jp = j["params"];
  jp["n_discussions"] = p.n_discussions;
  jp["comments_per_discussion"] = p.comments_per_discussion;
  jp["reply_preferential_strength"] = p.reply_preferential_strength;
  jp["delta_probability"] = p.delta_probability;
  jp["seed"] = p.seed;
  jp["user_pool"] = p.user_pool;
  jp["challengers_per_discussion"] = p.challengers_per_discussion;
  jp["op_reply_probability"] = p.op_reply_probability;
  jp["peer_delta_probability"] = p.peer_delta_probability;
  jp["op_overlap"] = p.op_overlap;
  jp["network_signal"] = p.network_signal;
  jp["language_signal"] = p.language_signal;
  jp["post_award_attention"] = p.post_award_attention;
  jp["planted_effects"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : p.planted_effects) jp["planted_effects"][k] = v;
  j["posts"] = posts;
  j["comments"] = comments;
  j["posts_with_op_delta"] = posts_with_op_delta;
  j["peer_awards"] = peer_awards;
  auto& jd = j["discussions"] = nlohmann::ordered_json::array();
  for (const auto& d : discussions) {
    nlohmann::ordered_json e;
    e["id"] = d.id;
    e["op_author"] = d.op_author;
    e["op_awards"] = nlohmann::ordered_json::array();
    for (const auto& a : d.op_awards) {
      e["op_awards"].push_back({{"recipient", a.recipient},
                                {"awarded_comment_id", a.awarded_comment_id},
                                {"award_comment_id", a.award_comment_id},
                                {"award_time", a.award_time}});
    }
    e["peer_awards"] = d.peer_awards;
    jd.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::vector<SynthPanel> gen_did_panel(const std::map<std::string, double>& planted_effects,
                                      const DidPanelParams& params) {
  if (params.n_pairs == 0) throw ConfigError("n_pairs must be positive");
  if (!(params.noise_sd >= 0.0)) throw ConfigError("noise_sd must be >= 0");
  std::vector<SynthPanel> panels;
  for (const auto& [name, effect] : planted_effects) {
    Rng rng(derive_seed(params.seed, fnv1a64(name)));
    SynthPanel sp;
    sp.centrality = name;
    sp.true_beta = {params.baseline[0], params.baseline[1], params.baseline[2], effect};
    sp.observations.reserve(params.n_pairs * 4);
    for (std::size_t i = 0; i < params.n_pairs; ++i) {
      const std::string pid = numbered("p", i + 1, 5);
      for (int g = 0; g < 2; ++g) {
        for (int t = 0; t < 2; ++t) {
          const double y = sp.true_beta[0] + sp.true_beta[1] * t + sp.true_beta[2] * g + effect * t * g +
                           (params.noise_sd > 0.0 ? params.noise_sd * rng.normal() : 0.0);
          sp.observations.push_back(PanelObservation{pid, (g ? "t" : "c") + pid.substr(1), g, t, y, name,
                                                     PanelVariant::Main, false});
        }
      }
    }
    panels.push_back(std::move(sp));
  }
  return panels;
}

LabeledDataset gen_labeled_pairs(const LabeledPairsParams& params) {
  if (params.n_features == 0 || params.n_pairs == 0) throw ConfigError("n_pairs and n_features must be positive");
  Rng rng(params.seed);
  LabeledDataset ds;
  for (std::size_t f = 0; f < params.n_features; ++f) ds.feature_names.push_back("f" + std::to_string(f));
  ds.x = Matrix(params.n_pairs * 2, params.n_features);
  std::size_t r = 0;
  for (std::size_t i = 0; i < params.n_pairs; ++i) {
    const std::string pid = "p" + std::to_string(i + 1);
    const bool positive_first = rng.bernoulli(0.5);
    const bool flip = params.mode == LabelMode::Permuted && rng.bernoulli(0.5);
    for (int k = 0; k < 2; ++k) {
      const int truth = positive_first ? 1 - k : k;
      for (std::size_t f = 0; f < params.n_features; ++f) ds.x(r, f) = rng.normal();
      switch (params.mode) {
        case LabelMode::Separable:
        case LabelMode::Permuted:
          ds.x(r, 0) = truth ? 1.0 + rng.uniform() : -1.0 - rng.uniform();
          break;
        case LabelMode::Informative:
          ds.x(r, 0) += params.signal * truth;
          break;
      }
      ds.y.push_back(flip ? 1 - truth : truth);
      ds.pair_id.push_back(pid);
      ds.user.push_back(pid + (truth ? "_a" : "_b"));
      ++r;
    }
  }
  return ds;
}

}  // namespace debatenet
