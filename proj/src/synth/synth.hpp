#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus/corpus.hpp"
#include "did/did.hpp"
#include "learn/dataset.hpp"

namespace debatenet {

struct SynthParams {
  std::size_t n_discussions = 20;
  std::size_t comments_per_discussion = 30;  // includes award replies
  double reply_preferential_strength = 1.0;  // parent weight (replies received + 1)^strength
  double delta_probability = 0.6;            // chance a discussion gets an OP award
  std::map<std::string, double> planted_effects;  // centrality -> beta3, used by gen_did_panel
  std::uint64_t seed = 1;

  std::size_t user_pool = 60;
  std::size_t challengers_per_discussion = 8;
  double op_reply_probability = 0.2;    // OP answers a challenger comment
  double peer_delta_probability = 0.02; // challenger-to-challenger "!delta"
  double op_overlap = 0.35;             // share of comment words drawn from the post's topic words
  double network_signal = 1.0;          // award odds per sd of pre-award degree ratio
  double language_signal = 0.5;         // award odds per sd of the author's verbosity trait
  double post_award_attention = 3.0;    // attachment multiplier on the recipient's comments after award

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct AwardTruth {
  std::string recipient;
  std::string awarded_comment_id;
  std::string award_comment_id;
  Timestamp award_time = 0;
};

struct DiscussionTruth {
  std::string id;
  std::string op_author;
  std::vector<AwardTruth> op_awards;
  std::size_t peer_awards = 0;
};

struct SynthTruth {
  std::size_t posts = 0;
  std::size_t comments = 0;
  std::size_t posts_with_op_delta = 0;
  std::size_t peer_awards = 0;
  std::vector<DiscussionTruth> discussions;

  std::string to_json(const SynthParams& params) const;
};

struct SynthCorpus {
  Corpus corpus;
  SynthTruth truth;
};

// Pure function of params; threads only changes the schedule.
SynthCorpus gen_corpus(const SynthParams& params, unsigned threads = 1);

struct DidPanelParams {
  std::size_t n_pairs = 250;
  std::array<double, 3> baseline{1.0, 0.5, 0.3};  // beta0, beta1, beta2
  double noise_sd = 1.0;
  std::uint64_t seed = 1;
};

struct SynthPanel {
  std::string centrality;
  std::array<double, 4> true_beta{};
  std::vector<PanelObservation> observations;
};

// One balanced panel per planted effect, y = b0 + b1 T + b2 G + b3 T G + noise.
std::vector<SynthPanel> gen_did_panel(const std::map<std::string, double>& planted_effects,
                                      const DidPanelParams& params);

enum class LabelMode {
  Separable,    // feature 0 alone splits the classes
  Permuted,     // separable features, labels assigned by coin flip per pair
  Informative,  // feature 0 shifted by `signal` for positives, Gaussian noise elsewhere
};

struct LabeledPairsParams {
  std::size_t n_pairs = 500;
  std::size_t n_features = 5;
  LabelMode mode = LabelMode::Separable;
  double signal = 1.0;
  std::uint64_t seed = 1;
};

// Matched-pair rows named f0..f{n-1}; pair ids "pN".
LabeledDataset gen_labeled_pairs(const LabeledPairsParams& params);

}  // namespace debatenet
