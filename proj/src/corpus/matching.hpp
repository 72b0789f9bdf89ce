#pragma once

#include <set>
#include <string>
#include <vector>

#include "corpus/corpus.hpp"
#include "corpus/deltas.hpp"

namespace debatenet {

struct MatchedPair {
  std::string discussion_id;
  std::string treated_user;
  std::string control_user;
  Timestamp cutoff_time = 0;
  double match_similarity = 0.0;

  std::string pair_id() const { return discussion_id + ":" + treated_user; }
  bool operator==(const MatchedPair&) const = default;
};

struct MatchOptions {
  // Placeholder accounts that are never a treated or control user.
  std::vector<std::string> excluded_users{"[deleted]", "AutoModerator", "DeltaBot"};
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::size_t dropped_no_control = 0;
  std::size_t dropped_no_prior_comment = 0;  // treated had nothing strictly before the award
  std::size_t repeat_awards = 0;             // later OP awards to an already paired recipient
};

// Lowercased word-token vocabulary of a user's comments strictly before cutoff.
std::set<std::string> vocabulary_before(const Discussion& d, const std::string& user, Timestamp cutoff);

double jaccard_similarity(const std::set<std::string>& a, const std::set<std::string>& b);

// Pairs each OP-awarded recipient (first award per recipient) with the
// never-awarded challenger whose pre-cutoff vocabulary is most similar.
// Non-OP awards in the list only disqualify their recipients as controls.
MatchResult match_challengers(const Discussion& d, const std::vector<DeltaAward>& awards,
                              const MatchOptions& opts = {});

}  // namespace debatenet
