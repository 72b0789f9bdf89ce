#include "corpus/matching.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

#include "text/tokenize.hpp"

namespace debatenet {

std::set<std::string> vocabulary_before(const Discussion& d, const std::string& user,
                                        Timestamp cutoff) {
  std::set<std::string> vocab;
  for (const auto& c : d.comments) {
    if (c.author != user || c.created_at >= cutoff) continue;
    for (auto& w : word_tokens(c.body)) vocab.insert(std::move(w));
  }
  return vocab;
}

double jaccard_similarity(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

MatchResult match_challengers(const Discussion& d, const std::vector<DeltaAward>& awards,
                              const MatchOptions& opts) {
  MatchResult result;
  auto excluded = [&](const std::string& u) {
    return std::find(opts.excluded_users.begin(), opts.excluded_users.end(), u) !=
           opts.excluded_users.end();
  };

  std::unordered_set<std::string> ever_awarded;
  for (const auto& a : awards) ever_awarded.insert(a.recipient);

  // First comment time per challenger; comments are already in time order.
  std::map<std::string, Timestamp> first_comment;
  for (const auto& c : d.comments) {
    if (c.author == d.op_author) continue;
    first_comment.emplace(c.author, c.created_at);
  }

  std::unordered_set<std::string> paired;
  for (const auto& award : awards) {
    if (!award.from_op || excluded(award.recipient)) continue;
    if (!paired.insert(award.recipient).second) {
      ++result.repeat_awards;
      continue;
    }
    const Timestamp cutoff = award.award_time;
    auto treated_first = first_comment.find(award.recipient);
    if (treated_first == first_comment.end() || treated_first->second >= cutoff) {
      ++result.dropped_no_prior_comment;
      continue;
    }
    const auto treated_vocab = vocabulary_before(d, award.recipient, cutoff);

    struct Candidate {
      double similarity;
      Timestamp first;
      const std::string* user;
    };
    std::optional<Candidate> best;
    for (const auto& [user, first] : first_comment) {
      if (user == award.recipient || first >= cutoff || ever_awarded.count(user) ||
          excluded(user)) {
        continue;
      }
      const Candidate cand{jaccard_similarity(treated_vocab, vocabulary_before(d, user, cutoff)),
                           first, &user};
      const bool better = !best || cand.similarity > best->similarity ||
                          (cand.similarity == best->similarity &&
                           (cand.first < best->first ||
                            (cand.first == best->first && *cand.user < *best->user)));
      if (better) best = cand;
    }
    if (!best) {
      ++result.dropped_no_control;
      continue;
    }
    result.pairs.push_back(
        MatchedPair{d.post.id, award.recipient, *best->user, cutoff, best->similarity});
  }
  return result;
}

}  // namespace debatenet
