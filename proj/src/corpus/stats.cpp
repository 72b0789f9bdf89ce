#include "corpus/stats.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace debatenet {

namespace {

void mean_sd(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (v.empty()) return;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

CorpusSummary corpus_stats(const Corpus& c, const DeltaRules& rules) {
  CorpusSummary s;
  std::set<std::string> challengers;
  std::set<std::string> op_recipients;
  std::set<std::string> peer_recipients;
  std::set<std::string> op_comments;
  std::set<std::string> peer_comments;
  std::vector<double> before;
  std::vector<double> after;

  for (const auto& d : c.discussions) {
    ++s.posts;
    s.comments += d.comments.size();
    for (const auto& cm : d.comments) {
      if (cm.author != d.op_author) challengers.insert(cm.author);
    }
    const auto awards = detect_deltas(d, rules);
    const DeltaAward* first_op = nullptr;
    for (const auto& a : awards) {
      if (a.from_op) {
        op_comments.insert(a.awarded_comment_id);
        op_recipients.insert(a.recipient);
        if (!first_op || a.award_time < first_op->award_time) first_op = &a;
      } else {
        peer_comments.insert(a.awarded_comment_id);
        peer_recipients.insert(a.recipient);
      }
    }
    if (first_op) {
      ++s.posts_with_op_delta;
      std::size_t b = 0;
      std::size_t f = 0;
      for (const auto& cm : d.comments) {
        if (cm.created_at < first_op->award_time) ++b;
        if (cm.created_at > first_op->award_time) ++f;
      }
      before.push_back(static_cast<double>(b));
      after.push_back(static_cast<double>(f));
    }
  }
  s.challengers = challengers.size();
  s.op_awarded_comments = op_comments.size();
  s.op_award_recipients = op_recipients.size();
  s.peer_awarded_comments = peer_comments.size();
  s.peer_award_recipients = peer_recipients.size();
  s.fraction_posts_with_op_delta =
      s.posts == 0 ? 0.0 : static_cast<double>(s.posts_with_op_delta) / static_cast<double>(s.posts);
  mean_sd(before, s.mean_replies_before_first_delta, s.sd_replies_before_first_delta);
  mean_sd(after, s.mean_replies_after_first_delta, s.sd_replies_after_first_delta);
  return s;
}

std::string CorpusSummary::to_json() const {
  nlohmann::ordered_json j;
  j["posts"] = posts;
  j["comments"] = comments;
  j["challengers"] = challengers;
  j["posts_with_op_delta"] = posts_with_op_delta;
  j["fraction_posts_with_op_delta"] = fraction_posts_with_op_delta;
  j["op_awarded_comments"] = op_awarded_comments;
  j["op_award_recipients"] = op_award_recipients;
  j["peer_awarded_comments"] = peer_awarded_comments;
  j["peer_award_recipients"] = peer_award_recipients;
  j["mean_replies_before_first_delta"] = mean_replies_before_first_delta;
  j["sd_replies_before_first_delta"] = sd_replies_before_first_delta;
  j["mean_replies_after_first_delta"] = mean_replies_after_first_delta;
  j["sd_replies_after_first_delta"] = sd_replies_after_first_delta;
  return j.dump(2) + "\n";
}

}  // namespace debatenet
