#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace debatenet {

using Timestamp = std::int64_t;

// Cutoff meaning "after the last comment": the end-of-conversation snapshot.
inline constexpr Timestamp kEndOfConversation = std::numeric_limits<Timestamp>::max();

struct Comment {
  std::string id;
  std::string author;
  std::string parent_id;  // empty for the post itself
  std::string post_id;
  Timestamp created_at = 0;
  std::string body;
  // Parent could not be resolved; the comment hangs off the synthetic orphan root.
  bool orphan = false;

  bool operator==(const Comment&) const = default;
};

struct Discussion {
  Comment post;  // body holds the selftext
  std::string title;
  std::string op_author;
  std::vector<Comment> comments;  // ordered by (created_at, id)

  // Title and selftext, the text the OP put up for debate.
  std::string op_text() const;

  // nullptr when id is neither the post nor a comment.
  const Comment* find(std::string_view id) const;
  // Author of the node with this id, or nullptr.
  const std::string* author_of(std::string_view id) const;

  void reindex();

  bool operator==(const Discussion& o) const {
    return post == o.post && title == o.title && op_author == o.op_author && comments == o.comments;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;  // comment id -> position
};

struct SkipRecord {
  std::size_t line = 0;  // 1-based, 0 when not tied to a single line
  std::string reason;
  std::string id;
};

struct SkipReport {
  std::size_t lines_read = 0;
  std::size_t malformed = 0;       // not JSON / missing or mistyped fields / unknown kind
  std::size_t duplicate_ids = 0;
  std::size_t unknown_post = 0;    // comment whose post never appeared
  std::size_t orphans = 0;         // attached to the orphan root, still retained
  std::size_t short_posts = 0;     // dropped by the post-length validation flag
  std::vector<SkipRecord> records;

  std::size_t total() const {
    return malformed + duplicate_ids + unknown_post + orphans + short_posts;
  }
  std::string to_json() const;
};

struct Corpus {
  std::vector<Discussion> discussions;
  SkipReport skips;
  std::map<std::string, std::string> meta;  // from {"kind":"meta"} lines

  const Discussion* find(std::string_view post_id) const;
};

struct ParseOptions {
  bool validate_post_length = false;
  std::size_t min_post_chars = 500;
};

// Reads line-delimited JSON. Malformed lines land in the skip report; only a
// stream failure throws (IoError).
Corpus parse_corpus(std::istream& in, const ParseOptions& opts = {});
Corpus parse_corpus_text(std::string_view text, const ParseOptions& opts = {});
Corpus load_corpus_files(const std::vector<std::string>& paths, const ParseOptions& opts = {});

// Writes the corpus back in the input schema, posts in corpus order, each
// followed by its comments. Meta entries come first as a single meta line.
void write_corpus(std::ostream& out, const Corpus& corpus);
std::string corpus_to_jsonl(const Corpus& corpus);

}  // namespace debatenet
