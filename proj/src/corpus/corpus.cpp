#include "corpus/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "util/error.hpp"
#include "util/utf8.hpp"

namespace debatenet {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string Discussion::op_text() const {
  if (title.empty()) return post.body;
  if (post.body.empty()) return title;
  return title + "\n\n" + post.body;
}

void Discussion::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < comments.size(); ++i) index_.emplace(comments[i].id, i);
}

const Comment* Discussion::find(std::string_view id) const {
  if (id == post.id) return &post;
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &comments[it->second];
}

const std::string* Discussion::author_of(std::string_view id) const {
  const Comment* c = find(id);
  return c ? &c->author : nullptr;
}

const Discussion* Corpus::find(std::string_view post_id) const {
  for (const auto& d : discussions) {
    if (d.post.id == post_id) return &d;
  }
  return nullptr;
}

std::string SkipReport::to_json() const {
  ordered_json j;
  j["lines_read"] = lines_read;
  j["malformed"] = malformed;
  j["duplicate_ids"] = duplicate_ids;
  j["unknown_post"] = unknown_post;
  j["orphans"] = orphans;
  j["short_posts"] = short_posts;
  j["total"] = total();
  auto& recs = j["records"] = ordered_json::array();
  for (const auto& r : records) {
    recs.push_back(ordered_json{{"line", r.line}, {"reason", r.reason}, {"id", r.id}});
  }
  return j.dump(2) + "\n";
}

namespace {

struct RawComment {
  Comment c;
  std::size_t line;
};

std::optional<std::string> get_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_null()) return std::string();
  return std::nullopt;
}

std::optional<Timestamp> get_time(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  if (it->is_number_integer()) return it->get<Timestamp>();
  if (it->is_number_float()) return static_cast<Timestamp>(it->get<double>());
  if (it->is_string()) {
    const std::string s = it->get<std::string>();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return static_cast<Timestamp>(v);
    } catch (...) {
    }
  }
  return std::nullopt;
}

// Reddit dumps prefix fullnames with a type tag ("t1_" comment, "t3_" post).
std::string strip_fullname(std::string_view id) {
  if (id.size() > 3 && id[0] == 't' && id[2] == '_' && (id[1] == '1' || id[1] == '3')) {
    return std::string(id.substr(3));
  }
  return std::string(id);
}

struct Builder {
  const ParseOptions& opts;
  Corpus corpus;
  std::vector<std::string> post_order;
  std::unordered_map<std::string, Discussion> posts;
  std::unordered_map<std::string, std::size_t> post_lines;
  std::unordered_map<std::string, std::vector<RawComment>> pending;
  std::unordered_set<std::string> seen_ids;

  void skip(std::size_t line, std::string reason, std::string id, std::size_t& counter) {
    ++counter;
    corpus.skips.records.push_back({line, std::move(reason), std::move(id)});
  }

  void add_line(std::string_view line, std::size_t lineno) {
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) return;
    ++corpus.skips.lines_read;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      skip(lineno, "invalid JSON", "", corpus.skips.malformed);
      return;
    }
    const auto kind = get_string(j, "kind");
    if (!kind) {
      skip(lineno, "missing field 'kind'", "", corpus.skips.malformed);
      return;
    }
    if (*kind == "meta") {
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "kind" && it->is_string()) corpus.meta[it.key()] = it->get<std::string>();
      }
      return;
    }
    const auto id = get_string(j, "id");
    const auto author = get_string(j, "author");
    const auto created = get_time(j, "created_utc");
    const std::string id_s = id.value_or("");
    if (!id || id->empty()) {
      skip(lineno, "missing field 'id'", "", corpus.skips.malformed);
      return;
    }
    if (!author) {
      skip(lineno, "missing field 'author'", id_s, corpus.skips.malformed);
      return;
    }
    if (!created) {
      skip(lineno, "missing field 'created_utc'", id_s, corpus.skips.malformed);
      return;
    }
    if (*kind == "post") {
      const auto title = get_string(j, "title");
      const auto selftext = get_string(j, "selftext");
      if (!title || !selftext) {
        skip(lineno, title ? "missing field 'selftext'" : "missing field 'title'", id_s,
             corpus.skips.malformed);
        return;
      }
      const std::string pid = strip_fullname(*id);
      if (!seen_ids.insert(pid).second) {
        skip(lineno, "duplicate id", id_s, corpus.skips.duplicate_ids);
        return;
      }
      Discussion d;
      d.post = Comment{pid, *author, "", pid, *created, *selftext, false};
      d.title = *title;
      d.op_author = *author;
      post_order.push_back(pid);
      post_lines[pid] = lineno;
      posts.emplace(pid, std::move(d));
    } else if (*kind == "comment") {
      const auto parent = get_string(j, "parent_id");
      const auto post = get_string(j, "post_id");
      const auto body = get_string(j, "body");
      if (!parent || !post || !body) {
        const char* which = !parent ? "parent_id" : (!post ? "post_id" : "body");
        skip(lineno, std::string("missing field '") + which + "'", id_s, corpus.skips.malformed);
        return;
      }
      if (!seen_ids.insert(*id).second) {
        skip(lineno, "duplicate id", id_s, corpus.skips.duplicate_ids);
        return;
      }
      pending[strip_fullname(*post)].push_back(
          {Comment{*id, *author, *parent, strip_fullname(*post), *created, *body, false}, lineno});
    } else {
      skip(lineno, "unknown kind '" + *kind + "'", id_s, corpus.skips.malformed);
    }
  }

  void finish() {
    // Comments whose post never showed up, in line order for a stable report.
    std::vector<const RawComment*> lost;
    for (const auto& [pid, list] : pending) {
      if (!posts.count(pid)) {
        for (const auto& rc : list) lost.push_back(&rc);
      }
    }
    std::sort(lost.begin(), lost.end(),
              [](const RawComment* a, const RawComment* b) { return a->line < b->line; });
    for (const RawComment* rc : lost) {
      skip(rc->line, "unknown post '" + rc->c.post_id + "'", rc->c.id, corpus.skips.unknown_post);
    }

    for (const auto& pid : post_order) {
      Discussion d = std::move(posts.at(pid));
      if (opts.validate_post_length && utf8::length(d.post.body) < opts.min_post_chars) {
        skip(post_lines[pid], "post shorter than minimum length", pid, corpus.skips.short_posts);
        continue;
      }
      std::vector<RawComment> raw;
      if (auto it = pending.find(pid); it != pending.end()) raw = std::move(it->second);
      std::unordered_set<std::string> ids;
      for (const auto& rc : raw) ids.insert(rc.c.id);

      for (auto& rc : raw) {
        Comment& c = rc.c;
        if (c.parent_id == pid || ids.count(c.parent_id)) continue;
        const std::string stripped = strip_fullname(c.parent_id);
        if (stripped == pid || ids.count(stripped)) {
          c.parent_id = stripped;
          continue;
        }
        c.orphan = true;
      }
      // Parent cycles are unreachable from the post; they attach to the orphan root too.
      std::unordered_map<std::string, std::vector<std::size_t>> children;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!raw[i].c.orphan) children[raw[i].c.parent_id].push_back(i);
      }
      std::vector<char> reached(raw.size(), 0);
      std::vector<std::string> stack{pid};
      for (const auto& rc : raw) {
        if (rc.c.orphan) stack.push_back(rc.c.id);
      }
      while (!stack.empty()) {
        const std::string cur = std::move(stack.back());
        stack.pop_back();
        auto it = children.find(cur);
        if (it == children.end()) continue;
        for (std::size_t k : it->second) {
          if (!reached[k]) {
            reached[k] = 1;
            stack.push_back(raw[k].c.id);
          }
        }
      }
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].c.orphan) {
          skip(raw[i].line, "unknown parent '" + raw[i].c.parent_id + "'", raw[i].c.id,
               corpus.skips.orphans);
        } else if (!reached[i]) {
          raw[i].c.orphan = true;
          skip(raw[i].line, "parent cycle", raw[i].c.id, corpus.skips.orphans);
        }
      }
      d.comments.reserve(raw.size());
      for (auto& rc : raw) d.comments.push_back(std::move(rc.c));
      std::sort(d.comments.begin(), d.comments.end(), [](const Comment& a, const Comment& b) {
        return a.created_at != b.created_at ? a.created_at < b.created_at : a.id < b.id;
      });
      d.reindex();
      corpus.discussions.push_back(std::move(d));
    }
    std::stable_sort(corpus.skips.records.begin(), corpus.skips.records.end(),
                     [](const SkipRecord& a, const SkipRecord& b) { return a.line < b.line; });
  }
};

}  // namespace

Corpus parse_corpus(std::istream& in, const ParseOptions& opts) {
  Builder b{opts, {}, {}, {}, {}, {}, {}};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    b.add_line(line, lineno);
  }
  if (in.bad()) throw IoError("stream read failure after line " + std::to_string(lineno));
  b.finish();
  return std::move(b.corpus);
}

Corpus parse_corpus_text(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in, opts);
}

Corpus load_corpus_files(const std::vector<std::string>& paths, const ParseOptions& opts) {
  // Files are concatenated so comments may reference posts from another file.
  Builder b{opts, {}, {}, {}, {}, {}, {}};
  std::size_t lineno = 0;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      b.add_line(line, lineno);
    }
    if (in.bad()) throw IoError("read failure on '" + path + "'");
  }
  b.finish();
  return std::move(b.corpus);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  if (!corpus.meta.empty()) {
    ordered_json m;
    m["kind"] = "meta";
    for (const auto& [k, v] : corpus.meta) m[k] = v;
    out << m.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << '\n';
  }
  for (const auto& d : corpus.discussions) {
    ordered_json p;
    p["kind"] = "post";
    p["id"] = d.post.id;
    p["author"] = d.post.author;
    p["created_utc"] = d.post.created_at;
    p["title"] = d.title;
    p["selftext"] = d.post.body;
    out << p.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << '\n';
    for (const auto& c : d.comments) {
      ordered_json o;
      o["kind"] = "comment";
      o["id"] = c.id;
      o["author"] = c.author;
      o["parent_id"] = c.parent_id;
      o["post_id"] = c.post_id;
      o["created_utc"] = c.created_at;
      o["body"] = c.body;
      out << o.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << '\n';
    }
  }
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(out, corpus);
  return out.str();
}

}  // namespace debatenet
