#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

// Placeholder occupying a URL's position in the token stream.
inline constexpr std::string_view kUrlToken = "<url>";

enum class Punct { Question, Exclamation, Period, Comma, DoubleQuote, SingleQuote, Other };

struct TokenSeq {
  std::vector<std::string> tokens;  // lowercased; URLs appear as kUrlToken
  std::map<Punct, std::size_t> punctuation_counts;
  std::size_t sentence_count = 0;
  std::size_t url_count = 0;

  std::size_t question_marks() const { return count(Punct::Question); }
  std::size_t quotation_marks() const {
    return count(Punct::DoubleQuote) + count(Punct::SingleQuote);
  }
  std::size_t punctuation_total() const;
  std::size_t count(Punct p) const {
    auto it = punctuation_counts.find(p);
    return it == punctuation_counts.end() ? 0 : it->second;
  }
  // Tokens other than URL placeholders.
  std::vector<std::string> words() const;

  // Concatenation as separate documents: counts add, sentences do not merge.
  void append(const TokenSeq& other);
};

bool is_url_token(std::string_view t);

TokenSeq tokenize(std::string_view text);

// Lowercased word tokens only (the vocabulary used for set overlaps).
std::vector<std::string> word_tokens(std::string_view text);

}  // namespace debatenet
