#include "text/tokenize.hpp"

#include "util/utf8.hpp"

namespace debatenet {

std::size_t TokenSeq::punctuation_total() const {
  std::size_t n = 0;
  for (const auto& [_, c] : punctuation_counts) n += c;
  return n;
}

std::vector<std::string> TokenSeq::words() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!is_url_token(t)) out.push_back(t);
  }
  return out;
}

void TokenSeq::append(const TokenSeq& other) {
  tokens.insert(tokens.end(), other.tokens.begin(), other.tokens.end());
  for (const auto& [p, c] : other.punctuation_counts) punctuation_counts[p] += c;
  sentence_count += other.sentence_count;
  url_count += other.url_count;
}

bool is_url_token(std::string_view t) { return t == kUrlToken; }

namespace {

bool starts_with_ci(const std::vector<char32_t>& cps, std::size_t i, std::string_view prefix) {
  if (i + prefix.size() > cps.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (utf8::to_lower(cps[i + k]) != static_cast<char32_t>(prefix[k])) return false;
  }
  return true;
}

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0xA0 || (c >= 0x2000 && c <= 0x200B) || c == 0x3000;
}

bool is_word_char(char32_t c) { return utf8::is_letter(c) || utf8::is_digit(c) || c == U'_'; }

// Length of a URL starting at i, or 0.
std::size_t url_length(const std::vector<char32_t>& cps, std::size_t i) {
  if (i > 0 && is_word_char(cps[i - 1])) return 0;
  if (!(starts_with_ci(cps, i, "http://") || starts_with_ci(cps, i, "https://") ||
        starts_with_ci(cps, i, "www."))) {
    return 0;
  }
  std::size_t j = i;
  while (j < cps.size() && !is_space(cps[j]) && cps[j] != U'<' && cps[j] != U'>' &&
         cps[j] != U'"' && cps[j] != U'[' && cps[j] != U']') {
    ++j;
  }
  // Trailing sentence punctuation and closing brackets belong to the prose.
  while (j > i) {
    const char32_t c = cps[j - 1];
    if (c == U'.' || c == U',' || c == U';' || c == U':' || c == U'!' || c == U'?' ||
        c == U')' || c == U'\'' || c == 0x2019 || c == 0x201D) {
      --j;
    } else {
      break;
    }
  }
  const std::size_t len = j - i;
  const std::size_t scheme = starts_with_ci(cps, i, "https://") ? 8 : (starts_with_ci(cps, i, "http://") ? 7 : 4);
  return len > scheme ? len : 0;
}

bool is_double_quote(char32_t c) {
  return c == U'"' || c == 0x201C || c == 0x201D || c == 0x201E || c == 0x00AB || c == 0x00BB;
}

bool is_single_quote(char32_t c) { return c == U'\'' || c == 0x2018 || c == 0x2019 || c == 0x201A; }

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == 0x2026; }

bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60 && c != U'_') ||
           (c >= 0x7B && c <= 0x7E);
  }
  return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) || c == 0xA1 || c == 0xBF ||
         c == 0xAB || c == 0xBB || (c >= 0x3001 && c <= 0x3003);
}

Punct classify(char32_t c) {
  if (c == U'?') return Punct::Question;
  if (c == U'!') return Punct::Exclamation;
  if (c == U'.' || c == 0x2026) return Punct::Period;
  if (c == U',') return Punct::Comma;
  if (is_double_quote(c)) return Punct::DoubleQuote;
  if (is_single_quote(c)) return Punct::SingleQuote;
  return Punct::Other;
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
  TokenSeq seq;
  const std::vector<char32_t> cps = utf8::decode(text);
  std::size_t tokens_in_sentence = 0;
  bool in_terminator_run = false;

  auto end_sentence_if_open = [&] {
    if (tokens_in_sentence > 0) {
      ++seq.sentence_count;
      tokens_in_sentence = 0;
    }
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (const std::size_t ulen = url_length(cps, i); ulen > 0) {
      seq.tokens.emplace_back(kUrlToken);
      ++seq.url_count;
      ++tokens_in_sentence;
      in_terminator_run = false;
      i += ulen;
      continue;
    }
    if (is_word_char(c)) {
      std::vector<char32_t> word;
      std::size_t j = i;
      while (j < cps.size()) {
        if (is_word_char(cps[j])) {
          word.push_back(utf8::to_lower(cps[j]));
          ++j;
          continue;
        }
        // Word-internal joiners: apostrophes and periods between letters,
        // periods and commas between digits.
        if (j + 1 < cps.size() && !word.empty()) {
          const char32_t prev = cps[j - 1];
          const char32_t next = cps[j + 1];
          const bool letters = utf8::is_letter(prev) && utf8::is_letter(next);
          const bool digits = utf8::is_digit(prev) && utf8::is_digit(next);
          if ((letters && (cps[j] == U'\'' || cps[j] == 0x2019 || cps[j] == U'.')) ||
              (digits && (cps[j] == U'.' || cps[j] == U','))) {
            word.push_back(cps[j] == 0x2019 ? U'\'' : cps[j]);
            ++j;
            continue;
          }
        }
        break;
      }
      seq.tokens.push_back(utf8::encode(word));
      ++tokens_in_sentence;
      in_terminator_run = false;
      i = j;
      continue;
    }
    if (is_punct(c)) {
      ++seq.punctuation_counts[classify(c)];
      if (is_terminator(c)) {
        if (!in_terminator_run) end_sentence_if_open();
        in_terminator_run = true;
      } else {
        in_terminator_run = false;
      }
    } else if (!is_space(c)) {
      in_terminator_run = false;
    }
    ++i;
  }
  end_sentence_if_open();
  return seq;
}

std::vector<std::string> word_tokens(std::string_view text) { return tokenize(text).words(); }

}  // namespace debatenet
