#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "text/features.hpp"
#include "text/lexicon.hpp"
#include "text/tokenize.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace debatenet;
using fixtures::comment;
using fixtures::post;

namespace {

// Reference entropy straight from label frequencies.
double entropy_oracle(const std::vector<std::string>& items) {
  std::map<std::string, double> freq;
  for (const auto& s : items) freq[s] += 1.0;
  double h = 0.0;
  for (const auto& [k, c] : freq) {
    const double p = c / static_cast<double>(items.size());
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

TEST_CASE("tokenize question and quotation marks") {
  const auto t = tokenize("Why? \"Yes.\"");
  CHECK(t.tokens == std::vector<std::string>{"why", "yes"});
  CHECK(t.question_marks() == 1);
  CHECK(t.quotation_marks() == 2);
}

TEST_CASE("tokenize extracts URLs first") {
  const auto t = tokenize("see https://x.y/z now");
  CHECK(t.tokens == std::vector<std::string>{"see", std::string(kUrlToken), "now"});
  CHECK(t.url_count == 1);
  CHECK(t.words() == std::vector<std::string>{"see", "now"});
}

TEST_CASE("tokenize empty text") {
  const auto t = tokenize("");
  CHECK(t.tokens.empty());
  CHECK(t.sentence_count == 0);
}

TEST_CASE("tokenize sentences, abbreviations, numbers, typographic quotes") {
  const auto t = tokenize("It costs 3.50 dollars, e.g. today. Don't panic! \xe2\x80\x9c" "fine\xe2\x80\x9d");
  CHECK(std::count(t.tokens.begin(), t.tokens.end(), "3.50") == 1);
  CHECK(std::count(t.tokens.begin(), t.tokens.end(), "e.g") + std::count(t.tokens.begin(), t.tokens.end(), "e.g.") == 1);
  CHECK(std::count(t.tokens.begin(), t.tokens.end(), "don't") == 1);
  CHECK(t.quotation_marks() == 2);
  CHECK(t.sentence_count >= 3);
  CHECK(tokenize("GRA\xc3\x9c \xce\x94\xce\x95\xce\x9b").tokens.size() == 2);
}

TEST_CASE("nonempty tokens imply at least one sentence") {
  CHECK(tokenize("no terminator").sentence_count == 1);
  CHECK(tokenize("one. two").sentence_count == 2);
  CHECK(tokenize("...").sentence_count == 0);
}

TEST_CASE("shannon entropy examples") {
  CHECK(shannon_entropy({"a", "a", "a", "a"}) == 0.0);
  CHECK(shannon_entropy({"a", "b", "c", "d"}) == doctest::Approx(2.0).epsilon(1e-15));
  const double expected = -(2.0 / 3.0) * std::log2(2.0 / 3.0) - (1.0 / 3.0) * std::log2(1.0 / 3.0);
  CHECK(shannon_entropy({"a", "a", "b"}) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(shannon_entropy({"a", "a", "b"}) == doctest::Approx(0.9183).epsilon(1e-4));
  CHECK(shannon_entropy({}) == 0.0);
}

TEST_CASE("entropy bounds and agreement with the frequency oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> items(1 + rng.index(40));
    for (auto& s : items) s = std::string(1, static_cast<char>('a' + rng.index(1 + rng.index(12))));
    const double h = shannon_entropy(items);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(items.size())) + 1e-12);
    CHECK(h == doctest::Approx(entropy_oracle(items)).epsilon(1e-12));
  }
}

TEST_CASE("coarse POS tags") {
  const auto tags = coarse_pos_tags(tokenize("the cat ran quickly"));
  REQUIRE(tags.size() == 4);
  CHECK(tags[0] == PosTag::Det);
  CHECK(tags[1] == PosTag::Noun);
  CHECK(tags[2] == PosTag::Verb);
  CHECK(tags[3] == PosTag::Adv);
  CHECK(coarse_pos_tags(tokenize("")).empty());
  CHECK(tag_word("walking") == PosTag::Verb);
  CHECK(tag_word("walked") == PosTag::Verb);
  CHECK(tag_word("42") == PosTag::Num);
  CHECK(tag_word("we") == PosTag::Pron);
  CHECK(tag_word(kUrlToken) == PosTag::Url);
}

TEST_CASE("identical tags give zero type entropy") {
  const auto f = language_features({tokenize("cats dogs birds")}, {}, LexiconSet::defaults());
  CHECK(f.token_type_entropy == 0.0);
}

TEST_CASE("syllable counts") {
  CHECK(count_syllables("the") == 1);
  CHECK(count_syllables("cat") == 1);
  CHECK(count_syllables("make") == 1);
  CHECK(count_syllables("table") == 2);
  CHECK(count_syllables("reading") == 2);
  CHECK(count_syllables("beautiful") == 3);
  CHECK(count_syllables("psst") == 1);
}

TEST_CASE("flesch-kincaid hand fixture") {
  // 6 words, 1 sentence, 6 syllables (each word one syllable).
  const auto fk = flesch_kincaid("The cat sat on the mat.");
  REQUIRE(fk);
  const double grade = 0.39 * 6.0 + 11.8 * 1.0 - 15.59;
  const double ease = 206.835 - 1.015 * 6.0 - 84.6 * 1.0;
  CHECK(fk->grade == doctest::Approx(grade).epsilon(1e-12));
  CHECK(fk->ease == doctest::Approx(ease).epsilon(1e-12));
  CHECK(fk->grade == doctest::Approx(-1.45).epsilon(1e-12));
  CHECK(fk->ease == doctest::Approx(116.145).epsilon(1e-12));
  CHECK_FALSE(flesch_kincaid("").has_value());
  CHECK_FALSE(flesch_kincaid("?!").has_value());
}

TEST_CASE("flesch-kincaid grade is invariant under repetition") {
  const std::string base = "Reading carefully helps. Everyone benefits from simple explanations! ";
  const auto one = flesch_kincaid(base);
  REQUIRE(one);
  for (int k = 2; k <= 5; ++k) {
    std::string text;
    for (int i = 0; i < k; ++i) text += base;
    const auto rep = flesch_kincaid(text);
    REQUIRE(rep);
    CHECK(rep->grade == doctest::Approx(one->grade).epsilon(1e-12));
    CHECK(rep->ease == doctest::Approx(one->ease).epsilon(1e-12));
  }
}

TEST_CASE("interplay examples") {
  const auto same = interplay_features({"a", "b", "c"}, {"c", "b", "a"});
  CHECK(same.n_common == 3);
  CHECK(same.reply_fraction == 1.0);
  CHECK(same.op_fraction == 1.0);
  CHECK(same.jaccard == 1.0);

  const auto ex = interplay_features({"the", "cat", "sat"}, {"the", "dog"});
  CHECK(ex.n_common == 1);
  CHECK(ex.reply_fraction == doctest::Approx(1.0 / 3.0));
  CHECK(ex.op_fraction == doctest::Approx(0.5));
  CHECK(ex.jaccard == doctest::Approx(0.25));

  const auto disjoint = interplay_features({"x"}, {"y"});
  CHECK(disjoint.n_common == 0);
  CHECK(disjoint.reply_fraction == 0.0);
  CHECK(disjoint.op_fraction == 0.0);
  CHECK(disjoint.jaccard == 0.0);

  const auto empty = interplay_features({}, {});
  CHECK(empty.jaccard == 0.0);
  CHECK(empty.reply_fraction == 0.0);
}

TEST_CASE("interplay identities on random sets") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> a(rng.index(10)), o(rng.index(10));
    for (auto& s : a) s = std::to_string(rng.index(12));
    for (auto& s : o) s = std::to_string(rng.index(12));
    const auto ao = interplay_features(a, o);
    const auto oa = interplay_features(o, a);
    CHECK(ao.jaccard == oa.jaccard);
    CHECK(ao.reply_fraction == oa.op_fraction);
    CHECK(ao.reply_fraction <= 1.0);
    CHECK(ao.jaccard <= 1.0);
    CHECK((ao.jaccard == 0.0) == (ao.n_common == 0));
    // Set oracle.
    std::set<std::string> sa(a.begin(), a.end()), so(o.begin(), o.end()), inter, uni;
    std::set_intersection(sa.begin(), sa.end(), so.begin(), so.end(), std::inserter(inter, inter.end()));
    std::set_union(sa.begin(), sa.end(), so.begin(), so.end(), std::inserter(uni, uni.end()));
    CHECK(ao.n_common == inter.size());
    if (!uni.empty()) CHECK(ao.jaccard == doctest::Approx(double(inter.size()) / double(uni.size())));
  }
}

TEST_CASE("lexicon counts phrases case-insensitively") {
  const auto f = language_features({tokenize("I think that, for example, we should.")}, {}, LexiconSet::defaults());
  CHECK(f.n_examples == 1);
  CHECK(f.n_first_person == 1);
  CHECK(f.n_first_person_plural == 1);
  CHECK(f.n_hedges >= 1);
  Lexicon l("# comment\nfor example\nfoo\n");
  CHECK(l.count(tokenize("FOR EXAMPLE foo, For example").tokens) == 3);
}

TEST_CASE("lexicon directory overrides and falls back") {
  const auto lex = LexiconSet::from_directory(std::string(DN_SOURCE_DIR) + "/data/lexicons");
  CHECK(lex.positive.size() == LexiconSet::defaults().positive.size());
  CHECK_THROWS_AS(LexiconSet::from_directory("/nonexistent/lexicons"), ConfigError);
}

namespace {

const char* kBodies[] = {
    "I think this is wrong. See https://example.org/a for an example!",
    "We should, for instance, ask \"why\"? The answer is good.",
    "Perhaps the data shows a bad result. Maybe not.",
    "Our plan: reduce costs by 3.5 percent, e.g. through taxes.",
};

Discussion thread(const std::vector<int>& order) {
  std::string lines = post("p1", "op", 100, "The cost of taxes is a good question for the data.");
  long t = 110;
  for (int i : order) lines += comment("c" + std::to_string(i), "alice", "p1", "p1", t++, kBodies[i]);
  lines += comment("z", "bob", "p1", "p1", t++, "unrelated text");
  return fixtures::single(lines);
}

bool same_features(const LanguageFeatureVector& a, const LanguageFeatureVector& b) {
  const auto va = a.values(), vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (std::isnan(va[i]) != std::isnan(vb[i])) return false;
    if (!std::isnan(va[i]) && std::abs(va[i] - vb[i]) > 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("features are invariant to comment order") {
  const auto& lex = LexiconSet::defaults();
  const auto ref = extract_language_features("alice", thread({0, 1, 2, 3}), 1000, lex);
  std::vector<int> order{0, 1, 2, 3};
  while (std::next_permutation(order.begin(), order.end())) {
    CHECK(same_features(ref, extract_language_features("alice", thread(order), 1000, lex)));
  }
  CHECK(ref.n_urls == 1);
  CHECK(ref.n_question_marks == 1);
  CHECK(ref.n_quotation_marks == 2);
  CHECK(ref.n_examples == 2);  // "for instance" and "e.g."
}

TEST_CASE("appending text never decreases raw counts") {
  const auto& lex = LexiconSet::defaults();
  std::vector<TokenSeq> parts;
  LanguageFeatureVector prev = language_features(parts, {}, lex);
  for (const char* body : kBodies) {
    parts.push_back(tokenize(body));
    const auto cur = language_features(parts, {}, lex);
    const auto a = prev.values(), b = cur.values();
    for (std::size_t i = 0; i <= 12; ++i) CHECK(b[i] >= a[i]);  // the thirteen count fields
    prev = cur;
  }
}

TEST_CASE("feature vector layout") {
  const auto& names = LanguageFeatureVector::names();
  CHECK(names.size() == 21);
  CHECK(names.front() == "n_words");
  CHECK(names.back() == "jaccard");
}

TEST_CASE("ineligible users") {
  const auto d = thread({0});
  CHECK_THROWS_AS(extract_language_features("nobody", d, 1000, LexiconSet::defaults()), IneligibleError);
  CHECK_THROWS_AS(extract_language_features("alice", d, 110, LexiconSet::defaults()), IneligibleError);
}

TEST_CASE("a user with only empty comments has undefined readability") {
  const auto d = fixtures::single(post("p1", "op", 100, "x") + comment("c1", "quiet", "p1", "p1", 110, ""));
  const auto f = extract_language_features("quiet", d, 1000, LexiconSet::defaults());
  CHECK(f.n_words == 0);
  CHECK(std::isnan(f.fk_grade));
  CHECK(std::isnan(f.fk_ease));
}
