#include <cmath>
#include <set>

#include "doctest.h"
#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"
#include "util/utf8.hpp"

using namespace debatenet;

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("rng index stays in range and covers it") {
  Rng r(7);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto k = r.index(5);
    REQUIRE(k < 5);
    seen.insert(k);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("rng normal has unit moments") {
  Rng r(11);
  double s = 0, ss = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    ss += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(ss / n - 1.0) < 0.02);
}

TEST_CASE("rng weighted respects zero weights") {
  Rng r(3);
  for (int i = 0; i < 500; ++i) CHECK(r.weighted({0.0, 2.0, 0.0}) == 1);
}

TEST_CASE("parallel_for matches the sequential schedule") {
  std::vector<int> seq(1000), par(1000);
  parallel_for(seq.size(), 1, [&](std::size_t i) { seq[i] = static_cast<int>(i * i % 97); });
  parallel_for(par.size(), 8, [&](std::size_t i) { par[i] = static_cast<int>(i * i % 97); });
  CHECK(seq == par);
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 50) throw DataError("boom");
                               }),
                  DataError);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("csv round trip with quoting and metadata") {
  const std::string text = "# config_hash=abc\n# config.x=a,b\n" + csv_line({"a", "b"}) +
                           csv_line({"x,y", "he said \"hi\""}) + csv_line({"", "line\nbreak"});
  const CsvTable t = parse_csv(text);
  CHECK(t.meta.at("config_hash") == "abc");
  CHECK(t.meta.at("config.x") == "a,b");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "x,y");
  CHECK(t.rows[0][1] == "he said \"hi\"");
  CHECK(t.rows[1][1] == "line\nbreak");
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("zzz"), DataError);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("utf8 decode, lowercase, length") {
  CHECK(utf8::length("h\xc3\xa9llo") == 5);
  CHECK(utf8::to_lower(0x0394) == 0x03B4);  // Greek capital delta
  CHECK(utf8::to_lower('Q') == 'q');
  CHECK(utf8::is_letter(0x00E9));
  CHECK_FALSE(utf8::is_letter('7'));
}
