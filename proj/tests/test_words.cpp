#include <random>  // for mt19937

#include "doctest.h"

#include "gsc/words.hpp"

namespace gsc {

namespace {

Word random_word(std::mt19937& rng, size_t len, int gens) {
  std::uniform_int_distribution<int> pick(0, 2 * gens - 1);
  Word                               w;
  for (size_t i = 0; i < len; ++i) {
    w.push_back(letter_from_rank(pick(rng)));
  }
  return w;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(to_string(free_reduce(parse_word("abB"))) == "a");
  CHECK(free_reduce(parse_word("")).empty());
  CHECK(to_string(free_reduce(parse_word("aAbBa"))) == "a");
  CHECK(is_freely_reduced(parse_word("abAB")));
  CHECK_FALSE(is_freely_reduced(parse_word("abBA")));
}

TEST_CASE("cyclic reduction") {
  auto [c1, u1] = cyclic_reduce(parse_word("Babb"));
  CHECK(to_string(c1) == "ab");
  CHECK(to_string(u1) == "B");
  auto [c2, u2] = cyclic_reduce(parse_word("babA"));
  CHECK(to_string(c2) == "babA");
  CHECK(u2.empty());
  auto [c3, u3] = cyclic_reduce(parse_word("ab"));
  CHECK(to_string(c3) == "ab");
  CHECK(u3.empty());
  auto [c4, u4] = cyclic_reduce(parse_word("aBA"));
  CHECK(to_string(c4) == "B");
  CHECK(to_string(u4) == "a");
}

TEST_CASE("inversion and conjugates") {
  CHECK(to_string(invert(parse_word("ab"))) == "BA");
  CHECK(invert(Word{}).empty());
  auto cc = cyclic_conjugates(parse_word("ab"));
  REQUIRE(cc.size() == 2);
  CHECK(to_string(cc[0]) == "ab");
  CHECK(to_string(cc[1]) == "ba");
}

TEST_CASE("verbose and compact syntax") {
  Word w = parse_word("s1 s1 b^-1");
  REQUIRE(w.size() == 3);
  CHECK(generator_name(generator_of(w[0])) == "s1");
  CHECK(is_inverse(w[2]));
  CHECK(to_string(w) == "s1 s1 b^-1");
  CHECK(parse_word("a b^-1 A") == parse_word("aBA"));
  CHECK(to_string(parse_word("a B")) == "aB");
  CHECK_THROWS_AS(parse_word("a^2"), ParseError);
  CHECK_THROWS_AS(parse_word("a-b c"), ParseError);
}

TEST_CASE("letter order") {
  CHECK(letter_rank(parse_word("a")[0]) < letter_rank(parse_word("A")[0]));
  CHECK(letter_rank(parse_word("A")[0]) < letter_rank(parse_word("b")[0]));
  CHECK(shortlex_less(parse_word("B"), parse_word("aa")));
  CHECK(shortlex_less(parse_word("aA"), parse_word("ab")));
}

TEST_CASE("reduction properties on random words") {
  std::mt19937 rng(7);
  for (int t = 0; t < 500; ++t) {
    Word w = random_word(rng, rng() % 65, 3);
    Word r = free_reduce(w);
    CHECK(free_reduce(r) == r);
    CHECK(r.size() <= w.size());
    CHECK(free_reduce(concat(w, invert(w))).empty());
    CHECK(invert(invert(w)) == w);
    auto [c, u] = cyclic_reduce(w);
    CHECK(is_cyclically_reduced(c));
    CHECK(free_reduce(concat(concat(u, c), invert(u))) == r);
    CHECK(parse_word(to_string(w)) == w);
  }
}

}  // namespace gsc
