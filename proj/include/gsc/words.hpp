#pragma once

#include <cstdint>      // for int32_t
#include <stdexcept>    // for runtime_error
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for pair
#include <vector>       // for vector

namespace gsc {

// A letter is +(g+1) for generator g and -(g+1) for its inverse.
using Letter = std::int32_t;
using Word   = std::vector<Letter>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Letter make_letter(int gen, bool inverse = false) {
  return inverse ? -(gen + 1) : gen + 1;
}
inline int generator_of(Letter x) {
  return (x > 0 ? x : -x) - 1;
}
inline bool is_inverse(Letter x) {
  return x < 0;
}
inline Letter inverse(Letter x) {
  return -x;
}
// Position of a letter in the order a < A < b < B < ...
inline int letter_rank(Letter x) {
  return 2 * generator_of(x) + (x < 0 ? 1 : 0);
}
inline Letter letter_from_rank(int rank) {
  return make_letter(rank / 2, rank % 2 == 1);
}

// Global symbol table.  The names "a".."z" are preinterned so that single
// lowercase letters always get ids 0..25 in alphabetical order.
int intern_generator(std::string_view name);
int find_generator(std::string_view name);  // -1 if unknown
std::string const& generator_name(int gen);

Word parse_word(std::string_view text);
// Compact form when every generator in `w` is a single lowercase letter.
std::string to_string(Word const& w);
// Same, but the compact/verbose decision is taken over `alphabet`.
std::string to_string(Word const& w, std::vector<int> const& alphabet);

Word free_reduce(Word const& w);
bool is_freely_reduced(Word const& w);
// Returns (c, u) with w = u c u^-1 freely and c cyclically reduced.
std::pair<Word, Word> cyclic_reduce(Word const& w);
bool is_cyclically_reduced(Word const& w);
Word invert(Word const& w);
std::vector<Word> cyclic_conjugates(Word const& w);
Word rotate(Word const& w, size_t k);
Word concat(Word const& u, Word const& v);
Word power(Word const& w, int k);
Word subword(Word const& w, size_t from, size_t to);

// Length first, then lexicographic in letter_rank order.
bool shortlex_less(Word const& u, Word const& v);
bool lex_less(Word const& u, Word const& v);

struct WordHash {
  size_t operator()(Word const& w) const noexcept;
};

// Generators occurring in w, sorted.
std::vector<int> generators_of(Word const& w);

}  // namespace gsc
