#pragma once

#include <cstddef>  // for size_t
#include <iosfwd>   // for istream
#include <string>   // for string
#include <vector>   // for vector

#include "gsc/graph.hpp"
#include "gsc/words.hpp"

namespace gsc {

// r_N = (a^N b^N a^-N b^-N)^4, length 16N.
Word tv_relator(int N);
// (a b^N)^N s1^(N^2+N) ... s12^(N^2+N), length 13N(N+1).
Word notacyl_relator(int N);

// An indexed relator family.  `all` means every N >= 1.
struct Family {
  std::string      kind;  // "tv4" or "notacyl"
  std::vector<int> indices;
  bool             all = false;

  Word   relator(int N) const;
  size_t relator_length(int N) const;
  // "1,2,5" or "all"
  static Family parse(std::string const& kind, std::string const& spec);
};

class Presentation {
 public:
  Presentation() = default;

  std::vector<int> const& generators() const {
    return generators_;
  }
  std::vector<Word> const& explicit_relators() const {
    return relators_;
  }
  std::vector<Family> const& families() const {
    return families_;
  }
  bool finite() const;

  void add_generator(int gen);
  void add_relator(Word const& r);  // cyclically reduces; skips duplicates up to rotation/inversion
  void add_family(Family const& f);

  // Every relator; throws std::logic_error for an infinite family.
  std::vector<Word> relators() const;
  // Relators r with |r| < 2 word_len, sorted by length.  Only these can
  // take part in a Dehn step on a word of length <= word_len.
  std::vector<Word> truncate(size_t word_len) const;

  // Disjoint union of relator cycles.
  static LabelledGraph cycles_graph(std::vector<Word> const& relators);

  static Presentation parse(std::istream& in);
  static Presentation parse_file(std::string const& path);
  static Presentation from_family(std::string const& kind, std::string const& spec);
  static Presentation from_relators(std::vector<Word> const& relators);

 private:
  std::vector<int>    generators_;
  std::vector<Word>   relators_;
  std::vector<Family> families_;
};

// True when u and v are equal up to rotation and inversion.
bool same_cyclic_word(Word const& u, Word const& v);

}  // namespace gsc
