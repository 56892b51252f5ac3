#pragma once

#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "gsc/graph.hpp"
#include "gsc/words.hpp"

namespace gsc {

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational parse(std::string const& text);  // "1/6" or "3"
  std::string     str() const;
  double          value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// Trie of the pieces of a folded graph that can be read along a simple path
// or a simple closed path; these are the only pieces a simple closed path can
// contain.  A word is a piece when the set of vertices it can be read from
// meets at least two automorphism orbits.
class PieceTable {
 public:
  // max_len = 0 means the number of edges of g.
  explicit PieceTable(LabelledGraph const& g, size_t max_len = 0, bool parallel = true);

  bool   is_piece(Word const& w) const;
  size_t size() const {
    return nodes_.size() - 1;
  }
  size_t max_length() const {
    return max_len_found_;
  }
  size_t length_cap() const {
    return max_len_;
  }
  std::vector<Word> pieces() const;  // sorted shortlex

  // Lengths L >= 1 such that w[pos..pos+L) is a piece, L <= limit, read
  // cyclically when `cyclic` is set.
  std::vector<size_t> piece_prefixes(Word const& w, size_t pos, size_t limit,
                                     bool cyclic = false) const;
  size_t longest_piece_at(Word const& w, size_t pos, size_t limit,
                          bool cyclic = false) const;

  int child(int node, Letter x) const;
  static constexpr int root = 0;

 private:
  struct Node {
    std::vector<std::pair<Letter, int>> kids;
  };
  std::vector<Node> nodes_;
  size_t            max_len_       = 0;
  size_t            max_len_found_ = 0;
};

struct PieceReport {
  bool piece = false;
  int  first = -1;   // start vertex of one lift
  int  second = -1;  // start vertex of a lift in another orbit
};
PieceReport is_piece(LabelledGraph const& g, Word const& w);

struct Decomposition {
  size_t              count = 0;
  std::vector<size_t> lengths;  // piece lengths in order
  size_t              rotation = 0;  // for cyclic decompositions
};

// nullopt means infinity: some letter is not a piece.
std::optional<Decomposition> min_piece_decomposition(PieceTable const& t, Word const& w);
std::optional<Decomposition> min_piece_decomposition(LabelledGraph const& g, GraphPath const& p);
// Minimum over all base points of the closed path labelled w.
std::optional<Decomposition> min_cyclic_piece_decomposition(PieceTable const& t, Word const& w);

struct Verdict {
  std::string condition;
  int         n = 0;
  Rational    lambda;
  bool        pass = true;
  std::string note;
  // Cycle witness, rotated so that the reported decomposition or piece
  // starts at its base point.
  std::optional<GraphPath> cycle;
  std::vector<size_t>      decomposition;
  Word                     piece;
  size_t                   piece_offset = 0;
  // Automorphism witness for the C(n)/C'(λ) clause.
  int          component = -1;
  Automorphism automorphism;
  size_t       cycles_checked = 0;

  std::string to_json(std::vector<int> const& alphabet) const;
};

Verdict check_gr(LabelledGraph const& g, int n, PieceTable const* table = nullptr);
Verdict check_c(LabelledGraph const& g, int n, PieceTable const* table = nullptr);
Verdict check_gr_prime(LabelledGraph const& g, Rational lambda,
                       PieceTable const* table = nullptr);
Verdict check_c_prime(LabelledGraph const& g, Rational lambda,
                      PieceTable const* table = nullptr);

// Re-checks a failing verdict from scratch (no piece table reuse).
bool witness_valid(LabelledGraph const& g, Verdict const& v);

// Automorphism clause: every component with a cycle has only trivial
// automorphism restrictions.  Returns a violating automorphism if any.
std::optional<std::pair<int, Automorphism>> nontrivial_cycle_component_symmetry(
    LabelledGraph const& g);

// Direct search over all closed walks (backtracking allowed) of length at
// most max_len for a non-trivial one that is a concatenation of fewer than n
// pieces.  Returns (start, label) of a witness.
std::optional<std::pair<int, Word>> gr_bruteforce(LabelledGraph const& g, int n,
                                                  size_t max_len);

}  // namespace gsc
