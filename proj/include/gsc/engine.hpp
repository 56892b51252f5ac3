#pragma once

#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "gsc/presentation.hpp"
#include "gsc/smallcancel.hpp"
#include "gsc/words.hpp"

namespace gsc {

struct UncertifiedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All cyclic conjugates of the relators and their inverses, deduplicated and
// sorted shortlex, with a prefix trie for subword lookup.
class SymmetrizedRelators {
 public:
  explicit SymmetrizedRelators(std::vector<Word> const& relators);

  std::vector<Word> const& words() const {
    return words_;
  }
  size_t size() const {
    return words_.size();
  }
  size_t min_length() const {
    return min_len_;
  }
  size_t max_length() const {
    return max_len_;
  }
  // Longest classical piece: a common prefix of two distinct members.
  size_t max_piece_length() const {
    return max_piece_;
  }
  bool is_piece(Word const& w) const;
  std::vector<Word> pieces() const;

  struct Node {
    std::vector<std::pair<Letter, int>> kids;
    std::vector<int>                    through;  // word ids, ascending (shortlex)
    int                                 parent = -1;
    Letter                              letter = 0;
    int                                 depth  = 0;
  };
  int child(int node, Letter x) const;
  Node const& node(int id) const {
    return nodes_[id];
  }
  // Label of the path from the root to `id`.
  Word spell(int id) const;

 private:
  std::vector<Word> words_;
  std::vector<Node> nodes_;
  size_t            min_len_   = 0;
  size_t            max_len_   = 0;
  size_t            max_piece_ = 0;
};

// Word problem and geodesics for a finite classical presentation that
// satisfies C'(1/6).  Every query throws UncertifiedError unless the
// relators passed the check at construction.
class Engine {
 public:
  explicit Engine(std::vector<Word> const& relators);
  // Relators of `p` long enough to matter for words of length <= word_len
  // (all relators when p is finite and word_len is 0).
  static Engine for_presentation(Presentation const& p, size_t word_len = 0);

  bool certified() const {
    return certificate_.pass;
  }
  Verdict const& certificate() const {
    return certificate_;
  }
  std::vector<Word> const& relators() const {
    return relators_;
  }
  SymmetrizedRelators const& symmetrized() const {
    return sym_;
  }
  std::vector<int> alphabet() const;

  Word dehn_reduce(Word const& w) const;
  bool is_trivial(Word const& w) const;
  bool equal(Word const& u, Word const& v) const;

  // Shortlex-least geodesic word representing w.
  Word normal_form(Word const& w) const;
  // All geodesic words representing w, up to `cap` of them, sorted shortlex.
  std::vector<Word> geodesics(Word const& w, size_t cap = 10000) const;
  size_t            length(Word const& w) const;
  size_t            distance(Word const& g, Word const& h) const;
  bool              is_geodesic(Word const& w) const;

 private:
  void require() const;
  bool face_possible(Word const& w) const;

  std::vector<Word>   relators_;
  SymmetrizedRelators sym_;
  Verdict             certificate_;
};

enum class OracleVerdict { trivial, nontrivial, budget_exhausted };
std::string to_string(OracleVerdict v);

// Breadth-first search over freely reduced words of length <= length_budget
// reachable from w by inserting symmetrized relators.  Independent of Engine.
OracleVerdict oracle_is_trivial(std::vector<Word> const& relators, Word const& w,
                                size_t length_budget, size_t step_budget);

// Per-generator exponent sums, indexed by generator id.
std::vector<long> exponent_sums(Word const& w);

}  // namespace gsc
