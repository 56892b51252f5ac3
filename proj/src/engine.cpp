#include "gsc/engine.hpp"

#include <algorithm>      // for sort, unique, min
#include <deque>          // for deque
#include <limits>         // for numeric_limits
#include <set>            // for set
#include <unordered_map>  // for unordered_map
#include <unordered_set>  // for unordered_set

namespace gsc {

////////////////////////////////////////////////////////////////////////////
// SymmetrizedRelators
////////////////////////////////////////////////////////////////////////////

SymmetrizedRelators::SymmetrizedRelators(std::vector<Word> const& relators) {
  for (auto const& r : relators) {
    Word c = cyclic_reduce(r).first;
    for (auto const& base : {c, invert(c)}) {
      for (auto& w : cyclic_conjugates(base)) {
        words_.push_back(std::move(w));
      }
    }
  }
  std::sort(words_.begin(), words_.end(), shortlex_less);
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());

  nodes_.emplace_back();
  for (size_t id = 0; id < words_.size(); ++id) {
    auto const& w = words_[id];
    min_len_      = id == 0 ? w.size() : std::min(min_len_, w.size());
    max_len_      = std::max(max_len_, w.size());
    int n         = 0;
    for (Letter x : w) {
      int k = child(n, x);
      if (k < 0) {
        k = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[k].parent = n;
        nodes_[k].letter = x;
        nodes_[k].depth  = nodes_[n].depth + 1;
        nodes_[n].kids.emplace_back(x, k);
      }
      n = k;
      nodes_[n].through.push_back(static_cast<int>(id));
    }
  }
  for (auto const& nd : nodes_) {
    if (nd.through.size() >= 2) {
      max_piece_ = std::max(max_piece_, static_cast<size_t>(nd.depth));
    }
  }
}

int SymmetrizedRelators::child(int node, Letter x) const {
  for (auto const& [l, id] : nodes_[node].kids) {
    if (l == x) {
      return id;
    }
  }
  return -1;
}

Word SymmetrizedRelators::spell(int id) const {
  Word w;
  for (; id > 0; id = nodes_[id].parent) {
    w.push_back(nodes_[id].letter);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

bool SymmetrizedRelators::is_piece(Word const& w) const {
  if (w.empty()) {
    return false;
  }
  int n = 0;
  for (Letter x : w) {
    n = child(n, x);
    if (n < 0) {
      return false;
    }
  }
  return nodes_[n].through.size() >= 2;
}

std::vector<Word> SymmetrizedRelators::pieces() const {
  std::vector<Word> out;
  for (size_t id = 1; id < nodes_.size(); ++id) {
    if (nodes_[id].through.size() >= 2) {
      out.push_back(spell(static_cast<int>(id)));
    }
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Engine
////////////////////////////////////////////////////////////////////////////

namespace {

std::vector<Word> normalised(std::vector<Word> const& relators) {
  return Presentation::from_relators(relators).explicit_relators();
}

}  // namespace

Engine::Engine(std::vector<Word> const& relators)
    : relators_(normalised(relators)), sym_(relators_) {
  if (relators_.empty()) {
    certificate_.condition = "C'(1/6)";
    certificate_.pass      = true;
    certificate_.note      = "free group";
  } else {
    auto g       = Presentation::cycles_graph(relators_);
    certificate_ = check_gr_prime(g, Rational{1, 6});
    certificate_.condition = "C'(1/6)";
  }
}

Engine Engine::for_presentation(Presentation const& p, size_t word_len) {
  if (word_len == 0) {
    return Engine(p.relators());
  }
  return Engine(p.truncate(word_len));
}

std::vector<int> Engine::alphabet() const {
  std::vector<int> gens;
  for (auto const& r : relators_) {
    for (int g : generators_of(r)) {
      gens.push_back(g);
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

void Engine::require() const {
  if (!certified()) {
    throw UncertifiedError("relators do not satisfy C'(1/6): " + certificate_.note);
  }
}

Word Engine::dehn_reduce(Word const& input) const {
  require();
  Word w = free_reduce(input);
  auto const& R = sym_.words();
  bool changed  = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < w.size() && !changed; ++i) {
      int    node = 0, best = -1;
      size_t best_len = 0;
      for (size_t k = i; k < w.size(); ++k) {
        node = sym_.child(node, w[k]);
        if (node < 0) {
          break;
        }
        size_t depth = k - i + 1;
        int    rho   = sym_.node(node).through.front();
        if (2 * depth > R[rho].size()) {
          best     = rho;
          best_len = depth;
        }
      }
      if (best >= 0) {
        Word const& rho = R[best];
        Word        v   = invert(subword(rho, best_len, rho.size()));
        Word        out(w.begin(), w.begin() + i);
        out.insert(out.end(), v.begin(), v.end());
        out.insert(out.end(), w.begin() + i + best_len, w.end());
        w       = free_reduce(out);
        changed = true;
      }
    }
  }
  return w;
}

bool Engine::is_trivial(Word const& w) const {
  return dehn_reduce(w).empty();
}

bool Engine::equal(Word const& u, Word const& v) const {
  return is_trivial(concat(u, invert(v)));
}

bool Engine::face_possible(Word const& w) const {
  size_t mp = sym_.max_piece_length();
  for (size_t i = 0; i < w.size(); ++i) {
    int node = 0;
    for (size_t k = i; k < w.size(); ++k) {
      node = sym_.child(node, w[k]);
      if (node < 0) {
        break;
      }
      size_t la = k - i + 1;
      if (2 * (la + 2 * mp) >= sym_.words()[sym_.node(node).through.front()].size()) {
        return true;
      }
    }
  }
  return false;
}

namespace {

// Geodesics for a Dehn-reduced word w are read off a ladder of relator faces
// along w: state (i, c) means the geodesic so far ends at w[0..i) * c, with
// c a piece (trie node) or empty.
class Ladder {
 public:
  Ladder(SymmetrizedRelators const& sym, Word const& w) : sym_(sym), w_(w) {}

  template <typename F>
  void transitions(size_t i, int c, F&& emit) const {
    size_t n = w_.size();
    if (c == 0 && i < n) {
      emit(Word{w_[i]}, i + 1, 0);
    }
    auto const& R  = sym_.words();
    size_t      lc = c == 0 ? 0 : sym_.node(c).depth;
    Word        cinv;
    if (c != 0) {
      cinv = invert(sym_.spell(c));
    }
    size_t mp   = sym_.max_piece_length();
    int    node = 0;
    for (size_t la = 1; i + la <= n; ++la) {
      node = sym_.child(node, w_[i + la - 1]);
      if (node < 0) {
        break;
      }
      for (int id : sym_.node(node).through) {
        Word const& rho = R[id];
        size_t      L   = rho.size();
        if (2 * (la + lc + mp) < L) {
          break;  // ids are in length order
        }
        if (la + lc > L || !std::equal(cinv.begin(), cinv.end(), rho.end() - lc)) {
          continue;
        }
        size_t room = L - lc - la;
        int    pn   = 0;
        for (size_t k = 0; k <= room; ++k) {
          if (k > 0) {
            pn = sym_.child(pn, rho[la + k - 1]);
            if (pn < 0 || sym_.node(pn).through.size() < 2) {
              break;
            }
          }
          if (2 * (la + lc + k) >= L) {
            emit(invert(subword(rho, la + k, L - lc)), i + la, k == 0 ? 0 : pn);
          }
        }
      }
    }
  }

  std::optional<Word> best(size_t i, int c) {
    uint64_t key = (static_cast<uint64_t>(i) << 32) | static_cast<uint32_t>(c);
    auto     it  = best_.find(key);
    if (it != best_.end()) {
      return it->second;
    }
    std::optional<Word> out;
    if (i == w_.size()) {
      if (c == 0) {
        out = Word{};
      }
    } else {
      transitions(i, c, [&](Word const& e, size_t j, int c2) {
        auto rest = best(j, c2);
        if (!rest) {
          return;
        }
        Word cand = concat(e, *rest);
        if (!out || shortlex_less(cand, *out)) {
          out = std::move(cand);
        }
      });
    }
    best_.emplace(key, out);
    return out;
  }

  std::vector<Word> all(size_t i, int c, size_t cap) {
    uint64_t key = (static_cast<uint64_t>(i) << 32) | static_cast<uint32_t>(c);
    auto     it  = all_.find(key);
    if (it != all_.end()) {
      return it->second;
    }
    std::vector<Word> out;
    auto              b = best(i, c);
    if (b) {
      if (i == w_.size()) {
        out.push_back(Word{});
      } else {
        std::set<Word> acc;
        transitions(i, c, [&](Word const& e, size_t j, int c2) {
          auto rest = best(j, c2);
          if (!rest || e.size() + rest->size() != b->size() || acc.size() >= cap) {
            return;
          }
          for (auto const& r : all(j, c2, cap)) {
            acc.insert(concat(e, r));
            if (acc.size() >= cap) {
              break;
            }
          }
        });
        out.assign(acc.begin(), acc.end());
        std::sort(out.begin(), out.end(), shortlex_less);
      }
    }
    all_.emplace(key, out);
    return out;
  }

 private:
  SymmetrizedRelators const&                           sym_;
  Word const&                                          w_;
  std::unordered_map<uint64_t, std::optional<Word>>    best_;
  std::unordered_map<uint64_t, std::vector<Word>>      all_;
};

}  // namespace

Word Engine::normal_form(Word const& w) const {
  Word r = dehn_reduce(w);
  if (!face_possible(r)) {
    return r;
  }
  Ladder ladder(sym_, r);
  auto   b = ladder.best(0, 0);
  if (!b) {
    throw std::logic_error("normal form search found no geodesic");
  }
  return *b;
}

std::vector<Word> Engine::geodesics(Word const& w, size_t cap) const {
  Word r = dehn_reduce(w);
  if (!face_possible(r)) {
    return {r};
  }
  Ladder ladder(sym_, r);
  return ladder.all(0, 0, cap);
}

size_t Engine::length(Word const& w) const {
  return normal_form(w).size();
}

size_t Engine::distance(Word const& g, Word const& h) const {
  return length(concat(invert(g), h));
}

bool Engine::is_geodesic(Word const& w) const {
  return is_freely_reduced(w) && length(w) == w.size();
}

////////////////////////////////////////////////////////////////////////////
// Oracle
////////////////////////////////////////////////////////////////////////////

std::string to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::trivial:
      return "trivial";
    case OracleVerdict::nontrivial:
      return "nontrivial";
    default:
      return "budget_exhausted";
  }
}

std::vector<long> exponent_sums(Word const& w) {
  std::vector<long> s;
  for (Letter x : w) {
    size_t g = generator_of(x);
    if (g >= s.size()) {
      s.resize(g + 1, 0);
    }
    s[g] += is_inverse(x) ? -1 : 1;
  }
  return s;
}

namespace {

bool all_zero(std::vector<long> const& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

}  // namespace

OracleVerdict oracle_is_trivial(std::vector<Word> const& relators, Word const& w,
                                size_t length_budget, size_t step_budget) {
  Word start = free_reduce(w);
  if (start.empty()) {
    return OracleVerdict::trivial;
  }
  bool balanced = std::all_of(relators.begin(), relators.end(),
                              [](Word const& r) { return all_zero(exponent_sums(r)); });
  if (balanced && !all_zero(exponent_sums(start))) {
    return OracleVerdict::nontrivial;
  }
  if (start.size() > length_budget) {
    return OracleVerdict::budget_exhausted;
  }
  std::vector<Word> star;
  for (auto const& r : relators) {
    for (auto const& base : {r, invert(r)}) {
      for (auto& c : cyclic_conjugates(base)) {
        star.push_back(std::move(c));
      }
    }
  }
  std::sort(star.begin(), star.end());
  star.erase(std::unique(star.begin(), star.end()), star.end());

  std::unordered_set<Word, WordHash> seen{start};
  std::deque<Word>                   queue{start};
  size_t                             steps = 0;
  while (!queue.empty()) {
    if (++steps > step_budget) {
      return OracleVerdict::budget_exhausted;
    }
    Word u = std::move(queue.front());
    queue.pop_front();
    for (size_t p = 0; p <= u.size(); ++p) {
      for (auto const& rho : star) {
        if (rho.size() > u.size() + length_budget) {
          continue;
        }
        Word v(u.begin(), u.begin() + p);
        v.insert(v.end(), rho.begin(), rho.end());
        v.insert(v.end(), u.begin() + p, u.end());
        v = free_reduce(v);
        if (v.empty()) {
          return OracleVerdict::trivial;
        }
        if (v.size() <= length_budget && seen.insert(v).second) {
          queue.push_back(std::move(v));
        }
      }
    }
  }
  return OracleVerdict::nontrivial;
}

}  // namespace gsc
