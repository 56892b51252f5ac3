#include "gsc/words.hpp"

#include <algorithm>      // for reverse, sort, unique
#include <cctype>         // for isalpha, islower
#include <mutex>          // for unique_lock
#include <shared_mutex>   // for shared_mutex, shared_lock
#include <unordered_map>  // for unordered_map
#include <deque>          // for deque

namespace gsc {

namespace {

struct SymbolTable {
  std::shared_mutex mtx;
  std::deque<std::string> names;
  std::unordered_map<std::string, int> ids;

  SymbolTable() {
    for (char c = 'a'; c <= 'z'; ++c) {
      ids.emplace(std::string(1, c), static_cast<int>(names.size()));
      names.emplace_back(1, c);
    }
  }
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

bool compact_ok(std::vector<int> const& gens) {
  for (int g : gens) {
    auto const& n = generator_name(g);
    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

int intern_generator(std::string_view name) {
  auto& t = table();
  std::string key(name);
  {
    std::shared_lock lk(t.mtx);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) {
      return it->second;
    }
  }
  std::unique_lock lk(t.mtx);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) {
    return it->second;
  }
  int id = static_cast<int>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(key, id);
  return id;
}

int find_generator(std::string_view name) {
  auto&            t = table();
  std::shared_lock lk(t.mtx);
  auto             it = t.ids.find(std::string(name));
  return it == t.ids.end() ? -1 : it->second;
}

std::string const& generator_name(int gen) {
  auto&            t = table();
  std::shared_lock lk(t.mtx);
  if (gen < 0 || static_cast<size_t>(gen) >= t.names.size()) {
    throw std::out_of_range("unknown generator id " + std::to_string(gen));
  }
  return t.names[gen];
}

Word parse_word(std::string_view text) {
  size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  size_t e = text.find_last_not_of(" \t\r\n");
  text     = text.substr(b, e - b + 1);

  bool compact = true;
  for (char c : text) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      compact = false;
      break;
    }
  }
  Word w;
  if (compact) {
    for (char c : text) {
      bool inv = !std::islower(static_cast<unsigned char>(c));
      char lo  = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      w.push_back(make_letter(lo - 'a', inv));
    }
    return w;
  }
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i == text.size()) {
      break;
    }
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::string_view tok = text.substr(i, j - i);
    i                    = j;
    bool inv             = false;
    auto caret           = tok.find('^');
    if (caret != std::string_view::npos) {
      auto exp = tok.substr(caret + 1);
      if (exp == "-1") {
        inv = true;
      } else if (exp != "1") {
        throw ParseError("bad exponent in token '" + std::string(tok) + "'");
      }
      tok = tok.substr(0, caret);
    }
    if (tok.empty()) {
      throw ParseError("empty generator token");
    }
    for (char c : tok) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw ParseError("bad character in token '" + std::string(tok) + "'");
      }
    }
    // A lone uppercase letter means the inverse of its lowercase twin.
    if (tok.size() == 1 && std::isupper(static_cast<unsigned char>(tok[0]))) {
      inv = !inv;
      w.push_back(make_letter(std::tolower(static_cast<unsigned char>(tok[0])) - 'a', inv));
      continue;
    }
    w.push_back(make_letter(intern_generator(tok), inv));
  }
  return w;
}

std::string to_string(Word const& w, std::vector<int> const& alphabet) {
  std::string out;
  if (compact_ok(alphabet)) {
    for (Letter x : w) {
      char c = generator_name(generator_of(x))[0];
      out.push_back(is_inverse(x) ? static_cast<char>(std::toupper(c)) : c);
    }
    return out;
  }
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0) {
      out.push_back(' ');
    }
    out += generator_name(generator_of(w[i]));
    if (is_inverse(w[i])) {
      out += "^-1";
    }
  }
  return out;
}

std::string to_string(Word const& w) {
  return to_string(w, generators_of(w));
}

Word free_reduce(Word const& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

bool is_freely_reduced(Word const& w) {
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == -w[i - 1]) {
      return false;
    }
  }
  return true;
}

std::pair<Word, Word> cyclic_reduce(Word const& w) {
  Word   r = free_reduce(w);
  size_t k = 0;
  while (2 * k + 1 < r.size() && r[k] == -r[r.size() - 1 - k]) {
    ++k;
  }
  Word core(r.begin() + k, r.end() - k);
  Word conj(r.begin(), r.begin() + k);
  return {core, conj};
}

bool is_cyclically_reduced(Word const& w) {
  return is_freely_reduced(w) && (w.size() < 2 || w.front() != -w.back());
}

Word invert(Word const& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) {
    x = -x;
  }
  return out;
}

Word rotate(Word const& w, size_t k) {
  if (w.empty()) {
    return w;
  }
  k %= w.size();
  Word out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return out;
}

std::vector<Word> cyclic_conjugates(Word const& w) {
  std::vector<Word> out;
  for (size_t k = 0; k < w.size(); ++k) {
    out.push_back(rotate(w, k));
  }
  return out;
}

Word concat(Word const& u, Word const& v) {
  Word out(u);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word power(Word const& w, int k) {
  Word base = k < 0 ? invert(w) : w;
  Word out;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return out;
}

Word subword(Word const& w, size_t from, size_t to) {
  return Word(w.begin() + from, w.begin() + to);
}

bool lex_less(Word const& u, Word const& v) {
  size_t n = std::min(u.size(), v.size());
  for (size_t i = 0; i < n; ++i) {
    if (u[i] != v[i]) {
      return letter_rank(u[i]) < letter_rank(v[i]);
    }
  }
  return u.size() < v.size();
}

bool shortlex_less(Word const& u, Word const& v) {
  if (u.size() != v.size()) {
    return u.size() < v.size();
  }
  return lex_less(u, v);
}

size_t WordHash::operator()(Word const& w) const noexcept {
  size_t h = 1469598103934665603ULL;
  for (Letter x : w) {
    h ^= static_cast<size_t>(static_cast<uint32_t>(x));
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<int> generators_of(Word const& w) {
  std::vector<int> g;
  for (Letter x : w) {
    g.push_back(generator_of(x));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace gsc
