#include "gsc/presentation.hpp"

#include <algorithm>  // for sort, find
#include <fstream>    // for ifstream
#include <sstream>    // for istringstream

namespace gsc {

Word tv_relator(int N) {
  if (N < 1) {
    throw std::invalid_argument("relator index must be >= 1");
  }
  Letter a = make_letter(0), b = make_letter(1);
  Word   block;
  for (Letter x : {a, b, -a, -b}) {
    block.insert(block.end(), N, x);
  }
  return power(block, 4);
}

Word notacyl_relator(int N) {
  if (N < 1) {
    throw std::invalid_argument("relator index must be >= 1");
  }
  Word head{make_letter(0)};
  head.insert(head.end(), N, make_letter(1));
  Word r = power(head, N);
  for (int i = 1; i <= 12; ++i) {
    int s = intern_generator("s" + std::to_string(i));
    r.insert(r.end(), N * N + N, make_letter(s));
  }
  return r;
}

Word Family::relator(int N) const {
  if (kind == "tv4") {
    return tv_relator(N);
  }
  if (kind == "notacyl") {
    return notacyl_relator(N);
  }
  throw std::invalid_argument("unknown family '" + kind + "'");
}

size_t Family::relator_length(int N) const {
  return kind == "tv4" ? 16 * static_cast<size_t>(N) : 13 * static_cast<size_t>(N) * (N + 1);
}

Family Family::parse(std::string const& kind, std::string const& spec) {
  if (kind != "tv4" && kind != "notacyl") {
    throw ParseError("unknown family '" + kind + "'");
  }
  Family f;
  f.kind = kind;
  if (spec == "all") {
    f.all = true;
    return f;
  }
  std::istringstream ss(spec);
  std::string        tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      int    N    = std::stoi(tok, &used);
      if (used != tok.size() || N < 1) {
        throw std::invalid_argument(tok);
      }
      f.indices.push_back(N);
    } catch (std::exception const&) {
      throw ParseError("bad family index '" + tok + "'");
    }
  }
  if (f.indices.empty()) {
    throw ParseError("empty family index list");
  }
  std::sort(f.indices.begin(), f.indices.end());
  f.indices.erase(std::unique(f.indices.begin(), f.indices.end()), f.indices.end());
  return f;
}

bool same_cyclic_word(Word const& u, Word const& v) {
  if (u.size() != v.size()) {
    return false;
  }
  Word vi = invert(v);
  for (size_t k = 0; k < u.size(); ++k) {
    Word r = rotate(u, k);
    if (r == v || r == vi) {
      return true;
    }
  }
  return u.empty();
}

bool Presentation::finite() const {
  for (auto const& f : families_) {
    if (f.all) {
      return false;
    }
  }
  return true;
}

void Presentation::add_generator(int gen) {
  if (std::find(generators_.begin(), generators_.end(), gen) == generators_.end()) {
    generators_.push_back(gen);
    std::sort(generators_.begin(), generators_.end());
  }
}

void Presentation::add_relator(Word const& r) {
  Word c = cyclic_reduce(r).first;
  if (c.empty()) {
    return;
  }
  for (auto const& s : relators_) {
    if (same_cyclic_word(s, c)) {
      return;
    }
  }
  for (int g : generators_of(c)) {
    add_generator(g);
  }
  relators_.push_back(c);
}

void Presentation::add_family(Family const& f) {
  Word sample = f.relator(1);
  for (int g : generators_of(sample)) {
    add_generator(g);
  }
  families_.push_back(f);
}

std::vector<Word> Presentation::relators() const {
  if (!finite()) {
    throw std::logic_error("presentation has infinitely many relators");
  }
  std::vector<Word> out = relators_;
  for (auto const& f : families_) {
    for (int N : f.indices) {
      out.push_back(f.relator(N));
    }
  }
  return out;
}

std::vector<Word> Presentation::truncate(size_t word_len) const {
  std::vector<Word> out;
  auto              keep = [&](size_t len) { return len < 2 * word_len; };
  for (auto const& r : relators_) {
    if (keep(r.size())) {
      out.push_back(r);
    }
  }
  for (auto const& f : families_) {
    if (f.all) {
      for (int N = 1; keep(f.relator_length(N)); ++N) {
        out.push_back(f.relator(N));
      }
    } else {
      for (int N : f.indices) {
        if (keep(f.relator_length(N))) {
          out.push_back(f.relator(N));
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](Word const& u, Word const& v) { return u.size() < v.size(); });
  return out;
}

LabelledGraph Presentation::cycles_graph(std::vector<Word> const& relators) {
  return LabelledGraph::cycles(relators);
}

Presentation Presentation::parse(std::istream& in) {
  Presentation p;
  std::string  line;
  size_t       lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    std::string        kw;
    if (!(ss >> kw)) {
      continue;
    }
    try {
      if (kw == "generators") {
        std::string tok;
        while (ss >> tok) {
          Word w = parse_word(tok);
          if (w.size() != 1 || is_inverse(w[0])) {
            throw ParseError("bad generator '" + tok + "'");
          }
          p.add_generator(generator_of(w[0]));
        }
      } else if (kw == "relator") {
        std::string rest;
        std::getline(ss, rest);
        Word r = parse_word(rest);
        if (r.empty()) {
          throw ParseError("empty relator");
        }
        p.add_relator(r);
      } else if (kw == "family") {
        std::string kind, spec;
        if (!(ss >> kind >> spec)) {
          throw ParseError("expected 'family <kind> <indices>'");
        }
        p.add_family(Family::parse(kind, spec));
      } else {
        throw ParseError("unknown keyword '" + kw + "'");
      }
    } catch (ParseError const& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return p;
}

Presentation Presentation::parse_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  return parse(in);
}

Presentation Presentation::from_family(std::string const& kind, std::string const& spec) {
  Presentation p;
  p.add_family(Family::parse(kind, spec));
  return p;
}

Presentation Presentation::from_relators(std::vector<Word> const& relators) {
  Presentation p;
  for (auto const& r : relators) {
    p.add_relator(r);
  }
  return p;
}

}  // namespace gsc
