#include "gsc/smallcancel.hpp"

#include <algorithm>      // for sort, min
#include <functional>     // for function
#include <limits>         // for numeric_limits
#include <numeric>        // for gcd
#include <unordered_map>  // for unordered_map

#include <omp.h>

#include "json.hpp"

namespace gsc {

Rational Rational::parse(std::string const& text) {
  Rational r;
  auto     slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      r.num = std::stoll(text);
      r.den = 1;
    } else {
      r.num = std::stoll(text.substr(0, slash));
      r.den = std::stoll(text.substr(slash + 1));
    }
  } catch (std::exception const&) {
    throw ParseError("bad rational '" + text + "'");
  }
  if (r.den <= 0) {
    throw ParseError("bad rational '" + text + "'");
  }
  long long g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

using Occ = std::vector<std::pair<int, int>>;  // (start, current end)

bool two_orbits(LabelledGraph const& g, Occ const& occ) {
  if (occ.empty()) {
    return false;
  }
  int o = g.orbit_of(occ.front().first);
  for (auto const& p : occ) {
    if (g.orbit_of(p.first) != o) {
      return true;
    }
  }
  return false;
}

// A lift along a simple path, or a simple closed path once `closed` is set.
struct Lift {
  std::vector<int> path;
  bool             closed;
};

std::optional<Lift> extend(LabelledGraph const& g, Lift const& l, Letter y) {
  if (l.closed) {
    return std::nullopt;
  }
  int to = g.step(l.path.back(), y);
  if (to < 0) {
    return std::nullopt;
  }
  bool closes = to == l.path.front();
  if (!closes && std::find(l.path.begin(), l.path.end(), to) != l.path.end()) {
    return std::nullopt;
  }
  Lift out{l.path, closes};
  out.path.push_back(to);
  return out;
}

std::vector<Letter> signed_letters(LabelledGraph const& g) {
  std::vector<Letter> out;
  for (int gen : g.alphabet()) {
    out.push_back(make_letter(gen));
    out.push_back(make_letter(gen, true));
  }
  return out;
}

}  // namespace

PieceTable::PieceTable(LabelledGraph const& g, size_t max_len, bool parallel) {
  if (!g.folded()) {
    throw std::logic_error("piece table requires a folded graph");
  }
  g.prepare();
  max_len_ = max_len == 0 ? g.num_edges() : max_len;
  nodes_.emplace_back();
  auto letters = signed_letters(g);
  size_t ns    = letters.size();

  // One subtrie per seed letter; sub[s][0] is the node of the seed itself.
  std::vector<std::vector<Node>> sub(ns);
  std::vector<size_t>            depth(ns, 0);

  auto build = [&](size_t s) {
    Letter x = letters[s];
    Occ    occ;
    std::vector<Lift> lifts;
    for (size_t v = 0; v < g.num_vertices(); ++v) {
      int from = static_cast<int>(v), to = g.step(from, x);
      if (to >= 0) {
        occ.emplace_back(from, to);
        lifts.push_back({{from, to}, to == from});
      }
    }
    if (max_len_ == 0 || !two_orbits(g, occ)) {
      return;
    }
    auto& nodes = sub[s];
    nodes.emplace_back();
    struct Frame {
      int               node;
      Letter            last;
      Occ               occ;
      std::vector<Lift> lifts;
      size_t            len;
    };
    std::vector<Frame> stack;
    stack.push_back({0, x, std::move(occ), std::move(lifts), 1});
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      depth[s] = std::max(depth[s], f.len);
      if (f.len >= max_len_) {
        continue;
      }
      std::vector<Frame> next;
      for (Letter y : letters) {
        if (y == -f.last) {
          continue;
        }
        std::vector<Lift> l2;
        for (auto const& l : f.lifts) {
          if (auto e = extend(g, l, y)) {
            l2.push_back(std::move(*e));
          }
        }
        if (l2.empty()) {
          continue;
        }
        Occ o2;
        for (auto const& [st, en] : f.occ) {
          int to = g.step(en, y);
          if (to >= 0) {
            o2.emplace_back(st, to);
          }
        }
        if (!two_orbits(g, o2)) {
          continue;
        }
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[f.node].kids.emplace_back(y, id);
        next.push_back({id, y, std::move(o2), std::move(l2), f.len + 1});
      }
      for (auto it = next.rbegin(); it != next.rend(); ++it) {
        stack.push_back(std::move(*it));
      }
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (size_t s = 0; s < ns; ++s) {
      build(s);
    }
  } else {
    for (size_t s = 0; s < ns; ++s) {
      build(s);
    }
  }

  for (size_t s = 0; s < ns; ++s) {
    if (sub[s].empty()) {
      continue;
    }
    int offset = static_cast<int>(nodes_.size());
    nodes_[0].kids.emplace_back(letters[s], offset);
    for (auto& n : sub[s]) {
      for (auto& k : n.kids) {
        k.second += offset;
      }
      nodes_.push_back(std::move(n));
    }
    max_len_found_ = std::max(max_len_found_, depth[s]);
  }
}

int PieceTable::child(int node, Letter x) const {
  for (auto const& [l, id] : nodes_[node].kids) {
    if (l == x) {
      return id;
    }
  }
  return -1;
}

bool PieceTable::is_piece(Word const& w) const {
  if (w.empty()) {
    return false;
  }
  int n = root;
  for (Letter x : w) {
    n = child(n, x);
    if (n < 0) {
      return false;
    }
  }
  return true;
}

std::vector<Word> PieceTable::pieces() const {
  std::vector<Word>             out;
  Word                          cur;
  std::function<void(int)>      rec = [&](int n) {
    for (auto const& [l, id] : nodes_[n].kids) {
      cur.push_back(l);
      out.push_back(cur);
      rec(id);
      cur.pop_back();
    }
  };
  rec(root);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::vector<size_t> PieceTable::piece_prefixes(Word const& w, size_t pos, size_t limit,
                                               bool cyclic) const {
  std::vector<size_t> out;
  int                 n = root;
  size_t              len = w.size();
  for (size_t k = 0; k < limit; ++k) {
    size_t i = pos + k;
    if (i >= len) {
      if (!cyclic || len == 0) {
        break;
      }
      i %= len;
    }
    n = child(n, w[i]);
    if (n < 0) {
      break;
    }
    out.push_back(k + 1);
  }
  return out;
}

size_t PieceTable::longest_piece_at(Word const& w, size_t pos, size_t limit,
                                    bool cyclic) const {
  auto p = piece_prefixes(w, pos, limit, cyclic);
  return p.empty() ? 0 : p.back();
}

PieceReport is_piece(LabelledGraph const& g, Word const& w) {
  PieceReport r;
  if (w.empty()) {
    return r;
  }
  for (int v : g.occurrences(w)) {
    if (r.first < 0) {
      r.first = v;
    } else if (g.orbit_of(v) != g.orbit_of(r.first)) {
      r.second = v;
      r.piece  = true;
      break;
    }
  }
  return r;
}

std::optional<Decomposition> min_piece_decomposition(PieceTable const& t, Word const& w) {
  size_t              n   = w.size();
  size_t const        inf = std::numeric_limits<size_t>::max();
  std::vector<size_t> dist(n + 1, inf), prev(n + 1, 0);
  dist[0] = 0;
  for (size_t i = 0; i < n; ++i) {
    if (dist[i] == inf) {
      continue;
    }
    for (size_t L : t.piece_prefixes(w, i, n - i)) {
      if (dist[i] + 1 < dist[i + L]) {
        dist[i + L] = dist[i] + 1;
        prev[i + L] = i;
      }
    }
  }
  if (dist[n] == inf) {
    return std::nullopt;
  }
  Decomposition d;
  d.count = dist[n];
  for (size_t j = n; j > 0; j = prev[j]) {
    d.lengths.push_back(j - prev[j]);
  }
  std::reverse(d.lengths.begin(), d.lengths.end());
  return d;
}

std::optional<Decomposition> min_piece_decomposition(LabelledGraph const& g,
                                                     GraphPath const&     p) {
  PieceTable t(g, std::max(g.num_edges(), p.label.size()));
  return min_piece_decomposition(t, p.label);
}

std::optional<Decomposition> min_cyclic_piece_decomposition(PieceTable const& t,
                                                            Word const&       w) {
  std::optional<Decomposition> best;
  for (size_t r = 0; r < w.size(); ++r) {
    auto d = min_piece_decomposition(t, rotate(w, r));
    if (!d) {
      return std::nullopt;  // some letter is not a piece at all
    }
    if (!best || d->count < best->count) {
      best           = d;
      best->rotation = r;
    }
  }
  return best;
}

namespace {

GraphPath rotated(LabelledGraph const& g, GraphPath const& p, size_t r, bool reverse) {
  Word             lab   = reverse ? invert(p.label) : p.label;
  std::vector<int> verts = p.vertices;
  if (reverse) {
    std::reverse(verts.begin(), verts.end());
  }
  return *g.read_path(verts[r % lab.size()], rotate(lab, r));
}

}  // namespace

Verdict check_gr(LabelledGraph const& g, int n, PieceTable const* table) {
  std::optional<PieceTable> own;
  if (table == nullptr) {
    own.emplace(g);
    table = &*own;
  }
  Verdict v;
  v.condition = "Gr(" + std::to_string(n) + ")";
  v.n         = n;
  auto cycles = g.simple_closed_paths(g.num_edges());
  v.cycles_checked = cycles.size();
  for (auto const& c : cycles) {
    auto d = min_cyclic_piece_decomposition(*table, c.label);
    if (d && d->count < static_cast<size_t>(n)) {
      v.pass          = false;
      v.cycle         = rotated(g, c, d->rotation, false);
      v.decomposition = d->lengths;
      v.note = "closed path is a concatenation of " + std::to_string(d->count) + " pieces";
      return v;
    }
  }
  return v;
}

std::optional<std::pair<int, Automorphism>> nontrivial_cycle_component_symmetry(
    LabelledGraph const& g) {
  g.prepare();
  for (size_t c = 0; c < g.num_components(); ++c) {
    if (!g.component_has_cycle(static_cast<int>(c))) {
      continue;
    }
    auto const& vs = g.component_vertices(static_cast<int>(c));
    int         u  = vs.front();
    for (size_t t = 0; t < g.num_vertices(); ++t) {
      int v = static_cast<int>(t);
      if (v == u || g.orbit_of(v) != g.orbit_of(u)) {
        continue;
      }
      auto         fwd = g.extend_isomorphism(u, v);
      Automorphism a(g.num_vertices());
      for (size_t x = 0; x < a.size(); ++x) {
        a[x] = static_cast<int>(x);
      }
      int cv = g.component_of(v);
      if (cv == static_cast<int>(c)) {
        for (int x : vs) {
          a[x] = (*fwd)[x];
        }
      } else {
        auto back = g.extend_isomorphism(v, u);
        for (int x : vs) {
          a[x] = (*fwd)[x];
        }
        for (int x : g.component_vertices(cv)) {
          a[x] = (*back)[x];
        }
      }
      return std::make_pair(static_cast<int>(c), a);
    }
  }
  return std::nullopt;
}

Verdict check_c(LabelledGraph const& g, int n, PieceTable const* table) {
  Verdict v   = check_gr(g, n, table);
  v.condition = "C(" + std::to_string(n) + ")";
  if (!v.pass) {
    return v;
  }
  if (auto s = nontrivial_cycle_component_symmetry(g)) {
    v.pass         = false;
    v.component    = s->first;
    v.automorphism = s->second;
    v.note         = "non-trivial automorphism on a component with a cycle";
  }
  return v;
}

Verdict check_gr_prime(LabelledGraph const& g, Rational lambda, PieceTable const* table) {
  if (lambda.num <= 0 || lambda.num >= lambda.den) {
    throw std::invalid_argument("lambda must lie in (0,1)");
  }
  std::optional<PieceTable> own;
  if (table == nullptr) {
    own.emplace(g);
    table = &*own;
  }
  Verdict v;
  v.condition = "Gr'(" + lambda.str() + ")";
  v.lambda    = lambda;
  auto cycles = g.simple_closed_paths(g.num_edges());
  v.cycles_checked = cycles.size();
  for (auto const& c : cycles) {
    size_t L = c.label.size();
    for (int dir = 0; dir < 2; ++dir) {
      Word lab = dir == 0 ? c.label : invert(c.label);
      for (size_t pos = 0; pos < L; ++pos) {
        size_t lp = table->longest_piece_at(lab, pos, L, true);
        if (lp > 0
            && static_cast<long long>(lp) * lambda.den
                   >= lambda.num * static_cast<long long>(L)) {
          v.pass         = false;
          v.cycle        = rotated(g, c, pos, dir == 1);
          v.piece        = subword(v.cycle->label, 0, lp);
          v.piece_offset = 0;
          v.note         = "piece of length " + std::to_string(lp) + " on a cycle of length "
                   + std::to_string(L);
          return v;
        }
      }
    }
  }
  return v;
}

Verdict check_c_prime(LabelledGraph const& g, Rational lambda, PieceTable const* table) {
  Verdict v   = check_gr_prime(g, lambda, table);
  v.condition = "C'(" + lambda.str() + ")";
  if (!v.pass) {
    return v;
  }
  if (auto s = nontrivial_cycle_component_symmetry(g)) {
    v.pass         = false;
    v.component    = s->first;
    v.automorphism = s->second;
    v.note         = "non-trivial automorphism on a component with a cycle";
  }
  return v;
}

namespace {

bool is_automorphism(LabelledGraph const& g, Automorphism const& a) {
  if (a.size() != g.num_vertices()) {
    return false;
  }
  std::vector<char> hit(a.size(), 0);
  for (int x : a) {
    if (x < 0 || static_cast<size_t>(x) >= a.size() || hit[x]) {
      return false;
    }
    hit[x] = 1;
  }
  for (auto const& e : g.edges()) {
    if (g.step(a[e.src], make_letter(e.gen)) != a[e.dst]) {
      return false;
    }
  }
  return true;
}

bool simple_closed(GraphPath const& p) {
  if (!p.closed() || p.label.empty()) {
    return false;
  }
  std::vector<int> vs(p.vertices.begin(), p.vertices.end() - 1);
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
    return false;
  }
  std::vector<int> es = p.edges;
  std::sort(es.begin(), es.end());
  return std::adjacent_find(es.begin(), es.end()) == es.end();
}

}  // namespace

bool witness_valid(LabelledGraph const& g, Verdict const& v) {
  if (v.pass) {
    return false;
  }
  if (!v.automorphism.empty()) {
    if (!is_automorphism(g, v.automorphism)) {
      return false;
    }
    for (int x : g.component_vertices(v.component)) {
      if (v.automorphism[x] != x) {
        return g.component_has_cycle(v.component);
      }
    }
    return false;
  }
  if (!v.cycle) {
    return false;
  }
  auto p = g.read_path(v.cycle->start, v.cycle->label);
  if (!p || !simple_closed(*p)) {
    return false;
  }
  size_t L = p->label.size();
  if (!v.decomposition.empty()) {
    size_t pos = 0;
    for (size_t len : v.decomposition) {
      if (len == 0 || pos + len > L || !is_piece(g, subword(p->label, pos, pos + len)).piece) {
        return false;
      }
      pos += len;
    }
    return pos == L && v.decomposition.size() < static_cast<size_t>(v.n);
  }
  if (v.piece.empty() || v.piece.size() > L
      || subword(p->label, v.piece_offset, v.piece_offset + v.piece.size()) != v.piece) {
    return false;
  }
  return is_piece(g, v.piece).piece
         && static_cast<long long>(v.piece.size()) * v.lambda.den
                >= v.lambda.num * static_cast<long long>(L);
}

std::string Verdict::to_json(std::vector<int> const& alphabet) const {
  nlohmann::ordered_json j;
  j["condition"] = condition;
  j["pass"]      = pass;
  j["cycles_checked"] = cycles_checked;
  if (!pass) {
    nlohmann::ordered_json w;
    w["note"] = note;
    if (cycle) {
      w["cycle"]  = to_string(cycle->label, alphabet);
      w["length"] = cycle->label.size();
      w["start"]  = cycle->start;
    }
    if (!decomposition.empty()) {
      w["piece_lengths"] = decomposition;
    }
    if (!piece.empty()) {
      w["piece"]        = to_string(piece, alphabet);
      w["piece_length"] = piece.size();
    }
    if (!automorphism.empty()) {
      w["component"]    = component;
      w["automorphism"] = automorphism;
    }
    j["witness"] = w;
  }
  return j.dump();
}

std::optional<std::pair<int, Word>> gr_bruteforce(LabelledGraph const& g, int n,
                                                  size_t max_len) {
  g.prepare();
  std::unordered_map<Word, bool, WordHash> memo;
  auto piece = [&](Word const& w) {
    auto it = memo.find(w);
    if (it != memo.end()) {
      return it->second;
    }
    bool p = is_piece(g, w).piece;
    memo.emplace(w, p);
    return p;
  };
  size_t const inf = std::numeric_limits<size_t>::max();
  Word         lab;
  // dp[j]: fewest pieces covering lab[0..j).  Subwords of pieces are pieces,
  // so dp is nondecreasing and the earliest start of a piece ending at j,
  // first[j], is nondecreasing too; dp[j] = dp[first[j]] + 1.
  std::vector<size_t>              dp{0}, first{0};
  std::vector<std::pair<int, int>> reduced;  // (edge, direction)
  std::optional<std::pair<int, Word>> found;

  std::function<void(int, int)> dfs = [&](int s, int v) {
    if (found || lab.size() >= max_len) {
      return;
    }
    for (auto const& h : g.incident(v)) {
      lab.push_back(h.letter);
      size_t j = lab.size();
      size_t i = first.back();
      while (i < j && !piece(subword(lab, i, j))) {
        ++i;
      }
      size_t best = i < j ? dp[i] + 1 : inf;
      if (best < static_cast<size_t>(n)) {
        first.push_back(i);
        int  dir    = is_inverse(h.letter) ? -1 : 1;
        bool popped = !reduced.empty() && reduced.back().first == h.edge
                      && reduced.back().second == -dir;
        if (popped) {
          reduced.pop_back();
        } else {
          reduced.emplace_back(h.edge, dir);
        }
        dp.push_back(best);
        if (h.to == s && !reduced.empty()) {
          found = std::make_pair(s, lab);
        } else {
          dfs(s, h.to);
        }
        dp.pop_back();
        first.pop_back();
        if (popped) {
          reduced.emplace_back(h.edge, -dir);
        } else {
          reduced.pop_back();
        }
      }
      lab.pop_back();
      if (found) {
        return;
      }
    }
  };
  for (size_t s = 0; s < g.num_vertices() && !found; ++s) {
    dfs(static_cast<int>(s), static_cast<int>(s));
  }
  return found;
}

}  // namespace gsc
