#include "gsc/graph.hpp"

#include <algorithm>      // for sort, min, find
#include <cctype>         // for isupper, isalnum
#include <deque>          // for deque
#include <fstream>        // for ifstream
#include <functional>     // for function
#include <map>            // for map
#include <set>            // for set
#include <sstream>        // for istringstream
#include <unordered_map>  // for unordered_map

namespace gsc {

int LabelledGraph::add_vertex(std::string name) {
  int id = static_cast<int>(names_.size());
  if (name.empty()) {
    name = "v" + std::to_string(id);
  }
  names_.push_back(std::move(name));
  invalidate();
  return id;
}

int LabelledGraph::add_edge(int src, int dst, int gen) {
  if (src < 0 || dst < 0 || static_cast<size_t>(src) >= names_.size()
      || static_cast<size_t>(dst) >= names_.size()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  edges_.push_back({src, dst, gen});
  declare_generator(gen);
  invalidate();
  return static_cast<int>(edges_.size() - 1);
}

void LabelledGraph::declare_generator(int gen) {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), gen);
  if (it == alphabet_.end() || *it != gen) {
    alphabet_.insert(it, gen);
  }
}

int LabelledGraph::vertex_by_name(std::string const& name) const {
  for (size_t v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) {
      return static_cast<int>(v);
    }
  }
  return -1;
}

void LabelledGraph::invalidate() {
  adj_ok_   = false;
  comp_ok_  = false;
  orbit_ok_ = false;
}

void LabelledGraph::build_adjacency() const {
  if (adj_ok_) {
    return;
  }
  adj_.assign(names_.size(), {});
  for (size_t e = 0; e < edges_.size(); ++e) {
    auto const& ed = edges_[e];
    adj_[ed.src].push_back({make_letter(ed.gen), ed.dst, static_cast<int>(e)});
    adj_[ed.dst].push_back({make_letter(ed.gen, true), ed.src, static_cast<int>(e)});
  }
  for (auto& a : adj_) {
    std::stable_sort(a.begin(), a.end(), [](Half const& x, Half const& y) {
      return letter_rank(x.letter) < letter_rank(y.letter);
    });
  }
  adj_ok_ = true;
}

void LabelledGraph::prepare() const {
  build_adjacency();
  build_components();
  if (folded()) {
    build_orbits();
  }
}

std::optional<FoldViolation> LabelledGraph::check_folded() const {
  build_adjacency();
  for (size_t v = 0; v < adj_.size(); ++v) {
    auto const& a = adj_[v];
    for (size_t i = 1; i < a.size(); ++i) {
      if (a[i].letter == a[i - 1].letter) {
        return FoldViolation{static_cast<int>(v), generator_of(a[i].letter),
                             !is_inverse(a[i].letter)};
      }
    }
  }
  return std::nullopt;
}

int LabelledGraph::step_edge(int v, Letter x) const {
  build_adjacency();
  for (auto const& h : adj_[v]) {
    if (h.letter == x) {
      return h.edge;
    }
  }
  return -1;
}

int LabelledGraph::step(int v, Letter x) const {
  build_adjacency();
  for (auto const& h : adj_[v]) {
    if (h.letter == x) {
      return h.to;
    }
  }
  return -1;
}

std::optional<GraphPath> LabelledGraph::read_path(int start, Word const& w) const {
  build_adjacency();
  GraphPath p;
  p.start = start;
  p.label = w;
  p.vertices.push_back(start);
  int v = start;
  for (Letter x : w) {
    int e = -1;
    int to = -1;
    for (auto const& h : adj_[v]) {
      if (h.letter == x) {
        e  = h.edge;
        to = h.to;
        break;
      }
    }
    if (e < 0) {
      return std::nullopt;
    }
    p.edges.push_back(e);
    p.vertices.push_back(to);
    v = to;
  }
  return p;
}

void LabelledGraph::build_components() const {
  if (comp_ok_) {
    return;
  }
  build_adjacency();
  comp_of_.assign(names_.size(), -1);
  comp_vertices_.clear();
  for (size_t s = 0; s < names_.size(); ++s) {
    if (comp_of_[s] >= 0) {
      continue;
    }
    int c = static_cast<int>(comp_vertices_.size());
    comp_vertices_.emplace_back();
    std::deque<int> q{static_cast<int>(s)};
    comp_of_[s] = c;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      comp_vertices_[c].push_back(v);
      for (auto const& h : adj_[v]) {
        if (comp_of_[h.to] < 0) {
          comp_of_[h.to] = c;
          q.push_back(h.to);
        }
      }
    }
    std::sort(comp_vertices_[c].begin(), comp_vertices_[c].end());
  }
  comp_ok_ = true;
}

size_t LabelledGraph::num_components() const {
  build_components();
  return comp_vertices_.size();
}

int LabelledGraph::component_of(int v) const {
  build_components();
  return comp_of_[v];
}

std::vector<int> const& LabelledGraph::component_vertices(int c) const {
  build_components();
  return comp_vertices_[c];
}

std::vector<int> LabelledGraph::component_edges(int c) const {
  build_components();
  std::vector<int> out;
  for (size_t e = 0; e < edges_.size(); ++e) {
    if (comp_of_[edges_[e].src] == c) {
      out.push_back(static_cast<int>(e));
    }
  }
  return out;
}

bool LabelledGraph::component_has_cycle(int c) const {
  return component_edges(c).size() >= component_vertices(c).size();
}

std::vector<int> LabelledGraph::rooted_code(int root) const {
  std::unordered_map<int, int> idx;
  std::vector<int>             order{root};
  idx[root] = 0;
  std::vector<int> code;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    code.push_back(-1 - static_cast<int>(adj_[v].size()));
    for (auto const& h : adj_[v]) {
      auto it = idx.find(h.to);
      int  j;
      if (it == idx.end()) {
        j = static_cast<int>(order.size());
        idx.emplace(h.to, j);
        order.push_back(h.to);
      } else {
        j = it->second;
      }
      code.push_back(letter_rank(h.letter));
      code.push_back(j);
    }
  }
  return code;
}

void LabelledGraph::build_orbits() const {
  if (orbit_ok_) {
    return;
  }
  if (!folded()) {
    throw std::logic_error("orbits require a folded graph");
  }
  build_components();
  std::map<std::vector<int>, int> ids;
  orbit_of_.assign(names_.size(), -1);
  for (size_t v = 0; v < names_.size(); ++v) {
    auto code = rooted_code(static_cast<int>(v));
    auto it   = ids.emplace(std::move(code), static_cast<int>(ids.size())).first;
    orbit_of_[v] = it->second;
  }
  num_orbits_ = ids.size();
  orbit_ok_   = true;
}

int LabelledGraph::orbit_of(int v) const {
  build_orbits();
  return orbit_of_[v];
}

size_t LabelledGraph::num_orbits() const {
  build_orbits();
  return num_orbits_;
}

std::optional<std::vector<int>> LabelledGraph::extend_isomorphism(int u, int v) const {
  build_components();
  std::vector<int> map(names_.size(), -1);
  std::vector<int> inv(names_.size(), -1);
  std::deque<int>  q{u};
  map[u] = v;
  inv[v] = u;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    int y = map[x];
    if (adj_[x].size() != adj_[y].size()) {
      return std::nullopt;
    }
    for (size_t i = 0; i < adj_[x].size(); ++i) {
      auto const& hx = adj_[x][i];
      auto const& hy = adj_[y][i];
      if (hx.letter != hy.letter) {
        return std::nullopt;
      }
      if (map[hx.to] < 0) {
        if (inv[hy.to] >= 0) {
          return std::nullopt;
        }
        map[hx.to] = hy.to;
        inv[hy.to] = hx.to;
        q.push_back(hx.to);
      } else if (map[hx.to] != hy.to) {
        return std::nullopt;
      }
    }
  }
  return map;
}

std::vector<Automorphism> LabelledGraph::automorphisms(size_t cap) const {
  build_orbits();
  size_t           nc = num_components();
  std::vector<int> roots(nc);
  for (size_t c = 0; c < nc; ++c) {
    roots[c] = comp_vertices_[c].front();
  }
  // Candidate images of each root.
  std::vector<std::vector<int>> cand(nc);
  for (size_t c = 0; c < nc; ++c) {
    for (size_t v = 0; v < names_.size(); ++v) {
      if (orbit_of_[v] == orbit_of_[roots[c]]) {
        cand[c].push_back(static_cast<int>(v));
      }
    }
  }
  std::vector<Automorphism> out;
  std::vector<char>         used(nc, 0);
  std::vector<int>          perm(names_.size(), -1);
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == nc) {
      if (out.size() >= cap) {
        throw BudgetExceeded("automorphism group exceeds cap of " + std::to_string(cap));
      }
      out.push_back(perm);
      return;
    }
    for (int t : cand[c]) {
      int tc = comp_of_[t];
      if (used[tc]) {
        continue;
      }
      auto m = extend_isomorphism(roots[c], t);
      if (!m) {
        continue;
      }
      used[tc] = 1;
      for (int v : comp_vertices_[c]) {
        perm[v] = (*m)[v];
      }
      rec(c + 1);
      used[tc] = 0;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> LabelledGraph::occurrences(Word const& w) const {
  std::vector<int> out;
  for (size_t v = 0; v < names_.size(); ++v) {
    int x = static_cast<int>(v);
    for (Letter l : w) {
      x = step(x, l);
      if (x < 0) {
        break;
      }
    }
    if (x >= 0) {
      out.push_back(static_cast<int>(v));
    }
  }
  return out;
}

size_t LabelledGraph::orbit_count(Word const& w) const {
  std::set<int> orbits;
  for (int v : occurrences(w)) {
    orbits.insert(orbit_of(v));
  }
  return orbits.size();
}

GraphPath canonical_cycle(LabelledGraph const& g, GraphPath const& p) {
  size_t n = p.label.size();
  Word   best;
  int    best_start = -1;
  for (int dir = 0; dir < 2; ++dir) {
    Word             lab   = dir == 0 ? p.label : invert(p.label);
    std::vector<int> verts = p.vertices;
    if (dir == 1) {
      std::reverse(verts.begin(), verts.end());
    }
    for (size_t k = 0; k < n; ++k) {
      Word r = rotate(lab, k);
      int  s = verts[k];
      if (best_start < 0 || shortlex_less(r, best)
          || (r == best && s < best_start)) {
        best       = std::move(r);
        best_start = s;
      }
    }
  }
  return *g.read_path(best_start, best);
}

std::vector<GraphPath> LabelledGraph::simple_closed_paths(size_t max_len,
                                                          size_t cap) const {
  return simple_closed_paths_in({}, max_len, cap);
}

std::vector<GraphPath> LabelledGraph::simple_closed_paths_in(
    std::vector<char> const& mask,
    size_t                   max_len,
    size_t                   cap) const {
  build_adjacency();
  if (!folded()) {
    throw std::logic_error("simple_closed_paths requires a folded graph");
  }
  std::set<std::vector<int>> seen;
  std::vector<GraphPath>     out;
  size_t                     nv = names_.size();
  std::vector<char>          on_path(nv, 0);
  std::vector<char>          edge_used(edges_.size(), 0);
  std::vector<int>           pv, pe;
  Word                       lab;

  std::function<void(int, int)> dfs = [&](int s, int v) {
    for (auto const& h : adj_[v]) {
      if (!mask.empty() && !mask[h.edge]) {
        continue;
      }
      if (edge_used[h.edge]) {
        continue;
      }
      if (h.to == s) {
        if (pe.size() + 1 > max_len) {
          continue;
        }
        std::vector<int> key = pe;
        key.push_back(h.edge);
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) {
          if (seen.size() > cap) {
            throw BudgetExceeded("simple cycle enumeration exceeds cap of "
                                 + std::to_string(cap));
          }
          GraphPath p;
          p.start    = s;
          p.label    = lab;
          p.label.push_back(h.letter);
          p.vertices = pv;
          p.vertices.push_back(s);
          p.edges = pe;
          p.edges.push_back(h.edge);
          out.push_back(canonical_cycle(*this, p));
        }
        continue;
      }
      if (h.to < s || on_path[h.to] || pe.size() + 1 >= max_len) {
        continue;
      }
      on_path[h.to]      = 1;
      edge_used[h.edge]  = 1;
      pv.push_back(h.to);
      pe.push_back(h.edge);
      lab.push_back(h.letter);
      dfs(s, h.to);
      lab.pop_back();
      pe.pop_back();
      pv.pop_back();
      edge_used[h.edge] = 0;
      on_path[h.to]     = 0;
    }
  };
  for (size_t s = 0; s < nv; ++s) {
    on_path[s] = 1;
    pv         = {static_cast<int>(s)};
    dfs(static_cast<int>(s), static_cast<int>(s));
    on_path[s] = 0;
  }
  std::sort(out.begin(), out.end(), [](GraphPath const& a, GraphPath const& b) {
    if (a.label != b.label) {
      return shortlex_less(a.label, b.label);
    }
    return a.start < b.start;
  });
  return out;
}

std::vector<int> LabelledGraph::distances_from(int v) const {
  build_adjacency();
  std::vector<int> d(names_.size(), -1);
  std::deque<int>  q{v};
  d[v] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto const& h : adj_[x]) {
      if (d[h.to] < 0) {
        d[h.to] = d[x] + 1;
        q.push_back(h.to);
      }
    }
  }
  return d;
}

std::optional<GraphPath> LabelledGraph::shortest_path(int u, int v) const {
  auto d = distances_from(v);
  if (d[u] < 0) {
    return std::nullopt;
  }
  Word w;
  int  x = u;
  while (x != v) {
    for (auto const& h : adj_[x]) {  // sorted by letter rank
      if (d[h.to] == d[x] - 1) {
        w.push_back(h.letter);
        x = h.to;
        break;
      }
    }
  }
  return read_path(u, w);
}

std::vector<GraphPath> LabelledGraph::all_shortest_paths(int u, int v, size_t cap) const {
  auto                   d = distances_from(v);
  std::vector<GraphPath> out;
  if (d[u] < 0) {
    return out;
  }
  Word                     w;
  std::function<void(int)> rec = [&](int x) {
    if (x == v) {
      if (out.size() >= cap) {
        throw BudgetExceeded("too many shortest paths");
      }
      out.push_back(*read_path(u, w));
      return;
    }
    for (auto const& h : adj_[x]) {
      if (d[h.to] == d[x] - 1) {
        w.push_back(h.letter);
        rec(h.to);
        w.pop_back();
      }
    }
  };
  rec(u);
  return out;
}

LabelledGraph LabelledGraph::cycle(Word const& w) {
  return cycles({w});
}

LabelledGraph LabelledGraph::cycles(std::vector<Word> const& ws) {
  LabelledGraph g;
  for (size_t c = 0; c < ws.size(); ++c) {
    auto const& w = ws[c];
    if (w.empty()) {
      throw std::invalid_argument("cycle word must be nonempty");
    }
    int base = static_cast<int>(g.num_vertices());
    for (size_t i = 0; i < w.size(); ++i) {
      g.add_vertex("c" + std::to_string(c) + "_" + std::to_string(i));
    }
    for (size_t i = 0; i < w.size(); ++i) {
      int a = base + static_cast<int>(i);
      int b = base + static_cast<int>((i + 1) % w.size());
      if (is_inverse(w[i])) {
        g.add_edge(b, a, generator_of(w[i]));
      } else {
        g.add_edge(a, b, generator_of(w[i]));
      }
    }
  }
  g.prepare();
  return g;
}

LabelledGraph LabelledGraph::parse(std::istream& in) {
  LabelledGraph              g;
  std::map<std::string, int> ids;
  auto                       vertex = [&](std::string const& name) {
    auto it = ids.find(name);
    if (it != ids.end()) {
      return it->second;
    }
    int v = g.add_vertex(name);
    ids.emplace(name, v);
    return v;
  };
  std::string line;
  int         lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ss(line);
    std::string        kw;
    if (!(ss >> kw)) {
      continue;
    }
    auto fail = [&](std::string const& msg) {
      throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (kw == "alphabet") {
      std::string tok;
      while (ss >> tok) {
        g.declare_generator(intern_generator(tok));
      }
    } else if (kw == "vertex") {
      std::string name;
      if (!(ss >> name)) {
        fail("vertex needs a name");
      }
      vertex(name);
    } else if (kw == "edge") {
      std::string a, b, lab, extra;
      if (!(ss >> a >> b >> lab)) {
        fail("edge needs <src> <dst> <label>");
      }
      if (ss >> extra) {
        fail("trailing token '" + extra + "'");
      }
      bool bad = lab.find('^') != std::string::npos
                 || (lab.size() == 1 && std::isupper(static_cast<unsigned char>(lab[0])));
      for (char c : lab) {
        bad = bad || !(std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      }
      if (bad) {
        fail("edge label must be a positive generator, got '" + lab + "'");
      }
      g.add_edge(vertex(a), vertex(b), intern_generator(lab));
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  g.prepare();
  return g;
}

LabelledGraph LabelledGraph::parse_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  return parse(in);
}

}  // namespace gsc
