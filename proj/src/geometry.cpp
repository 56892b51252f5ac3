#include "gsc/geometry.hpp"

#include <algorithm>      // for sort, unique, max
#include <array>          // for array
#include <functional>     // for function
#include <limits>         // for numeric_limits
#include <deque>          // for deque
#include <numeric>        // for iota
#include <random>         // for mt19937, uniform_int_distribution
#include <set>            // for set
#include <unordered_set>  // for unordered_set

#include <omp.h>

namespace gsc {

////////////////////////////////////////////////////////////////////////////
// CayleyBall
////////////////////////////////////////////////////////////////////////////

CayleyBall::CayleyBall(Engine const& e, std::vector<int> const& generators, size_t radius,
                       size_t vertex_cap)
    : radius_(radius) {
  if (radius > 250) {
    throw std::invalid_argument("radius too large");
  }
  std::vector<int> gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (int g : gens) {
    letters_.push_back(make_letter(g));
    letters_.push_back(make_letter(g, true));
  }
  size_t const k = letters_.size();
  parent_.push_back(-1);
  last_.push_back(0);
  depth_.push_back(0);
  child_.assign(k, -1);
  nbr_.assign(k, -1);
  layer_start_ = {0, 1};

  // kind 0: existing vertex a; kind 1: new child of a in slot b; kind 2: outside
  struct Target {
    int kind, a, b;
  };
  for (size_t d = 0; d <= radius; ++d) {
    size_t lo = layer_start_[d], hi = layer_start_[d + 1];
    std::vector<Target> res((hi - lo) * k);
#pragma omp parallel for schedule(dynamic, 64)
    for (size_t u = lo; u < hi; ++u) {
      Word base = word(static_cast<int>(u));
      for (size_t j = 0; j < k; ++j) {
        Letter  x = letters_[j];
        Target& t = res[(u - lo) * k + j];
        if (u > 0 && last_[u] == -x) {
          t = {0, parent_[u], 0};
          continue;
        }
        Word w = base;
        w.push_back(x);
        Word v = e.normal_form(w);
        if (v.size() == d + 1) {
          if (d == radius) {
            t = {2, 0, 0};
          } else {
            int s = slot(v.back());
            v.pop_back();
            t = {1, lookup(v), s};
          }
        } else {
          t = {0, lookup(v), 0};
        }
      }
    }
    if (d < radius) {
      std::vector<std::pair<int, int>> fresh;
      for (auto const& t : res) {
        if (t.kind == 1) {
          fresh.emplace_back(t.a, t.b);
        }
      }
      std::sort(fresh.begin(), fresh.end());
      fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
      if (size() + fresh.size() > vertex_cap) {
        throw BudgetExceeded("ball exceeds vertex cap of " + std::to_string(vertex_cap));
      }
      for (auto const& [p, s] : fresh) {
        int id = static_cast<int>(parent_.size());
        parent_.push_back(p);
        last_.push_back(letters_[s]);
        depth_.push_back(static_cast<uint8_t>(d + 1));
        child_[static_cast<size_t>(p) * k + s] = id;
      }
      child_.resize(parent_.size() * k, -1);
      nbr_.resize(parent_.size() * k, -1);
      layer_start_.push_back(parent_.size());
    }
    for (size_t u = lo; u < hi; ++u) {
      for (size_t j = 0; j < k; ++j) {
        auto const& t = res[(u - lo) * k + j];
        int         v = -1;
        if (t.kind == 0) {
          v = t.a;
        } else if (t.kind == 1) {
          v = child_[static_cast<size_t>(t.a) * k + t.b];
        }
        nbr_[u * k + j] = v;
      }
    }
  }
}

int CayleyBall::slot(Letter x) const {
  for (size_t j = 0; j < letters_.size(); ++j) {
    if (letters_[j] == x) {
      return static_cast<int>(j);
    }
  }
  throw std::invalid_argument("letter outside the ball's alphabet");
}

size_t CayleyBall::num_edges() const {
  size_t n = 0;
  for (size_t u = 0; u < size(); ++u) {
    for (size_t j = 0; j < letters_.size(); j += 2) {  // positive letters only
      n += nbr_[u * letters_.size() + j] >= 0;
    }
  }
  return n;
}

Word CayleyBall::word(int v) const {
  Word w(depth_[v]);
  for (size_t i = w.size(); i > 0; --i) {
    w[i - 1] = last_[v];
    v        = parent_[v];
  }
  return w;
}

int CayleyBall::lookup(Word const& nf) const {
  if (nf.size() > radius_) {
    return -1;
  }
  int    v = 0;
  size_t k = letters_.size();
  for (Letter x : nf) {
    int s = -1;
    for (size_t j = 0; j < k; ++j) {
      if (letters_[j] == x) {
        s = static_cast<int>(j);
      }
    }
    if (s < 0) {
      return -1;
    }
    v = child_[static_cast<size_t>(v) * k + s];
    if (v < 0) {
      return -1;
    }
  }
  return v;
}

std::vector<int> CayleyBall::layer(size_t d) const {
  std::vector<int> out;
  if (d + 1 < layer_start_.size()) {
    for (size_t v = layer_start_[d]; v < layer_start_[d + 1]; ++v) {
      out.push_back(static_cast<int>(v));
    }
  }
  return out;
}

std::vector<int> CayleyBall::distances_from(int v) const {
  std::vector<int> d(size(), -1);
  std::deque<int>  q{v};
  d[v] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (size_t j = 0; j < letters_.size(); ++j) {
      int y = nbr_[static_cast<size_t>(x) * letters_.size() + j];
      if (y >= 0 && d[y] < 0) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
    }
  }
  return d;
}

////////////////////////////////////////////////////////////////////////////
// Copies of components
////////////////////////////////////////////////////////////////////////////

std::vector<Word> component_image(Engine const& e, LabelledGraph const& gamma, int base,
                                  Word const& g) {
  auto const&                  vs = gamma.component_vertices(gamma.component_of(base));
  std::unordered_map<int, int> pos;
  for (size_t i = 0; i < vs.size(); ++i) {
    pos[vs[i]] = static_cast<int>(i);
  }
  std::vector<Word> img(vs.size());
  std::vector<char> done(vs.size(), 0);
  img[pos[base]]  = e.normal_form(g);
  done[pos[base]] = 1;
  std::deque<int> q{base};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto const& h : gamma.incident(x)) {
      int p = pos[h.to];
      if (!done[p]) {
        Word w = img[pos[x]];
        w.push_back(h.letter);
        img[p]  = e.normal_form(w);
        done[p] = 1;
        q.push_back(h.to);
      }
    }
  }
  return img;
}

ComponentCopy make_copy(Engine const& e, LabelledGraph const& gamma, int base, Word const& g) {
  ComponentCopy c;
  c.component = gamma.component_of(base);
  c.vertices  = gamma.component_vertices(c.component);
  c.image     = component_image(e, gamma, base, g);
  c.anchor    = *std::min_element(c.image.begin(), c.image.end(), shortlex_less);
  return c;
}

std::vector<ComponentCopy> enumerate_copies(Engine const& e, LabelledGraph const& gamma,
                                            std::vector<Word> const& core) {
  gamma.prepare();
  std::vector<ComponentCopy>                                out;
  std::set<std::pair<int, Word>>                            seen;
  std::set<int>                                             orbits_done;
  for (size_t c = 0; c < gamma.num_components(); ++c) {
    auto const& vs = gamma.component_vertices(static_cast<int>(c));
    if (orbits_done.count(gamma.orbit_of(vs.front()))) {
      continue;  // isomorphic to an earlier component
    }
    std::vector<int> reps;
    std::set<int>    rep_orbits;
    for (int v : vs) {
      orbits_done.insert(gamma.orbit_of(v));
      if (rep_orbits.insert(gamma.orbit_of(v)).second) {
        reps.push_back(v);
      }
    }
    std::vector<ComponentCopy> found(core.size() * reps.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (size_t i = 0; i < found.size(); ++i) {
      found[i] = make_copy(e, gamma, reps[i % reps.size()], core[i / reps.size()]);
    }
    for (auto& cp : found) {
      size_t idx = 0;
      for (size_t i = 0; i < cp.image.size(); ++i) {
        if (cp.image[i] == cp.anchor) {
          idx = i;
          break;
        }
      }
      if (seen.emplace(gamma.orbit_of(cp.vertices[idx]), cp.anchor).second) {
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

std::vector<ComponentCopy> enumerate_copies(Engine const& e, LabelledGraph const& gamma,
                                            CayleyBall const& ball) {
  std::vector<Word> core;
  for (size_t v = 0; v < ball.size(); ++v) {
    core.push_back(ball.word(static_cast<int>(v)));
  }
  return enumerate_copies(e, gamma, core);
}

////////////////////////////////////////////////////////////////////////////
// ConedGraph
////////////////////////////////////////////////////////////////////////////

void ConedGraph::add_edge(int u, int v) {
  if (u != v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
}

namespace {

void finish(std::vector<std::vector<int>>& adj) {
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

}  // namespace

ConedGraph::ConedGraph(Engine const& e, std::vector<int> const& generators,
                       std::vector<Word> const& region,
                       std::vector<ComponentCopy> const& copies) {
  for (auto const& w : region) {
    Word nf = e.normal_form(w);
    if (index_.emplace(nf, static_cast<int>(words_.size())).second) {
      words_.push_back(nf);
    }
  }
  adj_.resize(words_.size());
  boundary_.assign(words_.size(), 0);
  for (size_t u = 0; u < words_.size(); ++u) {
    for (int g : generators) {
      for (bool inv : {false, true}) {
        Word w = words_[u];
        w.push_back(make_letter(g, inv));
        int v = lookup(e.normal_form(w));
        if (v < 0) {
          boundary_[u] = 1;
        } else {
          add_edge(static_cast<int>(u), v);
        }
      }
    }
  }
  for (auto const& c : copies) {
    std::vector<int> in;
    bool             partial = false;
    for (auto const& w : c.image) {
      int v = lookup(w);
      if (v < 0) {
        partial = true;
      } else {
        in.push_back(v);
      }
    }
    for (size_t i = 0; i < in.size(); ++i) {
      boundary_[in[i]] |= partial;
      for (size_t j = i + 1; j < in.size(); ++j) {
        add_edge(in[i], in[j]);
      }
    }
  }
  finish(adj_);
}

ConedGraph::ConedGraph(Engine const&, CayleyBall const& ball,
                       std::vector<ComponentCopy> const& copies) {
  for (size_t v = 0; v < ball.size(); ++v) {
    words_.push_back(ball.word(static_cast<int>(v)));
    index_.emplace(words_.back(), static_cast<int>(v));
  }
  adj_.resize(words_.size());
  boundary_.assign(words_.size(), 0);
  for (size_t u = 0; u < ball.size(); ++u) {
    for (Letter x : ball.letters()) {
      int v = ball.neighbour(static_cast<int>(u), x);
      if (v < 0) {
        boundary_[u] = 1;
      } else {
        add_edge(static_cast<int>(u), v);
      }
    }
  }
  for (auto const& c : copies) {
    std::vector<int> in;
    bool             partial = false;
    for (auto const& w : c.image) {
      int v = ball.lookup(w);
      if (v < 0) {
        partial = true;
      } else {
        in.push_back(v);
      }
    }
    for (size_t i = 0; i < in.size(); ++i) {
      boundary_[in[i]] |= partial;
      for (size_t j = i + 1; j < in.size(); ++j) {
        add_edge(in[i], in[j]);
      }
    }
  }
  finish(adj_);
}

int ConedGraph::lookup(Word const& nf) const {
  auto it = index_.find(nf);
  return it == index_.end() ? -1 : it->second;
}

size_t ConedGraph::num_edges() const {
  size_t n = 0;
  for (auto const& a : adj_) {
    n += a.size();
  }
  return n / 2;
}

std::vector<int> ConedGraph::distances_from(int u) const {
  std::vector<int> d(size(), -1);
  std::deque<int>  q{u};
  d[u] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj_[x]) {
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
    }
  }
  return d;
}

ConedGraph::Distance ConedGraph::distance(int u, int v) const {
  auto     du = distances_from(u);
  auto     dv = distances_from(v);
  Distance out;
  out.value = du[v];
  // a path through the outside leaves at some boundary vertex and re-enters
  // at another, spending at least two edges outside
  int near_u = -1, near_v = -1;
  for (size_t x = 0; x < size(); ++x) {
    if (boundary_[x]) {
      if (du[x] >= 0 && (near_u < 0 || du[x] < near_u)) {
        near_u = du[x];
      }
      if (dv[x] >= 0 && (near_v < 0 || dv[x] < near_v)) {
        near_v = dv[x];
      }
    }
  }
  if (near_u >= 0 && near_v >= 0) {
    out.boundary_touched = out.value < 0 || near_u + 2 + near_v < out.value;
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// d_Y by arc decomposition
////////////////////////////////////////////////////////////////////////////

std::optional<size_t> arc_decomposition(LabelledGraph const& gamma, Word const& w) {
  size_t const        inf = std::numeric_limits<size_t>::max();
  std::vector<size_t> best(w.size() + 1, inf);
  std::set<int>       present(gamma.alphabet().begin(), gamma.alphabet().end());
  for (auto const& ed : gamma.edges()) {
    present.insert(ed.gen);
  }
  best[0] = 0;
  std::vector<int> all(gamma.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  for (size_t i = 0; i < w.size(); ++i) {
    if (best[i] == inf) {
      continue;
    }
    if (!present.count(generator_of(w[i]))) {
      best[i + 1] = std::min(best[i + 1], best[i] + 1);
      continue;
    }
    std::vector<int> cur = all;
    for (size_t j = i; j < w.size(); ++j) {
      std::vector<int> next;
      for (int v : cur) {
        int t = gamma.step(v, w[j]);
        if (t >= 0) {
          next.push_back(t);
        }
      }
      if (next.empty()) {
        break;
      }
      best[j + 1] = std::min(best[j + 1], best[i] + 1);
      cur         = std::move(next);
    }
  }
  if (best[w.size()] == inf) {
    return std::nullopt;
  }
  return best[w.size()];
}

size_t dY_dp(Engine const& e, LabelledGraph const& gamma, Word const& w) {
  if (!e.is_geodesic(w)) {
    throw std::invalid_argument("word " + to_string(w) + " is not geodesic");
  }
  auto k = arc_decomposition(gamma, w);
  if (!k) {
    throw std::invalid_argument("word cannot be split into arcs");
  }
  return *k;
}

////////////////////////////////////////////////////////////////////////////
// Embedding checks
////////////////////////////////////////////////////////////////////////////

EmbeddingReport verify_isometric_convex(Engine const& e, LabelledGraph const& gamma,
                                        ComponentCopy const& copy) {
  EmbeddingReport                    rep;
  std::unordered_set<Word, WordHash> img(copy.image.begin(), copy.image.end());
  size_t                             n = copy.vertices.size();
  std::unordered_map<int, int>       pos;
  for (size_t i = 0; i < n; ++i) {
    pos[copy.vertices[i]] = static_cast<int>(i);
  }
  for (size_t i = 0; i < n && rep.ok; ++i) {
    auto dg = gamma.distances_from(copy.vertices[i]);
    for (size_t j = i + 1; j < n && rep.ok; ++j) {
      ++rep.pairs_checked;
      Word   diff = concat(invert(copy.image[i]), copy.image[j]);
      size_t dx   = e.length(diff);
      size_t dc   = static_cast<size_t>(dg[copy.vertices[j]]);
      rep.diameter = std::max(rep.diameter, dc);
      if (dx != dc) {
        rep.ok        = false;
        rep.violation = "distance " + std::to_string(dx) + " in the group but "
                        + std::to_string(dc) + " in the component between vertices "
                        + gamma.vertex_name(copy.vertices[i]) + " and "
                        + gamma.vertex_name(copy.vertices[j]);
        break;
      }
      for (auto const& geo : e.geodesics(diff)) {
        Word p = copy.image[i];
        for (Letter x : geo) {
          p.push_back(x);
          p = e.normal_form(p);
          if (!img.count(p)) {
            rep.ok        = false;
            rep.violation = "geodesic " + to_string(geo) + " leaves the image at "
                            + to_string(p);
            break;
          }
        }
        if (!rep.ok) {
          break;
        }
      }
    }
  }
  return rep;
}

EmbeddingReport verify_intersection_connected(Engine const& e, ComponentCopy const& a,
                                              ComponentCopy const& b) {
  EmbeddingReport                    rep;
  std::unordered_set<Word, WordHash> in_b(b.image.begin(), b.image.end());
  std::vector<Word>                  common;
  for (auto const& w : a.image) {
    if (in_b.count(w)) {
      common.push_back(w);
    }
  }
  std::sort(common.begin(), common.end(), shortlex_less);
  common.erase(std::unique(common.begin(), common.end()), common.end());
  size_t           n = common.size();
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      ++rep.pairs_checked;
      if (e.distance(common[i], common[j]) == 1) {
        comp[find(static_cast<int>(i))] = find(static_cast<int>(j));
      }
    }
  }
  std::set<int> roots;
  for (size_t i = 0; i < n; ++i) {
    roots.insert(find(static_cast<int>(i)));
  }
  rep.diameter = n;  // number of common vertices
  if (roots.size() > 1) {
    rep.ok        = false;
    rep.violation = "intersection of " + std::to_string(n) + " vertices has "
                    + std::to_string(roots.size()) + " components";
  }
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// Four-point condition
////////////////////////////////////////////////////////////////////////////

namespace {

inline int defect2(std::vector<std::vector<int>> const& d, size_t x, size_t y, size_t z,
                   size_t w) {
  int s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
  std::sort(s, s + 3);
  return s[2] - s[1];
}

}  // namespace

DeltaReport four_point_delta(std::vector<std::vector<int>> const& dist, size_t cap,
                             size_t samples, unsigned seed, bool parallel) {
  DeltaReport rep;
  size_t      n = dist.size();
  rep.points    = n;
  for (auto const& row : dist) {
    for (int x : row) {
      if (x < 0) {
        throw std::invalid_argument("distance matrix is not connected");
      }
    }
  }
  int best = 0;
  if (n <= cap) {
    long nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) reduction(max : best) if (parallel)
    for (long x = 0; x < nn; ++x) {
      for (size_t y = x + 1; y < n; ++y) {
        for (size_t z = y + 1; z < n; ++z) {
          for (size_t w = z + 1; w < n; ++w) {
            best = std::max(best, defect2(dist, x, y, z, w));
          }
        }
      }
    }
  } else {
    rep.exhaustive = false;
    rep.samples    = samples;
    std::mt19937                          rng(seed);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    std::vector<std::array<size_t, 4>>    quads(samples);
    for (auto& q : quads) {
      q = {pick(rng), pick(rng), pick(rng), pick(rng)};
    }
    long ns = static_cast<long>(samples);
#pragma omp parallel for reduction(max : best) if (parallel)
    for (long i = 0; i < ns; ++i) {
      auto const& q = quads[i];
      best          = std::max(best, defect2(dist, q[0], q[1], q[2], q[3]));
    }
  }
  rep.delta = best / 2.0;
  return rep;
}

std::vector<std::vector<int>> distance_matrix(ConedGraph const& y) {
  std::vector<std::vector<int>> d(y.size());
  long                          n = static_cast<long>(y.size());
#pragma omp parallel for schedule(dynamic)
  for (long u = 0; u < n; ++u) {
    d[u] = y.distances_from(static_cast<int>(u));
  }
  return d;
}

std::vector<std::vector<int>> distance_matrix(CayleyBall const& ball) {
  std::vector<std::vector<int>> d(ball.size());
  long                          n = static_cast<long>(ball.size());
#pragma omp parallel for schedule(dynamic)
  for (long u = 0; u < n; ++u) {
    d[u] = ball.distances_from(static_cast<int>(u));
  }
  return d;
}

////////////////////////////////////////////////////////////////////////////
// Non-acylindricity experiment
////////////////////////////////////////////////////////////////////////////

NotacylReport notacyl_experiment(int N, int K) {
  if (N < 1 || K < 0) {
    throw std::invalid_argument("need N >= 1 and K >= 0");
  }
  NotacylReport rep;
  rep.N = N;
  rep.K = K;
  rep.C = N;
  std::vector<Word> rels;
  for (int i = 1; i <= N + 1; ++i) {
    rels.push_back(notacyl_relator(i));
  }
  Engine e(rels);
  rep.certified = e.certified();
  if (!rep.certified) {
    return rep;
  }
  auto gamma = LabelledGraph::cycles(rels);
  int  base  = gamma.vertex_by_name("c" + std::to_string(N - 1) + "_0");
  rep.w      = Word{make_letter(0)};
  rep.w.insert(rep.w.end(), N, make_letter(1));

  std::set<Word> forms;
  for (int m = 0; m <= N; ++m) {
    Word wm = power(rep.w, m);
    if (m == 0 || gamma.read_path(base, wm)) {
      rep.near.push_back(static_cast<size_t>(m));
    }
    forms.insert(e.normal_form(wm));
  }
  rep.distinct = forms.size() == static_cast<size_t>(N + 1);

  Word far         = power(rep.w, rep.C * K);
  rep.far_length   = far.size();
  rep.far_geodesic = e.is_geodesic(far);
  rep.far_distance = arc_decomposition(gamma, far).value_or(0);
  rep.pass = rep.far_geodesic && rep.distinct && rep.near.size() >= static_cast<size_t>(N + 1)
             && rep.far_distance >= static_cast<size_t>(K);
  return rep;
}

}  // namespace gsc
