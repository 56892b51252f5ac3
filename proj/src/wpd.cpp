#include "gsc/wpd.hpp"

#include <algorithm>      // for sort, min
#include <numeric>        // for iota
#include <set>            // for set
#include <unordered_set>  // for unordered_set

#include <omp.h>

namespace gsc {

std::vector<char> piece_edges(LabelledGraph const& g, PieceTable const& t) {
  std::vector<char> mask(g.num_edges(), 0);
  for (size_t i = 0; i < g.num_edges(); ++i) {
    mask[i] = t.is_piece(Word{make_letter(g.edge(static_cast<int>(i)).gen)});
  }
  return mask;
}

namespace {

std::vector<char> component_mask(LabelledGraph const& g, int component,
                                 std::vector<char> const* within = nullptr) {
  std::vector<char> mask(g.num_edges(), 0);
  for (int ed : g.component_edges(component)) {
    mask[ed] = within ? (*within)[ed] : 1;
  }
  return mask;
}

}  // namespace

PieceDichotomy piece_dichotomy(LabelledGraph const& g, int component, PieceTable const& t) {
  auto             pieces = piece_edges(g, t);
  auto const&      vs     = g.component_vertices(component);
  std::vector<int> root(g.num_vertices());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) {
      x = root[x] = root[root[x]];
    }
    return x;
  };
  for (int ed : g.component_edges(component)) {
    if (pieces[ed]) {
      root[find(g.edge(ed).src)] = find(g.edge(ed).dst);
    }
  }
  PieceDichotomy out;
  for (int v : vs) {
    if (find(v) != find(vs.front())) {
      out.x = vs.front();
      out.y = v;
      return out;
    }
  }
  auto mask   = component_mask(g, component, &pieces);
  auto cycles = g.simple_closed_paths_in(mask, g.component_edges(component).size());
  if (cycles.empty()) {
    throw std::logic_error("piece edges connect the component without closing a cycle");
  }
  out.has_cycle = true;
  out.cycle     = cycles.front();
  out.x = out.y = out.cycle.start;
  return out;
}

std::string to_string(WpdMode m) {
  switch (m) {
    case WpdMode::automatic:
      return "auto";
    case WpdMode::gr7:
      return "gr7";
    case WpdMode::c7:
      return "c7";
    case WpdMode::grprime:
      return "grprime";
  }
  return "?";
}

WpdMode parse_wpd_mode(std::string const& text) {
  for (auto m : {WpdMode::automatic, WpdMode::gr7, WpdMode::c7, WpdMode::grprime}) {
    if (to_string(m) == text) {
      return m;
    }
  }
  throw std::invalid_argument("unknown mode '" + text + "' (auto, gr7, c7, grprime)");
}

namespace {

std::vector<int> cycle_vertices(GraphPath const& p) {
  return std::vector<int>(p.vertices.begin(), p.vertices.end() - 1);
}

GraphPath rotate_path(GraphPath const& p, size_t k) {
  GraphPath out;
  size_t    n = p.length();
  out.start   = p.vertices[k % n];
  for (size_t i = 0; i < n; ++i) {
    out.label.push_back(p.label[(i + k) % n]);
    out.edges.push_back(p.edges[(i + k) % n]);
    out.vertices.push_back(p.vertices[(i + k) % n]);
  }
  out.vertices.push_back(out.start);
  return out;
}

// Shortest closed path of length >= 2 in the component, by (length, label).
std::optional<GraphPath> shortest_cycle(LabelledGraph const& g, int component) {
  auto mask = component_mask(g, component);
  for (auto const& c : g.simple_closed_paths_in(mask, g.component_edges(component).size())) {
    if (c.length() >= 2) {
      return c;
    }
  }
  return std::nullopt;
}

bool isomorphic_components(LabelledGraph const& g, int c1, int c2) {
  std::set<int> orbits;
  for (int v : g.component_vertices(c1)) {
    orbits.insert(g.orbit_of(v));
  }
  for (int v : g.component_vertices(c2)) {
    if (orbits.count(g.orbit_of(v))) {
      return true;
    }
  }
  return false;
}

// Vertices of component(v1) whose image under v1 -> 1 lies in the image of
// component(v2) under v2 -> 1.
std::vector<int> core_of(Engine const& e, LabelledGraph const& g, int v1, int v2) {
  auto                               img1 = component_image(e, g, v1, Word{});
  auto                               img2 = component_image(e, g, v2, Word{});
  std::unordered_set<Word, WordHash> other(img2.begin(), img2.end());
  auto const&                        vs = g.component_vertices(g.component_of(v1));
  std::vector<int>                   core;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (other.count(img1[i])) {
      core.push_back(vs[i]);
    }
  }
  std::sort(core.begin(), core.end());
  return core;
}

// Vertex of the cycle farthest from the core, smallest id on ties.
int farthest_on_cycle(LabelledGraph const& g, GraphPath const& cycle,
                      std::vector<int> const& core) {
  std::vector<int> dist(g.num_vertices(), -1);
  for (int c : core) {
    auto d = g.distances_from(c);
    for (size_t v = 0; v < d.size(); ++v) {
      if (d[v] >= 0 && (dist[v] < 0 || d[v] < dist[v])) {
        dist[v] = d[v];
      }
    }
  }
  int best = -1;
  for (int v : cycle_vertices(cycle)) {
    if (best < 0 || dist[v] > dist[best] || (dist[v] == dist[best] && v < best)) {
      best = v;
    }
  }
  return best;
}

// Start of the longest terminal subpath made of at most 3 pieces, inside the
// longest run of the cycle avoiding the core.
int far_vertex_by_pieces(PieceTable const& t, GraphPath const& cycle,
                         std::vector<int> const& core) {
  std::set<int> in_core(core.begin(), core.end());
  size_t        n = cycle.length();
  // rotate so that position 0 is a core vertex
  size_t zero = 0;
  while (zero < n && !in_core.count(cycle.vertices[zero])) {
    ++zero;
  }
  if (zero == n) {
    throw std::logic_error("cycle misses the core");
  }
  GraphPath c = rotate_path(cycle, zero);
  size_t    best_s = 0, best_len = 0;
  bool      found = false;
  for (size_t i = 1; i < n; ++i) {
    if (in_core.count(c.vertices[i])) {
      continue;
    }
    size_t j = i;
    while (j + 1 < n && !in_core.count(c.vertices[j + 1])) {
      ++j;
    }
    if (!found || j - i > best_len) {
      best_s   = i;
      best_len = j - i;
      found    = true;
    }
    i = j;
  }
  if (!found) {
    throw NoWpdData("every vertex of the cycle lies in the intersection");
  }
  Word run(c.label.begin() + best_s, c.label.begin() + best_s + best_len);
  for (size_t k = 0; k <= best_len; ++k) {
    auto d = min_piece_decomposition(t, subword(run, k, run.size()));
    if (d && d->count <= 3) {
      return c.vertices[best_s + k];
    }
  }
  return c.vertices[best_s + best_len];
}

// Choice of path labels: prefer a freely and cyclically reduced product.
void choose_labels(LabelledGraph const& g, WpdData& d) {
  auto p1 = g.all_shortest_paths(d.x1, d.y1, 64);
  auto p2 = g.all_shortest_paths(d.x2, d.y2, 64);
  if (p1.empty() || p2.empty()) {
    throw std::logic_error("WPD vertices are not connected");
  }
  std::optional<std::pair<Word, std::pair<Word, Word>>> best;
  for (auto const& a : p1) {
    for (auto const& b : p2) {
      Word w     = concat(a.label, b.label);
      bool clean = is_freely_reduced(w) && is_cyclically_reduced(w);
      if (clean && (!best || shortlex_less(w, best->first))) {
        best = {w, {a.label, b.label}};
      }
    }
  }
  if (best) {
    d.label1 = best->second.first;
    d.label2 = best->second.second;
    d.g      = best->first;
  } else {
    d.label1 = p1.front().label;
    d.label2 = p2.front().label;
    d.g      = free_reduce(concat(d.label1, d.label2));
  }
}

}  // namespace

WpdData find_wpd_data(Engine const& e, LabelledGraph const& gamma, WpdMode mode) {
  gamma.prepare();
  PieceTable t(gamma);
  if (mode == WpdMode::automatic) {
    if (check_gr_prime(gamma, Rational{1, 6}, &t).pass) {
      mode = WpdMode::grprime;
    } else if (check_gr(gamma, 7, &t).pass) {
      mode = WpdMode::gr7;
    } else if (check_c(gamma, 7, &t).pass) {
      mode = WpdMode::c7;
    } else {
      throw NoWpdData("graph satisfies none of Gr'(1/6), Gr(7), C(7)");
    }
  } else if (mode == WpdMode::grprime && !check_gr_prime(gamma, Rational{1, 6}, &t).pass) {
    throw NoWpdData("graph is not Gr'(1/6)");
  } else if (mode == WpdMode::gr7 && !check_gr(gamma, 7, &t).pass) {
    throw NoWpdData("graph is not Gr(7)");
  } else if (mode == WpdMode::c7 && !check_c(gamma, 7, &t).pass) {
    throw NoWpdData("graph is not C(7)");
  }

  WpdData d;
  d.mode = mode;

  if (mode == WpdMode::c7) {
    if (gamma.num_orbits() != gamma.num_vertices()) {
      throw NoWpdData("graph has a non-trivial label-preserving automorphism");
    }
    auto pieces = piece_edges(gamma, t);
    for (size_t c = 0; c < gamma.num_components() && d.component1 < 0; ++c) {
      auto mask = component_mask(gamma, static_cast<int>(c), &pieces);
      auto cyc  = gamma.simple_closed_paths_in(
          mask, gamma.component_edges(static_cast<int>(c)).size());
      if (cyc.empty()) {
        continue;
      }
      d.component1 = d.component2 = static_cast<int>(c);
      d.cycle1                    = cyc.front();
    }
    if (d.component1 < 0) {
      throw NoWpdData("no embedded cycle made of pieces");
    }
    // v2 ends the longest initial subpath of at most 3 pieces
    size_t n    = d.cycle1.length();
    size_t cut  = 0;
    for (size_t j = 1; j < n; ++j) {
      auto dec = min_piece_decomposition(t, subword(d.cycle1.label, 0, j));
      if (dec && dec->count <= 3) {
        cut = j;
      }
    }
    if (cut == 0) {
      throw NoWpdData("cycle has no proper initial subpath of at most 3 pieces");
    }
    d.cycle2 = rotate_path(d.cycle1, cut);
    int v1 = d.cycle1.start, v2 = d.cycle2.start;
    d.core1 = core_of(e, gamma, v1, v2);
    d.core2 = core_of(e, gamma, v2, v1);
    d.x1    = far_vertex_by_pieces(t, d.cycle1, d.core1);
    d.y1    = v1;
    d.x2    = v2;
    d.y2    = far_vertex_by_pieces(t, d.cycle2, d.core2);
    choose_labels(gamma, d);
    return d;
  }

  struct Candidate {
    int                      component;
    GraphPath                cycle;
    std::optional<PieceDichotomy> split;
  };
  std::vector<Candidate> cands;
  for (size_t c = 0; c < gamma.num_components(); ++c) {
    auto cyc = shortest_cycle(gamma, static_cast<int>(c));
    if (!cyc) {
      continue;
    }
    Candidate cand{static_cast<int>(c), *cyc, std::nullopt};
    if (mode == WpdMode::gr7) {
      cand.split = piece_dichotomy(gamma, static_cast<int>(c), t);
      if (cand.split->has_cycle) {
        cand.cycle = cand.split->cycle;
      }
    }
    cands.push_back(std::move(cand));
  }
  std::stable_sort(cands.begin(), cands.end(), [](Candidate const& a, Candidate const& b) {
    return shortlex_less(a.cycle.label, b.cycle.label);
  });
  for (size_t i = 0; i < cands.size() && d.component1 < 0; ++i) {
    for (size_t j = i + 1; j < cands.size(); ++j) {
      if (!isomorphic_components(gamma, cands[i].component, cands[j].component)) {
        d.component1 = cands[i].component;
        d.component2 = cands[j].component;
        Candidate const& a = cands[i];
        Candidate const& b = cands[j];
        bool split_a = a.split && !a.split->has_cycle;
        bool split_b = b.split && !b.split->has_cycle;
        int  v1 = split_a ? a.split->x : a.cycle.start;
        int  v2 = split_b ? b.split->x : b.cycle.start;
        if (!split_a) {
          d.cycle1 = a.cycle;
        }
        if (!split_b) {
          d.cycle2 = b.cycle;
        }
        d.core1 = core_of(e, gamma, v1, v2);
        d.core2 = core_of(e, gamma, v2, v1);
        d.y1    = v1;
        d.x2    = v2;
        if (mode == WpdMode::grprime) {
          d.x1 = farthest_on_cycle(gamma, a.cycle, d.core1);
          d.y2 = farthest_on_cycle(gamma, b.cycle, d.core2);
        } else {
          d.x1 = split_a ? a.split->y : far_vertex_by_pieces(t, a.cycle, d.core1);
          d.y2 = split_b ? b.split->y : far_vertex_by_pieces(t, b.cycle, d.core2);
        }
        break;
      }
    }
  }
  if (d.component1 < 0) {
    throw NoWpdData("need two non-isomorphic components carrying closed paths");
  }
  choose_labels(gamma, d);
  return d;
}

std::vector<ClauseCheck> verify_wpd_data(LabelledGraph const& gamma, PieceTable const& t,
                                         WpdData const& d) {
  std::vector<ClauseCheck> out;
  out.push_back({"distinct endpoints", d.x1 != d.y1 && d.x2 != d.y2, ""});
  out.push_back({"essentially distinct",
                 gamma.orbit_of(d.x2) != gamma.orbit_of(d.y1)
                     && gamma.orbit_of(d.y2) != gamma.orbit_of(d.x1),
                 ""});

  auto pieces = t.pieces();
  auto reach  = [&](int from, int steps) {
    std::set<int> cur{from}, all{from};
    for (int s = 0; s < steps; ++s) {
      std::set<int> next;
      for (int u : cur) {
        for (auto const& p : pieces) {
          if (auto path = gamma.read_path(u, p)) {
            next.insert(path->end());
          }
        }
      }
      all.insert(next.begin(), next.end());
      cur = std::move(next);
    }
    return all;
  };
  auto far = [&](int v, std::vector<int> const& core, std::string const& name) {
    auto        r = reach(v, 2);
    ClauseCheck c{name, true, ""};
    for (int x : core) {
      if (r.count(x)) {
        c.ok     = false;
        c.detail = "reaches " + gamma.vertex_name(x) + " with at most two pieces";
        break;
      }
    }
    return c;
  };
  out.push_back(far(d.x1, d.core1, "x1 is at least three pieces from C"));
  out.push_back(far(d.y2, d.core2, "y2 is at least three pieces from C"));

  auto p1 = gamma.read_path(d.x1, d.label1);
  auto p2 = gamma.read_path(d.x2, d.label2);
  out.push_back({"labels read x1->y1 and x2->y2",
                 p1 && p1->end() == d.y1 && p2 && p2->end() == d.y2, ""});
  out.push_back({"g cyclically reduced",
                 d.g == free_reduce(concat(d.label1, d.label2)) && is_cyclically_reduced(d.g)
                     && !d.g.empty(),
                 to_string(d.g)});
  return out;
}

std::vector<GrowthRow> check_geodesic_growth(Engine const& e, LabelledGraph const& gamma,
                                             Word const& g, int N_max, bool cross_check) {
  std::vector<GrowthRow> rows;
  for (int N = 0; N <= N_max; ++N) {
    GrowthRow row;
    row.N              = N;
    Word nf            = e.normal_form(power(g, N));
    row.geodesic_length = nf.size();
    row.dY_dp          = dY_dp(e, gamma, nf);
    bool bfs_ok        = true;
    if (cross_check) {
      std::vector<Word> core;
      for (size_t i = 0; i <= nf.size(); ++i) {
        core.push_back(subword(nf, 0, i));
      }
      auto              copies = enumerate_copies(e, gamma, core);
      std::vector<Word> region = core;
      for (auto const& c : copies) {
        region.insert(region.end(), c.image.begin(), c.image.end());
      }
      ConedGraph y(e, e.alphabet(), region, copies);
      auto       dist      = y.distance(y.lookup(Word{}), y.lookup(nf));
      row.dY_bfs           = dist.value;
      row.boundary_touched = dist.boundary_touched;
      bfs_ok               = dist.value == 2 * N;
    }
    row.ok = row.dY_dp == static_cast<size_t>(2 * N) && bfs_ok;
    rows.push_back(row);
  }
  return rows;
}

ProbeReport wpd_probe(Engine const& e, LabelledGraph const& gamma, Word const& g, int K,
                      int N, size_t radius, bool parallel) {
  ProbeReport rep;
  rep.K      = K;
  rep.N      = N;
  rep.radius = radius;
  CayleyBall ball(e, e.alphabet(), radius);
  rep.ball_size = ball.size();
  Word              gN  = e.normal_form(power(g, N));
  Word              gNi = invert(gN);
  std::vector<char> keep(ball.size(), 0);
  long              n = static_cast<long>(ball.size());
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
  for (long v = 0; v < n; ++v) {
    Word h  = ball.word(static_cast<int>(v));
    auto d1 = arc_decomposition(gamma, h);
    if (!d1 || *d1 > static_cast<size_t>(K)) {
      continue;
    }
    Word conj = e.normal_form(concat(concat(gNi, h), gN));
    auto d2   = arc_decomposition(gamma, conj);
    keep[v]   = d2 && *d2 <= static_cast<size_t>(K);
  }
  for (size_t v = 0; v < ball.size(); ++v) {
    if (keep[v]) {
      rep.elements.push_back(ball.word(static_cast<int>(v)));
      rep.longest = std::max(rep.longest, rep.elements.back().size());
    }
  }
  return rep;
}

}  // namespace gsc
