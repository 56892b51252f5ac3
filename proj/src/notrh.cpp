#include <algorithm>      // for sort, reverse, min_element
#include <numeric>        // for iota
#include <unordered_set>  // for unordered_set

#include "gsc/divergence.hpp"

namespace gsc {

namespace {

struct VectorHash {
  size_t operator()(std::vector<int> const& v) const {
    size_t h = v.size();
    for (int x : v) {
      h = h * 1000003u ^ static_cast<size_t>(x);
    }
    return h;
  }
};

// Read the arc in its canonical direction: the smaller end first, or for a
// closed arc starting at its smallest vertex going towards the smaller
// neighbour.
std::vector<int> canonical(std::vector<int> v, bool closed) {
  if (!closed) {
    if (v.back() < v.front()) {
      std::reverse(v.begin(), v.end());
    }
    return v;
  }
  auto lo = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), lo, v.end());
  if (v.size() > 2 && v.back() < v[1]) {
    std::reverse(v.begin() + 1, v.end());
  }
  return v;
}

}  // namespace

std::vector<CopyArc> relator_arcs(CayleyBall const& ball, Word const& relator,
                                  size_t core_radius) {
  std::vector<Word> rotations;
  for (auto const& w : cyclic_conjugates(relator)) {
    if (std::find(rotations.begin(), rotations.end(), w) == rotations.end()) {
      rotations.push_back(w);
    }
  }
  std::vector<CopyArc>                                    out;
  std::unordered_set<std::vector<int>, VectorHash>        seen;
  size_t const                                            L = relator.size();
  for (size_t d = 0; d <= core_radius && d <= ball.radius(); ++d) {
    for (int v : ball.layer(d)) {
      for (auto const& w : rotations) {
        std::vector<int> forward{v};
        bool             closed = false;
        for (size_t i = 0; i < L; ++i) {
          int nx = ball.neighbour(forward.back(), w[i]);
          if (nx < 0) {
            break;
          }
          if (i + 1 == L) {
            closed = true;  // back at v
            break;
          }
          forward.push_back(nx);
        }
        std::vector<int> backward;
        if (!closed) {
          int cur = v;
          for (size_t i = L; i-- > 0;) {
            int pv = ball.neighbour(cur, inverse(w[i]));
            if (pv < 0) {
              break;
            }
            backward.push_back(pv);
            cur = pv;
          }
        }
        std::vector<int> arc(backward.rbegin(), backward.rend());
        arc.insert(arc.end(), forward.begin(), forward.end());
        arc = canonical(std::move(arc), closed);
        if (seen.insert(arc).second) {
          out.push_back({std::move(arc), closed});
        }
      }
    }
  }
  return out;
}

OverlapReport overlap_check(CayleyBall const& ball, std::vector<CopyArc> const& arcs, size_t K,
                            size_t core_radius) {
  OverlapReport rep;
  rep.K           = K;
  rep.core_radius = core_radius;
  rep.arcs        = arcs.size();

  // arcs through each vertex, and covered edges
  size_t const        S = ball.letters().size();
  std::vector<size_t> start(ball.size() + 1, 0);
  std::vector<char>   covered(ball.size() * S, 0);
  auto                mark = [&](int u, int v) {
    for (size_t s = 0; s < S; ++s) {
      if (ball.neighbour(u, ball.letters()[s]) == v) {
        covered[static_cast<size_t>(u) * S + s] = 1;
      }
    }
  };
  for (auto const& a : arcs) {
    for (size_t i = 0; i < a.vertices.size(); ++i) {
      ++start[a.vertices[i] + 1];
      size_t j = i + 1;
      if (j == a.vertices.size()) {
        if (!a.closed) {
          continue;
        }
        j = 0;
      }
      mark(a.vertices[i], a.vertices[j]);
      mark(a.vertices[j], a.vertices[i]);
    }
  }
  for (size_t v = 0; v < ball.size(); ++v) {
    start[v + 1] += start[v];
  }
  std::vector<int>    through(start.back());
  std::vector<size_t> fill(start.begin(), start.end() - 1);
  for (size_t a = 0; a < arcs.size(); ++a) {
    for (int v : arcs[a].vertices) {
      through[fill[v]++] = static_cast<int>(a);
    }
  }

  std::vector<int> root(arcs.size());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) {
      x = root[x] = root[root[x]];
    }
    return x;
  };
  // For each arc, positions along it shared with each later arc.
  std::vector<std::pair<int, int>> shared;  // (other arc, position)
  for (size_t a = 0; a < arcs.size(); ++a) {
    shared.clear();
    auto const& verts = arcs[a].vertices;
    for (size_t p = 0; p < verts.size(); ++p) {
      for (size_t q = start[verts[p]]; q < start[verts[p] + 1]; ++q) {
        if (through[q] > static_cast<int>(a)) {
          shared.emplace_back(through[q], static_cast<int>(p));
        }
      }
    }
    std::sort(shared.begin(), shared.end());
    for (size_t i = 0; i < shared.size();) {
      size_t j = i;
      // longest run of consecutive positions; the intersection is a path
      size_t run = 1, best = 1, runs = 1;
      while (j + 1 < shared.size() && shared[j + 1].first == shared[i].first) {
        ++j;
        if (shared[j].second == shared[j - 1].second + 1) {
          best = std::max(best, ++run);
        } else {
          run = 1;
          ++runs;
        }
      }
      if (runs > 1) {
        ++rep.split_intersections;
      }
      size_t diameter     = best - 1;
      rep.longest_overlap = std::max(rep.longest_overlap, diameter);
      if (diameter >= K) {
        ++rep.adjacent_pairs;
        root[find(static_cast<int>(a))] = find(shared[i].first);
      }
      i = j + 1;
    }
  }
  for (size_t a = 0; a < arcs.size(); ++a) {
    if (find(static_cast<int>(a)) == static_cast<int>(a)) {
      ++rep.components;
    }
  }
  rep.connected = rep.components <= 1;
  if (!rep.connected) {
    rep.witness_a = 0;
    for (size_t a = 1; a < arcs.size(); ++a) {
      if (find(static_cast<int>(a)) != find(0)) {
        rep.witness_b = static_cast<int>(a);
        break;
      }
    }
  }

  for (size_t d = 0; d <= core_radius && d <= ball.radius(); ++d) {
    for (int u : ball.layer(d)) {
      for (size_t s = 0; s < S; ++s) {
        int v = ball.neighbour(u, ball.letters()[s]);
        if (v < 0 || ball.depth(v) > core_radius || v < u) {
          continue;
        }
        ++rep.core_edges;
        if (!covered[static_cast<size_t>(u) * S + s]) {
          if (rep.uncovered++ == 0) {
            rep.uncovered_from = u;
            rep.uncovered_to   = v;
          }
        }
      }
    }
  }
  rep.covering = rep.uncovered == 0;
  return rep;
}

}  // namespace gsc
