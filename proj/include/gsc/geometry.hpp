#pragma once

#include <cstddef>        // for size_t
#include <cstdint>        // for uint64_t
#include <optional>       // for optional
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <vector>         // for vector

#include "gsc/engine.hpp"
#include "gsc/graph.hpp"
#include "gsc/words.hpp"

namespace gsc {

// Ball of radius r around 1 in Cay(G, S).  Vertices are group elements,
// stored as a trie of their normal forms (shortlex-least geodesics), so ids
// increase in shortlex order and the depth of a vertex is its word length.
class CayleyBall {
 public:
  CayleyBall(Engine const& e, std::vector<int> const& generators, size_t radius,
             size_t vertex_cap = 50000000);

  size_t size() const {
    return parent_.size();
  }
  size_t radius() const {
    return radius_;
  }
  size_t num_edges() const;
  bool   is_tree() const {
    return num_edges() + 1 == size();
  }
  // Signed generators in letter_rank order; slot k of neighbour().
  std::vector<Letter> const& letters() const {
    return letters_;
  }
  int slot(Letter x) const;

  int    parent(int v) const {
    return parent_[v];
  }
  Letter last_letter(int v) const {
    return last_[v];
  }
  size_t depth(int v) const {
    return depth_[v];
  }
  Word word(int v) const;
  // Vertex with the given normal form, -1 if absent.
  int lookup(Word const& nf) const;
  // Vertex of the element nf(word(v) * x), -1 outside the ball.
  int neighbour(int v, Letter x) const {
    return nbr_[static_cast<size_t>(v) * letters_.size() + slot(x)];
  }
  std::vector<int> layer(size_t d) const;  // vertices at depth d, ascending

  // BFS distance between ball vertices using only ball edges.
  std::vector<int> distances_from(int v) const;

 private:
  std::vector<Letter>   letters_;
  std::vector<int>      parent_;
  std::vector<Letter>   last_;
  std::vector<uint8_t>  depth_;
  std::vector<int>      child_;  // size() * letters
  std::vector<int>      nbr_;    // size() * letters
  std::vector<size_t>   layer_start_;
  size_t                radius_;
};

// Image of a component of Gamma under a label-preserving map into Cay(G,S).
struct ComponentCopy {
  int               component = -1;
  Word              anchor;     // shortlex-least image element
  std::vector<int>  vertices;   // component vertices, as in component_vertices()
  std::vector<Word> image;      // normal form of the image of each vertex
};

// Normal forms of g * label(path from `base` to each vertex of its component).
std::vector<Word> component_image(Engine const& e, LabelledGraph const& gamma, int base,
                                  Word const& g);

// Every copy of every component of gamma through some element of `core`,
// each coset once.  Copies of isomorphic components are identified.
std::vector<ComponentCopy> enumerate_copies(Engine const& e, LabelledGraph const& gamma,
                                            std::vector<Word> const& core);
std::vector<ComponentCopy> enumerate_copies(Engine const& e, LabelledGraph const& gamma,
                                            CayleyBall const& ball);

// The coned-off graph restricted to a finite region of group elements: S-edges
// between region elements plus a clique on every copy's image in the region.
class ConedGraph {
 public:
  ConedGraph(Engine const& e, std::vector<int> const& generators,
             std::vector<Word> const& region, std::vector<ComponentCopy> const& copies);
  // Region = the whole ball.
  ConedGraph(Engine const& e, CayleyBall const& ball, std::vector<ComponentCopy> const& copies);

  size_t size() const {
    return words_.size();
  }
  Word const& word(int v) const {
    return words_[v];
  }
  int  lookup(Word const& nf) const;
  bool boundary(int v) const {
    return boundary_[v];
  }
  std::vector<int> const& neighbours(int v) const {
    return adj_[v];
  }
  size_t num_edges() const;

  struct Distance {
    int  value = -1;  // -1 if disconnected in the region
    bool boundary_touched = false;
  };
  // Distance inside the region, an upper bound on d_Y(u, v).  Exact unless
  // boundary_touched: a detour through the outside could be shorter.
  Distance         distance(int u, int v) const;
  std::vector<int> distances_from(int u) const;

 private:
  void add_edge(int u, int v);

  std::vector<Word>                              words_;
  std::unordered_map<Word, int, WordHash>        index_;
  std::vector<std::vector<int>>                  adj_;
  std::vector<char>                              boundary_;
};

// Minimal number of arcs in w, each a subword readable on gamma or a single
// letter absent from gamma.  Equals d_Y(1, w) for a geodesic w when gamma
// satisfies Gr'(1/6).  Returns nullopt if w cannot be split at all.
std::optional<size_t> arc_decomposition(LabelledGraph const& gamma, Word const& w);
// Same, after checking that w is geodesic; throws std::invalid_argument if not.
size_t dY_dp(Engine const& e, LabelledGraph const& gamma, Word const& w);

struct EmbeddingReport {
  bool        ok = true;
  std::string violation;
  size_t      pairs_checked = 0;
  size_t      diameter      = 0;
};
// d_G(f(u), f(v)) = d_component(u, v) for all pairs, and every geodesic
// between image points stays in the image.
EmbeddingReport verify_isometric_convex(Engine const& e, LabelledGraph const& gamma,
                                        ComponentCopy const& copy);
// The intersection of the two images induces a connected (or empty) subgraph.
EmbeddingReport verify_intersection_connected(Engine const& e, ComponentCopy const& a,
                                              ComponentCopy const& b);
// Copy of gamma's component c with vertex `base` mapped to g.
ComponentCopy make_copy(Engine const& e, LabelledGraph const& gamma, int base, Word const& g);

struct DeltaReport {
  double delta      = 0;  // halves are exact
  bool   exhaustive = true;
  size_t samples    = 0;
  size_t points     = 0;
};
// Gromov four-point defect over a symmetric distance matrix.  Exhaustive
// when points <= exhaustive_cap, else `samples` uniform quadruples.
DeltaReport four_point_delta(std::vector<std::vector<int>> const& dist,
                             size_t exhaustive_cap = 64, size_t samples = 200000,
                             unsigned seed = 0, bool parallel = true);
std::vector<std::vector<int>> distance_matrix(ConedGraph const& y);
std::vector<std::vector<int>> distance_matrix(CayleyBall const& ball);

struct NotacylReport {
  int                 N = 0, K = 0;
  int                 C = 0;  // C_N
  Word                w;
  bool                certified = false;
  std::vector<size_t> near;         // m with w^m read on the r_N copy at 1
  bool                distinct = false;
  size_t              far_length = 0;  // L = C_N K
  size_t              far_distance = 0;  // d_Y(1, w^L) by arc decomposition
  bool                far_geodesic = false;
  bool                pass = false;
};
NotacylReport notacyl_experiment(int N, int K);

}  // namespace gsc
