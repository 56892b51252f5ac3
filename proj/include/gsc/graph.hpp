#pragma once

#include <cstddef>   // for size_t
#include <iosfwd>    // for istream
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "gsc/words.hpp"

namespace gsc {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int src;
  int dst;
  int gen;
};

struct GraphPath {
  int              start = 0;
  Word             label;
  std::vector<int> vertices;  // |label| + 1 entries
  std::vector<int> edges;     // edge ids, one per letter

  int end() const {
    return vertices.back();
  }
  bool closed() const {
    return vertices.front() == vertices.back();
  }
  size_t length() const {
    return label.size();
  }
};

struct FoldViolation {
  int  vertex;
  int  gen;
  bool outgoing;
};

// Vertex permutation preserving edges and labels.
using Automorphism = std::vector<int>;

class LabelledGraph {
 public:
  LabelledGraph() = default;

  int add_vertex(std::string name = "");
  int add_edge(int src, int dst, int gen);
  int vertex_by_name(std::string const& name) const;  // -1 if absent

  size_t num_vertices() const {
    return names_.size();
  }
  size_t num_edges() const {
    return edges_.size();
  }
  Edge const& edge(int e) const {
    return edges_[e];
  }
  std::vector<Edge> const& edges() const {
    return edges_;
  }
  std::string const& vertex_name(int v) const {
    return names_[v];
  }
  std::vector<int> const& alphabet() const {
    return alphabet_;
  }
  void declare_generator(int gen);

  // Builds every lazily computed index; call before sharing across threads.
  void prepare() const;

  std::optional<FoldViolation> check_folded() const;
  bool                         folded() const {
    return !check_folded().has_value();
  }

  // Neighbour across the edge labelled x (x < 0 means traverse an edge
  // backwards); -1 if there is none.  Requires a folded graph.
  int step(int v, Letter x) const;
  int step_edge(int v, Letter x) const;
  // (letter, neighbour, edge) triples at v sorted by letter_rank.
  struct Half {
    Letter letter;
    int    to;
    int    edge;
  };
  std::vector<Half> const& incident(int v) const {
    build_adjacency();
    return adj_[v];
  }
  int degree(int v) const {
    build_adjacency();
    return static_cast<int>(adj_[v].size());
  }

  std::optional<GraphPath> read_path(int start, Word const& w) const;

  // Components.
  size_t num_components() const;
  int    component_of(int v) const;
  std::vector<int> const& component_vertices(int c) const;
  std::vector<int>        component_edges(int c) const;
  bool                    component_has_cycle(int c) const;

  // Orbit id of v under the full automorphism group.  Two vertices share an
  // orbit iff the rooted components are label-isomorphic.
  int    orbit_of(int v) const;
  size_t num_orbits() const;

  // Isomorphisms of components extend uniquely from one vertex image.
  std::optional<std::vector<int>> extend_isomorphism(int u, int v) const;
  std::vector<Automorphism>       automorphisms(size_t cap = 100000) const;

  std::vector<int> occurrences(Word const& w) const;
  size_t           orbit_count(Word const& w) const;

  // Simple closed paths up to rotation and inversion, canonical
  // representative each, sorted by (length, label, start).
  std::vector<GraphPath> simple_closed_paths(size_t max_len,
                                             size_t cap = 1000000) const;
  std::vector<GraphPath> simple_closed_paths_in(std::vector<char> const& edge_mask,
                                                size_t max_len,
                                                size_t cap = 1000000) const;

  // Path from u to v of minimal length inside one component, ties broken by
  // shortlex-least label.  nullopt if u and v are in different components.
  std::optional<GraphPath> shortest_path(int u, int v) const;
  // All paths from u to v of minimal length.
  std::vector<GraphPath> all_shortest_paths(int u, int v, size_t cap = 10000) const;
  std::vector<int>       distances_from(int v) const;  // -1 = unreachable

  // Builders.
  static LabelledGraph cycle(Word const& w);
  static LabelledGraph cycles(std::vector<Word> const& ws);
  // Line-oriented text format; throws ParseError with a line number.
  static LabelledGraph parse(std::istream& in);
  static LabelledGraph parse_file(std::string const& path);

 private:
  void invalidate();
  void build_adjacency() const;
  void build_components() const;
  void build_orbits() const;
  std::vector<int> rooted_code(int root) const;

  std::vector<std::string> names_;
  std::vector<Edge>        edges_;
  std::vector<int>         alphabet_;

  mutable bool                           adj_ok_ = false;
  mutable std::vector<std::vector<Half>> adj_;
  mutable bool                           comp_ok_ = false;
  mutable std::vector<int>               comp_of_;
  mutable std::vector<std::vector<int>>  comp_vertices_;
  mutable bool                           orbit_ok_ = false;
  mutable std::vector<int>               orbit_of_;
  mutable size_t                         num_orbits_ = 0;
};

// Cycle label of a closed path as a word starting at its start vertex.
GraphPath canonical_cycle(LabelledGraph const& g, GraphPath const& p);

}  // namespace gsc
