#pragma once

#include <cstddef>  // for size_t
#include <iosfwd>   // for istream
#include <random>   // for mt19937_64
#include <string>   // for string
#include <vector>   // for vector

#include "gsc/graph.hpp"
#include "gsc/words.hpp"

namespace gsc {

// An edge traversed forwards or backwards.
struct Dart {
  int  edge     = 0;
  bool reversed = false;

  Dart flipped() const {
    return {edge, !reversed};
  }
  bool operator==(Dart const& o) const {
    return edge == o.edge && reversed == o.reversed;
  }
};

// Planar 2-complex given as a combinatorial map.  Faces are closed dart
// cycles; the boundary cycle runs the same way round as the faces, so every
// dart occurs exactly once among the faces and the reversed boundary.
class Diagram {
 public:
  int add_vertex(std::string name = "");
  // Labels are non-empty words so that degree-2 vertices can be suppressed.
  int  add_edge(int src, int dst, Word label, std::string name = "");
  int  add_face(std::vector<Dart> cycle, std::string name = "");
  void set_boundary(std::vector<Dart> cycle, size_t base = 0);
  void set_sides(std::vector<size_t> cuts) {
    sides_ = std::move(cuts);
  }

  size_t num_vertices() const {
    return vertex_names_.size();
  }
  size_t num_edges() const {
    return src_.size();
  }
  size_t num_faces() const {
    return faces_.size();
  }
  int src(int e) const {
    return src_[e];
  }
  int dst(int e) const {
    return dst_[e];
  }
  Word const& label(int e) const {
    return labels_[e];
  }
  std::string const& vertex_name(int v) const {
    return vertex_names_[v];
  }
  std::string const& edge_name(int e) const {
    return edge_names_[e];
  }
  std::string const& face_name(int f) const {
    return face_names_[f];
  }
  std::vector<Dart> const& face(int f) const {
    return faces_[f];
  }
  // Boundary darts starting at the base point.
  std::vector<Dart> boundary() const;
  std::vector<size_t> const& sides() const {
    return sides_;
  }

  int  start(Dart d) const;
  int  end(Dart d) const;
  Word word(Dart d) const;
  Word word(std::vector<Dart> const& path) const;
  Word face_word(int f) const {
    return word(faces_[f]);
  }
  Word boundary_word() const {
    return word(boundary());
  }
  std::vector<int> degrees() const;  // loops count twice

  // Text format, one statement per line ('#' starts a comment):
  //   vertex <name>...
  //   edge <name> <src> <dst> <label>
  //   face <name> <dart>...          dart = edge name, '-' prefix reverses
  //   boundary <dart>...
  //   base <index>
  //   sides <index>...               cut positions on the boundary
  // Vertices are also created on first use.  Errors carry line numbers.
  static Diagram parse(std::istream& in);
  static Diagram parse_file(std::string const& path);
  std::string    str() const;

  std::string dart_name(Dart d) const;

 private:
  int vertex_id(std::string const& name);

  std::vector<std::string>       vertex_names_;
  std::vector<int>               src_, dst_;
  std::vector<Word>              labels_;
  std::vector<std::string>       edge_names_;
  std::vector<std::vector<Dart>> faces_;
  std::vector<std::string>       face_names_;
  std::vector<Dart>              boundary_;
  size_t                         base_ = 0;
  std::vector<size_t>            sides_;
};

// Structural defects; empty means a valid planar contractible diagram.
std::vector<std::string> validate(Diagram const& d);

// Copy with every degree-2 vertex between two distinct edges removed and the
// two edges merged (labels concatenated).  Face and boundary words are kept
// up to rotation: a cycle based at a removed vertex starts one edge earlier.
Diagram suppress_degree2(Diagram const& d);

struct Arc {
  std::vector<Dart> darts;
  bool              exterior = false;
  std::vector<int>  faces;  // incident faces, one or two
};
// Maximal arcs, each listed once.
std::vector<Arc> arcs(Diagram const& d);

struct FaceStats {
  int    face     = 0;
  int    exterior = 0;  // e: exterior maximal arcs, with multiplicity
  int    interior = 0;  // i: interior maximal arcs, with multiplicity
  size_t length   = 0;  // edges on the face cycle
};
std::vector<FaceStats> face_stats(Diagram const& d);

struct ReducedReport {
  bool        ok = true;
  std::string error;  // set when a face word is not a closed path of gamma
  int         edge = -1, face1 = -1, face2 = -1;
  std::string detail;
};
ReducedReport check_gamma_reduced(Diagram const& d, LabelledGraph const& gamma);

struct NgonReport {
  bool             ok = true;
  std::string      violation;
  int              face = -1;
  std::vector<int> distinguished;
};
// cuts: positions on the boundary dart list where the sides begin.
NgonReport check_37_ngon(Diagram const& d, std::vector<size_t> const& cuts);

struct StrebelReport {
  bool        applicable = true;
  std::string violation;
  long        lhs = 6, vertex_term = 0, face_term = 0;
  bool        holds() const {
    return applicable && lhs == vertex_term + face_term;
  }
};
StrebelReport curvature_strebel(Diagram const& d);

struct LyndonReport {
  bool        applicable = true;
  std::string violation;
  long        twice_sum = 0;  // 2 * sum over boundary vertices of (5/2 - d(v))
  bool        holds() const {
    return applicable && twice_sum >= 6;
  }
};
LyndonReport curvature_lyndon(Diagram const& d);

enum class BigonShape { single_face, shape_i1, other };
std::string to_string(BigonShape s);
struct BigonReport {
  BigonShape  shape = BigonShape::other;
  std::string reason;
};
BigonReport classify_bigon(Diagram const& d, std::vector<size_t> const& cuts);

struct RandomDiagramOptions {
  size_t max_faces       = 6;
  size_t min_face_length = 3;
  size_t max_face_length = 8;
  // Glue only along paths whose inner vertices already have degree >= 3,
  // so that interior vertices keep degree >= 3.
  bool interior_degree3 = false;
  int  generators       = 3;
};
// Disk diagram grown by gluing polygons onto boundary paths or vertices.
Diagram random_diagram(std::mt19937_64& rng, RandomDiagramOptions const& opt);

}  // namespace gsc
