#pragma once

#include <cstddef>    // for size_t
#include <stdexcept>  // for runtime_error
#include <string>     // for string
#include <vector>     // for vector

#include "gsc/engine.hpp"
#include "gsc/geometry.hpp"
#include "gsc/graph.hpp"
#include "gsc/smallcancel.hpp"

namespace gsc {

// Edge mask of edges whose one-letter label is a piece.  In a folded graph a
// path is a concatenation of pieces iff each of its edges is a piece.
std::vector<char> piece_edges(LabelledGraph const& g, PieceTable const& t);

// Either two vertices of the component that no concatenation of pieces
// connects, or a simple closed path all of whose edges are pieces.
struct PieceDichotomy {
  bool      has_cycle = false;
  int       x = -1, y = -1;
  GraphPath cycle;
};
PieceDichotomy piece_dichotomy(LabelledGraph const& g, int component, PieceTable const& t);

enum class WpdMode { automatic, gr7, c7, grprime };
std::string to_string(WpdMode m);
WpdMode     parse_wpd_mode(std::string const& text);

struct NoWpdData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vertices x1,y1 (component 1) and x2,y2 (component 2) from which the
// loxodromic element g = label(x1 -> y1) label(x2 -> y2) is built.
struct WpdData {
  WpdMode          mode = WpdMode::automatic;
  int              component1 = -1, component2 = -1;
  GraphPath        cycle1, cycle2;  // empty when the no-piece-path branch is used
  int              x1 = -1, y1 = -1, x2 = -1, y2 = -1;
  std::vector<int> core1, core2;  // vertices mapped into the intersection C
  Word             label1, label2;
  Word             g;
};

// Needs the relator cycles of `e` as gamma.  automatic picks grprime when
// gamma is Gr'(1/6), otherwise gr7, otherwise c7.
WpdData find_wpd_data(Engine const& e, LabelledGraph const& gamma,
                      WpdMode mode = WpdMode::automatic);

struct ClauseCheck {
  std::string name;
  bool        ok = false;
  std::string detail;
};
// Re-derives the defining properties from the graph alone.
std::vector<ClauseCheck> verify_wpd_data(LabelledGraph const& gamma, PieceTable const& t,
                                         WpdData const& d);

struct GrowthRow {
  int    N = 0;
  size_t geodesic_length = 0;  // |g^N| in the word metric
  size_t dY_dp           = 0;
  int    dY_bfs          = -1;  // coned graph on the copies along the geodesic
  bool   boundary_touched = false;
  bool   ok = false;            // dY_dp == 2N and dY_bfs agrees
};
std::vector<GrowthRow> check_geodesic_growth(Engine const& e, LabelledGraph const& gamma,
                                             Word const& g, int N_max,
                                             bool cross_check = true);

// Ball elements h with d_Y(1, h) <= K and d_Y(g^N, h g^N) <= K, both
// measured exactly by arc decomposition of normal forms.  Evidence only: a
// finite list that stays put as the radius grows.
struct ProbeReport {
  int               K = 0, N = 0;
  size_t            radius = 0, ball_size = 0;
  std::vector<Word> elements;  // shortlex order
  size_t            longest = 0;
};
ProbeReport wpd_probe(Engine const& e, LabelledGraph const& gamma, Word const& g, int K,
                      int N, size_t radius, bool parallel = true);

}  // namespace gsc
