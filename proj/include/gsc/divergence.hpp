#pragma once

#include <cstddef>     // for size_t
#include <functional>  // for function
#include <random>      // for mt19937_64
#include <string>      // for string
#include <vector>      // for vector

#include "gsc/engine.hpp"
#include "gsc/geometry.hpp"

namespace gsc {

////////////////////////////////////////////////////////////////////////////
// Divergence by search
////////////////////////////////////////////////////////////////////////////

struct DivergenceOptions {
  // Forbidden set around c: vertices at distance < delta * r - slack.
  int    delta_num = 1, delta_den = 5;
  int    slack     = 2;
  size_t search_radius = 0;  // 0: n + longest relator / 2 + 2
  size_t vertex_cap    = 5000000;
  bool   parallel      = true;
};

// Maximum over vertex triples (1, b, c) with |b| <= n of the shortest path
// from 1 to b inside the search ball that avoids the forbidden set around c.
struct DivergenceResult {
  int    n = 0;
  bool   infinite = false;  // some pair is separated inside the search ball
  long   value    = 0;
  Word   b, c;              // witness; a is the identity
  size_t radius = 0, ball_size = 0;
  size_t searched = 0;      // pairs (b, c) needing a path search
};
DivergenceResult exact_divergence(Engine const& e, int n, DivergenceOptions const& opt = {});

inline long corollary_bound(long n) {
  return 40 * n * n + 64 * n + 2;
}

struct CorollaryReport {
  int              n = 0;
  std::vector<int> indices;
  DivergenceResult divergence;
  long             bound = 0;
  bool             ok    = false;
};
// Needs 2n among the indices; throws std::invalid_argument otherwise.
CorollaryReport corollary_check(std::vector<int> const& indices, int n,
                                DivergenceOptions const& opt = {});

////////////////////////////////////////////////////////////////////////////
// Fences
////////////////////////////////////////////////////////////////////////////

inline long fence_bound(long n, long N) {
  return 20 * n * N + 32 * N;
}

// A relator copy: the closed path reading `label` from `start`.
struct RelatorCopy {
  Word start;
  Word label;
};

struct FencePath {
  Word   x, y, m;
  int    n = 0, N = 0;
  size_t r = 0;
  bool   direct = false;      // a geodesic from x to y already avoids the ball
  std::vector<Word>        blocks;  // generator powers of the path through m
  std::vector<RelatorCopy> copies;  // copies along the blocks, then end corrections
  bool start_fix = false, end_fix = false;
  Word label;                 // the path, read from x
};

// Detour from x to y around the open ball of radius r/5 about m, where
// r = d(x, m) <= d(y, m).  Needs r_N among the relators of `e`, N >= 2n,
// 0 < d(x, y) <= n or x = y, and r > 0; throws std::invalid_argument
// otherwise.
FencePath fence_path(Engine const& e, Word const& x, Word const& y, Word const& m, int n, int N);

struct FenceCheck {
  bool        ok = false;
  bool        ends = false, avoids = false, short_enough = false, copies_closed = false;
  size_t      length = 0;
  long        bound  = 0;
  size_t      closest = 0;  // min distance from a path vertex to m
  std::string detail;
};
// Re-checks a fence using a ball around m rather than the engine metric.
FenceCheck verify_fence(Engine const& e, FencePath const& f);

struct FenceInstance {
  Word x, y, m;
};
// Random x, y with 0 < d(x, y) <= n and m within distance 1 of a geodesic
// between them, arranged so that 0 < d(x, m) <= d(y, m).
FenceInstance random_fence_instance(Engine const& e, int n, std::mt19937_64& rng);

////////////////////////////////////////////////////////////////////////////
// Gap set recursion
////////////////////////////////////////////////////////////////////////////

struct GrowthFunction {
  std::string                   name;
  std::function<double(double)> log2_value;  // -infinity for the zero function
};
// "0", "t", "t^K", "2^(t^A)" with 0 < A < 1.
GrowthFunction parse_growth_function(std::string const& text);

// Relator lengths and indices grow doubly exponentially along the recursion,
// so they are carried as doubles (exact up to 2^53).

// (N/5 - 3) / (2 rho)
double gap_exponent(double rho, double N);
// ceil(4 * 2^gap_exponent)
double gap_threshold(double rho, double N);

struct GapStep {
  double              rho = 0;
  double              N   = 0;
  double              exponent = 0;
  double              log2_rhs = 0;  // log2 of 2^exponent / N
  std::vector<double> log2_lhs;      // log2 g(N) per function
  double              threshold = 0;
};
// Requires g(N) < 2^exponent / N for every g; throws std::invalid_argument
// ("N too small") otherwise.
GapStep gap_set_next(double rho, std::vector<GrowthFunction> const& g, double N);

struct GapSequence {
  std::vector<double>  J;
  std::vector<GapStep> steps;
};
// Starts from J = {j1}; step k uses the first k functions, an admissible N
// above the previous one, and the smallest index whose relator reaches the
// threshold.
GapSequence gap_set_sequence(double j1, std::vector<GrowthFunction> const& g, int steps,
                             double N_start = 16);

////////////////////////////////////////////////////////////////////////////
// Overlap criterion
////////////////////////////////////////////////////////////////////////////

// Connected piece of a relator copy inside the ball, as ball vertices in
// path order.  closed when the whole copy lies inside.
struct CopyArc {
  std::vector<int> vertices;
  bool             closed = false;
};
// Arcs of all copies of `relator` through vertices of depth <= core_radius.
std::vector<CopyArc> relator_arcs(CayleyBall const& ball, Word const& relator,
                                  size_t core_radius);

struct OverlapReport {
  size_t K = 0, core_radius = 0;
  size_t arcs = 0, adjacent_pairs = 0, components = 0;
  size_t core_edges = 0, uncovered = 0, split_intersections = 0;
  size_t longest_overlap = 0;
  bool   connected = false, covering = false;
  int    witness_a = -1, witness_b = -1;  // arcs in different components
  int    uncovered_from = -1, uncovered_to = -1;
  bool   ok() const {
    return connected && covering;
  }
};
// Arcs are adjacent when their intersection has diameter >= K; every ball
// edge between vertices of depth <= core_radius must lie on an arc.
OverlapReport overlap_check(CayleyBall const& ball, std::vector<CopyArc> const& arcs, size_t K,
                            size_t core_radius);

}  // namespace gsc
