#pragma once

#include <string>  // for string
#include <vector>  // for vector

#include "gsc/engine.hpp"
#include "gsc/graph.hpp"

namespace gsc {

struct CorpusGraph {
  std::string   name;
  LabelledGraph graph;
};

// Fixed named graphs followed by seeded random folded graphs with at most
// 12 edges.
std::vector<CorpusGraph> const& test_corpus();

// Random folded graph on `vertices` vertices with up to `edges` edges over
// `gens` generators.
LabelledGraph random_folded_graph(unsigned seed, int vertices, int edges, int gens);

// Freely reduced words of length <= max_len over generators 0..gens-1,
// shortlex order.
std::vector<Word> reduced_words(size_t max_len, int gens);

// Ball by BFS with pairwise equality tests.  Each layer is scanned in
// shortlex order, so the first word found for an element is its shortlex
// least geodesic.
std::vector<Word> equality_ball(Engine const& e, size_t radius);

}  // namespace gsc
