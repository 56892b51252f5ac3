#include <algorithm>  // for next_permutation, sort
#include <set>        // for set
#include <sstream>    // for istringstream

#include "doctest.h"

#include "corpus.hpp"
#include "gsc/graph.hpp"
#include "gsc/presentation.hpp"

namespace gsc {

namespace {

LabelledGraph theta() {
  std::istringstream in("alphabet a b c\nedge u v a\nedge u v b\nedge u v c\n");
  return LabelledGraph::parse(in);
}

bool preserves(LabelledGraph const& g, std::vector<int> const& p) {
  std::multiset<std::tuple<int, int, int>> a, b;
  for (auto const& e : g.edges()) {
    a.emplace(e.src, e.dst, e.gen);
    b.emplace(p[e.src], p[e.dst], e.gen);
  }
  return a == b;
}

// All label-preserving vertex permutations, by brute force.
std::set<std::vector<int>> brute_automorphisms(LabelledGraph const& g) {
  std::vector<int> p(g.num_vertices());
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<int>(i);
  }
  std::set<std::vector<int>> out;
  do {
    if (preserves(g, p)) {
      out.insert(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Number of paths with label w from v, following edges without using
// determinism.
size_t count_paths(LabelledGraph const& g, int v, Word const& w, size_t i = 0) {
  if (i == w.size()) {
    return 1;
  }
  size_t n = 0;
  for (auto const& e : g.edges()) {
    if (e.gen != generator_of(w[i])) {
      continue;
    }
    if (!is_inverse(w[i]) && e.src == v) {
      n += count_paths(g, e.dst, w, i + 1);
    } else if (is_inverse(w[i]) && e.dst == v) {
      n += count_paths(g, e.src, w, i + 1);
    }
  }
  return n;
}

}  // namespace

TEST_CASE("folding") {
  CHECK(LabelledGraph::cycle(parse_word("abc")).folded());
  CHECK(LabelledGraph::cycle(parse_word("aa")).folded());
  LabelledGraph g;
  int           u = g.add_vertex("u"), v = g.add_vertex("v"), w = g.add_vertex("w");
  g.add_edge(u, v, 0);
  g.add_edge(u, w, 0);
  auto bad = g.check_folded();
  REQUIRE(bad.has_value());
  CHECK(bad->vertex == u);
  CHECK(bad->gen == 0);
  CHECK(bad->outgoing);
}

TEST_CASE("reading paths") {
  auto g = LabelledGraph::cycle(parse_word("ab"));
  auto p = g.read_path(0, parse_word("ab"));
  REQUIRE(p.has_value());
  CHECK(p->closed());
  CHECK_FALSE(g.read_path(0, parse_word("b")).has_value());
  auto q = g.read_path(0, parse_word("B"));
  REQUIRE(q.has_value());
  CHECK(q->end() == 1);
}

TEST_CASE("paths are unique in folded graphs") {
  for (auto const& item : test_corpus()) {
    auto const& g = item.graph;
    if (g.num_edges() > 12) {
      continue;
    }
    std::vector<Letter> letters;
    for (int x : g.alphabet()) {
      letters.push_back(make_letter(x));
      letters.push_back(make_letter(x, true));
    }
    for (size_t v = 0; v < g.num_vertices(); ++v) {
      for (Letter x : letters) {
        for (Letter y : letters) {
          Word w{x, y};
          size_t n = count_paths(g, static_cast<int>(v), w);
          CHECK(n <= 1);
          CHECK((n == 1) == g.read_path(static_cast<int>(v), w).has_value());
        }
      }
    }
  }
}

TEST_CASE("automorphism groups") {
  CHECK(LabelledGraph::cycle(parse_word("abc")).automorphisms().size() == 1);
  auto r1 = LabelledGraph::cycle(tv_relator(1));
  CHECK(r1.automorphisms().size() == 4);
  auto two = LabelledGraph::cycles({parse_word("ab"), parse_word("ab")});
  auto aut = two.automorphisms();
  CHECK(aut.size() == 2);
  CHECK(brute_automorphisms(two).size() == aut.size());
}

TEST_CASE("automorphisms agree with brute force and form a group") {
  for (auto const& item : test_corpus()) {
    auto const& g = item.graph;
    if (g.num_vertices() > 8) {
      continue;
    }
    auto                       aut = g.automorphisms();
    std::set<std::vector<int>> mine(aut.begin(), aut.end());
    CHECK_MESSAGE(mine == brute_automorphisms(g), item.name);
    for (auto const& p : aut) {
      std::vector<int> inv(p.size());
      for (size_t i = 0; i < p.size(); ++i) {
        inv[p[i]] = static_cast<int>(i);
      }
      CHECK(mine.count(inv) == 1);
      for (auto const& q : aut) {
        std::vector<int> pq(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
          pq[i] = p[q[i]];
        }
        CHECK(mine.count(pq) == 1);
      }
    }
  }
}

TEST_CASE("occurrences and orbits") {
  auto r1 = LabelledGraph::cycle(tv_relator(1));
  auto occ = r1.occurrences(parse_word("a"));
  CHECK(occ.size() == 8);
  CHECK(r1.orbit_count(parse_word("a")) == 2);
  auto abc = LabelledGraph::cycle(parse_word("abc"));
  CHECK(abc.occurrences(parse_word("a")).size() == 1);
  CHECK(abc.orbit_count(parse_word("a")) == 1);
  auto tv = LabelledGraph::cycles({tv_relator(1), tv_relator(2)});
  std::set<int> comps;
  for (int v : tv.occurrences(parse_word("ab"))) {
    comps.insert(tv.component_of(v));
  }
  CHECK(comps.size() == 2);
  CHECK(tv.orbit_count(parse_word("ab")) >= 2);
}

TEST_CASE("occurrence sets are unions of orbits") {
  for (auto const& item : test_corpus()) {
    auto const& g = item.graph;
    if (g.num_edges() > 12) {
      continue;
    }
    auto aut = g.automorphisms();
    for (int x : g.alphabet()) {
      for (Word w : {Word{make_letter(x)}, Word{make_letter(x), make_letter(x)}}) {
        auto          occ = g.occurrences(w);
        std::set<int> s(occ.begin(), occ.end());
        for (auto const& p : aut) {
          for (int v : occ) {
            CHECK(s.count(p[v]) == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("simple closed paths") {
  CHECK(LabelledGraph::cycle(tv_relator(1)).simple_closed_paths(16).size() == 1);
  CHECK(theta().simple_closed_paths(10).size() == 3);
  auto tv = LabelledGraph::cycles({tv_relator(1), tv_relator(2)});
  auto cs = tv.simple_closed_paths(100);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].label.size() == 16);
  CHECK(cs[1].label.size() == 32);
  CHECK_THROWS_AS(theta().simple_closed_paths(10, 2), BudgetExceeded);
}

TEST_CASE("canonical cycle representative") {
  auto g = LabelledGraph::cycle(parse_word("bA"));
  auto cs = g.simple_closed_paths(4);
  REQUIRE(cs.size() == 1);
  // rotations bA, Ab and inverses aB, Ba: shortlex least is aB
  CHECK(to_string(cs[0].label) == "aB");
}

TEST_CASE("graph file format") {
  std::istringstream ok("# comment\nalphabet x1 y\nvertex p\nedge p q x1\nedge q p y\n");
  auto               g = LabelledGraph::parse(ok);
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 2);
  CHECK(g.simple_closed_paths(4).size() == 1);
  std::istringstream bad("alphabet a\nedge p q a\nedge p\n");
  try {
    LabelledGraph::parse(bad);
    CHECK(false);
  } catch (ParseError const& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("shortest paths") {
  auto g = LabelledGraph::cycle(parse_word("abcd"));
  auto p = g.shortest_path(0, 2);
  REQUIRE(p.has_value());
  CHECK(p->length() == 2);
  CHECK(g.all_shortest_paths(0, 2).size() == 2);
  CHECK(to_string(p->label) == "ab");
}

}  // namespace gsc
