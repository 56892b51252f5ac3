#include "doctest.h"

#include "corpus.hpp"
#include "gsc/wpd.hpp"

namespace gsc {

TEST_CASE("piece dichotomy") {
  auto abc   = LabelledGraph::cycle(parse_word("abc"));
  auto split = piece_dichotomy(abc, 0, PieceTable(abc));
  CHECK_FALSE(split.has_cycle);
  CHECK(split.x != split.y);

  auto tv   = LabelledGraph::cycles({tv_relator(1), tv_relator(2)});
  auto r2   = tv.component_of(tv.vertex_by_name("c1_0"));
  auto both = piece_dichotomy(tv, r2, PieceTable(tv));
  REQUIRE(both.has_cycle);
  CHECK(both.cycle.length() == 32);

  auto r1    = LabelledGraph::cycle(tv_relator(1));
  auto alone = piece_dichotomy(r1, 0, PieceTable(r1));
  CHECK(alone.has_cycle);
}

TEST_CASE("subpaths of pieces are pieces") {
  for (auto const& item : test_corpus()) {
    PieceTable t(item.graph, 6);
    for (auto const& p : t.pieces()) {
      for (size_t i = 0; i < p.size(); ++i) {
        for (size_t j = i + 1; j <= p.size(); ++j) {
          CHECK_MESSAGE(is_piece(item.graph, subword(p, i, j)).piece,
                        item.name << " " << to_string(p));
        }
      }
    }
  }
}

TEST_CASE("WPD data for TV cycles") {
  for (auto rels : {std::vector<Word>{tv_relator(1), tv_relator(2)},
                    std::vector<Word>{tv_relator(2), tv_relator(3)}}) {
    Engine e(rels);
    auto   gamma = LabelledGraph::cycles(rels);
    for (auto mode : {WpdMode::automatic, WpdMode::grprime, WpdMode::gr7}) {
      auto d = find_wpd_data(e, gamma, mode);
      CHECK(d.component1 != d.component2);
      CHECK(d.mode != WpdMode::automatic);
      for (auto const& c : verify_wpd_data(gamma, PieceTable(gamma), d)) {
        CHECK_MESSAGE(c.ok, to_string(mode) << ": " << c.name << " " << c.detail);
      }
      // d_Y(1, g) <= 2 since g is a product of two labels read on gamma
      CHECK(arc_decomposition(gamma, e.normal_form(d.g)) <= 2u);
    }
  }
  Engine e({tv_relator(1), tv_relator(2)});
  auto   d = find_wpd_data(e, LabelledGraph::cycles({tv_relator(1), tv_relator(2)}));
  CHECK(d.mode == WpdMode::grprime);
  // the intersection of the two copies through 1 is the path b - 1 - a
  CHECK(d.core1.size() == 3);
  CHECK(d.label1.size() == 8);
  CHECK(d.label2.size() == 16);
  CHECK(to_string(d.g) == "abABabABaabbAABBaabbAABB");
}

TEST_CASE("WPD data needs two components") {
  Word   r = parse_word("abcdefg");
  Engine e({r});
  CHECK_THROWS_AS(find_wpd_data(e, LabelledGraph::cycle(r)), NoWpdData);
  CHECK_THROWS_AS(parse_wpd_mode("bogus"), std::invalid_argument);
  CHECK(parse_wpd_mode("c7") == WpdMode::c7);
}

TEST_CASE("geodesic growth in the coned-off space") {
  std::vector<Word> rels{tv_relator(1), tv_relator(2)};
  Engine            e(rels);
  auto              gamma = LabelledGraph::cycles(rels);
  auto              d     = find_wpd_data(e, gamma);
  auto              rows  = check_geodesic_growth(e, gamma, d.g, 3);
  REQUIRE(rows.size() == 4);
  for (auto const& r : rows) {
    CHECK(r.dY_dp == static_cast<size_t>(2 * r.N));
    CHECK(r.dY_bfs == 2 * r.N);
    CHECK(r.ok);
  }
  CHECK(rows[0].geodesic_length == 0);
}

TEST_CASE("WPD probe") {
  std::vector<Word> rels{tv_relator(1), tv_relator(2)};
  Engine            e(rels);
  auto              gamma = LabelledGraph::cycles(rels);
  auto              d     = find_wpd_data(e, gamma);

  auto zero = wpd_probe(e, gamma, d.g, 0, 2, 5);
  CHECK(zero.elements == std::vector<Word>{Word{}});

  auto small = wpd_probe(e, gamma, d.g, 1, 3, 6);
  auto large = wpd_probe(e, gamma, d.g, 1, 3, 8);
  CHECK(small.elements == large.elements);
  CHECK(large.ball_size > small.ball_size);
  CHECK(wpd_probe(e, gamma, d.g, 1, 3, 6, false).elements == small.elements);

  auto k2 = wpd_probe(e, gamma, d.g, 2, 3, 6);
  for (auto const& h : small.elements) {
    CHECK(std::find(k2.elements.begin(), k2.elements.end(), h) != k2.elements.end());
  }
  CHECK(k2.elements.size() >= small.elements.size());
}

}  // namespace gsc
