#include <set>  // for set

#include "doctest.h"

#include "corpus.hpp"
#include "gsc/geometry.hpp"

namespace gsc {

namespace {

std::vector<int> ab() {
  return {0, 1};
}

}  // namespace

TEST_CASE("free group balls are trees") {
  Engine free_group(std::vector<Word>{});
  for (size_t r : {0, 1, 2, 5}) {
    CayleyBall b(free_group, ab(), r);
    size_t     pow3 = 1;
    for (size_t i = 0; i < r; ++i) {
      pow3 *= 3;
    }
    CHECK(b.size() == 2 * pow3 - 1);
    CHECK(b.is_tree());
  }
  CHECK(CayleyBall(free_group, ab(), 0).size() == 1);
}

TEST_CASE("TV{2} ball of radius 8 sees no relation") {
  Engine     e({tv_relator(2)});
  CayleyBall b(e, ab(), 8);
  CHECK(b.size() == 13121);
  CHECK(b.is_tree());
  CayleyBall b1(Engine({tv_relator(1)}), ab(), 8);
  CHECK(b1.size() == 13117);
  CHECK_FALSE(b1.is_tree());
}

TEST_CASE("ball matches equality-based BFS") {
  Engine     e({tv_relator(1)});
  CayleyBall b(e, ab(), 6);
  auto       ref = equality_ball(e, 6);
  REQUIRE(b.size() == ref.size());
  std::vector<size_t> sizes;
  for (size_t r = 1; r <= 6; ++r) {
    sizes.push_back(CayleyBall(e, ab(), r).size());
  }
  CHECK(sizes == std::vector<size_t>{5, 17, 53, 161, 485, 1457});
  CHECK(b.is_tree());  // the shortest loop has length 16
  std::set<Word> ours, theirs(ref.begin(), ref.end());
  for (size_t v = 0; v < b.size(); ++v) {
    ours.insert(b.word(static_cast<int>(v)));
  }
  CHECK(ours == theirs);
}

TEST_CASE("ball structure") {
  Engine     e({tv_relator(1)});
  CayleyBall b(e, ab(), 5);
  auto       d0 = b.distances_from(0);
  for (size_t v = 0; v < b.size(); ++v) {
    int  vi = static_cast<int>(v);
    Word w  = b.word(vi);
    CHECK(b.lookup(w) == vi);
    CHECK(b.depth(vi) == w.size());
    CHECK(d0[v] == static_cast<int>(w.size()));
    if (v > 0) {
      CHECK(shortlex_less(b.word(vi - 1), w));
    }
    for (Letter x : b.letters()) {
      int u = b.neighbour(vi, x);
      if (u >= 0) {
        CHECK(b.neighbour(u, -x) == vi);
        CHECK(b.word(u) == e.normal_form(concat(w, {x})));
      } else {
        CHECK(e.length(concat(w, {x})) == 6);
      }
    }
  }
  CHECK(b.layer(0) == std::vector<int>{0});
  CHECK(b.layer(1).size() == 4);
  CHECK_THROWS_AS(CayleyBall(e, ab(), 8, 1000), BudgetExceeded);
}

TEST_CASE("copies of the relator cycle through 1") {
  Word   r1 = tv_relator(1);
  Engine e({r1});
  auto   gamma = LabelledGraph::cycle(r1);
  auto   copies = enumerate_copies(e, gamma, std::vector<Word>{Word{}});
  // r_1 has rotation symmetry of order 4, so 16 placements give 4 copies
  std::set<std::set<Word>> images;
  for (int base = 0; base < 16; ++base) {
    std::set<Word> img;
    for (size_t i = 0; i < 16; ++i) {
      img.insert(e.normal_form(subword(rotate(r1, base), 0, i)));
    }
    images.insert(img);
  }
  CHECK(images.size() == 4);
  REQUIRE(copies.size() == 4);
  std::set<std::set<Word>> ours;
  for (auto const& c : copies) {
    ours.insert(std::set<Word>(c.image.begin(), c.image.end()));
    CHECK(c.anchor.empty());
  }
  CHECK(ours == images);
}

TEST_CASE("copies embed isometrically and convexly") {
  for (auto rels : {std::vector<Word>{tv_relator(1)},
                    std::vector<Word>{tv_relator(1), tv_relator(2)}}) {
    Engine     e(rels);
    auto       gamma = LabelledGraph::cycles(rels);
    CayleyBall b(e, ab(), 2);
    auto       copies = enumerate_copies(e, gamma, b);
    CHECK(copies.size() > 0);
    for (auto const& c : copies) {
      auto rep = verify_isometric_convex(e, gamma, c);
      CHECK_MESSAGE(rep.ok, rep.violation);
    }
    size_t nonempty = 0;
    for (size_t i = 0; i < copies.size() && i < 40; ++i) {
      for (size_t j = i + 1; j < copies.size() && j < 40; ++j) {
        auto rep = verify_intersection_connected(e, copies[i], copies[j]);
        CHECK_MESSAGE(rep.ok, rep.violation);
        nonempty += rep.diameter > 0;
      }
    }
    CHECK(nonempty > 0);
  }
}

TEST_CASE("embedding checks catch bad images") {
  Word   r1 = tv_relator(1);
  Engine e({r1});
  auto   gamma = LabelledGraph::cycle(r1);
  auto   c = make_copy(e, gamma, 0, parse_word("ab"));
  CHECK(verify_isometric_convex(e, gamma, c).ok);
  auto bad     = c;
  bad.image[3] = e.normal_form(concat(bad.image[3], parse_word("aa")));
  CHECK_FALSE(verify_isometric_convex(e, gamma, bad).ok);

  ComponentCopy x, y;
  x.image = {Word{}, parse_word("ab")};
  y.image = {Word{}, parse_word("ab"), parse_word("a")};
  CHECK_FALSE(verify_intersection_connected(e, x, y).ok);
  y.image = {parse_word("b")};
  auto empty = verify_intersection_connected(e, x, y);
  CHECK(empty.ok);
  CHECK(empty.diameter == 0);
}

TEST_CASE("arc decomposition") {
  auto gamma = LabelledGraph::cycle(tv_relator(1));
  CHECK(arc_decomposition(gamma, Word{}) == 0u);
  CHECK(arc_decomposition(gamma, parse_word("abAB")) == 1u);
  CHECK(arc_decomposition(gamma, parse_word("abABabABabABabABa")) == 1u);
  CHECK(arc_decomposition(gamma, parse_word("abABB")) == 2u);
  // two b's in a row never occur on the cycle
  CHECK(arc_decomposition(gamma, parse_word("abba")) == 2u);
  // c is absent from gamma and costs one arc per letter
  CHECK(arc_decomposition(gamma, parse_word("acca")) == 4u);
  Engine e({tv_relator(1)});
  CHECK(dY_dp(e, gamma, parse_word("abba")) == 2);
  CHECK_THROWS_AS(dY_dp(e, gamma, parse_word("abABabABaba")), std::invalid_argument);
}

TEST_CASE("coned-off distances agree with arc decomposition") {
  std::vector<Word> rels{tv_relator(1)};
  Engine            e(rels);
  auto              gamma = LabelledGraph::cycles(rels);
  CayleyBall        b(e, ab(), 7);
  auto              copies = enumerate_copies(e, gamma, b);
  ConedGraph        y(e, b, copies);
  CHECK(y.size() == b.size());
  auto   d0    = y.distances_from(0);
  size_t exact = 0;
  for (size_t v = 1; v < b.size() && b.depth(static_cast<int>(v)) <= 4; ++v) {
    auto   dist = y.distance(0, static_cast<int>(v));
    size_t dp   = dY_dp(e, gamma, b.word(static_cast<int>(v)));
    CHECK(dist.value == d0[v]);
    CHECK(static_cast<size_t>(dist.value) >= dp);
    if (!dist.boundary_touched) {
      CHECK(static_cast<size_t>(dist.value) == dp);
      ++exact;
    }
  }
  CHECK(exact >= 4);
  CHECK(y.boundary(static_cast<int>(b.size() - 1)));
  // copies through 1 reach depth 8, so even 1 lies on a partial copy
  CHECK(y.boundary(0));

  // the word-region constructor builds the same graph
  std::vector<Word> region;
  for (size_t v = 0; v < b.size() && b.depth(static_cast<int>(v)) <= 3; ++v) {
    region.push_back(b.word(static_cast<int>(v)));
  }
  CayleyBall b3(e, ab(), 3);
  ConedGraph y1(e, ab(), region, copies), y2(e, b3, copies);
  REQUIRE(y1.size() == y2.size());
  CHECK(y1.num_edges() == y2.num_edges());
  for (size_t v = 0; v < y1.size(); ++v) {
    CHECK(y1.boundary(static_cast<int>(v)) == y2.boundary(static_cast<int>(v)));
  }
}

TEST_CASE("four-point defect") {
  std::vector<std::vector<int>> c4{{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}};
  CHECK(four_point_delta(c4).delta == 1.0);
  Engine free_group(std::vector<Word>{});
  auto   tree = distance_matrix(CayleyBall(free_group, ab(), 2));
  auto   t    = four_point_delta(tree);
  CHECK(t.exhaustive);
  CHECK(t.delta == 0.0);

  Engine e({tv_relator(1)});
  auto   m      = distance_matrix(CayleyBall(e, ab(), 3));
  auto   full   = four_point_delta(m, 64, 0, 0, true);
  auto   serial = four_point_delta(m, 64, 0, 0, false);
  CHECK(full.exhaustive);
  CHECK(full.delta == serial.delta);
  CHECK(full.delta == 0);  // radius 3 is still a tree
  auto sampled = four_point_delta(m, 10, 5000, 7, true);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.delta <= full.delta);
  CHECK(sampled.delta == four_point_delta(m, 10, 5000, 7, false).delta);
  CHECK_THROWS_AS(four_point_delta({{0, -1}, {-1, 0}}), std::invalid_argument);
}

TEST_CASE("non-acylindricity experiment") {
  for (int N : {1, 2, 3}) {
    for (int K : {0, 1, 2}) {
      auto rep = notacyl_experiment(N, K);
      CHECK(rep.certified);
      CHECK(rep.C == N);
      CHECK(rep.near.size() == static_cast<size_t>(N + 1));
      CHECK(rep.distinct);
      CHECK(rep.far_length == static_cast<size_t>(N * K * (N + 1)));
      CHECK(rep.far_geodesic);
      CHECK(rep.far_distance >= static_cast<size_t>(K));
      CHECK(rep.pass);
    }
  }
  CHECK(notacyl_experiment(2, 2).far_distance == 2);
  CHECK_THROWS_AS(notacyl_experiment(0, 1), std::invalid_argument);
}

}  // namespace gsc
