#include "doctest.h"

#include <algorithm>  // for count_if, find
#include <sstream>    // for istringstream

#include "gsc/diagrams.hpp"
#include "gsc/presentation.hpp"
#include "gsc/smallcancel.hpp"

namespace gsc {

namespace {

Diagram fixture(std::string const& name) {
  return Diagram::parse_file(std::string(GSC_FIXTURES) + "/" + name);
}

// One face whose boundary reads w, one letter per edge.
Diagram polygon(Word const& w) {
  Diagram           d;
  std::vector<Dart> cyc;
  int               first = d.add_vertex();
  int               cur   = first;
  for (size_t i = 0; i < w.size(); ++i) {
    int nxt = i + 1 == w.size() ? first : d.add_vertex();
    cyc.push_back({d.add_edge(cur, nxt, Word{w[i]}), false});
    cur = nxt;
  }
  d.add_face(cyc);
  d.set_boundary(cyc);
  return d;
}

bool conjugate(Word const& u, Word const& v) {
  auto all = cyclic_conjugates(v);
  return std::find(all.begin(), all.end(), u) != all.end();
}

Diagram parse_text(std::string const& text) {
  std::istringstream in(text);
  return Diagram::parse(in);
}

}  // namespace

TEST_CASE("diagram parsing and validation") {
  auto theta = fixture("theta.dgm");
  CHECK(validate(theta).empty());
  CHECK(theta.num_vertices() == 2);
  CHECK(theta.num_faces() == 2);
  CHECK(to_string(theta.boundary_word()) == "aC");
  CHECK(validate(parse_text(theta.str())).empty());
  CHECK(parse_text(theta.str()).str() == theta.str());

  auto single = polygon(tv_relator(1));
  CHECK(validate(single).empty());
  CHECK(single.boundary_word() == tv_relator(1));

  // face list inconsistent with the edges
  auto broken = parse_text("edge u p q a\nedge w p q b\nface f u w\nboundary u -w\n");
  CHECK_FALSE(validate(broken).empty());
  auto twice = parse_text("edge u p q a\nedge w p q b\nface f u -w\nface g u -w\nboundary u -w\n");
  CHECK_FALSE(validate(twice).empty());

  CHECK_THROWS_AS(parse_text("edge u p q a\nface f u x\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_text("vertex p\nbogus\n"), "line 2: unknown statement 'bogus'",
                       ParseError);
  CHECK_THROWS_AS(Diagram::parse_file("/nonexistent.dgm"), ParseError);
}

TEST_CASE("face statistics and arcs") {
  auto single = face_stats(polygon(tv_relator(1)));
  REQUIRE(single.size() == 1);
  CHECK(single[0].exterior == 1);
  CHECK(single[0].interior == 0);
  CHECK(single[0].length == 16);

  auto theta = fixture("theta.dgm");
  for (auto const& s : face_stats(theta)) {
    CHECK(s.exterior == 1);
    CHECK(s.interior == 1);
  }
  auto theta_arcs = arcs(theta);
  CHECK(theta_arcs.size() == 3);
  CHECK(std::count_if(theta_arcs.begin(), theta_arcs.end(),
                      [](Arc const& a) { return a.exterior; })
        == 2);

  auto chain = fixture("shape_i1.dgm");
  REQUIRE(validate(chain).empty());
  auto stats = face_stats(chain);
  REQUIRE(stats.size() == 4);
  for (size_t f : {0, 3}) {
    CHECK(stats[f].exterior == 1);
    CHECK(stats[f].interior == 1);
  }
  for (size_t f : {1, 2}) {
    CHECK(stats[f].exterior == 2);
    CHECK(stats[f].interior == 2);
  }
  // boundary length is the total length of the exterior arcs
  size_t ext = 0;
  for (auto const& a : arcs(chain)) {
    if (a.exterior) {
      ext += chain.word(a.darts).size();
    }
    CHECK(!a.faces.empty());
  }
  CHECK(ext == chain.boundary_word().size());
}

TEST_CASE("gamma-reducedness") {
  Word r1 = tv_relator(1), r2 = tv_relator(2);
  auto gamma = LabelledGraph::cycles({r1, r2});

  CHECK(check_gamma_reduced(polygon(r1), gamma).ok);

  // mirror pair: r1 and r1^-1 glued along all but the last letter
  Diagram m;
  int     p = m.add_vertex("p"), q = m.add_vertex("q");
  int     shared = m.add_edge(p, q, subword(r1, 0, 15), "E");
  int     s1     = m.add_edge(q, p, subword(r1, 15, 16), "s1");
  int     s2     = m.add_edge(q, p, subword(r1, 15, 16), "s2");
  m.add_face({{shared, false}, {s1, false}});
  m.add_face({{shared, true}, {s2, true}});
  m.set_boundary({{s1, false}, {s2, true}});
  REQUIRE(validate(m).empty());
  auto mirror = check_gamma_reduced(m, gamma);
  CHECK_FALSE(mirror.ok);
  CHECK(mirror.edge == shared);
  CHECK(mirror.error.empty());

  // r1 and r2 glued along "ab"
  Word    rest2 = parse_word("AbbaaBBAAbbaaBBAAbbaaBBAAbbaaB");
  Diagram g;
  p          = g.add_vertex("p");
  q          = g.add_vertex("q");
  int ab     = g.add_edge(p, q, parse_word("ab"), "E");
  int path1  = g.add_edge(q, p, subword(r1, 2, 16), "P1");
  int path2  = g.add_edge(p, q, rest2, "P2");
  g.add_face({{ab, false}, {path1, false}});
  g.add_face({{ab, true}, {path2, false}});
  g.set_boundary({{path1, false}, {path2, false}});
  REQUIRE(validate(g).empty());
  auto glued = check_gamma_reduced(g, gamma);
  CHECK_MESSAGE(glued.ok, glued.error << glued.detail);
  // interior arcs of a reduced diagram are pieces
  for (auto const& a : arcs(g)) {
    if (!a.exterior) {
      CHECK(is_piece(gamma, g.word(a.darts)).piece);
    }
  }

  auto theta = fixture("theta.dgm");
  CHECK_FALSE(check_gamma_reduced(theta, gamma).error.empty());
}

TEST_CASE("(3,7)-n-gons and bigons") {
  auto single = polygon(tv_relator(1));
  auto one    = check_37_ngon(single, {0});
  CHECK_FALSE(one.ok);
  CHECK(one.face == 0);
  // splitting the boundary makes the face distinguished
  auto two = check_37_ngon(single, {0, 8});
  CHECK(two.ok);
  CHECK(two.distinguished == std::vector<int>{0});
  CHECK(classify_bigon(single, {0, 8}).shape == BigonShape::single_face);

  auto theta = fixture("theta.dgm");
  auto t     = check_37_ngon(theta, {0, 1});
  CHECK_FALSE(t.ok);
  auto tb = classify_bigon(theta, {0, 1});
  CHECK(tb.shape == BigonShape::other);
  CHECK(tb.reason.find("(3,7)") != std::string::npos);

  auto chain = fixture("shape_i1.dgm");
  auto c     = check_37_ngon(chain, chain.sides());
  CHECK_MESSAGE(c.ok, c.violation);
  CHECK(c.distinguished == std::vector<int>{0, 3});
  auto cb = classify_bigon(chain, chain.sides());
  CHECK_MESSAGE(cb.shape == BigonShape::shape_i1, cb.reason);
  CHECK(to_string(cb.shape) == "shape I1");
}

TEST_CASE("degree-2 suppression") {
  auto single = suppress_degree2(polygon(tv_relator(1)));
  CHECK(validate(single).empty());
  CHECK(single.num_vertices() == 1);
  CHECK(single.num_edges() == 1);
  CHECK(conjugate(single.boundary_word(), tv_relator(1)));
  auto s = curvature_strebel(single);
  CHECK_FALSE(s.applicable);

  auto chain = fixture("shape_i1.dgm");
  auto lean  = suppress_degree2(chain);
  CHECK(validate(lean).empty());
  CHECK(lean.num_vertices() == 6);
  CHECK(conjugate(lean.boundary_word(), chain.boundary_word()));
  for (size_t f = 0; f < chain.num_faces(); ++f) {
    CHECK(conjugate(lean.face_word(static_cast<int>(f)), chain.face_word(static_cast<int>(f))));
  }
  auto st = curvature_strebel(lean);
  CHECK(st.holds());
  CHECK(st.vertex_term == 0);
  CHECK(st.face_term == 6);
}

TEST_CASE("Strebel curvature identity") {
  auto theta = curvature_strebel(fixture("theta.dgm"));
  CHECK(theta.holds());
  CHECK(theta.vertex_term == 0);
  CHECK(theta.face_term == 6);

  std::mt19937_64 rng(0);
  int             applicable = 0;
  for (int i = 0; i < 1000; ++i) {
    auto d = random_diagram(rng, {});
    REQUIRE(validate(d).empty());
    auto lean = suppress_degree2(d);
    REQUIRE(validate(lean).empty());
    CHECK(conjugate(lean.boundary_word(), d.boundary_word()));
    auto s = curvature_strebel(lean);
    if (s.applicable) {
      ++applicable;
      CHECK_MESSAGE(s.holds(), d.str());
    }
  }
  CHECK(applicable > 500);
}

TEST_CASE("Lyndon curvature inequality") {
  auto hexagon = curvature_lyndon(polygon(parse_word("abcabc")));
  CHECK(hexagon.holds());
  CHECK(hexagon.twice_sum == 6);

  auto two = parse_text(
      "edge s p q a\n"
      "edge x1 q x2 b\nedge x2 x2 x3 b\nedge x3 x3 x4 b\nedge x4 x4 x5 b\nedge x5 x5 p b\n"
      "edge y1 p y2 c\nedge y2 y2 y3 c\nedge y3 y3 y4 c\nedge y4 y4 y5 c\nedge y5 y5 q c\n"
      "face f s x1 x2 x3 x4 x5\nface g y1 y2 y3 y4 y5 -s\n"
      "boundary y1 y2 y3 y4 y5 x1 x2 x3 x4 x5\n");
  REQUIRE(validate(two).empty());
  auto l = curvature_lyndon(two);
  CHECK(l.holds());
  CHECK(l.twice_sum == 6);

  CHECK_FALSE(curvature_lyndon(polygon(parse_word("abcab"))).applicable);

  std::mt19937_64      rng(1);
  RandomDiagramOptions opt;
  opt.min_face_length  = 6;
  opt.max_face_length  = 9;
  opt.interior_degree3 = true;
  int applicable       = 0;
  for (int i = 0; i < 500; ++i) {
    auto d = random_diagram(rng, opt);
    REQUIRE(validate(d).empty());
    auto r = curvature_lyndon(d);
    if (r.applicable) {
      ++applicable;
      CHECK_MESSAGE(r.holds(), d.str());
    }
  }
  CHECK(applicable > 250);
}

}  // namespace gsc
