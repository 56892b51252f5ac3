#include <chrono>      // for steady_clock
#include <cstdio>      // for printf
#include <functional>  // for function
#include <random>      // for mt19937_64
#include <sstream>     // for ostringstream
#include <string>      // for string
#include <vector>      // for vector

#include "corpus.hpp"
#include "gsc/diagrams.hpp"
#include "gsc/divergence.hpp"
#include "gsc/geometry.hpp"
#include "gsc/presentation.hpp"
#include "gsc/smallcancel.hpp"
#include "gsc/wpd.hpp"

using namespace gsc;

namespace {

struct Outcome {
  bool        pass = false;
  std::string detail;
};

std::vector<int> ab() {
  return {0, 1};
}

bool all_of_zero(std::vector<long> const& xs) {
  for (long x : xs) {
    if (x != 0) {
      return false;
    }
  }
  return true;
}

std::vector<Word> tv(std::vector<int> const& idx) {
  std::vector<Word> rs;
  for (int i : idx) {
    rs.push_back(tv_relator(i));
  }
  return rs;
}

Outcome family_condition() {
  auto start = std::chrono::steady_clock::now();
  auto good  = check_gr_prime(LabelledGraph::cycles(tv({1, 2, 3, 4, 5, 6, 7, 8})), {1, 6});
  auto g     = LabelledGraph::cycle(parse_word("abAB"));
  auto bad   = check_gr_prime(g, {1, 6});
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool               witness = !bad.pass && witness_valid(g, bad);
  std::ostringstream s;
  s << "r1..r8 " << (good.pass ? "pass" : "fail") << ", abAB "
    << (bad.pass ? "pass" : "fail") << (witness ? " with valid witness" : "") << ", " << secs
    << " s (limit 10)";
  return {good.pass && witness && secs < 10, s.str()};
}

Outcome hierarchy() {
  size_t strong = 0, exceptions = 0;
  for (auto const& item : test_corpus()) {
    PieceTable t(item.graph);
    if (check_gr_prime(item.graph, {1, 6}, &t).pass) {
      ++strong;
      exceptions += !check_gr(item.graph, 7, &t).pass;
    }
  }
  std::ostringstream s;
  s << test_corpus().size() << " graphs, " << strong << " pass Gr'(1/6), " << exceptions
    << " fail Gr(7)";
  return {strong > 0 && exceptions == 0, s.str()};
}

Outcome word_problem() {
  auto              start = std::chrono::steady_clock::now();
  std::vector<Word> rs    = tv({1, 2});
  Engine            e(rs);
  size_t            words = 0, definite = 0, mismatches = 0, sums = 0, exhausted = 0;
  for (auto const& w : reduced_words(8, 2)) {
    ++words;
    bool trivial = e.is_trivial(w);
    // Length budget 12 lets the rewriting search close off for balanced words.
    auto o = oracle_is_trivial(rs, w, 12, 200000);
    if (o != OracleVerdict::budget_exhausted) {
      ++definite;
      mismatches += (o == OracleVerdict::trivial) != trivial;
      exhausted += o == OracleVerdict::nontrivial && all_of_zero(exponent_sums(w));
    }
    if (trivial) {
      for (long x : exponent_sums(w)) {
        sums += x != 0;
      }
    }
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream s;
  s << words << " words, " << definite << " definite oracle verdicts (" << exhausted
    << " balanced), " << mismatches << " mismatches, " << sums
    << " nonzero exponent sums on trivial words, " << secs << " s (limit 60)";
  return {definite > 0 && mismatches == 0 && sums == 0 && secs < 60, s.str()};
}

Outcome tree_ball() {
  Engine     e(tv({2}));
  CayleyBall b(e, ab(), 8);
  std::ostringstream s;
  s << b.size() << " vertices, " << b.num_edges() << " edges (expected 13121 and a tree)";
  return {b.size() == 13121 && b.is_tree(), s.str()};
}

Outcome embeddings() {
  auto   rs = tv({1, 2});
  Engine e(rs);
  auto   gamma = LabelledGraph::cycles(rs);
  std::vector<ComponentCopy> copies;
  bool                       ok = true;
  std::string                why;
  for (size_t c = 0; c < gamma.num_components(); ++c) {
    copies.push_back(make_copy(e, gamma, gamma.component_vertices(c)[0], {}));
    auto rep = verify_isometric_convex(e, gamma, copies.back());
    if (!rep.ok) {
      ok  = false;
      why = rep.violation;
    }
  }
  auto inter = verify_intersection_connected(e, copies[0], copies[1]);
  std::ostringstream s;
  s << "r1 and r2 copies at 1 isometric and convex: " << (ok ? "yes" : "no " + why)
    << "; intersection connected: " << (inter.ok ? "yes" : "no " + inter.violation)
    << " (diameter " << inter.diameter << ")";
  return {ok && inter.ok, s.str()};
}

Outcome wpd_growth() {
  auto   start = std::chrono::steady_clock::now();
  auto   rs    = tv({1, 2});
  Engine e(rs);
  auto   gamma = LabelledGraph::cycles(rs);
  auto   d     = find_wpd_data(e, gamma);
  auto   rows  = check_geodesic_growth(e, gamma, d.g, 3, true);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool               ok = true;
  std::ostringstream s;
  s << "g = " << to_string(d.g) << ":";
  for (auto const& r : rows) {
    if (r.N == 0) {
      continue;
    }
    // the region distance is an upper bound; the arc decomposition is exact
    ok = ok && r.ok && r.dY_dp == static_cast<size_t>(2 * r.N) && r.dY_bfs == 2 * r.N;
    s << " N=" << r.N << " dp " << r.dY_dp << " bfs " << r.dY_bfs
      << (r.boundary_touched ? " (region bound)" : "");
  }
  s << ", " << secs << " s (limit 300)";
  return {ok && rows.size() >= 3 && secs < 300, s.str()};
}

Outcome notacyl() {
  bool               ok = true;
  std::ostringstream s;
  for (int N : {2, 3}) {
    auto r = notacyl_experiment(N, 2);
    ok     = ok && r.pass && r.certified && r.far_geodesic && r.far_distance >= 2 &&
         r.near.size() >= static_cast<size_t>(N + 1);
    s << "N=" << N << ": " << r.near.size() << " near powers, d_Y(1, w^" << r.far_length
      << ") = " << r.far_distance << "; ";
  }
  return {ok, s.str()};
}

Outcome fences() {
  bool               ok = true;
  std::ostringstream s;
  for (auto [n, N] : {std::pair{1, 2}, std::pair{2, 4}}) {
    std::vector<int> idx;
    for (int i = 1; i <= N; ++i) {
      idx.push_back(i);
    }
    Engine          e(tv(idx));
    std::mt19937_64 rng(static_cast<unsigned>(n * 100 + N));
    size_t          fails = 0, detours = 0, longest = 0;
    for (int i = 0; i < 100; ++i) {
      auto inst = random_fence_instance(e, n, rng);
      auto f    = fence_path(e, inst.x, inst.y, inst.m, n, N);
      auto c    = verify_fence(e, f);
      fails += !(c.ok && c.avoids && c.short_enough);
      detours += !f.direct;
      longest = std::max(longest, c.length);
    }
    ok = ok && fails == 0;
    s << "(" << n << "," << N << "): " << fails << " failures, " << detours
      << " detours, longest " << longest << " <= " << fence_bound(n, N) << "; ";
  }
  return {ok, s.str()};
}

Outcome corollary() {
  auto               start = std::chrono::steady_clock::now();
  bool               ok    = true;
  std::ostringstream s;
  for (auto [n, idx] : {std::pair{1, std::vector<int>{1, 2}},
                        std::pair{2, std::vector<int>{1, 2, 4}}}) {
    auto r = corollary_check(idx, n);
    ok     = ok && r.ok;
    s << "n=" << n << ": Div = " << r.divergence.value << " <= " << r.bound << "; ";
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s << secs << " s (limit 1800)";
  return {ok && secs < 1800, s.str()};
}

Outcome curvature() {
  std::mt19937_64 rng(0);
  size_t          strebel_app = 0, strebel_bad = 0, invalid = 0;
  for (int i = 0; i < 1000; ++i) {
    auto d = random_diagram(rng, {});
    invalid += !validate(d).empty();
    auto s = curvature_strebel(suppress_degree2(d));
    if (s.applicable) {
      ++strebel_app;
      strebel_bad += !s.holds();
    }
  }
  RandomDiagramOptions opt;
  opt.min_face_length  = 6;
  opt.max_face_length  = 9;
  opt.interior_degree3 = true;
  std::mt19937_64 rng2(1);
  size_t          lyndon_app = 0, lyndon_bad = 0;
  for (int i = 0; i < 500; ++i) {
    auto d = random_diagram(rng2, opt);
    invalid += !validate(d).empty();
    auto l = curvature_lyndon(d);
    if (l.applicable) {
      ++lyndon_app;
      lyndon_bad += !l.holds();
    }
  }
  std::ostringstream s;
  s << "Strebel " << strebel_app << "/1000 applicable, " << strebel_bad << " violations; Lyndon "
    << lyndon_app << "/500 (3,6)-diagrams, " << lyndon_bad << " violations; " << invalid
    << " invalid";
  return {invalid == 0 && strebel_bad == 0 && lyndon_bad == 0 && strebel_app > 0 &&
              lyndon_app > 0,
          s.str()};
}

Outcome gr_oracle() {
  size_t graphs = 0, mismatches = 0;
  for (auto const& item : test_corpus()) {
    if (item.graph.num_edges() > 12) {
      continue;
    }
    ++graphs;
    bool brute = !gr_bruteforce(item.graph, 7, 24).has_value();
    mismatches += check_gr(item.graph, 7).pass != brute;
  }
  std::ostringstream s;
  s << graphs << " graphs with <= 12 edges, " << mismatches << " mismatches";
  return {graphs > 0 && mismatches == 0, s.str()};
}

Outcome overlap() {
  Engine     e(tv({3}));
  CayleyBall b(e, ab(), 12);
  auto       arcs = relator_arcs(b, tv_relator(3), 10);
  auto       rep  = overlap_check(b, arcs, 2, 10);
  std::ostringstream s;
  s << rep.arcs << " arcs, " << rep.components << " component(s), " << rep.uncovered << " of "
    << rep.core_edges << " core edges uncovered";
  return {rep.ok(), s.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C'(1/6) family verification", family_condition},
      {"Gr'(1/6) implies Gr(7) on the corpus", hierarchy},
      {"word problem agrees with rewriting oracle", word_problem},
      {"ball(8) of TV{2} is a tree of 13121 vertices", tree_ball},
      {"copies embed isometrically and convexly", embeddings},
      {"WPD element grows by 2 per power in Y", wpd_growth},
      {"non-acylindricity experiment", notacyl},
      {"fence paths avoid the ball within the bound", fences},
      {"divergence within 40n^2+64n+2", corollary},
      {"curvature identities on random diagrams", curvature},
      {"simple closed paths decide Gr(7)", gr_oracle},
      {"overlap graph connected and covering", overlap},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
