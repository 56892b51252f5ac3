#include <algorithm>  // for all_of, min
#include <fstream>    // for ofstream
#include <iostream>   // for cout, cerr
#include <random>     // for mt19937_64
#include <sstream>    // for ostringstream
#include <string>     // for string
#include <vector>     // for vector

#include "CLI11.hpp"
#include "json.hpp"

#include "gsc/diagrams.hpp"
#include "gsc/divergence.hpp"
#include "gsc/engine.hpp"
#include "gsc/geometry.hpp"
#include "gsc/presentation.hpp"
#include "gsc/smallcancel.hpp"
#include "gsc/wpd.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace gsc;

// Bad input that is not a parse error, e.g. a missing option combination.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string>              header;
  std::vector<std::vector<std::string>> rows;
};

struct Result {
  json  report;
  Table table;
  bool  pass = true;
};

std::string str(Word const& w) {
  return w.empty() ? "1" : to_string(w);
}

json words(std::vector<Word> const& ws) {
  json j = json::array();
  for (auto const& w : ws) {
    j.push_back(str(w));
  }
  return j;
}

std::string cell(json const& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string csv_escape(std::string const& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') {
      out += '"';
    }
  }
  return out + "\"";
}

void write_output(Result const& r, std::string const& path, std::string format) {
  if (format.empty()) {
    format = path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? "csv" : "json";
  }
  std::ofstream out(path);
  if (!out) {
    throw UsageError("cannot write " + path);
  }
  if (format == "json") {
    out << r.report.dump(2) << "\n";
    return;
  }
  if (!r.table.header.empty()) {
    for (size_t i = 0; i < r.table.header.size(); ++i) {
      out << (i ? "," : "") << csv_escape(r.table.header[i]);
    }
    out << "\n";
    for (auto const& row : r.table.rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << csv_escape(row[i]);
      }
      out << "\n";
    }
    return;
  }
  out << "key,value\n";
  for (auto const& [k, v] : r.report.items()) {
    if (!v.is_structured()) {
      out << csv_escape(k) << "," << csv_escape(cell(v)) << "\n";
    }
  }
}

////////////////////////////////////////////////////////////////////////////
// Inputs
////////////////////////////////////////////////////////////////////////////

struct Input {
  std::vector<std::string> family;  // kind, indices
  std::string              presentation;
  std::string              graph;
  std::vector<std::string> relators;

  bool given() const {
    return !family.empty() || !presentation.empty() || !graph.empty() || !relators.empty();
  }
};

void add_input(CLI::App* cmd, Input& in, bool graphs) {
  cmd->add_option("--family", in.family, "Relator family and indices, e.g. tv4 1,2,3")
      ->expected(2);
  cmd->add_option("--presentation", in.presentation, "Presentation file");
  cmd->add_option("--relator", in.relators, "Explicit relator (repeatable)");
  if (graphs) {
    cmd->add_option("--graph", in.graph, "Labelled graph file");
  }
}

Presentation load_presentation(Input const& in) {
  if (!in.graph.empty()) {
    throw UsageError("this command takes a presentation, not a graph");
  }
  if (!in.family.empty()) {
    return Presentation::from_family(in.family[0], in.family[1]);
  }
  if (!in.presentation.empty()) {
    return Presentation::parse_file(in.presentation);
  }
  if (!in.relators.empty()) {
    std::vector<Word> rs;
    for (auto const& r : in.relators) {
      rs.push_back(parse_word(r));
    }
    return Presentation::from_relators(rs);
  }
  throw UsageError("no input: use --family, --presentation or --relator");
}

json describe_input(Input const& in) {
  json j;
  if (!in.family.empty()) {
    j["family"] = in.family[0];
    j["indices"] = in.family[1];
  } else if (!in.presentation.empty()) {
    j["presentation"] = in.presentation;
  } else if (!in.graph.empty()) {
    j["graph"] = in.graph;
  } else {
    j["relators"] = in.relators;
  }
  return j;
}

// Finite presentations use every relator; infinite families are cut to the
// relators that can act on words of length <= word_len.
Engine make_engine(Presentation const& p, size_t word_len) {
  return Engine::for_presentation(p, p.finite() ? 0 : word_len);
}

json certification(Engine const& e, size_t truncation, bool finite) {
  json j;
  j["condition"] = e.certificate().condition;
  j["pass"]      = e.certificate().pass;
  j["relators"]  = e.relators().size();
  json lengths   = json::array();
  for (auto const& r : e.relators()) {
    lengths.push_back(r.size());
  }
  j["relator_lengths"] = lengths;
  if (finite) {
    j["truncation"] = "none";
  } else {
    j["truncation"] = "relators shorter than " + std::to_string(2 * truncation);
  }
  return j;
}

std::vector<int> generators(Presentation const& p, Engine const& e) {
  return p.generators().empty() ? e.alphabet() : p.generators();
}

////////////////////////////////////////////////////////////////////////////
// verify, pieces
////////////////////////////////////////////////////////////////////////////

struct VerifyArgs {
  Input       in;
  std::string condition;
};

Result run_verify(VerifyArgs const& a) {
  auto colon = a.condition.find(':');
  if (colon == std::string::npos) {
    throw UsageError("condition must look like gr:7, c:7, grprime:1/6 or cprime:1/6");
  }
  std::string kind  = a.condition.substr(0, colon);
  std::string param = a.condition.substr(colon + 1);

  LabelledGraph g;
  bool          classical = a.in.graph.empty();
  if (classical) {
    g = Presentation::cycles_graph(load_presentation(a.in).relators());
  } else {
    g = LabelledGraph::parse_file(a.in.graph);
  }

  Verdict v;
  if (kind == "gr" || kind == "c") {
    int n = 0;
    try {
      n = std::stoi(param);
    } catch (std::exception const&) {
      throw ParseError("bad condition parameter '" + param + "'");
    }
    if (n < 1) {
      throw UsageError("n must be positive");
    }
    // A classical C(n) is Gr(n) on the relator cycles: rotations of a
    // relator are not counted as symmetries.
    v = kind == "c" && !classical ? check_c(g, n) : check_gr(g, n);
  } else if (kind == "grprime" || kind == "cprime") {
    Rational lambda = Rational::parse(param);
    if (lambda.num <= 0 || lambda.num >= lambda.den) {
      throw UsageError("lambda must lie in (0,1)");
    }
    v = kind == "cprime" && !classical ? check_c_prime(g, lambda) : check_gr_prime(g, lambda);
  } else {
    throw UsageError("unknown condition '" + kind + "'");
  }

  Result r;
  r.report["command"] = "verify";
  r.report["input"]   = describe_input(a.in);
  json chain;
  chain["requested"] = a.condition;
  chain["checked"]   = v.condition;
  chain["reading"]   = classical ? "classical (disjoint relator cycles)" : "graphical";
  r.report["certification"] = chain;
  r.report["vertices"]      = g.num_vertices();
  r.report["edges"]         = g.num_edges();
  r.report["verdict"]       = json::parse(v.to_json(g.alphabet()));
  r.pass                    = v.pass;
  if (!v.pass) {
    json w                   = r.report["verdict"]["witness"];
    w["revalidated"]         = witness_valid(g, v);
    r.report["witness"]      = w;
  }
  std::cout << a.condition << ": " << (v.pass ? "pass" : "fail") << " (" << v.condition << ", "
            << v.cycles_checked << " cycles)\n";
  if (!v.pass && !v.note.empty()) {
    std::cout << "  " << v.note << "\n";
  }
  return r;
}

struct PiecesArgs {
  Input  in;
  size_t max_length = 0;
  size_t show       = 20;
};

Result run_pieces(PiecesArgs const& a) {
  LabelledGraph g = a.in.graph.empty()
                        ? Presentation::cycles_graph(load_presentation(a.in).relators())
                        : LabelledGraph::parse_file(a.in.graph);
  PieceTable t(g, a.max_length);
  auto       ps = t.pieces();
  Result     r;
  r.report["command"]    = "pieces";
  r.report["input"]      = describe_input(a.in);
  r.report["count"]      = ps.size();
  r.report["max_length"] = t.max_length();
  r.report["length_cap"] = t.length_cap();
  r.table.header         = {"piece", "length"};
  for (auto const& p : ps) {
    r.table.rows.push_back({to_string(p, g.alphabet()), std::to_string(p.size())});
  }
  std::cout << ps.size() << " pieces, longest " << t.max_length() << "\n";
  for (size_t i = 0; i < ps.size() && i < a.show; ++i) {
    std::cout << "  " << to_string(ps[i], g.alphabet()) << "\n";
  }
  if (ps.size() > a.show) {
    std::cout << "  ... (" << ps.size() - a.show << " more)\n";
  }
  return r;
}

////////////////////////////////////////////////////////////////////////////
// solve, ball, cone, dY
////////////////////////////////////////////////////////////////////////////

struct SolveArgs {
  Input       in;
  std::string word;
  size_t      oracle_length = 0;
  size_t      oracle_steps  = 1000000;
};

Result run_solve(SolveArgs const& a) {
  Presentation p = load_presentation(a.in);
  Word         w = parse_word(a.word);
  size_t       L = std::max<size_t>(w.size(), 1);
  Engine       e = make_engine(p, L);
  bool         trivial = e.is_trivial(w);
  Word         nf      = e.normal_form(w);

  Result r;
  r.report["command"]       = "solve";
  r.report["input"]         = describe_input(a.in);
  r.report["certification"] = certification(e, L, p.finite());
  r.report["word"]          = a.word;
  r.report["verdict"]       = trivial ? "trivial" : "nontrivial";
  r.report["normal_form"]   = str(nf);
  r.report["length"]        = nf.size();
  json sums                 = json::array();
  for (long s : exponent_sums(w)) {
    sums.push_back(s);
  }
  r.report["exponent_sums"] = sums;
  std::cout << (trivial ? "trivial" : "nontrivial") << "\n";
  std::cout << "normal form " << str(nf) << " (length " << nf.size() << ")\n";
  if (a.oracle_length > 0) {
    auto o                 = oracle_is_trivial(e.relators(), w, a.oracle_length, a.oracle_steps);
    r.report["oracle"]     = to_string(o);
    bool agrees = o == OracleVerdict::budget_exhausted ||
                  (o == OracleVerdict::trivial) == trivial;
    r.report["oracle_agrees"] = agrees;
    std::cout << "oracle: " << to_string(o) << (agrees ? "" : " (disagrees)") << "\n";
    if (!agrees) {
      r.pass = false;
      json wj;
      wj["word"]   = a.word;
      wj["engine"] = trivial ? "trivial" : "nontrivial";
      wj["oracle"] = to_string(o);
      r.report["witness"] = wj;
    }
  }
  return r;
}

struct BallArgs {
  Input  in;
  size_t radius = 0;
  size_t cap    = 50000000;
};

Result run_ball(BallArgs const& a) {
  Presentation p = load_presentation(a.in);
  size_t       L = 2 * a.radius + 2;
  Engine       e = make_engine(p, L);
  CayleyBall   ball(e, generators(p, e), a.radius, a.cap);

  Result r;
  r.report["command"]       = "ball";
  r.report["input"]         = describe_input(a.in);
  r.report["certification"] = certification(e, L, p.finite());
  r.report["radius"]        = a.radius;
  r.report["vertices"]      = ball.size();
  r.report["edges"]         = ball.num_edges();
  r.report["tree"]          = ball.is_tree();
  json layers               = json::array();
  r.table.header            = {"depth", "vertices"};
  for (size_t d = 0; d <= a.radius; ++d) {
    size_t n = ball.layer(d).size();
    layers.push_back(n);
    r.table.rows.push_back({std::to_string(d), std::to_string(n)});
  }
  r.report["layers"] = layers;
  std::cout << "ball of radius " << a.radius << ": " << ball.size() << " vertices, "
            << ball.num_edges() << " edges" << (ball.is_tree() ? ", a tree" : "") << "\n";
  return r;
}

struct ConeArgs {
  Input    in;
  size_t   radius        = 0;
  bool     delta         = false;
  size_t   exhaustive    = 64;
  size_t   samples       = 200000;
  unsigned seed          = 0;
  size_t   matrix_limit  = 20000;
};

Result run_cone(ConeArgs const& a) {
  Presentation p = load_presentation(a.in);
  size_t       L = 2 * a.radius + 2;
  Engine       e = make_engine(p, L);
  CayleyBall   ball(e, generators(p, e), a.radius);
  auto         gamma  = Presentation::cycles_graph(e.relators());
  auto         copies = enumerate_copies(e, gamma, ball);
  ConedGraph   y(e, ball, copies);

  Result r;
  r.report["command"]       = "cone";
  r.report["input"]         = describe_input(a.in);
  r.report["certification"] = certification(e, L, p.finite());
  r.report["radius"]        = a.radius;
  r.report["vertices"]      = y.size();
  r.report["edges"]         = y.num_edges();
  r.report["copies"]        = copies.size();
  std::cout << "coned ball of radius " << a.radius << ": " << y.size() << " vertices, "
            << y.num_edges() << " edges, " << copies.size() << " relator copies\n";
  if (a.delta) {
    if (y.size() > a.matrix_limit) {
      throw BudgetExceeded("distance matrix on " + std::to_string(y.size()) +
                           " vertices exceeds --matrix-limit");
    }
    auto d        = four_point_delta(distance_matrix(y), a.exhaustive, a.samples, a.seed);
    json dj;
    dj["delta"]      = d.delta;
    dj["exhaustive"] = d.exhaustive;
    dj["samples"]    = d.samples;
    dj["seed"]       = a.seed;
    r.report["four_point"] = dj;
    std::cout << "four-point delta " << d.delta
              << (d.exhaustive ? " (exhaustive)" : " (sampled, lower bound)") << "\n";
  }
  return r;
}

struct DYArgs {
  Input       in;
  std::string word;
};

Result run_dy(DYArgs const& a) {
  Presentation p  = load_presentation(a.in);
  Word         w  = parse_word(a.word);
  size_t       L  = std::max<size_t>(w.size(), 1);
  Engine       e  = make_engine(p, 2 * L);
  auto         gamma = Presentation::cycles_graph(e.relators());
  Word         nf = e.normal_form(w);
  size_t       dy = dY_dp(e, gamma, nf);

  Result r;
  r.report["command"]       = "dY";
  r.report["input"]         = describe_input(a.in);
  r.report["certification"] = certification(e, 2 * L, p.finite());
  r.report["word"]          = a.word;
  r.report["normal_form"]   = str(nf);
  r.report["word_length"]   = nf.size();
  r.report["dY"]            = dy;
  std::cout << "d_Y(1, " << a.word << ") = " << dy << " (word length " << nf.size() << ")\n";
  return r;
}

////////////////////////////////////////////////////////////////////////////
// wpd
////////////////////////////////////////////////////////////////////////////

struct WpdArgs {
  Input       in;
  std::string mode    = "auto";
  int         growth  = 3;
  bool        no_bfs  = false;
  int         probe_K = -1;
  int         probe_N = 2;
  size_t      probe_radius = 6;
};

Result run_wpd(WpdArgs const& a) {
  Presentation p = load_presentation(a.in);
  if (!p.finite()) {
    throw UsageError("wpd needs a finite presentation");
  }
  Engine     e(p.relators());
  auto       gamma = Presentation::cycles_graph(e.relators());
  PieceTable t(gamma);

  Result r;
  r.report["command"]       = "wpd";
  r.report["input"]         = describe_input(a.in);
  r.report["certification"] = certification(e, 0, true);
  WpdData d;
  try {
    d = find_wpd_data(e, gamma, parse_wpd_mode(a.mode));
  } catch (NoWpdData const& ex) {
    r.pass              = false;
    r.report["witness"] = json{{"reason", ex.what()}};
    std::cout << "no WPD data: " << ex.what() << "\n";
    return r;
  }
  json dj;
  dj["mode"]   = to_string(d.mode);
  dj["label1"] = str(d.label1);
  dj["label2"] = str(d.label2);
  dj["g"]      = str(d.g);
  r.report["data"] = dj;
  std::cout << "g = " << str(d.g) << " (" << to_string(d.mode) << ")\n";

  json clauses = json::array();
  json failed  = json::array();
  for (auto const& c : verify_wpd_data(gamma, t, d)) {
    clauses.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    if (!c.ok) {
      failed.push_back(c.name);
    }
    std::cout << "  " << c.name << ": " << (c.ok ? "ok" : "FAIL") << "\n";
  }
  r.report["clauses"] = clauses;

  json growth    = json::array();
  r.table.header = {"N", "geodesic_length", "dY_dp", "dY_bfs", "boundary_touched", "ok"};
  if (a.growth > 0) {
    for (auto const& row : check_geodesic_growth(e, gamma, d.g, a.growth, !a.no_bfs)) {
      growth.push_back({{"N", row.N},
                        {"geodesic_length", row.geodesic_length},
                        {"dY_dp", row.dY_dp},
                        {"dY_bfs", row.dY_bfs},
                        {"boundary_touched", row.boundary_touched},
                        {"ok", row.ok}});
      r.table.rows.push_back({std::to_string(row.N), std::to_string(row.geodesic_length),
                              std::to_string(row.dY_dp), std::to_string(row.dY_bfs),
                              row.boundary_touched ? "1" : "0", row.ok ? "1" : "0"});
      if (!row.ok) {
        failed.push_back("growth N=" + std::to_string(row.N));
      }
      std::cout << "  N=" << row.N << ": |g^N| = " << row.geodesic_length
                << ", d_Y = " << row.dY_dp;
      if (row.dY_bfs >= 0) {
        std::cout << " (bfs " << row.dY_bfs << ")";
      }
      std::cout << (row.ok ? "" : "  FAIL") << "\n";
    }
  }
  r.report["growth"] = growth;

  if (a.probe_K >= 0) {
    auto pr = wpd_probe(e, gamma, d.g, a.probe_K, a.probe_N, a.probe_radius);
    r.report["probe"] = {{"K", pr.K},
                         {"N", pr.N},
                         {"radius", pr.radius},
                         {"ball_size", pr.ball_size},
                         {"elements", words(pr.elements)},
                         {"longest", pr.longest}};
    std::cout << "probe K=" << pr.K << " N=" << pr.N << " radius " << pr.radius << ": "
              << pr.elements.size() << " elements, longest " << pr.longest << "\n";
  }
  if (!failed.empty()) {
    r.pass              = false;
    r.report["witness"] = json{{"failed", failed}, {"g", str(d.g)}};
  }
  return r;
}

////////////////////////////////////////////////////////////////////////////
// diagram
////////////////////////////////////////////////////////////////////////////

struct DiagramCheckArgs {
  std::string         file;
  std::string         curvature = "none";
  std::string         gamma;
  std::vector<size_t> sides;
  bool                suppress = false;
};

json strebel_json(StrebelReport const& s) {
  json j;
  j["applicable"] = s.applicable;
  if (!s.applicable) {
    j["reason"] = s.violation;
  } else {
    j["lhs"]         = s.lhs;
    j["vertex_term"] = s.vertex_term;
    j["face_term"]   = s.face_term;
    j["holds"]       = s.holds();
  }
  return j;
}

json lyndon_json(LyndonReport const& s) {
  json j;
  j["applicable"] = s.applicable;
  if (!s.applicable) {
    j["reason"] = s.violation;
  } else {
    j["twice_sum"] = s.twice_sum;
    j["holds"]     = s.holds();
  }
  return j;
}

Result run_diagram_check(DiagramCheckArgs const& a) {
  Diagram d = Diagram::parse_file(a.file);
  Result  r;
  r.report["command"] = "diagram check";
  r.report["file"]    = a.file;
  auto defects        = validate(d);
  if (!defects.empty()) {
    r.pass              = false;
    r.report["valid"]   = false;
    r.report["witness"] = json{{"defects", defects}};
    std::cout << "invalid diagram:\n";
    for (auto const& s : defects) {
      std::cout << "  " << s << "\n";
    }
    return r;
  }
  if (a.suppress) {
    d = suppress_degree2(d);
  }
  r.report["valid"]         = true;
  r.report["vertices"]      = d.num_vertices();
  r.report["edges"]         = d.num_edges();
  r.report["faces"]         = d.num_faces();
  r.report["boundary_word"] = str(d.boundary_word());
  r.report["arcs"]          = arcs(d).size();
  r.table.header            = {"face", "length", "exterior", "interior"};
  for (auto const& s : face_stats(d)) {
    r.table.rows.push_back({d.face_name(s.face), std::to_string(s.length),
                            std::to_string(s.exterior), std::to_string(s.interior)});
  }
  std::cout << "valid diagram: V=" << d.num_vertices() << " E=" << d.num_edges()
            << " F=" << d.num_faces() << ", boundary " << str(d.boundary_word()) << "\n";

  if (a.curvature == "strebel") {
    auto s                = curvature_strebel(d);
    r.report["curvature"] = strebel_json(s);
    if (!s.applicable) {
      std::cout << "Strebel identity not applicable: " << s.violation << "\n";
    } else {
      std::cout << "Strebel identity: " << s.lhs << " = " << s.vertex_term << " + "
                << s.face_term << (s.holds() ? "" : "  FAILS") << "\n";
      if (!s.holds()) {
        r.pass              = false;
        r.report["witness"] = r.report["curvature"];
      }
    }
  } else if (a.curvature == "lyndon") {
    auto s                = curvature_lyndon(d);
    r.report["curvature"] = lyndon_json(s);
    if (!s.applicable) {
      std::cout << "Lyndon inequality not applicable: " << s.violation << "\n";
    } else {
      std::cout << "Lyndon inequality: 2 * sum = " << s.twice_sum << " >= 6"
                << (s.holds() ? "" : "  FAILS") << "\n";
      if (!s.holds()) {
        r.pass              = false;
        r.report["witness"] = r.report["curvature"];
      }
    }
  } else if (a.curvature != "none") {
    throw UsageError("--curvature must be strebel, lyndon or none");
  }

  if (!a.gamma.empty()) {
    auto g  = LabelledGraph::parse_file(a.gamma);
    auto rr = check_gamma_reduced(d, g);
    json j;
    j["ok"] = rr.ok;
    if (!rr.error.empty()) {
      j["error"] = rr.error;
    }
    if (rr.edge >= 0) {
      j["edge"]   = d.edge_name(rr.edge);
      j["faces"]  = {d.face_name(rr.face1), d.face_name(rr.face2)};
      j["detail"] = rr.detail;
    }
    r.report["gamma_reduced"] = j;
    std::cout << "gamma-reduced: " << (rr.ok ? "yes" : "no")
              << (rr.ok ? "" : " (" + (rr.error.empty() ? rr.detail : rr.error) + ")") << "\n";
    if (!rr.ok) {
      r.pass              = false;
      r.report["witness"] = j;
    }
  }

  auto cuts = a.sides.empty() ? d.sides() : a.sides;
  if (!cuts.empty()) {
    auto ng = check_37_ngon(d, cuts);
    auto bg = classify_bigon(d, cuts);
    json j;
    j["cuts"]  = cuts;
    j["ok"]    = ng.ok;
    if (!ng.ok) {
      j["violation"] = ng.violation;
      j["face"]      = ng.face;
    }
    j["distinguished"] = ng.distinguished;
    r.report["ngon"]   = j;
    if (cuts.size() == 2) {
      r.report["bigon"] = {{"shape", to_string(bg.shape)}, {"reason", bg.reason}};
    }
    std::cout << "(3,7)-" << cuts.size() << "-gon: " << (ng.ok ? "yes" : "no: " + ng.violation)
              << "\n";
    if (cuts.size() == 2) {
      std::cout << "bigon shape: " << to_string(bg.shape) << "\n";
    }
  }
  return r;
}

struct DiagramRandomArgs {
  size_t   count = 100;
  unsigned seed  = 0;
  size_t   max_faces = 6, min_length = 3, max_length = 8;
  bool     interior_degree3 = false;
  std::string curvature = "strebel";
  std::string dump;
};

Result run_diagram_random(DiagramRandomArgs const& a) {
  RandomDiagramOptions opt;
  opt.max_faces        = a.max_faces;
  opt.min_face_length  = a.min_length;
  opt.max_face_length  = a.max_length;
  opt.interior_degree3 = a.interior_degree3;
  std::mt19937_64 rng(a.seed);
  Result          r;
  r.table.header = {"index", "vertices", "edges", "faces", "valid", "applicable", "holds"};
  size_t applicable = 0, violations = 0, invalid = 0;
  json   witness;
  std::ofstream dump;
  if (!a.dump.empty()) {
    dump.open(a.dump);
    if (!dump) {
      throw UsageError("cannot write " + a.dump);
    }
  }
  for (size_t i = 0; i < a.count; ++i) {
    Diagram d     = random_diagram(rng, opt);
    bool    valid = validate(d).empty();
    bool    app = false, holds = false;
    if (a.curvature == "strebel") {
      // the identity is stated without degree-2 vertices
      auto s = curvature_strebel(suppress_degree2(d));
      app    = s.applicable;
      holds  = s.holds();
    } else if (a.curvature == "lyndon") {
      auto s = curvature_lyndon(d);
      app    = s.applicable;
      holds  = s.holds();
    } else {
      throw UsageError("--curvature must be strebel or lyndon");
    }
    if (dump.is_open()) {
      dump << "# diagram " << i << "\n" << d.str() << "\n";
    }
    invalid += !valid;
    applicable += app;
    if (!valid || (app && !holds)) {
      if (violations++ == 0) {
        witness = {{"index", i}, {"valid", valid}, {"diagram", d.str()}};
      }
    }
    r.table.rows.push_back({std::to_string(i), std::to_string(d.num_vertices()),
                            std::to_string(d.num_edges()), std::to_string(d.num_faces()),
                            valid ? "1" : "0", app ? "1" : "0", holds ? "1" : "0"});
  }
  r.report["command"]    = "diagram random";
  r.report["seed"]       = a.seed;
  r.report["count"]      = a.count;
  r.report["curvature"]  = a.curvature;
  r.report["invalid"]    = invalid;
  r.report["applicable"] = applicable;
  r.report["violations"] = violations;
  if (violations) {
    r.pass              = false;
    r.report["witness"] = witness;
  }
  std::cout << a.count << " random diagrams (seed " << a.seed << "): " << applicable
            << " applicable, " << violations << " violations\n";
  return r;
}

////////////////////////////////////////////////////////////////////////////
// divergence, fence, gapset
////////////////////////////////////////////////////////////////////////////

struct DivergenceArgs {
  Input       in;
  int         n = 1;
  std::string delta = "1/5";
  int         slack = 2;
  size_t      search_radius = 0;
  size_t      cap = 5000000;
  bool        serial = false;
};

Result run_divergence(DivergenceArgs const& a) {
  Presentation p = load_presentation(a.in);
  if (!p.finite()) {
    throw UsageError("divergence needs a finite presentation");
  }
  Rational delta = Rational::parse(a.delta);
  if (delta.num <= 0 || delta.num >= delta.den) {
    throw UsageError("delta must lie in (0,1)");
  }
  if (a.n < 1) {
    throw UsageError("n must be positive");
  }
  DivergenceOptions opt;
  opt.delta_num     = static_cast<int>(delta.num);
  opt.delta_den     = static_cast<int>(delta.den);
  opt.slack         = a.slack;
  opt.search_radius = a.search_radius;
  opt.vertex_cap    = a.cap;
  opt.parallel      = !a.serial;

  Engine e(p.relators());
  auto   dv = exact_divergence(e, a.n, opt);
  Result r;
  r.report["command"]       = "divergence";
  r.report["input"]         = describe_input(a.in);
  r.report["certification"] = certification(e, 0, true);
  r.report["n"]             = a.n;
  r.report["delta"]         = delta.str();
  r.report["slack"]         = a.slack;
  r.report["infinite"]      = dv.infinite;
  r.report["value"]         = dv.value;
  r.report["b"]             = str(dv.b);
  r.report["c"]             = str(dv.c);
  r.report["search_radius"] = dv.radius;
  r.report["ball_size"]     = dv.ball_size;
  r.report["searched_pairs"] = dv.searched;
  std::cout << "Div(" << a.n << ") ";
  if (dv.infinite) {
    std::cout << "infinite within radius " << dv.radius;
  } else {
    std::cout << "= " << dv.value;
  }
  std::cout << " (b = " << str(dv.b) << ", c = " << str(dv.c) << ")\n";

  // The quadratic bound applies to the four-power family when r_{2n} is present.
  bool tv = !a.in.family.empty() && a.in.family[0] == "tv4";
  if (tv) {
    auto idx = Family::parse("tv4", a.in.family[1]).indices;
    if (std::find(idx.begin(), idx.end(), 2 * a.n) != idx.end()) {
      long bound         = corollary_bound(a.n);
      bool ok            = !dv.infinite && dv.value <= bound;
      r.report["bound"]  = bound;
      r.report["within_bound"] = ok;
      std::cout << "bound 40n^2+64n+2 = " << bound << ": " << (ok ? "ok" : "EXCEEDED") << "\n";
      if (!ok) {
        r.pass              = false;
        r.report["witness"] = {{"b", str(dv.b)}, {"c", str(dv.c)}, {"value", dv.value},
                               {"infinite", dv.infinite}};
      }
    }
  }
  return r;
}

struct FenceArgs {
  Input       in;
  int         n = 1, N = 2;
  size_t      count = 100;
  unsigned    seed  = 0;
  std::string x, y, m;
};

json fence_json(FencePath const& f, FenceCheck const& c) {
  json j;
  j["x"]        = str(f.x);
  j["y"]        = str(f.y);
  j["m"]        = str(f.m);
  j["r"]        = f.r;
  j["direct"]   = f.direct;
  j["blocks"]   = words(f.blocks);
  j["copies"]   = f.copies.size();
  j["label"]    = str(f.label);
  j["length"]   = c.length;
  j["bound"]    = c.bound;
  j["closest"]  = c.closest;
  j["ok"]       = c.ok;
  if (!c.ok) {
    j["ends"]          = c.ends;
    j["avoids"]        = c.avoids;
    j["short_enough"]  = c.short_enough;
    j["copies_closed"] = c.copies_closed;
    j["detail"]        = c.detail;
  }
  return j;
}

Result run_fence(FenceArgs const& a) {
  Presentation p;
  Input        in = a.in;
  if (!in.given()) {
    std::string idx;
    for (int i = 1; i <= a.N; ++i) {
      idx += (i > 1 ? "," : "") + std::to_string(i);
    }
    in.family = {"tv4", idx};
  }
  p = load_presentation(in);
  Engine e(p.relators());
  Result r;
  r.report["command"]       = "fence";
  r.report["input"]         = describe_input(in);
  r.report["certification"] = certification(e, 0, true);
  r.report["n"]             = a.n;
  r.report["N"]             = a.N;
  r.report["bound"]         = fence_bound(a.n, a.N);
  r.table.header = {"index", "x", "y", "m", "r", "direct", "length", "bound", "closest", "ok"};

  std::vector<FenceInstance> instances;
  bool explicit_instance = !a.x.empty() || !a.y.empty() || !a.m.empty();
  if (explicit_instance) {
    instances.push_back({e.normal_form(parse_word(a.x)), e.normal_form(parse_word(a.y)),
                         e.normal_form(parse_word(a.m))});
  } else {
    std::mt19937_64 rng(a.seed);
    for (size_t i = 0; i < a.count; ++i) {
      instances.push_back(random_fence_instance(e, a.n, rng));
    }
    r.report["seed"] = a.seed;
  }
  size_t failures = 0, detours = 0, longest = 0;
  json   first_failure;
  json   list = json::array();
  for (size_t i = 0; i < instances.size(); ++i) {
    auto const& inst = instances[i];
    auto        f    = fence_path(e, inst.x, inst.y, inst.m, a.n, a.N);
    auto        c    = verify_fence(e, f);
    detours += !f.direct;
    longest = std::max(longest, c.length);
    if (!c.ok && failures++ == 0) {
      first_failure = fence_json(f, c);
    }
    if (explicit_instance) {
      list.push_back(fence_json(f, c));
    }
    r.table.rows.push_back({std::to_string(i), str(f.x), str(f.y), str(f.m),
                            std::to_string(f.r), f.direct ? "1" : "0",
                            std::to_string(c.length), std::to_string(c.bound),
                            std::to_string(c.closest), c.ok ? "1" : "0"});
  }
  r.report["instances"] = instances.size();
  r.report["detours"]   = detours;
  r.report["longest"]   = longest;
  r.report["failures"]  = failures;
  if (explicit_instance) {
    r.report["paths"] = list;
  }
  if (failures) {
    r.pass              = false;
    r.report["witness"] = first_failure;
  }
  std::cout << instances.size() << " fence instances at (n,N) = (" << a.n << "," << a.N
            << "): " << detours << " detours, longest " << longest << " <= "
            << fence_bound(a.n, a.N) << ", " << failures << " failures\n";
  return r;
}

struct GapArgs {
  double      j1 = 1;
  std::string functions = "t";
  int         steps = 3;
  double      N_start = 16;
  double      rho = 0, N = 0;
};

std::vector<GrowthFunction> parse_functions(std::string const& list) {
  std::vector<GrowthFunction> out;
  std::stringstream           ss(list);
  std::string                 tok;
  while (std::getline(ss, tok, ',')) {
    out.push_back(parse_growth_function(tok));
  }
  if (out.empty()) {
    throw UsageError("no growth functions");
  }
  return out;
}

json step_json(GapStep const& s) {
  return {{"rho", s.rho},           {"N", s.N},
          {"exponent", s.exponent}, {"log2_rhs", s.log2_rhs},
          {"log2_lhs", s.log2_lhs}, {"threshold", s.threshold}};
}

Result run_gapset(GapArgs const& a) {
  auto   fs = parse_functions(a.functions);
  Result r;
  r.report["command"]   = "gapset";
  r.report["functions"] = a.functions;
  r.table.header        = {"step", "rho", "N", "exponent", "threshold"};
  auto row = [&](size_t i, GapStep const& s) {
    std::ostringstream e;
    e.precision(17);
    e << s.exponent;
    std::ostringstream t;
    t.precision(17);
    t << s.threshold;
    r.table.rows.push_back({std::to_string(i), json(s.rho).dump(), json(s.N).dump(), e.str(),
                            t.str()});
  };
  if (a.rho > 0 || a.N > 0) {
    auto s              = gap_set_next(a.rho, fs, a.N);
    r.report["step"]    = step_json(s);
    row(0, s);
    std::cout << "rho=" << a.rho << " N=" << a.N << ": exponent " << s.exponent
              << ", next index threshold " << s.threshold << "\n";
    return r;
  }
  auto seq         = gap_set_sequence(a.j1, fs, a.steps, a.N_start);
  r.report["J"]    = seq.J;
  json steps       = json::array();
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    steps.push_back(step_json(seq.steps[i]));
    row(i + 1, seq.steps[i]);
  }
  r.report["steps"] = steps;
  std::cout << "J =";
  for (double j : seq.J) {
    std::cout << " " << j;
  }
  std::cout << "\n";
  return r;
}

////////////////////////////////////////////////////////////////////////////
// notrh, notacyl
////////////////////////////////////////////////////////////////////////////

struct NotrhArgs {
  Input  in;
  int    N = 3;
  size_t radius = 12, K = 2, core = 10;
  size_t cap = 50000000;
};

Result run_notrh(NotrhArgs const& a) {
  Input in = a.in;
  if (!in.given()) {
    in.family = {"tv4", std::to_string(a.N)};
  }
  Presentation p = load_presentation(in);
  Engine       e(p.relators());
  if (a.core > a.radius) {
    throw UsageError("--core must not exceed --radius");
  }
  CayleyBall ball(e, generators(p, e), a.radius, a.cap);
  std::vector<CopyArc> all;
  for (auto const& rel : e.relators()) {
    auto arcs = relator_arcs(ball, rel, a.core);
    all.insert(all.end(), arcs.begin(), arcs.end());
  }
  auto rep = overlap_check(ball, all, a.K, a.core);

  Result r;
  r.report["command"]         = "notrh";
  r.report["input"]           = describe_input(in);
  r.report["certification"]   = certification(e, 0, true);
  r.report["radius"]          = a.radius;
  r.report["core_radius"]     = a.core;
  r.report["K"]               = a.K;
  r.report["ball_size"]       = ball.size();
  r.report["arcs"]            = rep.arcs;
  r.report["adjacent_pairs"]  = rep.adjacent_pairs;
  r.report["components"]      = rep.components;
  r.report["core_edges"]      = rep.core_edges;
  r.report["uncovered"]       = rep.uncovered;
  r.report["longest_overlap"] = rep.longest_overlap;
  r.report["split_intersections"] = rep.split_intersections;
  r.report["connected"]       = rep.connected;
  r.report["covering"]        = rep.covering;
  std::cout << rep.arcs << " relator arcs through the core, " << rep.components
            << " overlap components, " << rep.uncovered << " of " << rep.core_edges
            << " core edges uncovered\n";
  std::cout << (rep.ok() ? "connected and covering" : "criterion fails") << "\n";
  if (!rep.ok()) {
    r.pass = false;
    json w;
    auto arc_words = [&](int id) {
      std::vector<Word> ws;
      for (int v : all[id].vertices) {
        ws.push_back(ball.word(v));
      }
      return words(ws);
    };
    if (!rep.connected) {
      w["arc_a"] = arc_words(rep.witness_a);
      w["arc_b"] = arc_words(rep.witness_b);
    }
    if (!rep.covering) {
      w["uncovered_edge"] = {str(ball.word(rep.uncovered_from)),
                             str(ball.word(rep.uncovered_to))};
    }
    r.report["witness"] = w;
  }
  return r;
}

struct NotacylArgs {
  int N = 2, K = 2;
};

Result run_notacyl(NotacylArgs const& a) {
  if (a.N < 1 || a.K < 1) {
    throw UsageError("N and K must be positive");
  }
  auto   rep = notacyl_experiment(a.N, a.K);
  Result r;
  r.report["command"]       = "notacyl";
  r.report["N"]             = rep.N;
  r.report["K"]             = rep.K;
  r.report["C"]             = rep.C;
  r.report["w"]             = str(rep.w);
  r.report["certified"]     = rep.certified;
  r.report["near"]          = rep.near;
  r.report["distinct"]      = rep.distinct;
  r.report["far_length"]    = rep.far_length;
  r.report["far_distance"]  = rep.far_distance;
  r.report["far_geodesic"]  = rep.far_geodesic;
  r.report["pass"]          = rep.pass;
  std::cout << "N=" << rep.N << ": " << rep.near.size() << " powers of w fixed near 1, d_Y(1, w^"
            << rep.far_length << ") = " << rep.far_distance << " >= " << rep.K << "\n";
  if (!rep.pass) {
    r.pass              = false;
    r.report["witness"] = {{"certified", rep.certified},
                           {"near", rep.near},
                           {"far_distance", rep.far_distance},
                           {"far_geodesic", rep.far_geodesic}};
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphical small cancellation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path, out_format;
  app.add_option("--out", out_path, "Write the report to a file (.csv or .json)");
  app.add_option("--format", out_format, "Report format for --out")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify;
  auto*      c_verify = app.add_subcommand("verify", "Check a small cancellation condition");
  add_input(c_verify, verify.in, true);
  c_verify->add_option("--condition", verify.condition, "gr:N, c:N, grprime:L or cprime:L")
      ->required();

  PiecesArgs pieces;
  auto*      c_pieces = app.add_subcommand("pieces", "List the pieces of a graph");
  add_input(c_pieces, pieces.in, true);
  c_pieces->add_option("--max-length", pieces.max_length, "Longest piece to look for");
  c_pieces->add_option("--show", pieces.show, "Pieces printed on stdout");

  SolveArgs solve;
  auto*     c_solve = app.add_subcommand("solve", "Decide whether a word is trivial");
  add_input(c_solve, solve.in, false);
  c_solve->add_option("--word", solve.word)->required();
  c_solve->add_option("--oracle-length", solve.oracle_length,
                      "Cross-check with bounded rewriting up to this length");
  c_solve->add_option("--oracle-steps", solve.oracle_steps);

  BallArgs ball;
  auto*    c_ball = app.add_subcommand("ball", "Enumerate a ball in the Cayley graph");
  add_input(c_ball, ball.in, false);
  c_ball->add_option("--radius", ball.radius)->required();
  c_ball->add_option("--cap", ball.cap, "Vertex budget");

  ConeArgs cone;
  auto*    c_cone = app.add_subcommand("cone", "Coned-off ball and its hyperbolicity");
  add_input(c_cone, cone.in, false);
  c_cone->add_option("--radius", cone.radius)->required();
  c_cone->add_flag("--delta", cone.delta, "Compute the four-point delta");
  c_cone->add_option("--exhaustive-cap", cone.exhaustive);
  c_cone->add_option("--samples", cone.samples);
  c_cone->add_option("--seed", cone.seed);
  c_cone->add_option("--matrix-limit", cone.matrix_limit);

  DYArgs dy;
  auto*  c_dy = app.add_subcommand("dY", "Distance from 1 in the coned-off graph");
  add_input(c_dy, dy.in, false);
  c_dy->add_option("--word", dy.word)->required();

  WpdArgs wpd;
  auto*   c_wpd = app.add_subcommand("wpd", "Build and check a WPD element");
  add_input(c_wpd, wpd.in, false);
  c_wpd->add_option("--mode", wpd.mode)->check(CLI::IsMember({"auto", "gr7", "c7", "grprime"}));
  c_wpd->add_option("--growth", wpd.growth, "Check d_Y(1, g^N) = 2N up to this N");
  c_wpd->add_flag("--no-bfs", wpd.no_bfs, "Skip the coned-graph cross-check");
  c_wpd->add_option("--probe", wpd.probe_K, "Coarse stabiliser probe with this K");
  c_wpd->add_option("--probe-N", wpd.probe_N);
  c_wpd->add_option("--probe-radius", wpd.probe_radius);

  auto*            c_diagram = app.add_subcommand("diagram", "Van Kampen diagram tools");
  c_diagram->require_subcommand(1);
  DiagramCheckArgs dcheck;
  auto*            c_dcheck = c_diagram->add_subcommand("check", "Validate a diagram file");
  c_dcheck->add_option("file", dcheck.file)->required();
  c_dcheck->add_option("--curvature", dcheck.curvature, "strebel, lyndon or none");
  c_dcheck->add_option("--gamma", dcheck.gamma, "Graph file for the reducedness check");
  c_dcheck->add_option("--sides", dcheck.sides, "Boundary cut positions")->delimiter(',');
  c_dcheck->add_flag("--suppress", dcheck.suppress, "Remove degree-2 vertices first");
  DiagramRandomArgs drandom;
  auto* c_drandom = c_diagram->add_subcommand("random", "Curvature checks on random diagrams");
  c_drandom->add_option("--count", drandom.count);
  c_drandom->add_option("--seed", drandom.seed);
  c_drandom->add_option("--max-faces", drandom.max_faces);
  c_drandom->add_option("--min-length", drandom.min_length);
  c_drandom->add_option("--max-length", drandom.max_length);
  c_drandom->add_flag("--interior-degree3", drandom.interior_degree3);
  c_drandom->add_option("--curvature", drandom.curvature, "strebel or lyndon");
  c_drandom->add_option("--dump", drandom.dump, "Write the diagrams to this file");

  DivergenceArgs div;
  auto*          c_div = app.add_subcommand("divergence", "Vertex divergence by search");
  add_input(c_div, div.in, false);
  c_div->add_option("--n", div.n)->required();
  c_div->add_option("--delta", div.delta, "Forbidden ball proportion");
  c_div->add_option("--slack", div.slack);
  c_div->add_option("--search-radius", div.search_radius);
  c_div->add_option("--cap", div.cap, "Vertex budget");
  c_div->add_flag("--serial", div.serial);

  FenceArgs fence;
  auto*     c_fence = app.add_subcommand("fence", "Build and verify fence detours");
  add_input(c_fence, fence.in, false);
  c_fence->add_option("--n", fence.n)->required();
  c_fence->add_option("--N", fence.N)->required();
  c_fence->add_option("--count", fence.count);
  c_fence->add_option("--seed", fence.seed);
  c_fence->add_option("--x", fence.x);
  c_fence->add_option("--y", fence.y);
  c_fence->add_option("--m", fence.m);

  GapArgs gap;
  auto*   c_gap = app.add_subcommand("gapset", "Index recursion for prescribed divergence gaps");
  c_gap->add_option("--j1", gap.j1);
  c_gap->add_option("--functions", gap.functions, "Comma list: 0, t, t^K, 2^(t^A)");
  c_gap->add_option("--steps", gap.steps);
  c_gap->add_option("--N-start", gap.N_start);
  c_gap->add_option("--rho", gap.rho, "Single step: current index");
  c_gap->add_option("--N", gap.N, "Single step: relator index");

  NotrhArgs notrh;
  auto*     c_notrh = app.add_subcommand("notrh", "Overlap criterion for relator copies");
  add_input(c_notrh, notrh.in, false);
  c_notrh->add_option("--N", notrh.N);
  c_notrh->add_option("--radius", notrh.radius);
  c_notrh->add_option("--K", notrh.K);
  c_notrh->add_option("--core", notrh.core);
  c_notrh->add_option("--cap", notrh.cap);

  NotacylArgs notacyl;
  auto* c_notacyl = app.add_subcommand("notacyl", "Non-acylindricity experiment");
  c_notacyl->add_option("--N", notacyl.N);
  c_notacyl->add_option("--K", notacyl.K);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    Result r;
    if (*c_verify) {
      r = run_verify(verify);
    } else if (*c_pieces) {
      r = run_pieces(pieces);
    } else if (*c_solve) {
      r = run_solve(solve);
    } else if (*c_ball) {
      r = run_ball(ball);
    } else if (*c_cone) {
      r = run_cone(cone);
    } else if (*c_dy) {
      r = run_dy(dy);
    } else if (*c_wpd) {
      r = run_wpd(wpd);
    } else if (*c_dcheck) {
      r = run_diagram_check(dcheck);
    } else if (*c_drandom) {
      r = run_diagram_random(drandom);
    } else if (*c_div) {
      r = run_divergence(div);
    } else if (*c_fence) {
      r = run_fence(fence);
    } else if (*c_gap) {
      r = run_gapset(gap);
    } else if (*c_notrh) {
      r = run_notrh(notrh);
    } else if (*c_notacyl) {
      r = run_notacyl(notacyl);
    }
    r.report["pass"] = r.pass;
    if (!out_path.empty()) {
      write_output(r, out_path, out_format);
    }
    if (!r.pass) {
      std::cout << "witness " << r.report["witness"].dump() << "\n";
      return 1;
    }
    return 0;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (BudgetExceeded const& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
  } catch (UncertifiedError const& e) {
    std::cerr << "uncertified: " << e.what() << "\n";
  } catch (UsageError const& e) {
    std::cerr << "usage: " << e.what() << "\n";
  } catch (std::invalid_argument const& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
  } catch (std::logic_error const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
