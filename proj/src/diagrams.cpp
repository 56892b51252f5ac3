#include "gsc/diagrams.hpp"

#include <algorithm>      // for find, reverse, sort
#include <deque>          // for deque
#include <fstream>        // for ifstream
#include <map>            // for map
#include <numeric>        // for iota
#include <set>            // for set
#include <sstream>        // for istringstream, ostringstream
#include <tuple>          // for tuple

namespace gsc {

namespace {

inline size_t dart_id(Dart d) {
  return 2 * static_cast<size_t>(d.edge) + (d.reversed ? 1 : 0);
}

// Reversed boundary: the cycle of the outer face.
std::vector<Dart> outer_cycle(std::vector<Dart> const& boundary) {
  std::vector<Dart> out;
  for (auto it = boundary.rbegin(); it != boundary.rend(); ++it) {
    out.push_back(it->flipped());
  }
  return out;
}

}  // namespace

////////////////////////////////////////////////////////////////////////////
// Diagram
////////////////////////////////////////////////////////////////////////////

int Diagram::add_vertex(std::string name) {
  if (name.empty()) {
    name = "v" + std::to_string(vertex_names_.size());
  }
  vertex_names_.push_back(std::move(name));
  return static_cast<int>(vertex_names_.size() - 1);
}

int Diagram::add_edge(int src, int dst, Word label, std::string name) {
  if (label.empty()) {
    throw std::invalid_argument("edge label must be non-empty");
  }
  if (name.empty()) {
    name = "e" + std::to_string(src_.size());
  }
  src_.push_back(src);
  dst_.push_back(dst);
  labels_.push_back(std::move(label));
  edge_names_.push_back(std::move(name));
  return static_cast<int>(src_.size() - 1);
}

int Diagram::add_face(std::vector<Dart> cycle, std::string name) {
  if (name.empty()) {
    name = "f" + std::to_string(faces_.size());
  }
  faces_.push_back(std::move(cycle));
  face_names_.push_back(std::move(name));
  return static_cast<int>(faces_.size() - 1);
}

void Diagram::set_boundary(std::vector<Dart> cycle, size_t base) {
  boundary_ = std::move(cycle);
  base_     = boundary_.empty() ? 0 : base % boundary_.size();
}

std::vector<Dart> Diagram::boundary() const {
  std::vector<Dart> out;
  for (size_t i = 0; i < boundary_.size(); ++i) {
    out.push_back(boundary_[(base_ + i) % boundary_.size()]);
  }
  return out;
}

int Diagram::start(Dart d) const {
  return d.reversed ? dst_[d.edge] : src_[d.edge];
}

int Diagram::end(Dart d) const {
  return d.reversed ? src_[d.edge] : dst_[d.edge];
}

Word Diagram::word(Dart d) const {
  return d.reversed ? invert(labels_[d.edge]) : labels_[d.edge];
}

Word Diagram::word(std::vector<Dart> const& path) const {
  Word w;
  for (auto const& d : path) {
    auto part = word(d);
    w.insert(w.end(), part.begin(), part.end());
  }
  return w;
}

std::vector<int> Diagram::degrees() const {
  std::vector<int> deg(num_vertices(), 0);
  for (size_t e = 0; e < num_edges(); ++e) {
    ++deg[src_[e]];
    ++deg[dst_[e]];
  }
  return deg;
}

std::string Diagram::dart_name(Dart d) const {
  return (d.reversed ? "-" : "") + edge_names_[d.edge];
}

int Diagram::vertex_id(std::string const& name) {
  for (size_t v = 0; v < vertex_names_.size(); ++v) {
    if (vertex_names_[v] == name) {
      return static_cast<int>(v);
    }
  }
  return add_vertex(name);
}

Diagram Diagram::parse(std::istream& in) {
  Diagram                    d;
  std::map<std::string, int> edge_ids;
  std::string                line;
  int                        lineno = 0;
  bool                       have_boundary = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ss(line);
    std::string        kw;
    if (!(ss >> kw)) {
      continue;
    }
    auto fail = [&](std::string const& msg) {
      throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    auto darts = [&]() {
      std::vector<Dart> out;
      std::string       tok;
      while (ss >> tok) {
        bool rev  = tok[0] == '-';
        auto name = rev ? tok.substr(1) : tok;
        auto it   = edge_ids.find(name);
        if (it == edge_ids.end()) {
          fail("unknown edge '" + name + "'");
        }
        out.push_back({it->second, rev});
      }
      return out;
    };
    if (kw == "vertex") {
      std::string name;
      while (ss >> name) {
        d.vertex_id(name);
      }
    } else if (kw == "edge") {
      std::string name, a, b, label;
      if (!(ss >> name >> a >> b >> label)) {
        fail("expected: edge <name> <src> <dst> <label>");
      }
      if (edge_ids.count(name)) {
        fail("duplicate edge '" + name + "'");
      }
      Word w;
      try {
        w = parse_word(label);
      } catch (ParseError const& e) {
        fail(e.what());
      }
      if (w.empty()) {
        fail("empty edge label");
      }
      edge_ids[name] = d.add_edge(d.vertex_id(a), d.vertex_id(b), w, name);
    } else if (kw == "face") {
      std::string name;
      if (!(ss >> name)) {
        fail("expected: face <name> <dart>...");
      }
      auto cyc = darts();
      if (cyc.empty()) {
        fail("face without edges");
      }
      d.add_face(cyc, name);
    } else if (kw == "boundary") {
      d.set_boundary(darts(), d.base_);
      have_boundary = true;
    } else if (kw == "base") {
      size_t b;
      if (!(ss >> b)) {
        fail("expected: base <index>");
      }
      if (have_boundary && b >= d.boundary_.size() && !d.boundary_.empty()) {
        fail("base index out of range");
      }
      d.base_ = b;
    } else if (kw == "sides") {
      std::vector<size_t> cuts;
      size_t              c;
      while (ss >> c) {
        cuts.push_back(c);
      }
      d.sides_ = cuts;
    } else {
      fail("unknown statement '" + kw + "'");
    }
  }
  if (!d.boundary_.empty()) {
    d.base_ %= d.boundary_.size();
  }
  return d;
}

Diagram Diagram::parse_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  return parse(in);
}

std::string Diagram::str() const {
  std::ostringstream out;
  out << "vertex";
  for (auto const& n : vertex_names_) {
    out << ' ' << n;
  }
  out << '\n';
  for (size_t e = 0; e < num_edges(); ++e) {
    out << "edge " << edge_names_[e] << ' ' << vertex_names_[src_[e]] << ' '
        << vertex_names_[dst_[e]] << ' ' << to_string(labels_[e]) << '\n';
  }
  for (size_t f = 0; f < num_faces(); ++f) {
    out << "face " << face_names_[f];
    for (auto const& dt : faces_[f]) {
      out << ' ' << dart_name(dt);
    }
    out << '\n';
  }
  out << "boundary";
  for (auto const& dt : boundary_) {
    out << ' ' << dart_name(dt);
  }
  out << "\nbase " << base_ << '\n';
  if (!sides_.empty()) {
    out << "sides";
    for (size_t c : sides_) {
      out << ' ' << c;
    }
    out << '\n';
  }
  return out.str();
}

////////////////////////////////////////////////////////////////////////////
// Validation
////////////////////////////////////////////////////////////////////////////

std::vector<std::string> validate(Diagram const& d) {
  std::vector<std::string> bad;
  size_t const             V = d.num_vertices(), E = d.num_edges();
  for (size_t e = 0; e < E; ++e) {
    if (d.src(static_cast<int>(e)) < 0 || d.dst(static_cast<int>(e)) < 0
        || static_cast<size_t>(d.src(static_cast<int>(e))) >= V
        || static_cast<size_t>(d.dst(static_cast<int>(e))) >= V) {
      bad.push_back("edge " + d.edge_name(static_cast<int>(e)) + " has a bad endpoint");
    }
  }
  if (!bad.empty()) {
    return bad;
  }
  std::vector<std::pair<std::string, std::vector<Dart>>> cycles;
  for (size_t f = 0; f < d.num_faces(); ++f) {
    cycles.emplace_back("face " + d.face_name(static_cast<int>(f)), d.face(static_cast<int>(f)));
  }
  cycles.emplace_back("outer face", outer_cycle(d.boundary()));

  std::vector<int> used(2 * E, 0);
  std::vector<int> next(2 * E, -1);
  for (auto const& [name, cyc] : cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      Dart a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a.edge < 0 || static_cast<size_t>(a.edge) >= E) {
        bad.push_back(name + " uses an unknown edge");
        return bad;
      }
      if (d.end(a) != d.start(b)) {
        bad.push_back(name + " is not a closed path at " + d.dart_name(a));
      }
      ++used[dart_id(a)];
      next[dart_id(a)] = static_cast<int>(dart_id(b));
    }
  }
  for (size_t e = 0; e < E; ++e) {
    for (int r = 0; r < 2; ++r) {
      int n = used[2 * e + r];
      if (n != 1) {
        bad.push_back("dart " + d.dart_name({static_cast<int>(e), r == 1}) + " is used "
                      + std::to_string(n) + " times by faces and the reversed boundary");
      }
    }
  }
  if (!bad.empty()) {
    return bad;
  }

  // rotation at each vertex: sigma(x) = next(flip(x)) must be one cycle
  std::vector<char> seen(2 * E, 0);
  std::vector<int>  rotations(V, 0);
  for (size_t x = 0; x < 2 * E; ++x) {
    if (seen[x]) {
      continue;
    }
    Dart dx{static_cast<int>(x / 2), x % 2 == 1};
    ++rotations[d.start(dx)];
    size_t y = x;
    while (!seen[y]) {
      seen[y] = 1;
      y       = static_cast<size_t>(next[y ^ 1]);
    }
  }
  auto deg = d.degrees();
  for (size_t v = 0; v < V; ++v) {
    if (deg[v] > 0 && rotations[v] != 1) {
      bad.push_back("vertex " + d.vertex_name(static_cast<int>(v)) + " is not a disk point ("
                    + std::to_string(rotations[v]) + " corners)");
    }
    if (deg[v] == 0 && V > 1) {
      bad.push_back("vertex " + d.vertex_name(static_cast<int>(v)) + " is isolated");
    }
  }

  std::vector<int> root(V);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) {
      x = root[x] = root[root[x]];
    }
    return x;
  };
  for (size_t e = 0; e < E; ++e) {
    root[find(d.src(static_cast<int>(e)))] = find(d.dst(static_cast<int>(e)));
  }
  std::set<int> comps;
  for (size_t v = 0; v < V; ++v) {
    comps.insert(find(static_cast<int>(v)));
  }
  if (comps.size() != 1) {
    bad.push_back("diagram is not connected");
  }
  long euler = static_cast<long>(V) - static_cast<long>(E) + static_cast<long>(d.num_faces());
  if (euler != 1) {
    bad.push_back("Euler characteristic " + std::to_string(euler) + ", expected 1");
  }
  return bad;
}

////////////////////////////////////////////////////////////////////////////
// Degree-2 suppression
////////////////////////////////////////////////////////////////////////////

Diagram suppress_degree2(Diagram const& d) {
  std::vector<int>               src, dst;
  std::vector<Word>              labels;
  std::vector<std::string>       names;
  std::vector<char>              alive(d.num_edges(), 1);
  std::vector<std::vector<Dart>> cycles;
  for (size_t e = 0; e < d.num_edges(); ++e) {
    src.push_back(d.src(static_cast<int>(e)));
    dst.push_back(d.dst(static_cast<int>(e)));
    labels.push_back(d.label(static_cast<int>(e)));
    names.push_back(d.edge_name(static_cast<int>(e)));
  }
  for (size_t f = 0; f < d.num_faces(); ++f) {
    cycles.push_back(d.face(static_cast<int>(f)));
  }
  cycles.push_back(d.boundary());  // base at index 0
  std::vector<char> vertex_alive(d.num_vertices(), 1);

  auto start = [&](Dart x) { return x.reversed ? dst[x.edge] : src[x.edge]; };
  auto wordof = [&](Dart x) { return x.reversed ? invert(labels[x.edge]) : labels[x.edge]; };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<Dart>> out(d.num_vertices());
    for (size_t e = 0; e < src.size(); ++e) {
      if (alive[e]) {
        out[src[e]].push_back({static_cast<int>(e), false});
        out[dst[e]].push_back({static_cast<int>(e), true});
      }
    }
    for (size_t v = 0; v < out.size(); ++v) {
      if (out[v].size() != 2 || out[v][0].edge == out[v][1].edge) {
        continue;
      }
      Dart d1 = out[v][0].flipped(), d2 = out[v][1];  // d1 ends at v, d2 leaves v
      int  ne = static_cast<int>(src.size());
      src.push_back(start(d1));
      dst.push_back(d2.reversed ? src[d2.edge] : dst[d2.edge]);
      labels.push_back(concat(wordof(d1), wordof(d2)));
      names.push_back(names[d1.edge] + "_" + names[d2.edge]);
      alive.push_back(1);
      alive[d1.edge] = alive[d2.edge] = 0;
      vertex_alive[v]                 = 0;
      for (auto& cyc : cycles) {
        for (auto [first, second, repl] :
             {std::tuple{d1, d2, Dart{ne, false}},
              std::tuple{d2.flipped(), d1.flipped(), Dart{ne, true}}}) {
          for (size_t i = 0; i < cyc.size() && cyc.size() >= 2; ++i) {
            size_t j = (i + 1) % cyc.size();
            if (cyc[i] == first && cyc[j] == second) {
              cyc[i] = repl;
              cyc.erase(cyc.begin() + static_cast<long>(j));
              if (j == 0) {
                // keep the boundary base at the front
                std::rotate(cyc.begin(), cyc.end() - 1, cyc.end());
              }
              break;
            }
          }
        }
      }
      changed = true;
      break;
    }
  }

  Diagram          r;
  std::vector<int> vmap(d.num_vertices(), -1);
  for (size_t v = 0; v < d.num_vertices(); ++v) {
    if (vertex_alive[v]) {
      vmap[v] = r.add_vertex(d.vertex_name(static_cast<int>(v)));
    }
  }
  std::vector<int> emap(src.size(), -1);
  for (size_t e = 0; e < src.size(); ++e) {
    if (alive[e]) {
      emap[e] = r.add_edge(vmap[src[e]], vmap[dst[e]], labels[e], names[e]);
    }
  }
  auto remap = [&](std::vector<Dart> const& cyc) {
    std::vector<Dart> o;
    for (auto const& x : cyc) {
      o.push_back({emap[x.edge], x.reversed});
    }
    return o;
  };
  for (size_t f = 0; f < d.num_faces(); ++f) {
    r.add_face(remap(cycles[f]), d.face_name(static_cast<int>(f)));
  }
  r.set_boundary(remap(cycles.back()), 0);
  return r;
}

////////////////////////////////////////////////////////////////////////////
// Arcs and face statistics
////////////////////////////////////////////////////////////////////////////

namespace {

struct Sides {
  std::vector<int> face_of;       // dart id -> face, -1 for the outer face
  std::vector<int> boundary_pos;  // dart id -> position on boundary(), -1 if absent
};

Sides sides_of(Diagram const& d) {
  Sides s;
  s.face_of.assign(2 * d.num_edges(), -1);
  s.boundary_pos.assign(2 * d.num_edges(), -1);
  for (size_t f = 0; f < d.num_faces(); ++f) {
    for (auto const& x : d.face(static_cast<int>(f))) {
      s.face_of[dart_id(x)] = static_cast<int>(f);
    }
  }
  auto b = d.boundary();
  for (size_t i = 0; i < b.size(); ++i) {
    s.boundary_pos[dart_id(b[i])] = static_cast<int>(i);
  }
  return s;
}

bool on_boundary(Sides const& s, int edge) {
  return s.boundary_pos[2 * edge] >= 0 || s.boundary_pos[2 * edge + 1] >= 0;
}

// Split a closed dart cycle at vertices of degree != 2.  Returns index runs.
std::vector<std::vector<size_t>> segments(Diagram const& d, std::vector<Dart> const& cyc,
                                          std::vector<int> const& deg) {
  std::vector<std::vector<size_t>> out;
  size_t                           n = cyc.size();
  size_t                           first = n;
  for (size_t i = 0; i < n; ++i) {
    if (deg[d.start(cyc[i])] != 2) {
      first = i;
      break;
    }
  }
  if (first == n) {
    std::vector<size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (n > 0) {
      out.push_back(all);
    }
    return out;
  }
  for (size_t k = 0; k < n; ++k) {
    size_t i = (first + k) % n;
    if (deg[d.start(cyc[i])] != 2) {
      out.emplace_back();
    }
    out.back().push_back(i);
  }
  return out;
}

struct FaceArcs {
  FaceStats                          stats;
  std::vector<std::vector<size_t>>   runs;
  std::vector<char>                  exterior;
};

FaceArcs face_arcs(Diagram const& d, int f, Sides const& s, std::vector<int> const& deg) {
  FaceArcs fa;
  fa.stats.face   = f;
  fa.stats.length = d.face(f).size();
  fa.runs         = segments(d, d.face(f), deg);
  for (auto const& run : fa.runs) {
    bool ext = on_boundary(s, d.face(f)[run.front()].edge);
    fa.exterior.push_back(ext);
    (ext ? fa.stats.exterior : fa.stats.interior) += 1;
  }
  return fa;
}

}  // namespace

std::vector<Arc> arcs(Diagram const& d) {
  auto              s   = sides_of(d);
  auto              deg = d.degrees();
  std::vector<Arc>  out;
  std::vector<char> done(d.num_edges(), 0);
  std::vector<std::vector<Dart>> leaving(d.num_vertices());
  for (size_t e = 0; e < d.num_edges(); ++e) {
    leaving[d.src(static_cast<int>(e))].push_back({static_cast<int>(e), false});
    leaving[d.dst(static_cast<int>(e))].push_back({static_cast<int>(e), true});
  }
  auto other = [&](int v, Dart in) {  // the dart leaving v that is not flip(in)
    for (auto const& x : leaving[v]) {
      if (!(x == in.flipped())) {
        return x;
      }
    }
    return in.flipped();
  };
  for (size_t e = 0; e < d.num_edges(); ++e) {
    if (done[e]) {
      continue;
    }
    std::deque<Dart> chain{{static_cast<int>(e), false}};
    done[e] = 1;
    bool closed = false;
    // extend forwards
    while (deg[d.end(chain.back())] == 2) {
      Dart nx = other(d.end(chain.back()), chain.back());
      if (done[nx.edge]) {
        closed = nx.edge == chain.front().edge;
        break;
      }
      done[nx.edge] = 1;
      chain.push_back(nx);
    }
    // extend backwards
    while (!closed && deg[d.start(chain.front())] == 2) {
      Dart pv = other(d.start(chain.front()), chain.front().flipped()).flipped();
      if (done[pv.edge]) {
        break;
      }
      done[pv.edge] = 1;
      chain.push_front(pv);
    }
    Arc a;
    a.darts.assign(chain.begin(), chain.end());
    a.exterior = on_boundary(s, static_cast<int>(e));
    for (Dart x : {chain.front(), chain.front().flipped()}) {
      int f = s.face_of[dart_id(x)];
      if (f >= 0 && std::find(a.faces.begin(), a.faces.end(), f) == a.faces.end()) {
        a.faces.push_back(f);
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<FaceStats> face_stats(Diagram const& d) {
  auto                   s   = sides_of(d);
  auto                   deg = d.degrees();
  std::vector<FaceStats> out;
  for (size_t f = 0; f < d.num_faces(); ++f) {
    out.push_back(face_arcs(d, static_cast<int>(f), s, deg).stats);
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Gamma-reducedness
////////////////////////////////////////////////////////////////////////////

ReducedReport check_gamma_reduced(Diagram const& d, LabelledGraph const& gamma) {
  ReducedReport rep;
  // per face: letter offset of each dart and the Gamma edges of every lift
  std::vector<std::vector<size_t>>           offset(d.num_faces());
  std::vector<std::vector<std::vector<int>>> lifts(d.num_faces());
  for (size_t f = 0; f < d.num_faces(); ++f) {
    Word   w   = d.face_word(static_cast<int>(f));
    size_t pos = 0;
    for (auto const& x : d.face(static_cast<int>(f))) {
      offset[f].push_back(pos);
      pos += d.label(x.edge).size();
    }
    for (size_t u = 0; u < gamma.num_vertices(); ++u) {
      auto p = gamma.read_path(static_cast<int>(u), w);
      if (p && p->closed()) {
        lifts[f].push_back(p->edges);
      }
    }
    if (lifts[f].empty()) {
      rep.ok    = false;
      rep.error = "face " + d.face_name(static_cast<int>(f)) + " reads " + to_string(w)
                  + ", not a closed path of the graph";
      return rep;
    }
  }
  auto s = sides_of(d);
  for (size_t e = 0; e < d.num_edges(); ++e) {
    int f1 = s.face_of[2 * e], f2 = s.face_of[2 * e + 1];
    if (f1 < 0 || f2 < 0) {
      continue;  // exterior edge
    }
    auto index = [&](int f, Dart x) {
      auto const& cyc = d.face(f);
      return static_cast<size_t>(std::find(cyc.begin(), cyc.end(), x) - cyc.begin());
    };
    size_t k1 = index(f1, {static_cast<int>(e), false});
    size_t k2 = index(f2, {static_cast<int>(e), true});
    size_t len = d.label(static_cast<int>(e)).size();
    std::set<std::vector<int>> via1;
    for (auto const& l : lifts[f1]) {
      via1.emplace(l.begin() + static_cast<long>(offset[f1][k1]),
                   l.begin() + static_cast<long>(offset[f1][k1] + len));
    }
    for (auto const& l : lifts[f2]) {
      std::vector<int> seg(l.begin() + static_cast<long>(offset[f2][k2]),
                           l.begin() + static_cast<long>(offset[f2][k2] + len));
      std::reverse(seg.begin(), seg.end());
      if (via1.count(seg)) {
        rep.ok     = false;
        rep.edge   = static_cast<int>(e);
        rep.face1  = f1;
        rep.face2  = f2;
        rep.detail = "edge " + d.edge_name(static_cast<int>(e)) + " between faces "
                     + d.face_name(f1) + " and " + d.face_name(f2)
                     + " lifts to the same path of the graph";
        return rep;
      }
    }
  }
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// (3,7)-n-gons and bigons
////////////////////////////////////////////////////////////////////////////

namespace {

struct NgonAnalysis {
  NgonReport            report;
  std::vector<FaceArcs> faces;
  // per face, per run: side index containing the exterior run, -1 if straddling
  std::vector<std::vector<int>> side;
};

NgonAnalysis analyse_ngon(Diagram const& d, std::vector<size_t> const& cuts_in) {
  NgonAnalysis a;
  auto&        rep = a.report;
  auto         b   = d.boundary();
  auto         cuts = cuts_in;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.empty() || cuts.back() >= std::max<size_t>(b.size(), 1)) {
    rep.ok        = false;
    rep.violation = "side cuts must be distinct boundary positions";
    return a;
  }
  auto side_of = [&](size_t pos) {
    int s = static_cast<int>(cuts.size()) - 1;
    for (size_t i = 0; i < cuts.size(); ++i) {
      if (cuts[i] <= pos) {
        s = static_cast<int>(i);
      }
    }
    return s;
  };
  for (size_t i = 0; i < cuts.size(); ++i) {
    std::vector<Dart> part;
    size_t            stop = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + b.size();
    for (size_t k = cuts[i]; k < stop; ++k) {
      part.push_back(b[k % b.size()]);
    }
    if (!is_freely_reduced(d.word(part))) {
      rep.ok        = false;
      rep.violation = "side " + std::to_string(i + 1) + " is not reduced";
      return a;
    }
  }
  auto s   = sides_of(d);
  auto deg = d.degrees();
  for (size_t f = 0; f < d.num_faces(); ++f) {
    a.faces.push_back(face_arcs(d, static_cast<int>(f), s, deg));
    auto const& fa = a.faces.back();
    a.side.emplace_back();
    bool distinguished = false;
    for (size_t r = 0; r < fa.runs.size(); ++r) {
      int sd = -1;
      if (fa.exterior[r]) {
        std::set<int> hit;
        for (size_t idx : fa.runs[r]) {
          int pos = s.boundary_pos[dart_id(d.face(static_cast<int>(f))[idx])];
          hit.insert(side_of(static_cast<size_t>(pos)));
        }
        sd = hit.size() == 1 ? *hit.begin() : -1;
        distinguished |= sd < 0;
      }
      a.side.back().push_back(sd);
    }
    if (distinguished) {
      rep.distinguished.push_back(static_cast<int>(f));
    }
  }
  for (size_t f = 0; f < a.faces.size() && rep.ok; ++f) {
    auto const& st = a.faces[f].stats;
    if (st.exterior == 0 && st.interior < 7) {
      rep.ok        = false;
      rep.face      = static_cast<int>(f);
      rep.violation = "interior face " + d.face_name(static_cast<int>(f)) + " has only "
                      + std::to_string(st.interior) + " maximal arcs";
    } else if (st.exterior == 1 && st.interior < 4) {
      bool inside = false;
      for (size_t r = 0; r < a.faces[f].runs.size(); ++r) {
        inside |= a.faces[f].exterior[r] && a.side[f][r] >= 0;
      }
      if (inside) {
        rep.ok        = false;
        rep.face      = static_cast<int>(f);
        rep.violation = "face " + d.face_name(static_cast<int>(f))
                        + " has one exterior arc inside a side but i = "
                        + std::to_string(st.interior) + " < 4";
      }
    }
  }
  return a;
}

}  // namespace

NgonReport check_37_ngon(Diagram const& d, std::vector<size_t> const& cuts) {
  auto defects = validate(d);
  if (!defects.empty()) {
    NgonReport r;
    r.ok        = false;
    r.violation = "invalid diagram: " + defects.front();
    return r;
  }
  return analyse_ngon(d, cuts).report;
}

std::string to_string(BigonShape s) {
  switch (s) {
    case BigonShape::single_face:
      return "single face";
    case BigonShape::shape_i1:
      return "shape I1";
    case BigonShape::other:
      return "other";
  }
  return "?";
}

BigonReport classify_bigon(Diagram const& d, std::vector<size_t> const& cuts) {
  BigonReport rep;
  auto        defects = validate(d);
  if (!defects.empty()) {
    rep.reason = "invalid diagram: " + defects.front();
    return rep;
  }
  auto b = d.boundary();
  std::set<int> seen;
  for (auto const& x : b) {
    if (!seen.insert(d.start(x)).second) {
      rep.reason = "not a simple disk diagram: boundary revisits " + d.vertex_name(d.start(x));
      return rep;
    }
  }
  if (cuts.size() != 2) {
    rep.reason = "a bigon needs exactly two sides";
    return rep;
  }
  auto a = analyse_ngon(d, cuts);
  if (!a.report.ok) {
    rep.reason = "not a (3,7)-bigon: " + a.report.violation;
    return rep;
  }
  if (d.num_faces() == 1) {
    rep.shape = BigonShape::single_face;
    return rep;
  }
  if (a.report.distinguished.size() != 2) {
    rep.reason = std::to_string(a.report.distinguished.size()) + " distinguished faces";
    return rep;
  }
  for (size_t f = 0; f < a.faces.size(); ++f) {
    auto const& fa   = a.faces[f];
    bool        dist = std::find(a.report.distinguished.begin(), a.report.distinguished.end(),
                                 static_cast<int>(f))
                != a.report.distinguished.end();
    if (dist) {
      if (fa.stats.exterior != 1 || fa.stats.interior != 1) {
        rep.reason = "distinguished face " + d.face_name(static_cast<int>(f))
                     + " is not one interior and one exterior arc";
        return rep;
      }
      continue;
    }
    bool alternating = fa.runs.size() == 4;
    for (size_t r = 0; alternating && r < 4; ++r) {
      alternating = fa.exterior[r] != fa.exterior[(r + 1) % 4];
    }
    std::set<int> sides_hit;
    for (size_t r = 0; alternating && r < 4; ++r) {
      if (fa.exterior[r]) {
        sides_hit.insert(a.side[f][r]);
      }
    }
    if (!alternating || sides_hit.size() != 2 || sides_hit.count(-1)) {
      rep.reason = "face " + d.face_name(static_cast<int>(f))
                   + " is not exterior/interior/exterior/interior across both sides";
      return rep;
    }
  }
  rep.shape = BigonShape::shape_i1;
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// Curvature formulas
////////////////////////////////////////////////////////////////////////////

StrebelReport curvature_strebel(Diagram const& d) {
  StrebelReport rep;
  auto          defects = validate(d);
  if (!defects.empty()) {
    rep.applicable = false;
    rep.violation  = "invalid diagram: " + defects.front();
    return rep;
  }
  auto deg = d.degrees();
  for (size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 2) {
      rep.applicable = false;
      rep.violation  = "vertex " + d.vertex_name(static_cast<int>(v)) + " has degree 2";
      return rep;
    }
    rep.vertex_term += 2 * (3 - deg[v]);
  }
  auto s = sides_of(d);
  for (size_t e = 0; e < d.num_edges(); ++e) {
    if (s.face_of[2 * e] < 0 && s.face_of[2 * e + 1] < 0) {
      rep.applicable = false;
      rep.violation  = "edge " + d.edge_name(static_cast<int>(e)) + " lies in no face";
      return rep;
    }
  }
  for (auto const& st : face_stats(d)) {
    rep.face_term += 6 - 2 * st.exterior - st.interior;
  }
  return rep;
}

LyndonReport curvature_lyndon(Diagram const& d) {
  LyndonReport rep;
  auto         defects = validate(d);
  if (!defects.empty()) {
    rep.applicable = false;
    rep.violation  = "invalid diagram: " + defects.front();
    return rep;
  }
  if (d.num_vertices() < 2) {
    rep.applicable = false;
    rep.violation  = "fewer than 2 vertices";
    return rep;
  }
  auto          deg = d.degrees();
  std::set<int> outer;
  for (auto const& x : d.boundary()) {
    outer.insert(d.start(x));
  }
  for (size_t v = 0; v < deg.size(); ++v) {
    if (!outer.count(static_cast<int>(v)) && deg[v] < 3) {
      rep.applicable = false;
      rep.violation  = "interior vertex " + d.vertex_name(static_cast<int>(v)) + " has degree "
                      + std::to_string(deg[v]);
      return rep;
    }
  }
  for (size_t f = 0; f < d.num_faces(); ++f) {
    if (d.face(static_cast<int>(f)).size() < 6) {
      rep.applicable = false;
      rep.violation  = "face " + d.face_name(static_cast<int>(f)) + " has length "
                      + std::to_string(d.face(static_cast<int>(f)).size()) + " < 6";
      return rep;
    }
  }
  for (int v : outer) {
    rep.twice_sum += 5 - 2 * deg[v];
  }
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// Random diagrams
////////////////////////////////////////////////////////////////////////////

Diagram random_diagram(std::mt19937_64& rng, RandomDiagramOptions const& opt) {
  auto uniform = [&](size_t lo, size_t hi) {
    return std::uniform_int_distribution<size_t>(lo, hi)(rng);
  };
  Diagram d;
  auto    new_edge = [&](int a, int b) {
    Letter x = make_letter(static_cast<int>(uniform(0, opt.generators - 1)));
    if (uniform(0, 1)) {
      return Dart{d.add_edge(b, a, Word{x}), true};
    }
    return Dart{d.add_edge(a, b, Word{x}), false};
  };
  // a path of t new edges from a to b through t-1 new vertices
  auto new_path = [&](int a, int b, size_t t) {
    std::vector<Dart> p;
    int               cur = a;
    for (size_t i = 0; i < t; ++i) {
      int nxt = i + 1 == t ? b : d.add_vertex();
      p.push_back(new_edge(cur, nxt));
      cur = nxt;
    }
    return p;
  };

  size_t k  = uniform(std::max<size_t>(opt.min_face_length, 1), opt.max_face_length);
  int    v0 = d.add_vertex();
  auto   first = new_path(v0, v0, k);
  d.add_face(first);
  std::vector<Dart> bnd = first;
  size_t            faces = uniform(1, opt.max_faces);
  auto              deg   = [&](int v) { return d.degrees()[v]; };
  for (size_t f = 1; f < faces; ++f) {
    size_t s = uniform(0, bnd.size() - 1);
    std::rotate(bnd.begin(), bnd.begin() + static_cast<long>(s), bnd.end());
    size_t m_max = std::min(bnd.size() - 1, opt.max_face_length - 1);
    size_t m     = uniform(0, m_max);
    if (opt.interior_degree3) {
      // shrink until every inner vertex of the glued path has degree >= 3
      while (m > 1) {
        bool ok = true;
        for (size_t i = 1; i < m && ok; ++i) {
          ok = deg(d.start(bnd[i])) >= 3;
        }
        if (ok) {
          break;
        }
        --m;
      }
    }
    size_t len = uniform(std::max(opt.min_face_length, m + 1),
                         std::max(opt.max_face_length, m + 1));
    int    a   = d.start(bnd[0]);
    int    b   = m == 0 ? a : d.end(bnd[m - 1]);
    auto   p   = new_path(a, b, len - m);
    std::vector<Dart> face;
    for (size_t j = m; j > 0; --j) {
      face.push_back(bnd[j - 1].flipped());
    }
    face.insert(face.end(), p.begin(), p.end());
    d.add_face(face);
    std::vector<Dart> nb = p;
    nb.insert(nb.end(), bnd.begin() + static_cast<long>(m), bnd.end());
    bnd = std::move(nb);
  }
  d.set_boundary(bnd, 0);
  return d;
}

}  // namespace gsc
