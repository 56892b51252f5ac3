#include "gsc/divergence.hpp"

#include <algorithm>  // for max, min
#include <cmath>      // for ceil, exp2, log2, pow
#include <deque>      // for deque
#include <limits>     // for numeric_limits
#include <stdexcept>  // for invalid_argument
#include <string>     // for stod

#include "gsc/presentation.hpp"

namespace gsc {

////////////////////////////////////////////////////////////////////////////
// Divergence by search
////////////////////////////////////////////////////////////////////////////

namespace {

// Shortest path from `from` to `to` through ball edges avoiding `blocked`;
// -1 when separated.
long avoiding_distance(CayleyBall const& ball, int from, int to, std::vector<char> const& blocked) {
  std::vector<int> dist(ball.size(), -1);
  std::deque<int>  queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == to) {
      return dist[v];
    }
    for (Letter x : ball.letters()) {
      int w = ball.neighbour(v, x);
      if (w >= 0 && dist[w] < 0 && !blocked[w]) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return -1;
}

}  // namespace

DivergenceResult exact_divergence(Engine const& e, int n, DivergenceOptions const& opt) {
  if (n < 0) {
    throw std::invalid_argument("n must be non-negative");
  }
  long const num = opt.delta_num, den = opt.delta_den;
  if (num <= 0 || den <= 0 || num >= den) {
    throw std::invalid_argument("delta must lie strictly between 0 and 1");
  }
  auto gens = e.alphabet();
  if (gens.empty()) {
    gens = {0, 1};
  }
  size_t longest = 0;
  for (auto const& r : e.relators()) {
    longest = std::max(longest, r.size());
  }
  // A geodesic from 1 to b passes within floor(n/2) of {1, b}; for larger r
  // the forbidden ball cannot meet it.
  long h     = n / 2;
  long r_max = den * (h - opt.slack) > 0 ? (den * (h - opt.slack) - 1) / (den - num) : 0;
  size_t c_depth = static_cast<size_t>(r_max + n);

  DivergenceResult res;
  res.n = n;
  size_t radius = opt.search_radius ? opt.search_radius
                                    : std::max<size_t>(n + longest / 2 + 2, c_depth);
  if (radius < c_depth) {
    throw std::invalid_argument("search radius " + std::to_string(radius)
                                + " is below the needed " + std::to_string(c_depth));
  }
  // candidates come from a small ball; the path search needs the large one
  CayleyBall near(e, gens, std::max<size_t>(n, c_depth), opt.vertex_cap);
  res.radius    = near.radius();
  res.ball_size = near.size();

  struct Pair {
    Word b, c;
    long rho;  // forbidden: den * d(v, c) < rho
  };
  std::vector<Pair> pairs;
  std::vector<int>  targets;
  for (size_t d = 1; d <= static_cast<size_t>(n); ++d) {
    for (int b : near.layer(d)) {
      targets.push_back(b);
      if (static_cast<long>(d) > res.value) {
        res.value = static_cast<long>(d);
        res.b     = near.word(b);
      }
    }
  }
  for (int b : targets) {
    Word bw = near.word(b);
    long hb = static_cast<long>(near.depth(b)) / 2;
    for (size_t dc = 0; dc <= c_depth; ++dc) {
      for (int c : near.layer(dc)) {
        long r = std::min<long>(static_cast<long>(dc),
                                static_cast<long>(e.distance(bw, near.word(c))));
        long rho = num * r - den * opt.slack;
        if (r == 0 || rho <= 0 || den * (r - hb) >= rho) {
          continue;
        }
        pairs.push_back({bw, near.word(c), rho});
      }
    }
  }
  res.searched = pairs.size();
  if (pairs.empty()) {
    return res;
  }

  CayleyBall ball(e, gens, radius, opt.vertex_cap);
  res.radius    = ball.radius();
  res.ball_size = ball.size();
  std::vector<long> value(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto const&       p = pairs[i];
    std::vector<char> blocked(ball.size(), 0);
    for (size_t k = 0; den * static_cast<long>(k) < p.rho && k <= ball.radius(); ++k) {
      for (int w : ball.layer(k)) {
        int v = ball.lookup(e.normal_form(concat(p.c, ball.word(w))));
        if (v >= 0) {
          blocked[v] = 1;
        }
      }
    }
    value[i] = avoiding_distance(ball, 0, ball.lookup(p.b), blocked);
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (value[i] < 0 && !res.infinite) {
      res.infinite = true;
      res.b        = pairs[i].b;
      res.c        = pairs[i].c;
    }
    if (!res.infinite && value[i] > res.value) {
      res.value = value[i];
      res.b     = pairs[i].b;
      res.c     = pairs[i].c;
    }
  }
  return res;
}

CorollaryReport corollary_check(std::vector<int> const& indices, int n,
                                DivergenceOptions const& opt) {
  if (std::find(indices.begin(), indices.end(), 2 * n) == indices.end()) {
    throw std::invalid_argument("the corollary needs r_" + std::to_string(2 * n)
                                + " among the relators");
  }
  std::vector<Word> rels;
  for (int i : indices) {
    rels.push_back(tv_relator(i));
  }
  Engine          e(rels);
  CorollaryReport rep;
  rep.n          = n;
  rep.indices    = indices;
  rep.divergence = exact_divergence(e, n, opt);
  rep.bound      = corollary_bound(n);
  rep.ok         = !rep.divergence.infinite && rep.divergence.value <= rep.bound;
  return rep;
}

////////////////////////////////////////////////////////////////////////////
// Fences
////////////////////////////////////////////////////////////////////////////

namespace {

// Rotation of r_N or its inverse that starts with the block s^N and ends
// with a letter t of the other generator.
Word copy_word(Letter s, Letter t, int N) {
  Letter a = make_letter(0), b = make_letter(1);
  for (auto const& order : {std::vector<Letter>{a, b, inverse(a), inverse(b)},
                            std::vector<Letter>{a, inverse(b), inverse(a), b}}) {
    size_t pos = std::find(order.begin(), order.end(), s) - order.begin();
    if (pos == order.size() || order[(pos + 3) % 4] != t) {
      continue;
    }
    Word w;
    for (int rep = 0; rep < 4; ++rep) {
      for (size_t k = 0; k < 4; ++k) {
        w.insert(w.end(), static_cast<size_t>(N), order[(pos + k) % 4]);
      }
    }
    return w;
  }
  throw std::logic_error("no relator block " + to_string(Word{s}) + " after "
                         + to_string(Word{t}));
}

Letter other_generator(Letter s) {
  return make_letter(generator_of(s) == 0 ? 1 : 0);
}

Word drop_front(Word const& w, size_t k) {
  return subword(w, k, w.size());
}

Word drop_back(Word const& w, size_t k) {
  return subword(w, 0, w.size() - k);
}

}  // namespace

FencePath fence_path(Engine const& e, Word const& x0, Word const& y0, Word const& m0, int n,
                     int N) {
  if (n < 0 || N < 2 * n || N < 1) {
    throw std::invalid_argument("a fence needs N >= 2n");
  }
  Word const rN      = tv_relator(N);
  bool       present = false;
  for (auto const& r : e.relators()) {
    present |= same_cyclic_word(r, rN);
  }
  if (!present) {
    throw std::invalid_argument("r_" + std::to_string(N) + " is not a relator");
  }
  FencePath f;
  f.x = e.normal_form(x0);
  f.y = e.normal_form(y0);
  f.m = e.normal_form(m0);
  f.n = n;
  f.N = N;
  size_t d = e.distance(f.x, f.y);
  f.r      = e.distance(f.x, f.m);
  if (d > static_cast<size_t>(n)) {
    throw std::invalid_argument("d(x, y) = " + std::to_string(d) + " exceeds n");
  }
  if (f.r == 0) {
    throw std::invalid_argument("m must differ from x");
  }
  if (f.r > e.distance(f.y, f.m)) {
    throw std::invalid_argument("needs d(x, m) <= d(y, m)");
  }
  if (d == 0) {
    f.direct = true;
    return f;
  }

  auto violations = [&](Word const& label) {
    size_t bad = 0;
    Word   v   = f.x;
    Word   mi  = invert(f.m);
    for (size_t i = 0; i <= label.size(); ++i) {
      if (5 * e.length(concat(mi, v)) < f.r) {
        ++bad;
      }
      if (i < label.size()) {
        v = e.normal_form(concat(v, Word{label[i]}));
      }
    }
    return bad;
  };

  Word geodesic = e.normal_form(concat(invert(f.x), f.y));
  if (violations(geodesic) == 0) {
    f.direct = true;
    f.label  = geodesic;
    return f;
  }

  Word sigma = free_reduce(
      concat(e.normal_form(concat(invert(f.x), f.m)), e.normal_form(concat(invert(f.m), f.y))));
  std::vector<Letter> letter;
  std::vector<size_t> len;
  for (Letter c : sigma) {
    if (generator_of(c) > 1) {
      throw std::invalid_argument("fences need words in a and b only");
    }
    if (!letter.empty() && letter.back() == c) {
      ++len.back();
    } else {
      letter.push_back(c);
      len.push_back(1);
    }
  }
  size_t const k = letter.size();
  for (size_t i = 0; i < k; ++i) {
    if (len[i] > static_cast<size_t>(N)) {
      throw std::logic_error("block longer than N");
    }
    f.blocks.push_back(Word(len[i], letter[i]));
  }
  std::vector<Word> starts{f.x};
  for (size_t i = 0; i + 1 < k; ++i) {
    starts.push_back(e.normal_form(concat(starts.back(), f.blocks[i])));
  }

  size_t const L  = 16 * static_cast<size_t>(N);
  size_t const NN = static_cast<size_t>(N);

  struct Candidate {
    Word                     label;
    std::vector<RelatorCopy> copies;
    bool                     start_fix, end_fix;
    size_t                   bad;
  };
  auto build = [&](Letter t1, bool start_fix, int end_choice) {
    Candidate         c{{}, {}, start_fix, end_choice >= 0, 0};
    std::vector<Word> W(k);
    std::vector<Word> seg(k);
    for (size_t i = 0; i < k; ++i) {
      W[i] = copy_word(letter[i], i == 0 ? t1 : inverse(letter[i - 1]), N);
      c.copies.push_back({starts[i], W[i]});
    }
    if (k == 1) {
      seg[0] = invert(subword(W[0], len[0], L));
    } else {
      seg[0] = invert(subword(W[0], NN, L));
      for (size_t i = 1; i + 1 < k; ++i) {
        seg[i] = invert(subword(W[i], NN, 15 * NN + len[i - 1]));
      }
      seg[k - 1] = invert(subword(W[k - 1], len[k - 1], 15 * NN + len[k - 2]));
    }
    Word head, tail;
    if (start_fix) {
      // leaves x along the copy's last block and rejoins after N steps
      Word W0 = copy_word(inverse(t1), letter[0], N);
      c.copies.push_back({f.x, W0});
      head   = invert(subword(W0, NN, L));
      seg[0] = drop_front(seg[0], NN);
    }
    if (end_choice >= 0) {
      Letter u  = other_generator(letter[k - 1]);
      Word   Wk = copy_word(letter[k - 1], end_choice == 0 ? u : inverse(u), N);
      c.copies.push_back({f.y, Wk});
      seg[k - 1] = drop_back(seg[k - 1], NN - len[k - 1]);
      tail       = subword(Wk, NN - len[k - 1], L);
    }
    c.label = head;
    for (auto const& s : seg) {
      c.label = concat(c.label, s);
    }
    c.label = concat(c.label, tail);
    c.bad   = violations(c.label);
    return c;
  };

  Letter    g = other_generator(letter[0]);
  Candidate best{{}, {}, false, false, std::numeric_limits<size_t>::max()};
  for (auto [start_fix, end_choice] : {std::pair{false, -1}, std::pair{true, -1},
                                       std::pair{false, 0}, std::pair{false, 1},
                                       std::pair{true, 0}, std::pair{true, 1}}) {
    for (Letter t1 : {g, inverse(g)}) {
      auto c = build(t1, start_fix, end_choice);
      if (c.bad < best.bad) {
        best = std::move(c);
      }
      if (best.bad == 0) {
        break;
      }
    }
    if (best.bad == 0) {
      break;
    }
  }
  f.label     = best.label;
  f.copies    = best.copies;
  f.start_fix = best.start_fix;
  f.end_fix   = best.end_fix;
  return f;
}

FenceCheck verify_fence(Engine const& e, FencePath const& f) {
  FenceCheck c;
  c.length       = f.label.size();
  c.bound        = fence_bound(f.n, f.N);
  c.short_enough = static_cast<long>(c.length) <= c.bound;
  c.ends         = e.equal(concat(f.x, f.label), f.y);

  Word rN         = tv_relator(f.N);
  c.copies_closed = true;
  for (auto const& cp : f.copies) {
    c.copies_closed &= same_cyclic_word(cp.label, rN) && e.is_trivial(cp.label);
  }

  // Ball around m, translated to the identity.  r/5 <= n/8 whenever the
  // geodesic meets the forbidden ball.
  size_t r      = e.distance(f.x, f.m);
  size_t radius = std::max<size_t>((f.n + 7) / 8 + 1, (r + 4) / 5);
  auto   gens   = e.alphabet();
  CayleyBall around(e, gens.empty() ? std::vector<int>{0, 1} : gens, radius);
  c.closest = radius + 1;
  c.avoids  = true;
  Word mi   = invert(f.m);
  Word v    = f.x;
  for (size_t i = 0; i <= f.label.size(); ++i) {
    int id = around.lookup(e.normal_form(concat(mi, v)));
    if (id >= 0) {
      c.closest = std::min(c.closest, around.depth(id));
      if (5 * around.depth(id) < r) {
        c.avoids = false;
        if (c.detail.empty()) {
          c.detail = "vertex " + std::to_string(i) + " is at distance "
                     + std::to_string(around.depth(id)) + " from m";
        }
      }
    }
    if (i < f.label.size()) {
      v = e.normal_form(concat(v, Word{f.label[i]}));
    }
  }
  if (!c.ends) {
    c.detail = "path does not end at y";
  } else if (!c.short_enough) {
    c.detail = "length " + std::to_string(c.length) + " exceeds " + std::to_string(c.bound);
  } else if (!c.copies_closed) {
    c.detail = "a recorded copy is not a relator cycle";
  }
  c.ok = c.ends && c.avoids && c.short_enough && c.copies_closed;
  return c;
}

FenceInstance random_fence_instance(Engine const& e, int n, std::mt19937_64& rng) {
  if (n < 1) {
    throw std::invalid_argument("random fences need n >= 1");
  }
  auto random_word = [&](size_t len) {
    Word w;
    while (w.size() < len) {
      Letter x = make_letter(static_cast<int>(rng() % 2), rng() % 2 == 1);
      if (w.empty() || w.back() != inverse(x)) {
        w.push_back(x);
      }
    }
    return w;
  };
  while (true) {
    FenceInstance in;
    in.x   = e.normal_form(random_word(rng() % 5));
    Word g = e.normal_form(random_word(1 + rng() % static_cast<unsigned>(n)));
    if (g.empty()) {
      continue;
    }
    in.y     = e.normal_form(concat(in.x, g));
    size_t j = rng() % (g.size() + 1);
    in.m     = e.normal_form(concat(concat(in.x, subword(g, 0, j)), random_word(rng() % 2)));
    size_t rx = e.distance(in.x, in.m), ry = e.distance(in.y, in.m);
    if (rx > ry) {
      std::swap(in.x, in.y);
      std::swap(rx, ry);
    }
    if (rx > 0) {
      return in;
    }
  }
}

////////////////////////////////////////////////////////////////////////////
// Gap set recursion
////////////////////////////////////////////////////////////////////////////

GrowthFunction parse_growth_function(std::string const& text) {
  GrowthFunction g;
  g.name = text;
  auto number = [&](std::string const& s) {
    size_t used = 0;
    double v    = 0;
    try {
      v = std::stod(s, &used);
    } catch (std::exception const&) {
      used = 0;
    }
    if (used != s.size()) {
      throw std::invalid_argument("bad growth function '" + text + "'");
    }
    return v;
  };
  if (text == "0") {
    g.log2_value = [](double) { return -std::numeric_limits<double>::infinity(); };
  } else if (text == "t") {
    g.log2_value = [](double t) { return std::log2(t); };
  } else if (text.rfind("t^", 0) == 0) {
    double k     = number(text.substr(2));
    g.log2_value = [k](double t) { return k * std::log2(t); };
  } else if (text.rfind("2^(t^", 0) == 0 && text.back() == ')') {
    double a = number(text.substr(5, text.size() - 6));
    if (!(a > 0 && a < 1)) {
      throw std::invalid_argument("2^(t^A) is subexponential only for 0 < A < 1");
    }
    g.log2_value = [a](double t) { return std::pow(t, a); };
  } else {
    throw std::invalid_argument("bad growth function '" + text
                                + "' (use 0, t, t^K or 2^(t^A))");
  }
  return g;
}

double gap_exponent(double rho, double N) {
  return (N / 5.0 - 3.0) / (2.0 * rho);
}

double gap_threshold(double rho, double N) {
  double x = gap_exponent(rho, N);
  if (x > 1000) {
    throw BudgetExceeded("gap threshold exceeds double range");
  }
  return std::ceil(4.0 * std::exp2(x));
}

namespace {

bool admissible(double rho, std::vector<GrowthFunction> const& g, double N) {
  double rhs = gap_exponent(rho, N) - std::log2(N);
  for (auto const& f : g) {
    if (!(f.log2_value(N) < rhs)) {
      return false;
    }
  }
  return true;
}

}  // namespace

GapStep gap_set_next(double rho, std::vector<GrowthFunction> const& g, double N) {
  if (rho < 1 || N < 1) {
    throw std::invalid_argument("gap step needs rho >= 1 and N >= 1");
  }
  GapStep s;
  s.rho      = rho;
  s.N        = N;
  s.exponent = gap_exponent(rho, N);
  s.log2_rhs = s.exponent - std::log2(N);
  for (auto const& f : g) {
    double lhs = f.log2_value(N);
    s.log2_lhs.push_back(lhs);
    if (!(lhs < s.log2_rhs)) {
      throw std::invalid_argument("N too small: " + f.name + " at N = "
                                  + std::to_string(static_cast<long long>(N))
                                  + " is not below 2^exponent / N");
    }
  }
  s.threshold = gap_threshold(rho, N);
  return s;
}

GapSequence gap_set_sequence(double j1, std::vector<GrowthFunction> const& g, int steps,
                             double N_start) {
  if (j1 < 1) {
    throw std::invalid_argument("indices start at 1");
  }
  GapSequence seq;
  seq.J.push_back(j1);
  double N = std::max(1.0, N_start) - 1;
  for (int s = 1; s <= steps; ++s) {
    double jmax = seq.J.back();
    double rho  = 16 * jmax;
    std::vector<GrowthFunction> used(
        g.begin(), g.begin() + std::min<long>(s, static_cast<long>(g.size())));
    // doubling, then bisection down to an admissible boundary point
    double lo = N, hi = N + 1;
    while (!admissible(rho, used, hi)) {
      lo = hi;
      hi *= 2;
      if (hi > 1e300) {
        throw BudgetExceeded("no admissible N found");
      }
    }
    while (hi - lo > std::max(1.0, hi * 1e-12)) {
      double mid = std::floor((lo + hi) / 2);
      (admissible(rho, used, mid) ? hi : lo) = mid;
    }
    N         = hi;
    auto step = gap_set_next(rho, used, N);
    seq.steps.push_back(step);
    double need = std::ceil(step.threshold / 16);
    seq.J.push_back(std::max(jmax + 1, need));
  }
  return seq;
}

}  // namespace gsc
