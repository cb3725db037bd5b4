#include "tfbound/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tfbound/bounds.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/numerics.hpp"

namespace tfb {

namespace {

constexpr double kMatchTol = 1e-6;   // identification of equal elements
constexpr double kQuant = 1e7;       // quantization grid for hashing
constexpr double kTraceBucket = 1e-8;

double maxabs_diff(const Mat2& x, const Mat2& y) {
  return std::max(std::max(std::fabs(x.a - y.a), std::fabs(x.b - y.b)),
                  std::max(std::fabs(x.c - y.c), std::fabs(x.d - y.d)));
}

// sign normalization: flip so the first coordinate with |x| > 1e-6 is positive
Mat2 sign_norm(const Mat2& m) {
  const double coords[4] = {m.a, m.b, m.c, m.d};
  for (double c : coords) {
    if (std::fabs(c) > 1e-6) return c < 0.0 ? Mat2{-m.a, -m.b, -m.c, -m.d} : m;
  }
  return m;
}

std::uint64_t combine(std::uint64_t h, std::int64_t v) {
  h ^= std::uint64_t(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string word_string(const std::vector<std::int8_t>& w) {
  std::string s;
  s.reserve(w.size());
  for (std::int8_t l : w)
    s.push_back(l > 0 ? char('a' + l - 1) : char('A' - l - 1));
  return s;
}

}  // namespace

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

struct Ball::Index {
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;

  static std::uint64_t key_of(const std::int64_t q[4]) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i < 4; ++i) h = combine(h, q[i]);
    return h;
  }

  static void quantize(const Mat2& m, std::int64_t q[4], double frac[4]) {
    const double c[4] = {m.a, m.b, m.c, m.d};
    for (int i = 0; i < 4; ++i) {
      const double y = c[i] * kQuant;
      q[i] = std::llround(y);
      frac[i] = y - double(q[i]);  // in [-0.5, 0.5]
    }
  }

  void insert(const Mat2& m, int idx) {
    const Mat2 s = sign_norm(m);
    std::int64_t q[4];
    double frac[4];
    quantize(s, q, frac);
    buckets[key_of(q)].push_back(idx);
  }

  template <typename Eq>
  int find(const Mat2& m, const Eq& eq) const {
    const Mat2 s = sign_norm(m);
    std::int64_t q[4];
    double frac[4];
    quantize(s, q, frac);
    // probe neighbor cells for coordinates near a quantization boundary
    int nopt[4];
    for (int i = 0; i < 4; ++i) {
      nopt[i] = 0;
      if (0.5 - std::fabs(frac[i]) < kMatchTol * kQuant * 1e-7 + 2e-3)
        nopt[i] = frac[i] > 0 ? 1 : -1;
    }
    std::int64_t probe[4];
    for (int mask = 0; mask < 16; ++mask) {
      bool skip = false;
      for (int i = 0; i < 4; ++i) {
        const int off = (mask >> i) & 1;
        if (off && nopt[i] == 0) {
          skip = true;
          break;
        }
        probe[i] = q[i] + (off ? nopt[i] : 0);
      }
      if (skip) continue;
      auto it = buckets.find(key_of(probe));
      if (it == buckets.end()) continue;
      for (int idx : it->second)
        if (eq(idx, s)) return idx;
    }
    return -1;
  }
};

int Ball::find(const Mat2& m) const {
  if (!index) return -1;
  return index->find(m, [this](int idx, const Mat2& s) {
    return maxabs_diff(sign_norm(elems[size_t(idx)].m), s) <= kMatchTol;
  });
}

FuchsianGroup load_group(const GroupConfig& cfg) {
  if (cfg.generators.empty()) throw config_error("load_group: no generators");
  if (cfg.generators.size() > 26)
    throw config_error("load_group: at most 26 generators supported");
  FuchsianGroup g;
  g.label = cfg.label;
  g.volume = cfg.volume;
  g.relation = cfg.relation;
  bool any_hyperbolic = false;
  for (size_t k = 0; k < cfg.generators.size(); ++k) {
    const auto& r = cfg.generators[k];
    Mat2 m{r[0], r[1], r[2], r[3]};
    const double det = m.a * m.d - m.b * m.c;
    if (std::fabs(det - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "load_group: generator " << k + 1 << " has det " << det
         << " (|det-1| > 1e-6)";
      throw config_error(os.str());
    }
    const double scl = 1.0 / std::sqrt(det);
    m = {m.a * scl, m.b * scl, m.c * scl, m.d * scl};
    const double t = std::fabs(mat_tr(m));
    if (t < 2.0 - 1e-8) {
      std::ostringstream os;
      os << "load_group: generator " << k + 1 << " is elliptic (|tr| = " << t
         << ")";
      throw config_error(os.str());
    }
    if (t > 2.0 + 1e-9) any_hyperbolic = true;
    g.gen.push_back(m);
    g.gen_inv.push_back(mat_inv(m));
  }
  if (!any_hyperbolic)
    throw config_error("load_group: no hyperbolic generator (identity-only or "
                       "parabolic input)");
  if (!g.relation.empty()) {
    Mat2 w;
    for (int l : g.relation) {
      if (l == 0 || std::abs(l) > int(g.gen.size()))
        throw config_error("load_group: relation letter out of range");
      w = mat_mul(w, l > 0 ? g.gen[size_t(l - 1)] : g.gen_inv[size_t(-l - 1)]);
    }
    const Mat2 id;
    const Mat2 nid{-1, 0, 0, -1};
    if (std::min(maxabs_diff(w, id), maxabs_diff(w, nid)) > 1e-8)
      throw config_error("load_group: relation does not evaluate to +-I");
  }
  return g;
}

Ball enumerate_closure(const FuchsianGroup& g, int depth, double disp_cap,
                       std::size_t element_cap) {
  if (depth < 1) throw domain_error("enumerate_closure: depth >= 1");
  if (!(disp_cap > 0.0) || disp_cap > 600.0)
    throw domain_error("enumerate_closure: displacement cap out of range");
  Ball ball;
  ball.displacement_cap = disp_cap;
  ball.index = std::make_shared<Ball::Index>();
  const double frob_cap = 2.0 * std::cosh(disp_cap) + 1e-9;
  const int ng = int(g.gen.size());

  ball.elems.push_back(BallElement{});  // identity
  ball.index->insert(ball.elems[0].m, 0);

  std::vector<int> frontier{0};
  auto matches = [&ball](int idx, const Mat2& s) {
    return maxabs_diff(sign_norm(ball.elems[size_t(idx)].m), s) <= kMatchTol;
  };

  for (int level = 1; level <= depth; ++level) {
    std::vector<int> next;
    for (int idx : frontier) {
      const std::int8_t last = ball.elems[size_t(idx)].word.empty()
                                   ? std::int8_t(0)
                                   : ball.elems[size_t(idx)].word.back();
      for (int li = 0; li < 2 * ng; ++li) {
        const std::int8_t letter =
            std::int8_t(li % 2 == 0 ? li / 2 + 1 : -(li / 2 + 1));
        if (letter == -last) continue;  // free reduction
        const Mat2& gm =
            letter > 0 ? g.gen[size_t(letter - 1)] : g.gen_inv[size_t(-letter - 1)];
        const Mat2 M = mat_mul(ball.elems[size_t(idx)].m, gm);
        if (frob2(M) > frob_cap) continue;
        if (ball.index->find(M, matches) >= 0) continue;
        BallElement e;
        e.m = M;
        e.word = ball.elems[size_t(idx)].word;
        e.word.push_back(letter);
        e.level = level;
        const int new_idx = int(ball.elems.size());
        ball.elems.push_back(std::move(e));
        ball.index->insert(M, new_idx);
        next.push_back(new_idx);
        if (ball.elems.size() > element_cap) {
          ball.cap_hit = true;
          ball.level_sizes.push_back(next.size());
          return ball;
        }
      }
    }
    ball.level_sizes.push_back(next.size());
    if (next.empty()) {
      ball.closed = true;
      break;
    }
    frontier = std::move(next);
  }
  return ball;
}

ojson BallSummary::to_json() const {
  ojson j;
  j["elements"] = elements;
  j["closure_elements"] = closure_elements;
  j["closed"] = closed;
  ojson ls = ojson::array();
  for (std::size_t s : level_sizes) ls.push_back(s);
  j["level_sizes"] = ls;
  return j;
}

BallSummary enumerate_ball(const FuchsianGroup& g, int max_word_length,
                           double trace_cap, const EnumerationLimits& lim) {
  if (!(trace_cap >= 2.0)) throw domain_error("enumerate_ball: trace_cap >= 2");
  const double disp_cap =
      2.0 * std::acosh(std::max(trace_cap / 2.0, 1.0)) + lim.ball_margin;
  Ball ball = enumerate_closure(g, max_word_length, disp_cap, lim.element_cap);
  BallSummary s;
  s.closure_elements = ball.elems.size();
  s.level_sizes = ball.level_sizes;
  s.closed = ball.closed && !ball.cap_hit;
  for (size_t i = 1; i < ball.elems.size(); ++i)
    if (std::fabs(mat_tr(ball.elems[i].m)) <= trace_cap) ++s.elements;
  return s;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[size_t(x)] != x) {
      parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
      x = parent[size_t(x)];
    }
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);  // min-index root keeps things deterministic
    parent[size_t(y)] = x;
    return true;
  }
};

// projective axis endpoints of a hyperbolic element on the boundary circle
struct Axis {
  double p[2], q[2];
};

Axis axis_of(const Mat2& m) {
  Axis ax;
  const double disc = mat_tr(m) * mat_tr(m) - 4.0;
  const double root = std::sqrt(std::max(disc, 0.0));
  if (std::fabs(m.c) > 1e-12) {
    ax.p[0] = (m.a - m.d) + root;
    ax.p[1] = 2.0 * m.c;
    ax.q[0] = (m.a - m.d) - root;
    ax.q[1] = 2.0 * m.c;
  } else {
    ax.p[0] = 1.0;
    ax.p[1] = 0.0;  // infinity
    ax.q[0] = m.b;
    ax.q[1] = m.d - m.a;
    if (std::fabs(ax.q[0]) + std::fabs(ax.q[1]) < 1e-12) {
      ax.q[0] = 0.0;
      ax.q[1] = 1.0;
    }
  }
  return ax;
}

double chord(const double u[2], const double v[2]) {
  const double cross = std::fabs(u[0] * v[1] - u[1] * v[0]);
  const double nu = std::hypot(u[0], u[1]), nv = std::hypot(v[0], v[1]);
  return cross / (nu * nv);
}

double axis_distance(const Mat2& x, const Mat2& y) {
  const Axis ax = axis_of(x), ay = axis_of(y);
  const double direct = std::max(chord(ax.p, ay.p), chord(ax.q, ay.q));
  const double swapped = std::max(chord(ax.p, ay.q), chord(ax.q, ay.p));
  return std::min(direct, swapped);
}

}  // namespace

Spectrum length_spectrum(const FuchsianGroup& g, double l_max, int depth,
                         const SpectrumOptions& opts) {
  if (!(l_max > 0.0)) throw domain_error("length_spectrum: l_max > 0");
  if (depth < 2) throw domain_error("length_spectrum: depth >= 2");
  Spectrum spec;
  spec.label = g.label;
  spec.volume = g.volume;
  spec.l_max = l_max;
  spec.depth = depth;
  spec.merged_inverses = opts.merge_inverses;

  const double disp_cap = l_max + opts.limits.ball_margin;
  Ball ball = enumerate_closure(g, depth, disp_cap, opts.limits.element_cap);
  spec.level_sizes = ball.level_sizes;
  const double trace_cap =
      opts.limits.trace_cap > 0.0
          ? opts.limits.trace_cap
          : 2.0 * std::cosh(0.5 * l_max) * (1.0 + 1e-12) + 1e-9;
  spec.trace_cap = trace_cap;

  const size_t ne = ball.elems.size();
  const Mat2 id;
  const Mat2 nid{-1, 0, 0, -1};
  std::vector<char> selected(ne, 0);
  for (size_t i = 1; i < ne; ++i) {
    const Mat2& m = ball.elems[i].m;
    if (std::min(maxabs_diff(m, id), maxabs_diff(m, nid)) < 1e-8) continue;
    const double t = std::fabs(mat_tr(m));
    if (t < 2.0 - 1e-8) {
      throw domain_error("length_spectrum: elliptic element found (group has "
                         "torsion), word " +
                         word_string(ball.elems[i].word));
    }
    if (t < 2.0 + 1e-8) {
      throw domain_error(
          "length_spectrum: near-parabolic element, word " +
          word_string(ball.elems[i].word) +
          " (input not a cocompact torsion-free group, or precision loss)");
    }
    if (t <= trace_cap) selected[i] = 1;
  }

  // conjugacy classes: union-find over single-letter conjugation edges
  const int ng = int(g.gen.size());
  UnionFind uf(ne);
  for (size_t i = 1; i < ne; ++i) {
    if (!selected[i]) continue;
    for (int li = 0; li < 2 * ng; ++li) {
      const Mat2& cg = li % 2 == 0 ? g.gen[size_t(li / 2)] : g.gen_inv[size_t(li / 2)];
      const Mat2& cgi = li % 2 == 0 ? g.gen_inv[size_t(li / 2)] : g.gen[size_t(li / 2)];
      const Mat2 conj = mat_mul(mat_mul(cg, ball.elems[i].m), cgi);
      const int j = ball.find(conj);
      if (j >= 1 && selected[size_t(j)]) uf.unite(int(i), j);
    }
  }

  struct RawClass {
    int rep = -1;
    std::vector<int> members;
  };

  auto collect_classes = [&]() {
    std::unordered_map<int, int> root_to_class;
    std::vector<RawClass> cls;
    for (size_t i = 1; i < ne; ++i) {
      if (!selected[i]) continue;
      const int r = uf.find(int(i));
      auto it = root_to_class.find(r);
      if (it == root_to_class.end()) {
        it = root_to_class.emplace(r, int(cls.size())).first;
        cls.push_back(RawClass{});
      }
      RawClass& c = cls[size_t(it->second)];
      c.members.push_back(int(i));
      if (c.rep < 0 || frob2(ball.elems[i].m) <
                           frob2(ball.elems[size_t(c.rep)].m) - 1e-12)
        c.rep = int(i);
    }
    return cls;
  };

  std::vector<RawClass> raw = collect_classes();

  // fallback pass: equal-trace classes re-examined with a bounded conjugator
  // search (covers conjugation paths whose intermediates leave the ball)
  const double conj_cap =
      2.0 * std::cosh(std::min(0.5 * l_max + opts.limits.conj_margin, disp_cap)) +
      1e-9;
  std::vector<int> conjugators;
  for (size_t i = 0; i < ne; ++i)
    if (frob2(ball.elems[i].m) <= conj_cap) conjugators.push_back(int(i));

  for (int round = 0; round < 3; ++round) {
    std::vector<size_t> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return std::fabs(mat_tr(ball.elems[size_t(raw[x].rep)].m)) <
             std::fabs(mat_tr(ball.elems[size_t(raw[y].rep)].m));
    });
    long merges = 0;
    size_t b0 = 0;
    while (b0 < order.size()) {
      size_t b1 = b0 + 1;
      const double t0 = std::fabs(mat_tr(ball.elems[size_t(raw[order[b0]].rep)].m));
      while (b1 < order.size() &&
             std::fabs(std::fabs(mat_tr(ball.elems[size_t(raw[order[b1]].rep)].m)) -
                       t0) <= kTraceBucket)
        ++b1;
      if (b1 - b0 > 1) {
        for (size_t x = b0; x < b1; ++x) {
          const Mat2& rep = ball.elems[size_t(raw[order[x]].rep)].m;
          for (int w : conjugators) {
            const Mat2& wm = ball.elems[size_t(w)].m;
            const Mat2 cnj = mat_mul(mat_mul(wm, rep), mat_inv(wm));
            const int j = ball.find(cnj);
            if (j >= 1 && selected[size_t(j)] &&
                uf.find(j) != uf.find(raw[order[x]].rep))
              merges += uf.unite(j, raw[order[x]].rep) ? 1 : 0;
          }
        }
      }
      b0 = b1;
    }
    if (merges == 0) break;
    spec.fallback_merges += merges;
    raw = collect_classes();
  }

  // class records, sorted by (length, word)
  struct Scratch {
    ConjClass c;
    std::vector<int> members;
  };
  std::vector<Scratch> scratch;
  for (const RawClass& rc : raw) {
    Scratch s;
    s.c.rep = rc.rep;
    s.c.trace = std::fabs(mat_tr(ball.elems[size_t(rc.rep)].m));
    s.c.length = 2.0 * std::acosh(0.5 * s.c.trace);
    s.c.size = long(rc.members.size());
    int flv = std::numeric_limits<int>::max();
    const std::vector<std::int8_t>* best_word = nullptr;
    for (int mi : rc.members) {
      flv = std::min(flv, ball.elems[size_t(mi)].level);
      const auto& w = ball.elems[size_t(mi)].word;
      if (!best_word || w.size() < best_word->size() ||
          (w.size() == best_word->size() &&
           word_string(w) < word_string(*best_word)))
        best_word = &w;
    }
    s.c.first_level = flv;
    s.c.word = best_word ? word_string(*best_word) : "";
    s.members = rc.members;
    scratch.push_back(std::move(s));
  }
  std::sort(scratch.begin(), scratch.end(), [](const Scratch& x, const Scratch& y) {
    if (x.c.length != y.c.length) return x.c.length < y.c.length;
    if (x.c.word.size() != y.c.word.size())
      return x.c.word.size() < y.c.word.size();
    return x.c.word < y.c.word;
  });

  std::vector<int> class_of(ne, -1);
  for (size_t ci = 0; ci < scratch.size(); ++ci)
    for (int mi : scratch[ci].members) class_of[size_t(mi)] = int(ci);

  // uncertainty: equal-trace distinct classes whose axes are too close to call
  for (size_t i = 0; i < scratch.size(); ++i) {
    for (size_t j = i + 1; j < scratch.size(); ++j) {
      if (scratch[j].c.trace - scratch[i].c.trace > kTraceBucket) break;
      const Mat2& mi = ball.elems[size_t(scratch[i].c.rep)].m;
      const Mat2& mj = ball.elems[size_t(scratch[j].c.rep)].m;
      const double d = axis_distance(mi, mj);
      if (d >= 1e-6) continue;  // clearly distinct geodesics
      if (d < 1e-8) {
        // same axis: legitimate for an inverse pair, ambiguous otherwise
        const Mat2 inv = mat_inv(mi);
        if (std::min(maxabs_diff(sign_norm(inv), sign_norm(mj)),
                     maxabs_diff(sign_norm(Mat2{-inv.a, -inv.b, -inv.c, -inv.d}),
                                 sign_norm(mj))) <= kMatchTol)
          continue;
      }
      scratch[i].c.uncertain = scratch[j].c.uncertain = true;
    }
  }

  // reduce a matrix into the ball by greedy single-letter conjugation
  auto reduce_to_ball = [&](Mat2 M) -> int {
    for (int it = 0; it < 400; ++it) {
      const int j = ball.find(M);
      if (j >= 0) return j;
      double best = frob2(M);
      Mat2 bestM = M;
      bool improved = false;
      for (int li = 0; li < 2 * ng; ++li) {
        const Mat2& cg = li % 2 == 0 ? g.gen[size_t(li / 2)] : g.gen_inv[size_t(li / 2)];
        const Mat2& cgi = li % 2 == 0 ? g.gen_inv[size_t(li / 2)] : g.gen[size_t(li / 2)];
        const Mat2 cand = mat_mul(mat_mul(cg, M), cgi);
        if (frob2(cand) < best - 1e-12) {
          best = frob2(cand);
          bestM = cand;
          improved = true;
        }
      }
      if (!improved) return -1;
      M = bestM;
    }
    return -1;
  };

  // primitivity: ascending lengths, k-th roots among shorter classes
  for (size_t ci = 0; ci < scratch.size(); ++ci) {
    ConjClass& c = scratch[ci].c;
    const double min_len = scratch.empty() ? 0.0 : scratch[0].c.length;
    for (int k = 2; double(k) * min_len <= c.length + 1e-6; ++k) {
      const double target = c.length / double(k);
      if (target < min_len - 1e-6) break;
      bool found = false;
      for (size_t pj = 0; pj < ci && !found; ++pj) {
        if (std::fabs(scratch[pj].c.length - target) > 1e-6) continue;
        Mat2 P = ball.elems[size_t(scratch[pj].c.rep)].m;
        Mat2 Q;
        for (int e = 0; e < k; ++e) Q = mat_mul(Q, P);
        const int j = reduce_to_ball(Q);
        if (j >= 1 && class_of[size_t(j)] == int(ci)) {
          const ConjClass& root = scratch[pj].c;
          c.primitive = false;
          c.root_class = root.primitive ? int(pj) : root.root_class;
          c.power = k * root.power;
          found = true;
        }
      }
      if (found) break;
    }
  }

  // inverse classes
  for (size_t ci = 0; ci < scratch.size(); ++ci) {
    const Mat2 inv = mat_inv(ball.elems[size_t(scratch[ci].c.rep)].m);
    int j = ball.find(inv);
    if (j < 0) j = reduce_to_ball(inv);
    scratch[ci].c.inverse_class =
        (j >= 1 && class_of[size_t(j)] >= 0) ? class_of[size_t(j)] : -1;
  }

  for (Scratch& s : scratch) spec.classes.push_back(s.c);

  // completeness
  if (ball.closed && !ball.cap_hit) {
    spec.completeness = Completeness::fixpoint;
    spec.horizon = l_max;
  } else {
    std::vector<double> new_min(size_t(depth) + 1,
                                std::numeric_limits<double>::infinity());
    for (const ConjClass& c : spec.classes)
      new_min[size_t(c.first_level)] =
          std::min(new_min[size_t(c.first_level)], c.length);
    const double m1 = new_min[size_t(depth)];
    const double m2 = depth >= 1 ? new_min[size_t(depth - 1)] : m1;
    if (ball.cap_hit) {
      spec.completeness = Completeness::incomplete;
      spec.horizon = 0.0;
    } else if (m1 > l_max && m2 > l_max) {
      spec.completeness = Completeness::heuristic;
      spec.horizon = l_max;
    } else {
      spec.completeness = Completeness::incomplete;
      spec.horizon = std::max(0.0, std::min({m1, m2, l_max}) - 1e-9);
    }
  }

  spec.uncertain_classes = 0;
  for (const ConjClass& c : spec.classes)
    if (c.uncertain) ++spec.uncertain_classes;

  // systole and oriented kissing number (certain classes only)
  spec.systole = 0.0;
  spec.kiss = 0;
  for (const ConjClass& c : spec.classes) {
    if (c.uncertain) continue;
    if (spec.kiss == 0) {
      spec.systole = c.length;
      spec.kiss = 1;
    } else if (c.length <= spec.systole + 1e-8) {
      ++spec.kiss;
    } else {
      break;
    }
  }

  // aggregated entries; unoriented view collapses inverse pairs
  auto push_entries = [&](const std::vector<const ConjClass*>& cs) {
    size_t i = 0;
    while (i < cs.size()) {
      size_t j = i;
      while (j < cs.size() && cs[j]->length - cs[i]->length <= 1e-8) ++j;
      long prim = 0, nonprim = 0;
      const ConjClass* prim_rep = nullptr;
      const ConjClass* nonprim_rep = nullptr;
      for (size_t k = i; k < j; ++k) {
        if (cs[k]->primitive) {
          ++prim;
          if (!prim_rep) prim_rep = cs[k];
        } else {
          ++nonprim;
          if (!nonprim_rep) nonprim_rep = cs[k];
        }
      }
      if (prim > 0)
        spec.entries.push_back(
            {prim_rep->length, prim, true, prim_rep->word});
      if (nonprim > 0)
        spec.entries.push_back(
            {nonprim_rep->length, nonprim, false, nonprim_rep->word});
      i = j;
    }
  };

  std::vector<const ConjClass*> v;
  for (size_t ci = 0; ci < spec.classes.size(); ++ci) {
    const ConjClass& c = spec.classes[ci];
    if (c.uncertain) continue;
    if (opts.merge_inverses && c.inverse_class >= 0 &&
        c.inverse_class < int(ci))
      continue;  // inverse partner already counted
    v.push_back(&c);
  }
  push_entries(v);

  return spec;
}

long empirical_count(const Spectrum& s, double a, double b,
                     bool primitive_only) {
  if (b > s.horizon + 1e-9)
    throw incomplete_error(
        "empirical_count: interval end exceeds the certified horizon");
  long n = 0;
  for (const ConjClass& c : s.classes) {
    if (c.uncertain) continue;
    if (primitive_only && !c.primitive) continue;
    if (c.length >= a - 1e-9 && c.length <= b + 1e-9) ++n;
  }
  return n;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "length,multiplicity,primitive,word\n";
  char buf[64];
  for (const SpectrumEntry& e : s.entries) {
    std::snprintf(buf, sizeof buf, "%.12g,%ld,%d,", round12(e.length),
                  e.multiplicity, e.primitive ? 1 : 0);
    out += buf;
    out += e.word;
    out += '\n';
  }
  return out;
}

ojson spectrum_summary(const Spectrum& s) {
  ojson j;
  j["group"] = s.label;
  j["volume"] = num(s.volume);
  j["l_max"] = num(s.l_max);
  j["depth"] = s.depth;
  j["trace_cap"] = num(s.trace_cap);
  j["merged_inverses"] = s.merged_inverses;
  switch (s.completeness) {
    case Completeness::fixpoint: j["completeness"] = "fixpoint"; break;
    case Completeness::heuristic: j["completeness"] = "heuristic"; break;
    case Completeness::incomplete: j["completeness"] = "incomplete"; break;
  }
  j["horizon"] = num(s.horizon);
  j["systole"] = num(s.systole);
  j["kiss"] = s.kiss;
  j["classes"] = s.classes.size();
  j["entries"] = s.entries.size();
  j["uncertain_classes"] = s.uncertain_classes;
  j["fallback_merges"] = s.fallback_merges;
  ojson ls = ojson::array();
  for (std::size_t x : s.level_sizes) ls.push_back(x);
  j["level_sizes"] = ls;
  return j;
}

ojson spectrum_json(const Spectrum& s) {
  ojson j = spectrum_summary(s);
  ojson arr = ojson::array();
  for (const SpectrumEntry& e : s.entries) {
    arr.push_back({{"length", num(e.length)},
                   {"multiplicity", e.multiplicity},
                   {"primitive", e.primitive},
                   {"word", e.word}});
  }
  j["spectrum"] = arr;
  return j;
}

ojson validate_bounds(const Spectrum& s, const ExternalConstants& ext,
                      double delta, const std::vector<double>& Ls,
                      double tol) {
  if (!(s.volume > 0.0))
    throw config_error("validate_bounds: group volume not configured");
  if (!s.complete())
    throw incomplete_error("validate_bounds: spectrum not certified complete");
  ojson out;
  out["group"] = s.label;
  out["volume"] = num(s.volume);
  out["systole"] = num(s.systole);
  out["delta"] = num(delta);
  bool pass = true;
  ojson checks = ojson::array();

  {
    ManifoldParams mp{2, s.volume, s.systole};
    const BoundReport kb = kiss_upper_bound(mp, ext, tol);
    ojson c;
    c["name"] = "kiss_vs_upper_bound";
    c["empirical"] = s.kiss;
    c["bound"] = num(kb.bound);
    c["pass"] = double(s.kiss) <= kb.bound * (1.0 + 1e-12);
    pass = pass && c["pass"].get<bool>();
    checks.push_back(c);
  }

  for (double L : Ls) {
    if (L > s.horizon + 1e-9) continue;
    ojson c;
    c["L"] = num(L);
    const long cum = empirical_count(s, 0.0, L, true);
    c["cumulative_primitive"] = cum;
    const BoundReport up = cumulative_upper(2, delta, s.volume, L, ext, tol);
    c["cumulative_upper"] = num(up.bound);
    bool ok = double(cum) <= up.bound * (1.0 + 1e-12);
    const BoundReport lo = cumulative_lower(2, delta, s.volume, L, ext, tol);
    if (lo.vacuous) {
      c["cumulative_lower"] = "vacuous";
    } else {
      c["cumulative_lower"] = num(lo.bound);
      ok = ok && double(cum) >= lo.bound * (1.0 - 1e-12);
    }
    if (L + delta <= s.horizon + 1e-9) {
      const long win = empirical_count(s, L - delta, L + delta, true);
      c["window_primitive"] = win;
      const BoundReport wu =
          interval_count_upper(2, delta, s.volume, L, ext, tol);
      c["window_upper"] = num(wu.bound);
      ok = ok && double(win) <= wu.bound * (1.0 + 1e-12);
      const BoundReport wl =
          interval_count_lower(2, delta, s.volume, L, ext, tol);
      if (wl.vacuous) {
        c["window_lower"] = "vacuous";
      } else {
        c["window_lower"] = num(wl.bound);
        ok = ok && double(win) >= wl.bound * (1.0 - 1e-12);
      }
    }
    c["asymptotic_ratio"] =
        num(double(cum) / pgt_asymptotic(2, L));
    c["pass"] = ok;
    pass = pass && ok;
    checks.push_back(c);
  }

  out["checks"] = checks;
  out["pass"] = pass;
  return out;
}

}  // namespace tfb
