#pragma once

// Oriented framed links as Morse event sequences (read bottom to top), their
// linking matrix and signature, bead collection and the renormalized
// Hennings-Kauffman-Radford invariant.
//
// Bead conventions. Every crossing is drawn with both strands read upward:
// the strand on the bottom-left/top-right line and the strand on the
// bottom-right/top-left line. Labels, read upward:
//   over strand on the BL-TR line ("L"): over r_i, under s_i      (R)
//   over strand on the BR-TL line ("R"): over S^{-1}(r_i), under s_i  (R^{-1})
// A strand traversed downward collects S(x) for a label x. Extrema traversed
// left to right give g on a cap and g^{-1} on a cup; traversed right to left
// they give nothing. Beads multiply on the left in collection order, starting
// at the component's base point.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <tuple>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hopfknot/double.hpp"

namespace hopfknot {

enum class EventType { Cup, Cap, Cross };
enum class Turn { Ccw, Cw };
enum class CrossKind { L, R };  // which bottom strand passes over

struct MorseEvent {
  EventType type = EventType::Cup;
  std::size_t at = 0;
  std::optional<Turn> orient;  // required on cups, optional (checked) on caps
  CrossKind kind = CrossKind::L;
};

/// Wire at position `slot` just above event `event`.
struct Basepoint {
  std::size_t event = 0;
  std::size_t slot = 0;
  std::optional<std::size_t> component;
};

struct MorseLink {
  std::vector<MorseEvent> events;
  std::vector<Basepoint> basepoints;
};

inline MorseEvent cup(std::size_t at, Turn o = Turn::Ccw) { return {EventType::Cup, at, o, CrossKind::L}; }
inline MorseEvent cap(std::size_t at, std::optional<Turn> o = std::nullopt) { return {EventType::Cap, at, o, CrossKind::L}; }
inline MorseEvent cross(std::size_t at, CrossKind k) { return {EventType::Cross, at, std::nullopt, k}; }

/// One event met while walking a component in its orientation.
struct Passage {
  EventType type;
  std::size_t event;
  bool left_to_right = false;  // extrema
  bool over = false;           // crossings
  bool upward = false;         // crossings
  bool on_bl_tr = false;       // crossings: strand lies on the BL-TR line
};

struct CrossingInfo {
  std::size_t event;
  std::size_t over_component, under_component;
  int sign;
};

struct TracedLink {
  std::vector<std::vector<Passage>> components;  // from each base point, in orientation order
  std::vector<CrossingInfo> crossings;
  std::vector<std::size_t> crossing_of_event;  // event -> crossing number (or npos)
};

namespace detail {

struct WireGrid {
  std::vector<std::size_t> width;   // width after each event
  std::vector<std::size_t> offset;  // wire id of (level, 0)
  std::size_t total = 0;
  std::size_t id(std::size_t level, std::size_t slot) const { return offset[level] + slot; }
};

inline WireGrid build_grid(const std::vector<MorseEvent>& ev) {
  WireGrid g;
  std::size_t w = 0;
  for (std::size_t e = 0; e < ev.size(); ++e) {
    auto bad = [&](const std::string& why) {
      throw Error(ErrorCode::MalformedEvents, "event " + std::to_string(e) + ": " + why);
    };
    const MorseEvent& x = ev[e];
    switch (x.type) {
      case EventType::Cup:
        if (x.at > w) bad("cup position beyond width");
        if (!x.orient) bad("cup without orientation");
        w += 2;
        break;
      case EventType::Cap:
        if (x.at + 1 >= w) bad("cap position beyond width");
        w -= 2;
        break;
      case EventType::Cross:
        if (x.at + 1 >= w) bad("crossing position beyond width");
        break;
    }
    g.offset.push_back(g.total);
    g.width.push_back(w);
    g.total += w;
  }
  if (w != 0) throw Error(ErrorCode::MalformedEvents, "strands left open at the top");
  return g;
}

struct Step {
  std::size_t level, slot;
  bool up;
  std::optional<Passage> passage;
};

/// Moves one event further along the strand from wire (level, slot).
inline Step step(const std::vector<MorseEvent>& ev, std::size_t level, std::size_t slot, bool up) {
  if (up) {
    std::size_t e = level + 1;
    const MorseEvent& x = ev[e];
    const std::size_t at = x.at;
    switch (x.type) {
      case EventType::Cross:
        if (slot == at || slot == at + 1) {
          bool bl = slot == at;
          bool over = (x.kind == CrossKind::L) == bl;
          return {e, bl ? at + 1 : at, true, Passage{EventType::Cross, e, false, over, true, bl}};
        }
        return {e, slot, true, std::nullopt};
      case EventType::Cap:
        if (slot == at || slot == at + 1)
          return {level, slot == at ? at + 1 : at, false, Passage{EventType::Cap, e, slot == at, false, false, false}};
        return {e, slot < at ? slot : slot - 2, true, std::nullopt};
      case EventType::Cup:
        return {e, slot < at ? slot : slot + 2, true, std::nullopt};
    }
  } else {
    std::size_t e = level;
    const MorseEvent& x = ev[e];
    const std::size_t at = x.at;
    switch (x.type) {
      case EventType::Cross:
        if (slot == at || slot == at + 1) {
          // top-left connects to bottom-right (BR-TL line), top-right to bottom-left
          bool bl_line = slot == at + 1;
          bool over = (x.kind == CrossKind::L) == bl_line;
          return {e - 1, bl_line ? at : at + 1, false, Passage{EventType::Cross, e, false, over, false, bl_line}};
        }
        return {e - 1, slot, false, std::nullopt};
      case EventType::Cup:
        if (slot == at || slot == at + 1)
          return {level, slot == at ? at + 1 : at, true, Passage{EventType::Cup, e, slot == at, false, false, false}};
        return {e - 1, slot < at ? slot : slot - 2, false, std::nullopt};
      case EventType::Cap:
        return {e - 1, slot < at ? slot : slot + 2, false, std::nullopt};
    }
  }
  return {};
}

inline Passage reversed(Passage p) {
  p.left_to_right = !p.left_to_right;
  p.upward = !p.upward;
  return p;
}

}  // namespace detail

/// Traces components, fixes orientations from cups, checks cap orientations
/// and base points, and lists passages from each base point.
inline TracedLink trace_link(const MorseLink& L) {
  const auto& ev = L.events;
  detail::WireGrid grid = detail::build_grid(ev);
  std::vector<long> comp_of_wire(grid.total, -1);
  struct Raw {
    std::vector<std::pair<std::size_t, std::size_t>> wires;  // (level, slot) with traversal direction
    std::vector<bool> wire_up;
    std::vector<Passage> passages;  // passages[k] is met after wires[k]
  };
  std::vector<Raw> raws;
  for (std::size_t lvl = 0; lvl < ev.size(); ++lvl)
    for (std::size_t s = 0; s < grid.width[lvl]; ++s) {
      if (comp_of_wire[grid.id(lvl, s)] >= 0) continue;
      Raw r;
      std::size_t cl = lvl, cs = s;
      bool up = true;
      do {
        comp_of_wire[grid.id(cl, cs)] = static_cast<long>(raws.size());
        r.wires.push_back({cl, cs});
        r.wire_up.push_back(up);
        // advance until a wire change that carries a passage or a plain move
        detail::Step st = detail::step(ev, cl, cs, up);
        r.passages.push_back(st.passage.value_or(Passage{EventType::Cup, static_cast<std::size_t>(-1)}));
        cl = st.level, cs = st.slot, up = st.up;
      } while (!(cl == lvl && cs == s && up));
      raws.push_back(std::move(r));
    }

  const std::size_t nc = raws.size();
  TracedLink out;
  out.components.resize(nc);
  std::vector<bool> reverse(nc, false);
  for (std::size_t c = 0; c < nc; ++c) {
    const Passage* first_cup = nullptr;
    for (const auto& p : raws[c].passages)
      if (p.type == EventType::Cup && p.event != static_cast<std::size_t>(-1)) {
        first_cup = &p;
        break;
      }
    if (!first_cup) throw Error(ErrorCode::MalformedEvents, "component without a cup");
    bool ccw_traced = first_cup->left_to_right;
    reverse[c] = ccw_traced != (*ev[first_cup->event].orient == Turn::Ccw);
    for (const auto& p0 : raws[c].passages) {
      if (p0.event == static_cast<std::size_t>(-1) || p0.type == EventType::Cross) continue;
      Passage p = reverse[c] ? detail::reversed(p0) : p0;
      const auto& o = ev[p.event].orient;
      if (!o) continue;
      // a ccw cup is crossed left to right, a ccw cap right to left
      bool expect_ltr = (p.type == EventType::Cup) == (*o == Turn::Ccw);
      if (p.left_to_right != expect_ltr)
        throw Error(ErrorCode::MalformedEvents, "event " + std::to_string(p.event) + ": orientation disagrees with its component");
    }
  }

  // base points: default to the first traced wire of each component
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> bp(nc);
  for (const auto& b : L.basepoints) {
    if (b.event >= ev.size() || b.slot >= grid.width[b.event])
      throw Error(ErrorCode::BasepointError, "base point at event " + std::to_string(b.event) + " slot " +
                                                 std::to_string(b.slot) + " is not on a wire");
    std::size_t c = static_cast<std::size_t>(comp_of_wire[grid.id(b.event, b.slot)]);
    if (b.component && *b.component != c)
      throw Error(ErrorCode::BasepointError, "base point on component " + std::to_string(c) + ", declared " +
                                                 std::to_string(*b.component));
    if (bp[c]) throw Error(ErrorCode::BasepointError, "two base points on component " + std::to_string(c));
    bp[c] = std::make_pair(b.event, b.slot);
  }
  if (!L.basepoints.empty())
    for (std::size_t c = 0; c < nc; ++c)
      if (!bp[c]) throw Error(ErrorCode::BasepointError, "component " + std::to_string(c) + " has no base point");

  for (std::size_t c = 0; c < nc; ++c) {
    const Raw& r = raws[c];
    const std::size_t len = r.wires.size();
    std::size_t start = 0;
    if (bp[c])
      for (std::size_t k = 0; k < len; ++k)
        if (r.wires[k] == *bp[c]) start = k;
    std::vector<Passage> seq;
    if (!reverse[c]) {
      for (std::size_t k = 0; k < len; ++k) {
        const Passage& p = r.passages[(start + k) % len];
        if (p.event != static_cast<std::size_t>(-1)) seq.push_back(p);
      }
    } else {
      // walking backwards from the base point wire: passage before wire k is passages[k-1]
      for (std::size_t k = 0; k < len; ++k) {
        const Passage& p = r.passages[(start + len - 1 - k) % len];
        if (p.event != static_cast<std::size_t>(-1)) seq.push_back(detail::reversed(p));
      }
    }
    out.components[c] = std::move(seq);
  }

  out.crossing_of_event.assign(ev.size(), static_cast<std::size_t>(-1));
  for (std::size_t e = 0; e < ev.size(); ++e) {
    if (ev[e].type != EventType::Cross) continue;
    out.crossing_of_event[e] = out.crossings.size();
    out.crossings.push_back({e, 0, 0, 0});
  }
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& p : out.components[c]) {
      if (p.type != EventType::Cross) continue;
      CrossingInfo& ci = out.crossings[out.crossing_of_event[p.event]];
      if (p.over)
        ci.over_component = c;
      else
        ci.under_component = c;
    }
  // sign = sign of (over direction x under direction), both from the walk
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& p : out.components[c]) {
      if (p.type != EventType::Cross || !p.over) continue;
      int ox = p.on_bl_tr ? 1 : -1, oy = 1;
      if (!p.upward) ox = -ox, oy = -oy;
      // the under strand lies on the other line
      const Passage* under = nullptr;
      for (const auto& comp : out.components)
        for (const auto& q : comp)
          if (q.type == EventType::Cross && q.event == p.event && !q.over) under = &q;
      int ux = under->on_bl_tr ? 1 : -1, uy = 1;
      if (!under->upward) ux = -ux, uy = -uy;
      out.crossings[out.crossing_of_event[p.event]].sign = ox * uy - oy * ux > 0 ? 1 : -1;
    }
  return out;
}

struct LinkingData {
  std::vector<std::vector<long>> matrix;
  int signature = 0;
};

/// Signature of a symmetric rational matrix by congruence elimination,
/// using 2x2 blocks when the remaining diagonal vanishes.
inline int symmetric_signature(std::vector<std::vector<mpq_class>> A) {
  int sig = 0;
  while (!A.empty()) {
    const std::size_t n = A.size();
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(A[i][i]) != 0) {
        k = i;
        break;
      }
    auto remove = [&](std::vector<std::size_t> idx) {
      std::sort(idx.rbegin(), idx.rend());
      for (std::size_t i : idx) {
        A.erase(A.begin() + static_cast<long>(i));
        for (auto& row : A) row.erase(row.begin() + static_cast<long>(i));
      }
    };
    if (k < n) {
      mpq_class p = A[k][k];
      sig += sgn(p) > 0 ? 1 : -1;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != k && j != k) A[i][j] -= A[i][k] * A[k][j] / p;
      remove({k});
      continue;
    }
    std::size_t a = n, b = n;
    for (std::size_t i = 0; i < n && a == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (sgn(A[i][j]) != 0) {
          a = i, b = j;
          break;
        }
    if (a == n) break;  // zero matrix
    // block [[0, c], [c, 0]] has one positive and one negative eigenvalue
    mpq_class c = A[a][b];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == a || i == b || j == a || j == b) continue;
        // inverse of the block is [[0, 1/c], [1/c, 0]]
        A[i][j] -= (A[i][a] * A[b][j] + A[i][b] * A[a][j]) / c;
      }
    remove({a, b});
  }
  return sig;
}

inline LinkingData linking_signature(const MorseLink& L) {
  TracedLink T = trace_link(L);
  const std::size_t n = T.components.size();
  LinkingData out;
  std::vector<std::vector<long>> twice(n, std::vector<long>(n, 0));
  for (const auto& c : T.crossings) {
    if (c.over_component == c.under_component)
      twice[c.over_component][c.over_component] += 2 * c.sign;
    else {
      twice[c.over_component][c.under_component] += c.sign;
      twice[c.under_component][c.over_component] += c.sign;
    }
  }
  out.matrix.assign(n, std::vector<long>(n, 0));
  std::vector<std::vector<mpq_class>> q(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.matrix[i][j] = twice[i][j] / 2;
      q[i][j] = out.matrix[i][j];
    }
  out.signature = symmetric_signature(q);
  return out;
}

// ---- beads ----

struct Bead {
  enum Kind { G, R, S } kind;
  int power;  // exponent of g, or of the antipode on a crossing bead
  std::size_t crossing = 0;
};

struct TotalBead {
  std::vector<std::vector<Bead>> words;  // collection order per component
  std::size_t crossings = 0;
};

inline TotalBead total_bead(const MorseLink& L) {
  TracedLink T = trace_link(L);
  TotalBead tb;
  tb.crossings = T.crossings.size();
  for (const auto& comp : T.components) {
    std::vector<Bead> w;
    for (const auto& p : comp) {
      switch (p.type) {
        case EventType::Cap:
          if (p.left_to_right) w.push_back({Bead::G, 1});
          break;
        case EventType::Cup:
          if (p.left_to_right) w.push_back({Bead::G, -1});
          break;
        case EventType::Cross: {
          // over on the BR-TL line carries S^{-1}(r)
          int label = p.over && !p.on_bl_tr ? -1 : 0;
          w.push_back({p.over ? Bead::R : Bead::S, label + (p.upward ? 0 : 1), T.crossing_of_event[p.event]});
          break;
        }
      }
    }
    tb.words.push_back(std::move(w));
  }
  return tb;
}

/// Ribbon data needed for evaluation: mu must satisfy mu(g theta) mu(g^-1 theta^-1) = 1.
struct RibbonData {
  AlgebraPtr algebra;
  RMatrix R;
  Vector mu;
  Scalar delta;
};

inline RibbonData ribbon_data(const DrinfeldDouble& D) {
  DeltaConstants c = delta_constants(D);
  if (!(c.delta * c.delta_inv).is_one())
    throw Error(ErrorCode::UnnormalizedIntegral, "mu(g theta) mu(g^-1 theta^-1) = " + (c.delta * c.delta_inv).to_string());
  return RibbonData{D.algebra, D.R, D.muD, c.delta};
}

/// Same from a bare ribbon algebra: theta = sum s_i g r_i, delta = mu(g theta).
inline RibbonData ribbon_data(AlgebraPtr H, RMatrix R, Vector mu) {
  if (!H->has_pivot()) throw Error(ErrorCode::MissingPivot, "HKR needs a pivot");
  Vector theta = ribbon_element(*H, R);
  auto theta_inv = algebra_inverse(*H, theta);
  if (!theta_inv) throw Error(ErrorCode::NotNondegenerate, "theta is not invertible");
  Scalar delta = H->pair(mu, H->mul(H->pivot_vector(), theta));
  Scalar delta_inv = H->pair(mu, H->mul(H->pivot_inverse_vector(), *theta_inv));
  if (!(delta * delta_inv).is_one())
    throw Error(ErrorCode::UnnormalizedIntegral, "mu(g theta) mu(g^-1 theta^-1) = " + (delta * delta_inv).to_string());
  return RibbonData{std::move(H), std::move(R), std::move(mu), delta};
}

inline std::size_t thread_budget() {
  std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* s = std::getenv("HOPFKNOT_THREADS")) {
    long v = std::atol(s);
    if (v >= 1) return std::min<std::size_t>(hw, static_cast<std::size_t>(v));
  }
  return hw;
}

/// sum over assignments of R-terms to crossings of prod_c mu(word_c), with the
/// R coefficients; prefixes are advanced as soon as their crossings are fixed.
inline Scalar evaluate_total_bead(const TotalBead& tb, const RibbonData& rd) {
  const HopfAlgebra& H = *rd.algebra;
  const std::size_t N = H.dim();
  if (!H.has_pivot()) throw Error(ErrorCode::MissingPivot, "HKR needs a pivot");
  struct Term {
    Index r, s;
    Scalar c;
  };
  std::vector<Term> terms;
  for (const auto& [k, c] : rd.R) terms.push_back({static_cast<Index>(k / N), static_cast<Index>(k % N), c});
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return std::tie(a.r, a.s) < std::tie(b.r, b.s); });

  // crossing order: first appearance along the words
  std::vector<std::size_t> order, rank(tb.crossings, static_cast<std::size_t>(-1));
  for (const auto& w : tb.words)
    for (const auto& b : w)
      if (b.kind != Bead::G && rank[b.crossing] == static_cast<std::size_t>(-1)) {
        rank[b.crossing] = order.size();
        order.push_back(b.crossing);
      }
  const std::size_t nc = order.size();

  std::map<std::pair<Index, int>, Vector> antipode_cache;
  auto antipode_of = [&](Index i, int p) -> const Vector& {
    auto key = std::make_pair(i, p);
    auto it = antipode_cache.find(key);
    if (it == antipode_cache.end()) it = antipode_cache.emplace(key, H.antipode(H.basis_vector(i), p)).first;
    return it->second;
  };
  std::vector<Vector> gpow = {H.pivot_power(-1), H.unit_vector(), H.pivot_power(1)};
  for (const auto& w : tb.words)
    for (const auto& b : w)
      if (b.kind != Bead::G)
        for (const auto& t : terms) antipode_of(b.kind == Bead::R ? t.r : t.s, b.power);

  struct State {
    std::vector<std::size_t> pos;
    std::vector<Vector> prefix;
  };
  // multiplies in every bead whose crossing has rank < limit
  auto advance = [&](State& st, std::size_t limit, const std::vector<std::size_t>& chosen) {
    for (std::size_t c = 0; c < tb.words.size(); ++c) {
      const auto& w = tb.words[c];
      while (st.pos[c] < w.size()) {
        const Bead& b = w[st.pos[c]];
        const Vector* letter;
        if (b.kind == Bead::G) {
          letter = &gpow[static_cast<std::size_t>(b.power + 1)];
        } else {
          if (rank[b.crossing] >= limit) break;
          const Term& t = terms[chosen[b.crossing]];
          letter = &antipode_cache.at({b.kind == Bead::R ? t.r : t.s, b.power});
        }
        st.prefix[c] = H.mul(*letter, st.prefix[c]);
        ++st.pos[c];
      }
    }
  };
  auto is_zero = [](const Vector& v) { return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); }); };
  auto finish = [&](const State& st) {
    Scalar v = Scalar::one(H.field());
    for (const auto& p : st.prefix) {
      v = v * H.pair(rd.mu, p);
      if (v.is_zero()) break;
    }
    return v;
  };

  State root{std::vector<std::size_t>(tb.words.size(), 0), std::vector<Vector>(tb.words.size(), H.unit_vector())};
  advance(root, 0, {});
  if (nc == 0) return finish(root);

  auto run = [&](std::size_t first_lo, std::size_t first_hi) {
    std::vector<std::size_t> chosen(tb.crossings, 0);
    Scalar total = Scalar::zero(H.field());
    std::function<void(const State&, std::size_t, const Scalar&)> rec = [&](const State& st, std::size_t depth,
                                                                             const Scalar& coef) {
      if (depth == nc) {
        total += coef * finish(st);
        return;
      }
      std::size_t lo = depth == 0 ? first_lo : 0, hi = depth == 0 ? first_hi : terms.size();
      for (std::size_t t = lo; t < hi; ++t) {
        chosen[order[depth]] = t;
        State next = st;
        advance(next, depth + 1, chosen);
        if (std::none_of(next.prefix.begin(), next.prefix.end(), is_zero)) rec(next, depth + 1, coef * terms[t].c);
      }
    };
    rec(root, 0, Scalar::one(H.field()));
    return total;
  };

  const std::size_t threads = std::min(thread_budget(), terms.size());
  if (threads <= 1) return run(0, terms.size());
  std::vector<Scalar> partial(threads, Scalar::zero(H.field()));
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < threads; ++k) {
    std::size_t lo = terms.size() * k / threads, hi = terms.size() * (k + 1) / threads;
    pool.emplace_back([&, k, lo, hi] { partial[k] = run(lo, hi); });
  }
  for (auto& th : pool) th.join();
  Scalar total = Scalar::zero(H.field());
  for (const auto& p : partial) total += p;
  return total;
}

struct HkrResult {
  Scalar value;
  Scalar bead_sum;  // mu^{(x)n}(PT(D))
  LinkingData linking;
};

/// HKR(M) = delta^{-s} mu^{(x)n}(PT(D)).
inline HkrResult hkr_invariant(const MorseLink& L, const RibbonData& rd) {
  if ((rd.delta).is_zero()) throw Error(ErrorCode::NotNondegenerate, "delta = 0");
  HkrResult r{Scalar::zero(rd.algebra->field()), Scalar::zero(rd.algebra->field()), linking_signature(L)};
  r.bead_sum = evaluate_total_bead(total_bead(L), rd);
  r.value = r.bead_sum * rd.delta.pow(-r.linking.signature);
  return r;
}

}  // namespace hopfknot
