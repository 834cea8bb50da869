#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hopfknot/integrals.hpp"
#include "hopfknot/link.hpp"

namespace hopfknot {

// ---- flat Heegaard diagrams ----

enum class FlatKind { CrossAlpha, Max, Min, CrossGamma };

/// One event on a beta word. For CrossAlpha, `slot` is the 1-based position
/// among the crossings of alpha_curve, left to right, and d = 1 when beta runs
/// downward through the (left-to-right) alpha. For CrossGamma, `slot` is the
/// 1-based order of the crossing along gamma_curve counted from alpha_curve.
struct FlatEvent {
  FlatKind kind = FlatKind::Max;
  std::size_t curve = 0;
  std::size_t slot = 0;
  int d = 0;
  bool left_to_right = false;  // extrema
};

inline FlatEvent cross_alpha(std::size_t i, std::size_t h, int d) { return {FlatKind::CrossAlpha, i, h, d, false}; }
inline FlatEvent max_event(bool ltr) { return {FlatKind::Max, 0, 0, 0, ltr}; }
inline FlatEvent min_event(bool ltr) { return {FlatKind::Min, 0, 0, 0, ltr}; }
inline FlatEvent cross_gamma(std::size_t i, std::size_t k) { return {FlatKind::CrossGamma, i, k, 0, false}; }

inline bool operator==(const FlatEvent& a, const FlatEvent& b) {
  return a.kind == b.kind && a.curve == b.curve && a.slot == b.slot && a.d == b.d && a.left_to_right == b.left_to_right;
}

/// Cyclic beta words; basepoints[c] is the index of the first event collected on component c.
struct FlatHeegaardDiagram {
  std::size_t genus = 0;
  std::vector<std::vector<FlatEvent>> beta;
  std::vector<std::size_t> basepoints;
};

struct SlotRef {
  std::size_t component, position;
};

struct HeegaardReport {
  std::vector<std::vector<SlotRef>> alpha_slots;  // alpha_slots[i][h-1]
  std::vector<std::vector<SlotRef>> gamma_slots;
};

namespace detail {

/// Direction of travel just before event `pos` of a word (true = upward).
inline bool upward_before(const std::vector<FlatEvent>& w, std::size_t pos) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    const FlatEvent& e = w[(pos + k) % w.size()];
    switch (e.kind) {
      case FlatKind::CrossAlpha:
        return e.d == 0;
      case FlatKind::Max:
        return true;
      case FlatKind::Min:
        return false;
      case FlatKind::CrossGamma:
        break;
    }
  }
  return true;
}

inline void fill_slots(std::vector<std::vector<SlotRef>>& slots, std::vector<std::vector<bool>>& seen,
                       const FlatEvent& e, std::size_t c, std::size_t k, ErrorCode code, const char* curve) {
  auto where = [&] { return std::string(curve) + "_" + std::to_string(e.curve) + " slot " + std::to_string(e.slot); };
  if (e.curve >= slots.size()) throw Error(code, std::string(curve) + " index " + std::to_string(e.curve) + " out of range");
  if (e.slot == 0) throw Error(code, where() + ": slots are 1-based");
  if (e.slot > slots[e.curve].size()) {
    slots[e.curve].resize(e.slot, SlotRef{0, 0});
    seen[e.curve].resize(e.slot, false);
  }
  if (seen[e.curve][e.slot - 1]) throw Error(code, where() + " used twice");
  seen[e.curve][e.slot - 1] = true;
  slots[e.curve][e.slot - 1] = {c, k};
}

}  // namespace detail

/// Checks slots, extrema and base points. CrossGamma events are rejected
/// unless `allow_gamma` is set.
inline HeegaardReport validate(const FlatHeegaardDiagram& D, bool allow_gamma = false) {
  HeegaardReport rep;
  rep.alpha_slots.resize(D.genus);
  rep.gamma_slots.resize(D.genus);
  std::vector<std::vector<bool>> seen_a(D.genus), seen_g(D.genus);
  if (D.basepoints.size() != D.beta.size())
    throw Error(ErrorCode::BasepointError, std::to_string(D.basepoints.size()) + " base points for " +
                                               std::to_string(D.beta.size()) + " beta curves");
  for (std::size_t c = 0; c < D.beta.size(); ++c) {
    const auto& w = D.beta[c];
    const std::string tag = "beta_" + std::to_string(c);
    if (D.basepoints[c] >= w.size())
      throw Error(ErrorCode::BasepointError, tag + ": base point " + std::to_string(D.basepoints[c]) + " outside the word");
    std::size_t maxima = 0, minima = 0;
    std::optional<bool> last_max;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const FlatEvent& e = w[k];
      switch (e.kind) {
        case FlatKind::CrossAlpha:
          if (e.d != 0 && e.d != 1) throw Error(ErrorCode::SlotMismatch, tag + ": d must be 0 or 1");
          detail::fill_slots(rep.alpha_slots, seen_a, e, c, k, ErrorCode::SlotMismatch, "alpha");
          break;
        case FlatKind::CrossGamma:
          if (!allow_gamma) throw Error(ErrorCode::SlotMismatch, tag + ": gamma crossing in a flat diagram");
          detail::fill_slots(rep.gamma_slots, seen_g, e, c, k, ErrorCode::NonAdjacentCrossing, "gamma");
          break;
        case FlatKind::Max:
        case FlatKind::Min: {
          bool is_max = e.kind == FlatKind::Max;
          (is_max ? maxima : minima)++;
          if (last_max && *last_max == is_max)
            throw Error(ErrorCode::UnbalancedExtrema, tag + ": two consecutive " + (is_max ? "maxima" : "minima"));
          last_max = is_max;
          break;
        }
      }
    }
    if (maxima != minima || maxima == 0)
      throw Error(ErrorCode::UnbalancedExtrema, tag + ": " + std::to_string(maxima) + " maxima, " +
                                                    std::to_string(minima) + " minima");
    // crossings between a minimum and the next maximum run upward
    bool up = detail::upward_before(w, 0);
    for (const auto& e : w) {
      if (e.kind == FlatKind::CrossAlpha && (e.d == 0) != up)
        throw Error(ErrorCode::UnbalancedExtrema, tag + ": crossing direction disagrees with the extrema");
      if (e.kind == FlatKind::Max) up = false;
      if (e.kind == FlatKind::Min) up = true;
    }
  }
  for (std::size_t i = 0; i < D.genus; ++i) {
    for (std::size_t h = 0; h < seen_a[i].size(); ++h)
      if (!seen_a[i][h])
        throw Error(ErrorCode::SlotMismatch, "alpha_" + std::to_string(i) + " slot " + std::to_string(h + 1) + " unused");
    for (std::size_t h = 0; h < seen_g[i].size(); ++h)
      if (!seen_g[i][h])
        throw Error(ErrorCode::NonAdjacentCrossing, "gamma_" + std::to_string(i) + " order " + std::to_string(h + 1) + " missing");
  }
  return rep;
}

// ---- F'' ----

/// Bead of a total bead word: g^power, or S^power applied to the slot-th
/// tensor factor of the iterated coproduct of Lambda attached to alpha.
struct ChromaticBead {
  bool pivot;
  int power;
  std::size_t alpha = 0, slot = 0;
};

/// Beads per component in collection order (from the base point along the orientation).
inline std::vector<std::vector<ChromaticBead>> bead_words(const FlatHeegaardDiagram& D) {
  validate(D);
  std::vector<std::vector<ChromaticBead>> out;
  for (std::size_t c = 0; c < D.beta.size(); ++c) {
    const auto& w = D.beta[c];
    std::vector<ChromaticBead> beads;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const FlatEvent& e = w[(D.basepoints[c] + k) % w.size()];
      if (e.kind == FlatKind::CrossAlpha)
        beads.push_back({false, e.d, e.curve, e.slot});
      else if (e.kind == FlatKind::Max && e.left_to_right)
        beads.push_back({true, 1});
      else if (e.kind == FlatKind::Min && e.left_to_right)
        beads.push_back({true, -1});
    }
    out.push_back(std::move(beads));
  }
  return out;
}

/// F''_H = eps(Lambda)^v prod_c mu(P_c), summed over the coproduct terms of Lambda on each alpha.
inline Scalar f_double_prime(const FlatHeegaardDiagram& D, const HopfAlgebra& H, const IntegralData& I) {
  const auto words = bead_words(D);
  if (H.pair(I.lambda, I.Lambda) != Scalar::one(H.field()))
    throw Error(ErrorCode::UnnormalizedIntegral, "lambda(Lambda) = " + H.pair(I.lambda, I.Lambda).to_string());
  if (!H.has_pivot()) throw Error(ErrorCode::MissingPivot, "F'' needs a pivot");
  const Vector mu = I.mu ? *I.mu : symmetrized_integral(H, I.lambda, I);
  const std::size_t g = D.genus;

  std::vector<std::size_t> m(g, 0);
  for (const auto& w : words)
    for (const auto& b : w)
      if (!b.pivot) m[b.alpha] = std::max(m[b.alpha], b.slot);
  Scalar scale = Scalar::one(H.field());
  const Scalar eps_Lambda = H.pair(H.counit_vector(), I.Lambda);
  for (std::size_t i = 0; i < g; ++i)
    if (m[i] == 0) scale *= eps_Lambda;

  struct Term {
    std::vector<Index> key;
    Scalar coef;
  };
  std::vector<std::size_t> active;  // alphas carrying crossings, in summation order
  std::vector<std::vector<Term>> terms(g);
  const AlgebraElement Lambda = H.element(I.Lambda);
  for (std::size_t i = 0; i < g; ++i) {
    if (m[i] == 0) continue;
    active.push_back(i);
    for (const auto& [key, c] : H.iterated_comultiply(Lambda, m[i]).terms)
      if (!c.is_zero()) terms[i].push_back({key, c});
  }

  // a component is evaluated once the last alpha it touches is fixed
  std::vector<long> level_of_alpha(g, -1);
  for (std::size_t l = 0; l < active.size(); ++l) level_of_alpha[active[l]] = static_cast<long>(l);
  std::vector<std::vector<std::size_t>> ready(active.size() + 1);
  for (std::size_t c = 0; c < words.size(); ++c) {
    long last = -1;
    for (const auto& b : words[c])
      if (!b.pivot) last = std::max(last, level_of_alpha[b.alpha]);
    ready[static_cast<std::size_t>(last + 1)].push_back(c);
  }

  const std::size_t n = H.dim();
  const Vector g1 = H.pivot_vector(), gm1 = H.pivot_inverse_vector();
  std::vector<Vector> S1(n);
  for (std::size_t k = 0; k < n; ++k) S1[k] = H.antipode(H.basis_vector(static_cast<Index>(k)), 1);

  auto component_value = [&](std::size_t c, const std::vector<const Term*>& chosen) {
    Vector acc = H.unit_vector();
    for (const auto& b : words[c]) {
      if (b.pivot) {
        acc = H.mul(b.power > 0 ? g1 : gm1, acc);
        continue;
      }
      Index k = chosen[static_cast<std::size_t>(level_of_alpha[b.alpha])]->key[b.slot - 1];
      acc = H.mul(b.power == 1 ? S1[k] : H.basis_vector(k), acc);
    }
    return H.pair(mu, acc);
  };

  Scalar base = scale;
  for (std::size_t c : ready[0]) base *= component_value(c, {});
  if (base.is_zero() || active.empty()) return base;

  std::function<void(std::size_t, std::vector<const Term*>&, const Scalar&, Scalar&)> dfs =
      [&](std::size_t level, std::vector<const Term*>& chosen, const Scalar& prefix, Scalar& sum) {
        if (level == active.size()) {
          sum += prefix;
          return;
        }
        for (const Term& t : terms[active[level]]) {
          chosen[level] = &t;
          Scalar v = prefix * t.coef;
          for (std::size_t c : ready[level + 1]) {
            if (v.is_zero()) break;
            v *= component_value(c, chosen);
          }
          if (!v.is_zero()) dfs(level + 1, chosen, v, sum);
        }
      };

  const auto& first = terms[active[0]];
  const std::size_t nt = std::min(thread_budget(), std::max<std::size_t>(1, first.size()));
  std::vector<Scalar> partial(nt, Scalar::zero(H.field()));
  auto work = [&](std::size_t tid) {
    std::vector<const Term*> chosen(active.size(), nullptr);
    for (std::size_t j = tid; j < first.size(); j += nt) {
      chosen[0] = &first[j];
      Scalar v = base * first[j].coef;
      for (std::size_t c : ready[1]) {
        if (v.is_zero()) break;
        v *= component_value(c, chosen);
      }
      if (!v.is_zero()) dfs(1, chosen, v, partial[tid]);
    }
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Scalar total = Scalar::zero(H.field());
  for (const auto& p : partial) total += p;
  return total;
}

inline Scalar f_double_prime(const FlatHeegaardDiagram& D, const HopfAlgebra& H) {
  return f_double_prime(D, H, compute_integrals_with_mu(H));
}


// ---- moves ----

namespace detail {

/// Rebuilds word c, replacing event k by expand(k); base point follows the first replacement.
inline FlatHeegaardDiagram rewrite_word(const FlatHeegaardDiagram& D, std::size_t c,
                                        const std::function<std::vector<FlatEvent>(std::size_t)>& expand) {
  FlatHeegaardDiagram out = D;
  std::vector<FlatEvent> w;
  std::size_t bp = 0;
  for (std::size_t k = 0; k < D.beta[c].size(); ++k) {
    if (k == D.basepoints[c]) bp = w.size();
    auto part = expand(k);
    w.insert(w.end(), part.begin(), part.end());
  }
  out.beta[c] = std::move(w);
  out.basepoints[c] = out.beta[c].empty() ? 0 : bp % out.beta[c].size();
  return out;
}

inline void check_component(const FlatHeegaardDiagram& D, std::size_t c) {
  if (c >= D.beta.size()) throw Error(ErrorCode::SlotMismatch, "no beta curve " + std::to_string(c));
}

}  // namespace detail

/// Walks beta_c backwards: order reverses, d and extremum directions flip.
inline FlatHeegaardDiagram reverse_beta_orientation(const FlatHeegaardDiagram& D, std::size_t c) {
  validate(D, true);
  detail::check_component(D, c);
  FlatHeegaardDiagram out = D;
  const auto& w = D.beta[c];
  const std::size_t len = w.size();
  std::vector<FlatEvent> r;
  for (std::size_t k = 0; k < len; ++k) {
    FlatEvent e = w[len - 1 - k];
    if (e.kind == FlatKind::CrossAlpha) e.d = 1 - e.d;
    if (e.kind == FlatKind::Max || e.kind == FlatKind::Min) e.left_to_right = !e.left_to_right;
    r.push_back(e);
  }
  out.beta[c] = std::move(r);
  out.basepoints[c] = (len - D.basepoints[c]) % len;
  return out;
}

/// Reverses alpha_i: slot h becomes m-h+1 and every crossing is redrawn as a
/// zigzag going through alpha the other way (extrema keep S^2 = g . g^-1 balanced).
inline FlatHeegaardDiagram reverse_alpha_orientation(const FlatHeegaardDiagram& D, std::size_t i) {
  HeegaardReport rep = validate(D, true);
  if (i >= D.genus) throw Error(ErrorCode::SlotMismatch, "no alpha curve " + std::to_string(i));
  const std::size_t m = rep.alpha_slots[i].size();
  FlatHeegaardDiagram out = D;
  for (std::size_t c = 0; c < D.beta.size(); ++c)
    out = detail::rewrite_word(out, c, [&](std::size_t k) -> std::vector<FlatEvent> {
      FlatEvent e = D.beta[c][k];
      if (e.kind != FlatKind::CrossAlpha || e.curve != i) return {e};
      FlatEvent x = cross_alpha(i, m - e.slot + 1, 1 - e.d);
      if (e.d == 0) return {max_event(true), x, min_event(true)};
      return {min_event(false), x, max_event(false)};
    });
  return out;
}

/// Pushes a finger of beta_c across alpha_i just before event `gap`, creating
/// the slots s and s+1; `rightward` says which way the finger tip runs.
inline FlatHeegaardDiagram insert_r2_beta_alpha(const FlatHeegaardDiagram& D, std::size_t c, std::size_t gap,
                                                std::size_t i, std::size_t s, bool rightward) {
  HeegaardReport rep = validate(D, true);
  detail::check_component(D, c);
  if (i >= D.genus) throw Error(ErrorCode::SlotMismatch, "no alpha curve " + std::to_string(i));
  if (s == 0 || s > rep.alpha_slots[i].size() + 1)
    throw Error(ErrorCode::SlotMismatch, "finger slot " + std::to_string(s) + " outside alpha_" + std::to_string(i));
  if (gap >= D.beta[c].size()) throw Error(ErrorCode::SlotMismatch, "gap outside the word");
  FlatHeegaardDiagram out = D;
  for (auto& w : out.beta)
    for (auto& e : w)
      if (e.kind == FlatKind::CrossAlpha && e.curve == i && e.slot >= s) e.slot += 2;
  const bool up = detail::upward_before(D.beta[c], gap);
  // the first crossing of the finger sits on the side it starts from
  const std::size_t first = rightward ? s : s + 1, second = rightward ? s + 1 : s;
  std::vector<FlatEvent> finger;
  if (up)
    finger = {cross_alpha(i, first, 0), max_event(rightward), cross_alpha(i, second, 1), min_event(rightward)};
  else
    finger = {cross_alpha(i, first, 1), min_event(rightward), cross_alpha(i, second, 0), max_event(rightward)};
  const auto shifted = out.beta[c];
  return detail::rewrite_word(out, c, [&](std::size_t k) {
    std::vector<FlatEvent> part;
    if (k == gap) part = finger;
    part.push_back(shifted[k]);
    return part;
  });
}

/// Adds a consecutive maximum and minimum (or minimum and maximum) with the same direction.
inline FlatHeegaardDiagram insert_extremum_pair(const FlatHeegaardDiagram& D, std::size_t c, std::size_t gap,
                                                bool left_to_right) {
  validate(D, true);
  detail::check_component(D, c);
  if (gap >= D.beta[c].size()) throw Error(ErrorCode::SlotMismatch, "gap outside the word");
  const bool up = detail::upward_before(D.beta[c], gap);
  return detail::rewrite_word(D, c, [&](std::size_t k) {
    std::vector<FlatEvent> part;
    if (k == gap) {
      part.push_back(up ? max_event(left_to_right) : min_event(left_to_right));
      part.push_back(up ? min_event(left_to_right) : max_event(left_to_right));
    }
    part.push_back(D.beta[c][k]);
    return part;
  });
}

inline FlatHeegaardDiagram shift_basepoint(const FlatHeegaardDiagram& D, std::size_t c, std::size_t by = 1) {
  validate(D, true);
  detail::check_component(D, c);
  FlatHeegaardDiagram out = D;
  out.basepoints[c] = (D.basepoints[c] + by) % D.beta[c].size();
  return out;
}

// ---- flattening ----

/// Removes the beta-gamma crossings one at a time, always the one nearest to
/// alpha_i on gamma_i, by sliding its beta over alpha_i. The slid arc runs
/// parallel to alpha_i, so it meets no alpha curve and its extrema cancel in
/// pairs: the word only loses the gamma crossing. `gamma_order` fixes which
/// gamma curve is emptied first.
inline FlatHeegaardDiagram flatten(const FlatHeegaardDiagram& D, std::vector<std::size_t> gamma_order = {}) {
  HeegaardReport rep = validate(D, true);
  if (gamma_order.empty())
    for (std::size_t i = 0; i < D.genus; ++i) gamma_order.push_back(i);
  FlatHeegaardDiagram cur = D;
  for (std::size_t i : gamma_order) {
    if (i >= D.genus) throw Error(ErrorCode::NonAdjacentCrossing, "no gamma curve " + std::to_string(i));
    while (true) {
      std::optional<SlotRef> nearest;
      for (std::size_t c = 0; c < cur.beta.size(); ++c)
        for (std::size_t k = 0; k < cur.beta[c].size(); ++k) {
          const FlatEvent& e = cur.beta[c][k];
          if (e.kind == FlatKind::CrossGamma && e.curve == i && e.slot == 1) nearest = SlotRef{c, k};
        }
      if (!nearest) break;
      for (auto& w : cur.beta)
        for (auto& e : w)
          if (e.kind == FlatKind::CrossGamma && e.curve == i) --e.slot;
      cur = detail::rewrite_word(cur, nearest->component, [&](std::size_t k) {
        if (k == nearest->position) return std::vector<FlatEvent>{};
        return std::vector<FlatEvent>{cur.beta[nearest->component][k]};
      });
    }
  }
  validate(cur);
  return cur;
}


// ---- planar diagrams ----

enum class PlanarKind { Cup, Cap, Cross, Alpha };

/// Morse picture of beta in the plane. Cup, Cap and Cross (a virtual beta-beta
/// crossing) act on strands as in a MorseLink. Alpha places alpha_i across the
/// n strands beside a horizontal beta segment running parallel to it: with
/// `rightward` the strand at `at` runs to position at+n, the strands at+1..at+n
/// crossing alpha_i in slots 1..n; otherwise the strand at at+n runs to `at`.
struct PlanarEvent {
  PlanarKind kind = PlanarKind::Cup;
  std::size_t at = 0;
  std::optional<Turn> orient;
  std::size_t alpha = 0, n = 0;
  bool rightward = true;
};

struct PlanarHeegaard {
  std::size_t genus = 0;
  std::vector<PlanarEvent> events;
  std::vector<Basepoint> basepoints;  // event indices refer to `events`
};

inline PlanarEvent planar_cup(std::size_t at, Turn o = Turn::Ccw) { return {PlanarKind::Cup, at, o}; }
inline PlanarEvent planar_cap(std::size_t at) { return {PlanarKind::Cap, at, std::nullopt}; }
inline PlanarEvent planar_virtual(std::size_t at) { return {PlanarKind::Cross, at, std::nullopt}; }
inline PlanarEvent planar_alpha(std::size_t i, std::size_t at, std::size_t n, bool rightward = true) {
  return {PlanarKind::Alpha, at, std::nullopt, i, n, rightward};
}

namespace detail {

struct PlanarLink {
  MorseLink link;
  struct Origin {
    bool is_virtual = false;
    std::size_t alpha = 0, slot = 0;
    bool segment_rightward = true;
  };
  std::vector<Origin> origin;                 // per link event (crossings only meaningful)
  std::vector<std::optional<std::size_t>> last_link_event;  // per planar event
  std::vector<std::pair<std::size_t, std::size_t>> segment_end;  // per alpha: (link event, slot) after the segment
};

/// Replaces each horizontal segment by crossings where it passes under the strands beside alpha_i.
inline PlanarLink planar_link(const PlanarHeegaard& P) {
  PlanarLink out;
  out.segment_end.assign(P.genus, {static_cast<std::size_t>(-1), 0});
  std::vector<bool> used(P.genus, false);
  std::size_t w = 0;
  std::optional<std::size_t> last;
  for (std::size_t e = 0; e < P.events.size(); ++e) {
    const PlanarEvent& x = P.events[e];
    auto bad = [&](const std::string& why) {
      throw Error(ErrorCode::MalformedEvents, "planar event " + std::to_string(e) + ": " + why);
    };
    auto emit = [&](const MorseEvent& m, PlanarLink::Origin o) {
      out.link.events.push_back(m);
      out.origin.push_back(o);
      last = out.link.events.size() - 1;
    };
    switch (x.kind) {
      case PlanarKind::Cup:
        if (x.at > w) bad("cup position beyond width");
        emit(cup(x.at, x.orient.value_or(Turn::Ccw)), {});
        w += 2;
        break;
      case PlanarKind::Cap:
        if (x.at + 1 >= w) bad("cap position beyond width");
        emit(cap(x.at, x.orient), {});
        w -= 2;
        break;
      case PlanarKind::Cross:
        if (x.at + 1 >= w) bad("crossing position beyond width");
        emit(cross(x.at, CrossKind::L), {true});
        break;
      case PlanarKind::Alpha:
        if (x.alpha >= P.genus)
          throw Error(ErrorCode::SlotMismatch, "alpha index " + std::to_string(x.alpha) + " out of range");
        if (used[x.alpha]) throw Error(ErrorCode::SlotMismatch, "alpha_" + std::to_string(x.alpha) + " placed twice");
        used[x.alpha] = true;
        if (x.at + x.n >= w) bad("alpha segment beyond width");
        for (std::size_t j = 1; j <= x.n; ++j) {
          // the moving strand enters from the bottom-left (rightward) or bottom-right and passes under
          if (x.rightward)
            emit(cross(x.at + j - 1, CrossKind::R), {false, x.alpha, j, true});
          else
            emit(cross(x.at + x.n - j, CrossKind::L), {false, x.alpha, x.n - j + 1, false});
        }
        if (last) out.segment_end[x.alpha] = {*last, x.rightward ? x.at + x.n : x.at};
        break;
    }
    out.last_link_event.push_back(last);
  }
  for (std::size_t i = 0; i < P.genus; ++i)
    if (!used[i]) throw Error(ErrorCode::SlotMismatch, "alpha_" + std::to_string(i) + " is not placed");
  for (const auto& b : P.basepoints) {
    if (b.event >= P.events.size() || !out.last_link_event[b.event])
      throw Error(ErrorCode::BasepointError, "base point at event " + std::to_string(b.event) + " is not on a wire");
    out.link.basepoints.push_back({*out.last_link_event[b.event], b.slot, b.component});
  }
  return out;
}

}  // namespace detail

/// Reads the beta words off a planar diagram: extrema and alpha crossings in
/// orientation order from each base point. Horizontal segments and virtual
/// crossings carry no beads.
inline FlatHeegaardDiagram to_flat_diagram(const PlanarHeegaard& P) {
  detail::PlanarLink pl = detail::planar_link(P);
  TracedLink T = trace_link(pl.link);
  FlatHeegaardDiagram D;
  D.genus = P.genus;
  for (const auto& comp : T.components) {
    std::vector<FlatEvent> w;
    for (const auto& p : comp) {
      if (p.type == EventType::Cup) w.push_back(min_event(p.left_to_right));
      if (p.type == EventType::Cap) w.push_back(max_event(p.left_to_right));
      if (p.type != EventType::Cross) continue;
      const auto& o = pl.origin[p.event];
      if (o.is_virtual || !p.over) continue;
      w.push_back(cross_alpha(o.alpha, o.slot, p.upward ? 0 : 1));
    }
    D.beta.push_back(std::move(w));
    D.basepoints.push_back(0);
  }
  validate(D);
  return D;
}

/// Surgery link of a planar diagram in normal form: g beta curves, each with
/// exactly one horizontal segment, no virtual crossings and every alpha met.
/// The segments become arcs passing under the strands that cross alpha_i.
/// Without explicit base points, each sits right after its segment.
inline MorseLink to_surgery_link(const PlanarHeegaard& P) {
  detail::PlanarLink pl = detail::planar_link(P);
  for (std::size_t e = 0; e < P.events.size(); ++e) {
    if (P.events[e].kind == PlanarKind::Cross)
      throw Error(ErrorCode::NotNormalForm, "planar event " + std::to_string(e) + " is a virtual crossing");
    if (P.events[e].kind == PlanarKind::Alpha && P.events[e].n == 0)
      throw Error(ErrorCode::NotNormalForm, "alpha_" + std::to_string(P.events[e].alpha) + " meets no beta curve");
  }
  TracedLink T = trace_link(pl.link);
  if (T.components.size() != P.genus)
    throw Error(ErrorCode::NotNormalForm, std::to_string(T.components.size()) + " beta curves for genus " +
                                              std::to_string(P.genus));
  std::vector<std::set<std::size_t>> segments(T.components.size());
  for (std::size_t c = 0; c < T.components.size(); ++c)
    for (const auto& p : T.components[c])
      if (p.type == EventType::Cross && !p.over) segments[c].insert(pl.origin[p.event].alpha);
  for (std::size_t c = 0; c < segments.size(); ++c)
    if (segments[c].size() != 1)
      throw Error(ErrorCode::NotNormalForm, "beta_" + std::to_string(c) + " runs along " +
                                                std::to_string(segments[c].size()) + " alpha curves");
  MorseLink L = pl.link;
  if (L.basepoints.empty())
    for (std::size_t c = 0; c < segments.size(); ++c) {
      auto [ev, slot] = pl.segment_end[*segments[c].begin()];
      L.basepoints.push_back({ev, slot, std::nullopt});
    }
  return L;
}


// ---- standard diagrams ----

/// Genus 1: beta winds p times through alpha before running along it; its
/// surgery link is the p-framed unknot, so the manifold is L(p,1) (S^3 for p = 1).
inline PlanarHeegaard lens_space_diagram(std::size_t p) {
  if (p == 0) throw Error(ErrorCode::NotNormalForm, "p must be positive");
  PlanarHeegaard P;
  P.genus = 1;
  P.events.push_back(planar_cup(0, Turn::Ccw));
  for (std::size_t k = 2; k <= p; ++k) P.events.push_back(planar_cup(k, Turn::Cw));
  P.events.push_back(planar_alpha(0, 0, p));
  for (std::size_t k = p; k-- > 0;) P.events.push_back(planar_cap(k));
  return P;
}

inline PlanarHeegaard genus_one_sphere() { return lens_space_diagram(1); }

/// Genus 2 diagram of S^3 whose surgery link is the 0-framed Hopf link.
inline PlanarHeegaard genus_two_sphere() {
  PlanarHeegaard P;
  P.genus = 2;
  P.events = {planar_cup(0), planar_cup(0), planar_cup(2), planar_alpha(0, 1, 1), planar_cup(1, Turn::Cw),
              planar_alpha(1, 3, 3), planar_cap(0), planar_cap(4), planar_cap(0), planar_cap(0)};
  return P;
}

/// Genus 2 flat diagram with total beads
///   mu(g S(L1_(1)) g L2_(1)) mu(L1_(2) L2_(2) g L2_(3)),
/// Lk_(h) being the h-th coproduct factor of the cointegral on alpha_k.
inline FlatHeegaardDiagram genus_two_example() {
  FlatHeegaardDiagram D;
  D.genus = 2;
  D.beta = {{cross_alpha(1, 1, 0), max_event(true), cross_alpha(0, 1, 1), min_event(false), max_event(true),
             min_event(false)},
            {cross_alpha(1, 3, 0), max_event(true), min_event(false), cross_alpha(1, 2, 0), cross_alpha(0, 2, 0),
             max_event(false), min_event(false)}};
  D.basepoints = {0, 0};
  return D;
}

/// Beads of the surgery link matching genus_two_example, in the double:
///   mu(s_{1,2} s_{1,1} g r_{1,1} g S^-1(r_{2,1})) mu(s_{2,3} s_{2,2} s_{2,1} S^-1(r_{1,2}) S^-1(r_{2,2}) g S^-1(r_{2,3}))
/// with crossing (i,h) the h-th passage of component i under a vertical strand.
inline TotalBead genus_two_example_link_beads() {
  enum { c11, c12, c21, c22, c23 };
  TotalBead tb;
  tb.crossings = 5;
  tb.words = {{{Bead::R, -1, c21}, {Bead::G, 1}, {Bead::R, 0, c11}, {Bead::G, 1}, {Bead::S, 0, c11}, {Bead::S, 0, c12}},
              {{Bead::R, -1, c23}, {Bead::G, 1}, {Bead::R, -1, c22}, {Bead::R, -1, c12}, {Bead::S, 0, c21},
               {Bead::S, 0, c22}, {Bead::S, 0, c23}}};
  return tb;
}

}  // namespace hopfknot
