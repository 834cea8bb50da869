#pragma once

#include <map>
#include <random>
#include <set>
#include <string>

#include "hopfknot/heegaard.hpp"
#include "hopfknot/link.hpp"
#include "hopfknot/zoo.hpp"

namespace testsupport {

using namespace hopfknot;

inline const Field* Q = Field::rationals();

inline AlgebraPtr algebra_of(const std::string& name) {
  static std::map<std::string, AlgebraPtr> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  AlgebraPtr H;
  if (name == "z2") H = make_algebra(group_algebra(cyclic_group(2), Q));
  if (name == "z3") H = make_algebra(group_algebra(cyclic_group(3), Q));
  if (name == "s3") H = make_algebra(group_algebra(symmetric_group_s3(), Q));
  if (name == "u2") H = make_algebra(small_quantum_sl2(2, Scalar::one(Q)));
  if (name == "u3") H = make_algebra(small_quantum_sl2(3, Scalar::one(Q)));
  if (name == "sweedler") H = make_algebra(sweedler_algebra(Q));
  return cache.emplace(name, H).first->second;
}

// All terms of the iterated coproduct, computed by repeated use of coproduct_map on basis vectors.
inline std::vector<std::pair<std::vector<Index>, Scalar>> coproduct_terms(const HopfAlgebra& H, const Vector& x, std::size_t m) {
  std::vector<std::pair<std::vector<Index>, Scalar>> cur;
  for (std::size_t i = 0; i < H.dim(); ++i)
    if (!x[i].is_zero()) cur.push_back({{static_cast<Index>(i)}, x[i]});
  const std::uint64_t n = H.dim();
  for (std::size_t level = 1; level < m; ++level) {
    std::vector<std::pair<std::vector<Index>, Scalar>> next;
    for (const auto& [key, c] : cur)
      for (const auto& [jk, v] : H.coproduct_map(H.basis_vector(key.back()))) {
        auto k2 = key;
        k2.back() = static_cast<Index>(jk / n);
        k2.push_back(static_cast<Index>(jk % n));
        next.push_back({k2, c * v});
      }
    cur = std::move(next);
  }
  return cur;
}

// mu(g S(a1) g b1) mu(a2 b2 g b3) summed over the coproducts of Lambda.
inline Scalar genus_two_oracle(const std::string& name) {
  const HopfAlgebra& H = *algebra_of(name);
  IntegralData I = compute_integrals_with_mu(H);
  const Vector& mu = *I.mu;
  const Vector g = H.pivot_vector();
  Scalar total = Scalar::zero(H.field());
  auto e = [&](Index i) { return H.basis_vector(i); };
  for (const auto& [a, ca] : coproduct_terms(H, I.Lambda, 2))
    for (const auto& [b, cb] : coproduct_terms(H, I.Lambda, 3)) {
      Vector p1 = H.mul(H.mul(H.mul(g, H.antipode(e(a[0]), 1)), g), e(b[0]));
      Vector p2 = H.mul(H.mul(H.mul(e(a[1]), e(b[1])), g), e(b[2]));
      total += ca * cb * H.pair(mu, p1) * H.pair(mu, p2);
    }
  return total;
}

inline const RibbonData& double_of(const std::string& name) {
  static std::map<std::string, RibbonData> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  return cache.emplace(name, ribbon_data(build_double(algebra_of(name)))).first->second;
}


/// Sets cup orientations so every component is consistent, reversing each
/// component with probability 1/2.
inline void orient_cups(PlanarHeegaard& P, std::mt19937& rng) {
  for (auto& e : P.events)
    if (e.kind == PlanarKind::Cup) e.orient = Turn::Ccw;
  detail::PlanarLink pl = detail::planar_link(P);
  const auto& ev = pl.link.events;
  detail::WireGrid grid = detail::build_grid(ev);
  std::vector<bool> seen(grid.total, false);
  std::map<std::size_t, bool> cup_ltr;  // link event -> traversed left to right
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t lvl = 0; lvl < ev.size(); ++lvl)
    for (std::size_t s = 0; s < grid.width[lvl]; ++s) {
      if (seen[grid.id(lvl, s)]) continue;
      std::vector<std::size_t> cups;
      std::size_t cl = lvl, cs = s;
      bool up = true;
      do {
        seen[grid.id(cl, cs)] = true;
        detail::Step st = detail::step(ev, cl, cs, up);
        if (st.passage && st.passage->type == EventType::Cup) {
          cup_ltr[st.passage->event] = st.passage->left_to_right;
          cups.push_back(st.passage->event);
        }
        cl = st.level, cs = st.slot, up = st.up;
      } while (!(cl == lvl && cs == s && up));
      comps.push_back(cups);
    }
  std::map<std::size_t, Turn> turn;
  std::bernoulli_distribution flip(0.5);
  for (const auto& cups : comps) {
    bool f = flip(rng);
    for (std::size_t e : cups) turn[e] = (cup_ltr[e] != f) ? Turn::Ccw : Turn::Cw;
  }
  for (std::size_t e = 0; e < P.events.size(); ++e)
    if (P.events[e].kind == PlanarKind::Cup) P.events[e].orient = turn.at(*pl.last_link_event[e]);
}

/// Random planar diagram: cups, caps, virtual crossings and one alpha segment
/// per alpha curve with at most `max_n` strands beside it.
inline PlanarHeegaard random_planar(std::mt19937& rng, std::size_t genus, std::size_t max_n, bool virtual_crossings,
                                    std::size_t max_cups = 4) {
  PlanarHeegaard P;
  P.genus = genus;
  std::size_t w = 0, cups = 0, next_alpha = 0;
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  while (next_alpha < genus || w > 0) {
    std::vector<int> moves;
    if (cups < max_cups) moves.insert(moves.end(), {0, 0});
    if (w >= 2 && (next_alpha == genus || cups >= max_cups)) moves.insert(moves.end(), {1, 1, 1});
    if (w >= 2 && virtual_crossings) moves.push_back(2);
    if (next_alpha < genus && w >= 2) moves.insert(moves.end(), {3, 3});
    if (moves.empty()) moves.push_back(0);
    switch (moves[pick(0, moves.size() - 1)]) {
      case 0:
        P.events.push_back(planar_cup(pick(0, w)));
        w += 2, ++cups;
        break;
      case 1:
        P.events.push_back(planar_cap(pick(0, w - 2)));
        w -= 2;
        break;
      case 2:
        P.events.push_back(planar_virtual(pick(0, w - 2)));
        break;
      case 3: {
        std::size_t n = pick(1, std::min(max_n, w - 1));
        P.events.push_back(planar_alpha(next_alpha++, pick(0, w - 1 - n), n, pick(0, 1) == 1));
        break;
      }
    }
  }
  orient_cups(P, rng);
  return P;
}

}  // namespace testsupport
