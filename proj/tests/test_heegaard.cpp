#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace hopfknot;
using namespace testsupport;

namespace {

const std::vector<std::string> kSpherical = {"z2", "s3", "u2"};

Scalar fpp(const FlatHeegaardDiagram& D, const std::string& name) {
  static std::map<std::string, IntegralData> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, compute_integrals_with_mu(*algebra_of(name))).first;
  return f_double_prime(D, *algebra_of(name), it->second);
}

// Elements x with x^p = 1 in a group given by its multiplication table.
std::size_t roots_of_one(const GroupTable& G, std::size_t p) {
  std::size_t n = 0;
  for (std::size_t x = 0; x < G.order; ++x) {
    std::size_t y = G.identity;
    for (std::size_t k = 0; k < p; ++k) y = G.table[y][x];
    if (y == G.identity) ++n;
  }
  return n;
}

FlatHeegaardDiagram random_flat(std::mt19937& rng, std::size_t genus) {
  return to_flat_diagram(random_planar(rng, genus, 3, true));
}

}  // namespace

TEST(Heegaard, ValidatesStandardDiagrams) {
  EXPECT_NO_THROW(validate(to_flat_diagram(genus_one_sphere())));
  HeegaardReport rep = validate(genus_two_example());
  ASSERT_EQ(rep.alpha_slots.size(), 2u);
  EXPECT_EQ(rep.alpha_slots[0].size(), 2u);
  EXPECT_EQ(rep.alpha_slots[1].size(), 3u);
  EXPECT_EQ(rep.alpha_slots[1][2].component, 1u);
  EXPECT_EQ(rep.alpha_slots[1][2].position, 0u);
}

TEST(Heegaard, RejectsBadDiagrams) {
  auto code = [](const FlatHeegaardDiagram& D) {
    try {
      validate(D);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  FlatHeegaardDiagram D = genus_two_example();
  D.beta[1][3].slot = 3;  // duplicate slot on alpha_1
  EXPECT_EQ(code(D), ErrorCode::SlotMismatch);
  D = genus_two_example();
  D.beta[0][0].slot = 5;  // gap in the slots
  EXPECT_EQ(code(D), ErrorCode::SlotMismatch);
  D = genus_two_example();
  D.beta[0].pop_back();
  EXPECT_EQ(code(D), ErrorCode::UnbalancedExtrema);
  D = genus_two_example();
  D.beta[0][2].d = 0;  // runs up between a maximum and a minimum
  EXPECT_EQ(code(D), ErrorCode::UnbalancedExtrema);
  D = genus_two_example();
  D.basepoints = {0};
  EXPECT_EQ(code(D), ErrorCode::BasepointError);
  D = genus_two_example();
  D.basepoints[1] = 7;
  EXPECT_EQ(code(D), ErrorCode::BasepointError);
  D = genus_two_example();
  D.beta[0].insert(D.beta[0].begin(), cross_gamma(0, 1));
  EXPECT_EQ(code(D), ErrorCode::SlotMismatch);
  EXPECT_NO_THROW(validate(D, true));
}

TEST(Heegaard, GenusOneSphereGivesMuOfLambda) {
  FlatHeegaardDiagram D = to_flat_diagram(genus_one_sphere());
  for (const auto& name : kSpherical) {
    const HopfAlgebra& H = *algebra_of(name);
    IntegralData I = compute_integrals_with_mu(H);
    EXPECT_EQ(fpp(D, name), H.pair(*I.mu, I.Lambda)) << name;
  }
  EXPECT_TRUE(fpp(D, "u2").is_one());
}

TEST(Heegaard, UncrossedAlphaContributesCounitOfLambda) {
  FlatHeegaardDiagram D = to_flat_diagram(genus_one_sphere());
  D.genus = 2;
  for (const auto& name : kSpherical) {
    const HopfAlgebra& H = *algebra_of(name);
    IntegralData I = compute_integrals_with_mu(H);
    EXPECT_EQ(fpp(D, name), H.pair(*I.mu, I.Lambda) * H.pair(H.counit_vector(), I.Lambda)) << name;
  }
}

TEST(Heegaard, NonSphericalAlgebraRejected) {
  EXPECT_THROW(f_double_prime(to_flat_diagram(genus_one_sphere()), *algebra_of("sweedler")), Error);
}

TEST(Heegaard, GenusTwoExampleMatchesItsFormula) {
  for (const auto& name : kSpherical) EXPECT_EQ(fpp(genus_two_example(), name), genus_two_oracle(name)) << name;
}

TEST(Heegaard, MovesPreserveFdoublePrime) {
  std::mt19937 rng(2024);
  for (const auto& name : kSpherical) {
    for (int trial = 0; trial < 20; ++trial) {
      FlatHeegaardDiagram D = random_flat(rng, 1 + trial % 2);
      const Scalar v = fpp(D, name);
      auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
      const std::size_t c = pick(D.beta.size());
      const std::size_t gap = pick(D.beta[c].size());
      const std::size_t i = pick(D.genus);
      const std::size_t m = validate(D).alpha_slots[i].size();
      EXPECT_EQ(fpp(reverse_beta_orientation(D, c), name), v) << name << " reverse beta, trial " << trial;
      EXPECT_EQ(fpp(reverse_alpha_orientation(D, i), name), v) << name << " reverse alpha, trial " << trial;
      EXPECT_EQ(fpp(insert_extremum_pair(D, c, gap, trial % 3 == 0), name), v) << name << " extrema, trial " << trial;
      EXPECT_EQ(fpp(shift_basepoint(D, c), name), v) << name << " base point, trial " << trial;
      if (m < 3)
        EXPECT_EQ(fpp(insert_r2_beta_alpha(D, c, gap, i, 1 + pick(m + 1), trial % 2 == 0), name), v)
            << name << " R2, trial " << trial;
    }
  }
}

TEST(Heegaard, ReverseBetaTwiceIsIdentity) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    FlatHeegaardDiagram D = random_flat(rng, 2);
    FlatHeegaardDiagram E = reverse_beta_orientation(reverse_beta_orientation(D, 0), 0);
    EXPECT_EQ(E.beta, D.beta);
    EXPECT_EQ(E.basepoints, D.basepoints);
  }
}

TEST(Heegaard, BasepointIndependenceExhaustive) {
  FlatHeegaardDiagram D = genus_two_example();
  for (const auto& name : {"z2", "s3"}) {
    const Scalar v = fpp(D, name);
    for (std::size_t a = 0; a < D.beta[0].size(); ++a)
      for (std::size_t b = 0; b < D.beta[1].size(); ++b) {
        FlatHeegaardDiagram E = D;
        E.basepoints = {a, b};
        EXPECT_EQ(fpp(E, name), v) << name << " " << a << "," << b;
      }
  }
  const Scalar v = fpp(D, "u2");
  for (std::size_t b = 0; b < D.beta[1].size(); ++b) {
    FlatHeegaardDiagram E = D;
    E.basepoints[1] = b;
    EXPECT_EQ(fpp(E, "u2"), v) << b;
  }
}

TEST(Heegaard, FlattenRemovesGammaCrossings) {
  FlatHeegaardDiagram D = genus_two_example();
  FlatHeegaardDiagram flat = flatten(D);
  EXPECT_EQ(flat.beta, D.beta);

  // one beta crossing gamma_0 once
  FlatHeegaardDiagram one = to_flat_diagram(genus_one_sphere());
  one.beta[0].insert(one.beta[0].begin() + 1, cross_gamma(0, 1));
  FlatHeegaardDiagram out = flatten(one);
  EXPECT_EQ(out.beta, to_flat_diagram(genus_one_sphere()).beta);

  // several crossings on both gamma curves, removed in either order
  FlatHeegaardDiagram G = genus_two_example();
  G.beta[0].insert(G.beta[0].begin() + 2, cross_gamma(1, 2));
  G.beta[1].insert(G.beta[1].begin() + 1, cross_gamma(1, 1));
  G.beta[1].insert(G.beta[1].begin() + 4, cross_gamma(0, 1));
  G.basepoints = {3, 2};
  FlatHeegaardDiagram a = flatten(G, {0, 1}), b = flatten(G, {1, 0});
  EXPECT_EQ(a.beta, b.beta);
  for (const auto& w : a.beta)
    for (const auto& e : w) EXPECT_NE(e.kind, FlatKind::CrossGamma);
  for (const auto& name : kSpherical) EXPECT_EQ(fpp(a, name), genus_two_oracle(name)) << name;

  FlatHeegaardDiagram bad = genus_two_example();
  bad.beta[0].insert(bad.beta[0].begin(), cross_gamma(0, 2));
  EXPECT_THROW(flatten(bad), Error);
}

TEST(Heegaard, LensSpaceLinks) {
  for (std::size_t p = 1; p <= 3; ++p) {
    MorseLink L = to_surgery_link(lens_space_diagram(p));
    LinkingData lk = linking_signature(L);
    ASSERT_EQ(lk.matrix.size(), 1u);
    EXPECT_EQ(abs(lk.matrix[0][0]), static_cast<long>(p));
  }
}

TEST(Heegaard, SurgeryLinkNeedsNormalForm) {
  PlanarHeegaard P = genus_two_sphere();
  P.genus = 3;
  P.events.push_back(planar_cup(0));
  P.events.push_back(planar_alpha(2, 0, 0));
  P.events.push_back(planar_cap(0));
  EXPECT_THROW(to_surgery_link(P), Error);
  PlanarHeegaard V = lens_space_diagram(2);
  V.events.insert(V.events.begin() + 2, planar_virtual(1));
  EXPECT_THROW(to_surgery_link(V), Error);
  EXPECT_NO_THROW(to_flat_diagram(V));
}

TEST(Heegaard, MainTheoremOnStandardDiagrams) {
  std::vector<PlanarHeegaard> corpus = {genus_one_sphere(), lens_space_diagram(2), lens_space_diagram(3),
                                        genus_two_sphere()};
  for (const auto& name : kSpherical)
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      Scalar f = fpp(to_flat_diagram(corpus[k]), name);
      HkrResult h = hkr_invariant(to_surgery_link(corpus[k]), double_of(name));
      EXPECT_EQ(f, h.value) << name << " diagram " << k;
    }
  // homomorphism counts for the group algebras
  for (std::size_t p = 1; p <= 3; ++p) {
    EXPECT_EQ(fpp(to_flat_diagram(lens_space_diagram(p)), "s3"), Scalar(Q, static_cast<long>(roots_of_one(symmetric_group_s3(), p))));
    EXPECT_EQ(fpp(to_flat_diagram(lens_space_diagram(p)), "z2"), Scalar(Q, static_cast<long>(roots_of_one(cyclic_group(2), p))));
  }
  EXPECT_TRUE(fpp(to_flat_diagram(genus_two_sphere()), "s3").is_one());
}

TEST(Heegaard, MainTheoremOnRandomNormalForms) {
  std::mt19937 rng(99);
  int checked = 0;
  for (int it = 0; it < 4000 && checked < 12; ++it) {
    PlanarHeegaard P = random_planar(rng, 1 + it % 2, 3, false);
    MorseLink L;
    try {
      L = to_surgery_link(P);
    } catch (const Error&) {
      continue;
    }
    for (const auto& name : kSpherical)
      EXPECT_EQ(fpp(to_flat_diagram(P), name), hkr_invariant(L, double_of(name)).value) << name << " diagram " << it;
    ++checked;
  }
  EXPECT_EQ(checked, 12);
}

TEST(Heegaard, GenusTwoExampleBeadsAgreeInTheDouble) {
  for (const auto& name : kSpherical)
    EXPECT_EQ(evaluate_total_bead(genus_two_example_link_beads(), double_of(name)), genus_two_oracle(name)) << name;
}
