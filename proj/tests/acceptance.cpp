// Acceptance run: one PASS/FAIL line per criterion, with notes underneath.
// Exit status is 0 when every FAIL is a documented red criterion whose
// corrected form passes.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace hopfknot;
using namespace testsupport;

namespace {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;
  // Set for criteria whose literal statement is known to be wrong.
  std::optional<bool> corrected_pass;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string secs(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

bool proportional(const Vector& a, const Vector& b) {
  std::optional<Scalar> t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
    if (a[i].is_zero()) continue;
    Scalar r = a[i] / b[i];
    if (t && !(*t == r)) return false;
    t = r;
  }
  return t.has_value();
}

// |Hom(pi_1, G)| for the presentation with one generator per alpha curve and
// one relator per beta word (x_i for d = 0, x_i^{-1} for d = 1), by enumeration.
std::size_t hom_count(const FlatHeegaardDiagram& D, const GroupTable& G) {
  std::size_t count = 0;
  std::vector<Index> x(D.genus, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k < D.genus) {
      for (Index g = 0; g < G.order; ++g) {
        x[k] = g;
        rec(k + 1);
      }
      return;
    }
    for (const auto& word : D.beta) {
      Index acc = G.identity;
      for (const auto& e : word)
        if (e.kind == FlatKind::CrossAlpha) acc = G.table[acc][e.d == 0 ? x[e.curve] : G.inverse[x[e.curve]]];
      if (acc != G.identity) return;
    }
    ++count;
  };
  rec(0);
  return count;
}

// Characteristic polynomial by Faddeev-LeVerrier, lowest degree first.
std::vector<mpq_class> charpoly(const std::vector<std::vector<mpq_class>>& A) {
  const std::size_t n = A.size();
  std::vector<mpq_class> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<mpq_class>> AM(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) AM[i][j] += A[i][l] * M[l][j];
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

int sign_changes(const std::vector<mpq_class>& c) {
  int changes = 0, last = 0;
  for (const auto& x : c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// For a real-rooted polynomial Descartes' rule is exact.
int signature_by_charpoly(const std::vector<std::vector<mpq_class>>& A) {
  std::vector<mpq_class> p = charpoly(A), q = p;
  for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
  return sign_changes(p) - sign_changes(q);
}

const std::vector<std::string> kSpherical = {"z2", "s3", "u2"};

Criterion axiom_suites() {
  Criterion c{1, "axiom suites for k[Z/2], k[S3], U_2, U_3, Sweedler"};
  for (const std::string name : {"z2", "s3", "u2", "u3", "sweedler"}) {
    auto t = std::chrono::steady_clock::now();
    const HopfAlgebra& H = *algebra_of(name);
    c.require(verify_hopf_axioms(H).all_passed(), name + " axioms");
    const bool spherical = is_pivotal(H) && verify_spherical(H);
    c.require(spherical == (name != "sweedler"), name + (name == "sweedler" ? " should not be spherical" : " spherical"));
    const double s = seconds_since(t);
    c.require(s < 1.0, name + " within 1 s");
    c.note(name + ": " + secs(s) + (spherical ? ", spherical" : ", not spherical"));
  }
  return c;
}

Criterion uq_closed_forms() {
  Criterion c{2, "U_2 integrals match the closed forms up to normalization"};
  const HopfAlgebra& H = *algebra_of("u2");
  IntegralData I = compute_integrals(H);
  UqClosedForms closed = uq_integrals(2, Scalar::one(Q));
  c.require(proportional(I.lambda, closed.lambda), "lambda proportional to r/c on K E F");
  c.require(proportional(I.Lambda, closed.Lambda), "Lambda proportional to c (1/r sum K^j) E F");
  c.require(H.pair(I.lambda, I.Lambda).is_one(), "solver lambda(Lambda) = 1");
  c.require(H.pair(closed.lambda, closed.Lambda).is_one(), "closed-form lambda(Lambda) = 1");
  return c;
}

Criterion double_checks() {
  Criterion c{3, "doubles D(k[Z/2]), D(k[S3]), D(U_2) pass axioms, R, ribbon and pivot checks"};
  for (const auto& name : kSpherical) {
    auto t = std::chrono::steady_clock::now();
    AlgebraPtr H = algebra_of(name);
    DrinfeldDouble D = build_double(H);
    DoubleReport r = verify_double(D);
    c.require(r.axioms.all_passed(), name + " double axioms");
    c.require(r.quasitriangular.all_passed(), name + " quasitriangular");
    c.require(r.ribbon.central && r.ribbon.antipode_fixed, name + " ribbon");
    c.require(D.gD == detail::tensor_vector(H->counit_vector(), H->pivot_vector()), name + " gD = eps (x) g");
    c.require(r.pivot_square, name + " (gD)^2 = aD");
    c.require(r.all_passed(), name + " full double report");
    const double s = seconds_since(t);
    c.require(s < 60.0, name + " within 60 s");
    c.note("D(" + name + "), dim " + std::to_string(D.algebra->dim()) + ": " + secs(s));
  }
  return c;
}

Criterion delta_is_one() {
  Criterion c{4, "delta^D = mu^D(g^D theta^D) = 1 and the product with its inverse partner is 1"};
  for (const auto& name : kSpherical) {
    DeltaConstants d = delta_constants(build_double(algebra_of(name)));
    c.require(d.delta.is_one(), name + " delta = 1, got " + d.delta.to_string());
    c.require((d.delta * d.delta_inv).is_one(), name + " product = 1");
  }
  return c;
}

Criterion hkr_sanity() {
  Criterion c{5, "HKR sanity: empty link, +1 unknot, 0-framed unknot against |Hom(Z, Z/2)|/|Z/2|"};
  const RibbonData& z2 = double_of("z2");
  c.require(hkr_invariant(MorseLink{}, z2).value.is_one(), "empty link -> 1");
  MorseLink plus_one = to_surgery_link(genus_one_sphere());
  for (const auto& name : kSpherical) {
    HkrResult h = hkr_invariant(plus_one, double_of(name));
    c.require(h.linking.matrix == std::vector<std::vector<long>>{{1}}, "unknot framing +1");
    c.require(h.value.is_one(), name + ": +1 unknot -> 1");
  }
  MorseLink zero{{cup(0, Turn::Ccw), cap(0)}, {}};
  const Scalar v = hkr_invariant(zero, z2).value;
  // Hom(Z, G) is G itself: every element picks a homomorphism.
  const GroupTable G = cyclic_group(2);
  std::size_t homs = 0;
  for (Index g = 0; g < G.order; ++g) homs += (G.table[g][G.identity] == g);
  const Scalar literal(Q, mpq_class(static_cast<long>(homs)) / static_cast<long>(G.order));
  const bool literal_ok = v == literal;
  c.note("0-framed unknot (S^1 x S^2) with D(k[Z/2]): HKR = " + v.to_string() + ", literal oracle |Hom|/|G| = " +
         literal.to_string());
  if (!literal_ok) {
    c.pass = false;
    c.note("analysis: HKR is normalized so that S^3 -> 1 (delta = 1, lambda(Lambda) = 1, and the +1 unknot above");
    c.note("gives 1). With that normalization D(k[G]) counts |Hom(pi_1, G)| with no 1/|G| factor; a 1/|G| factor");
    c.note("would force S^3 -> 1/|G| and contradict the +1 unknot clause of this same criterion.");
  }
  bool corrected = v == Scalar(Q, static_cast<long>(homs));
  const Scalar s3 = hkr_invariant(zero, double_of("s3")).value;
  corrected = corrected && s3 == Scalar(Q, 6L);
  c.note("corrected oracle |Hom(Z, G)|: Z/2 -> " + std::to_string(homs) + ", S3 -> 6; HKR gives " + v.to_string() +
         " and " + s3.to_string());
  c.corrected_pass = corrected;
  return c;
}

Criterion invariance() {
  Criterion c{6, "F'' invariant under base point, beta and alpha reversal, R_II and extremum pairs"};
  std::mt19937 rng(6);
  for (const std::string name : {"z2", "s3", "u2", "u3"}) {
    const HopfAlgebra& H = *algebra_of(name);
    IntegralData I = compute_integrals_with_mu(H);
    auto F = [&](const FlatHeegaardDiagram& D) { return f_double_prime(D, H, I); };
    int moves = 0;
    for (int trial = 0; trial < 20; ++trial) {
      FlatHeegaardDiagram D = to_flat_diagram(random_planar(rng, 1 + trial % 2, 3, true));
      const Scalar v = F(D);
      auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
      const std::string where = name + " trial " + std::to_string(trial);
      for (std::size_t comp = 0; comp < D.beta.size(); ++comp) {
        for (std::size_t b = 1; b < D.beta[comp].size(); ++b, ++moves)
          c.require(F(shift_basepoint(D, comp, b)) == v, where + " base point");
        c.require(F(reverse_beta_orientation(D, comp)) == v, where + " beta reversal");
        ++moves;
      }
      for (std::size_t i = 0; i < D.genus; ++i, ++moves)
        c.require(F(reverse_alpha_orientation(D, i)) == v, where + " alpha reversal");
      const std::size_t comp = pick(D.beta.size());
      const std::size_t gap = pick(D.beta[comp].size());
      const std::size_t i = pick(D.genus);
      const std::size_t m = validate(D).alpha_slots[i].size();
      c.require(F(insert_extremum_pair(D, comp, gap, trial % 2 == 0)) == v, where + " extremum pair");
      c.require(F(insert_r2_beta_alpha(D, comp, gap, i, 1 + pick(m + 1), trial % 3 == 0)) == v, where + " R_II");
      moves += 2;
    }
    c.note(name + ": 20 random diagrams of genus 1 and 2, " + std::to_string(moves) + " moves");
  }
  c.note("Sweedler's algebra is not spherical, so F'' is not defined for it");
  return c;
}

Criterion main_theorem() {
  Criterion c{7, "F''(diagram, H) = HKR(surgery link, D(H)); genus-2 example S_K = S_HKR"};
  auto t = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, PlanarHeegaard>> corpus = {{"genus-1 S^3", genus_one_sphere()},
                                                                      {"L(2,1)", lens_space_diagram(2)},
                                                                      {"L(3,1)", lens_space_diagram(3)},
                                                                      {"genus-2 S^3", genus_two_sphere()}};
  for (const auto& name : kSpherical) {
    std::string row = name + ":";
    for (const auto& [label, P] : corpus) {
      Scalar f = f_double_prime(to_flat_diagram(P), *algebra_of(name));
      Scalar h = hkr_invariant(to_surgery_link(P), double_of(name)).value;
      c.require(f == h, name + " " + label + ": F'' = " + f.to_string() + ", HKR = " + h.to_string());
      row += " " + label + " " + f.to_string();
    }
    const Scalar fk = f_double_prime(genus_two_example(), *algebra_of(name));
    const Scalar sk = genus_two_oracle(name);
    const Scalar shkr = evaluate_total_bead(genus_two_example_link_beads(), double_of(name));
    c.require(fk == sk, name + " genus-2 example F'' = S_K");
    c.require(sk == shkr, name + " genus-2 example S_K = S_HKR");
    c.note(row + "; genus-2 example S_K = " + sk.to_string() + ", S_HKR = " + shkr.to_string());
  }
  c.note("the genus-2 example is compared at the level of its bead words; its values coincide with L(3,1),");
  c.note("so the S^3 entry of the theorem at genus 2 uses the 0-framed Hopf link diagram instead");
  const double s = seconds_since(t);
  c.require(s < 300.0, "within 5 min");
  c.note("runtime " + secs(s));
  return c;
}

Criterion group_oracle() {
  Criterion c{8, "group algebras: F'' = |Hom(pi_1, G)|/|G| from the Heegaard presentation"};
  const std::vector<std::pair<std::string, FlatHeegaardDiagram>> corpus = {
      {"genus-1 S^3", to_flat_diagram(genus_one_sphere())},
      {"L(2,1)", to_flat_diagram(lens_space_diagram(2))},
      {"L(3,1)", to_flat_diagram(lens_space_diagram(3))},
      {"genus-2 S^3", to_flat_diagram(genus_two_sphere())},
      {"genus-2 example", genus_two_example()}};
  const std::vector<std::pair<std::string, GroupTable>> groups = {{"z2", cyclic_group(2)},
                                                                  {"s3", symmetric_group_s3()}};
  bool literal = true, corrected = true;
  std::mt19937 rng(8);
  for (const auto& [name, G] : groups) {
    std::string row = name + ":";
    auto check = [&](const std::string& label, const FlatHeegaardDiagram& D) {
      const Scalar f = f_double_prime(D, *algebra_of(name));
      const long homs = static_cast<long>(hom_count(D, G));
      literal = literal && f == Scalar(Q, mpq_class(homs) / static_cast<long>(G.order));
      corrected = corrected && f == Scalar(Q, homs);
      if (!label.empty()) row += " " + label + " " + f.to_string() + "/" + std::to_string(homs);
    };
    for (const auto& [label, D] : corpus) check(label, D);
    for (int k = 0; k < 10; ++k) check("", to_flat_diagram(random_planar(rng, 1 + k % 2, 3, true)));
    c.note(row + " (F'' / |Hom|), plus 10 random diagrams");
  }
  c.pass = literal;
  if (!literal) {
    c.note("analysis: F'' equals |Hom(pi_1, G)| on every diagram; the 1/|G| factor is absent for the same reason");
    c.note("as in criterion 5 (S^3 -> 1 under the normalization lambda(Lambda) = 1).");
  }
  c.corrected_pass = corrected;
  c.note(std::string("corrected oracle |Hom(pi_1, G)|: ") + (corrected ? "all equal" : "MISMATCH"));
  return c;
}

Criterion signature_oracle() {
  Criterion c{9, "linking signature against characteristic-polynomial sign counting"};
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> size(1, 5), entry(-3, 3);
  int singular = 0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) A[i][j] = A[j][i] = entry(rng);
    if (k % 5 == 0 && n > 1) {
      for (std::size_t j = 0; j < n; ++j) A[n - 1][j] = A[0][j];  // repeat a row and column
      for (std::size_t i = 0; i < n; ++i) A[i][n - 1] = A[i][0];
    }
    if (charpoly(A)[0] == 0) ++singular;
    const int expected = signature_by_charpoly(A);
    const int got = symmetric_signature(A);
    c.require(got == expected, "matrix " + std::to_string(k) + ": " + std::to_string(got) + " vs " + std::to_string(expected));
  }
  c.note("50 matrices of size 1..5, " + std::to_string(singular) + " singular");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> all = {axiom_suites,   uq_closed_forms, double_checks,
                                                       delta_is_one,   hkr_sanity,      invariance,
                                                       main_theorem,   group_oracle,    signature_oracle};
  bool ok = true;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& run = all[k];
    Criterion c{static_cast<int>(k + 1), "(not run)"};
    try {
      c = run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.note(std::string("exception: ") + e.what());
    }
    std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "\n";
    for (const auto& n : c.notes) std::cout << "      " << n << "\n";
    if (!c.pass) {
      const bool documented = c.corrected_pass.value_or(false);
      std::cout << "      " << (documented ? "documented red: corrected form passes" : "unexpected failure") << "\n";
      ok = ok && documented;
    }
    std::cout.flush();
  }
  return ok ? 0 : 1;
}
