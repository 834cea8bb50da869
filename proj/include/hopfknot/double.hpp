#pragma once

// Drinfeld double D(H) = H^{*cop} (x) H on the basis e_a^* (x) e_b (index a*n + b),
// with its R-matrix, ribbon element and the integrals inherited from H.

#include <optional>
#include <string>
#include <utility>

#include "hopfknot/integrals.hpp"

namespace hopfknot {

struct DrinfeldDouble {
  AlgebraPtr base;
  AlgebraPtr algebra;
  IntegralData base_integrals;  // lambda, Lambda, alpha, a, mu of H
  RMatrix R;
  RMatrix R_inv;
  Vector theta;
  Vector u;
  Vector lambdaD;  // Lambda (x) lambda
  Vector aD;       // alpha (x) a
  Vector gD;       // eps (x) g
  Vector muD;      // Lambda (x) mu
};

namespace detail {

/// Structure constants of D(H). The product follows
/// (f (x) v)(f' (x) v') = f f'(S^{-1}(v_(3)) . v_(1)) (x) v_(2) v'.
inline HopfData double_structure(const HopfAlgebra& H) {
  const std::size_t n = H.dim(), N = n * n;
  const Field* F = H.field();
  const Scalar zero = Scalar::zero(F);
  if (!H.antipode_invertible()) throw Error(ErrorCode::AxiomFailure, "antipode is not invertible");

  // Delta^{(3)}(e_b) as (p, q, r, coef)
  struct Term3 {
    Index p, q, r;
    Scalar c;
  };
  std::vector<std::vector<Term3>> delta3(n);
  for (Index b = 0; b < n; ++b) {
    TensorElement t = H.iterated_comultiply(H.basis(b), 3);
    for (const auto& [key, c] : t.terms) delta3[b].push_back({key[0], key[1], key[2], c});
  }
  // conv[a][k] = list of (v, c_k^{a v})
  std::vector<std::vector<std::vector<SparseEntry>>> conv(n, std::vector<std::vector<SparseEntry>>(n));
  for (Index k = 0; k < n; ++k)
    for (const auto& e : H.coproduct_of_basis(k)) conv[e.index / n][k].push_back({static_cast<Index>(e.index % n), e.coef});

  // sandwich[p*n + r][v] = S^{-1}(e_r) e_v e_p as a dense vector (coefficient of e_c at [c])
  std::vector<std::vector<Vector>> sandwich(n * n);
  auto get_sandwich = [&](Index p, Index r) -> const std::vector<Vector>& {
    auto& s = sandwich[p * n + r];
    if (s.empty()) {
      Vector sr = H.antipode(H.basis_vector(r), -1);
      for (Index v = 0; v < n; ++v) s.push_back(H.mul(H.mul(sr, H.basis_vector(v)), H.basis_vector(p)));
    }
    return s;
  };

  HopfData d;
  d.field = F;
  d.dim = N;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d.labels.push_back(H.labels()[a] + "*|" + H.labels()[b]);

  for (Index b = 0; b < n; ++b) {
    for (Index a = 0; a < n; ++a) {
      for (Index c = 0; c < n; ++c) {
        // W[k][q] = sum over terms with middle q of psi_{a,c,p,r}(e_k)
        std::map<std::pair<Index, Index>, Scalar> W;
        for (const auto& t : delta3[b]) {
          const auto& sw = get_sandwich(t.p, t.r);
          for (Index k = 0; k < n; ++k) {
            Scalar psi = zero;
            for (const auto& e : conv[a][k]) {
              const Scalar& phi = sw[e.index][c];
              if (!phi.is_zero()) psi += e.coef * phi;
            }
            if (psi.is_zero()) continue;
            auto [it, fresh] = W.try_emplace({k, t.q}, zero);
            it->second += t.c * psi;
          }
        }
        for (Index dd = 0; dd < n; ++dd) {
          std::map<Index, Scalar> out;
          for (const auto& [kq, w] : W) {
            if (w.is_zero()) continue;
            for (const auto& e : H.product_of_basis(kq.second, dd)) {
              auto [it, fresh] = out.try_emplace(static_cast<Index>(kq.first * n + e.index), zero);
              it->second += w * e.coef;
            }
          }
          for (const auto& [idx, coef] : out)
            if (!coef.is_zero()) d.mult.push_back({a * Index(n) + b, c * Index(n) + dd, idx, coef});
        }
      }
    }
  }

  // Delta(e_a^*) = sum m_{yx}^a e_x^* (x) e_y^*
  std::vector<std::vector<std::pair<std::pair<Index, Index>, Scalar>>> dual_coproduct(n);
  for (Index y = 0; y < n; ++y)
    for (Index x = 0; x < n; ++x)
      for (const auto& e : H.product_of_basis(y, x)) dual_coproduct[e.index].push_back({{x, y}, e.coef});
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (const auto& [xy, m] : dual_coproduct[a])
        for (const auto& e : H.coproduct_of_basis(b)) {
          Index j = static_cast<Index>(e.index / n), k = static_cast<Index>(e.index % n);
          d.comult.push_back({a * Index(n) + b, xy.first * Index(n) + j, xy.second * Index(n) + k, m * e.coef});
        }

  d.unit.assign(N, zero);
  d.counit.assign(N, zero);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      d.unit[x * n + y] = H.counit_vector()[x] * H.unit_vector()[y];
      d.counit[x * n + y] = H.unit_vector()[x] * H.counit_vector()[y];
    }
  if (H.has_pivot()) {
    Vector g(N, zero);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) g[x * n + y] = H.counit_vector()[x] * H.pivot_vector()[y];
    d.pivot = g;
  }
  // S^D(f (x) v) = (eps (x) S(v)) (f o S^{-1} (x) 1); filled in after the algebra exists.
  d.antipode.assign(N, Row(N, zero));
  return d;
}

inline Vector tensor_vector(const Vector& f, const Vector& v) {
  const std::size_t n = f.size();
  Vector out(n * n, Scalar::zero(f.front().field()));
  for (std::size_t x = 0; x < n; ++x) {
    if (f[x].is_zero()) continue;
    for (std::size_t y = 0; y < n; ++y)
      if (!v[y].is_zero()) out[x * n + y] = f[x] * v[y];
  }
  return out;
}

}  // namespace detail

/// Builds D(H). H must be spherical; `integrals` may supply a preferred
/// normalization of (lambda, Lambda) for H, otherwise the solver's is used.
inline DrinfeldDouble build_double(const AlgebraPtr& base, std::optional<IntegralData> integrals = std::nullopt) {
  const HopfAlgebra& H = *base;
  const std::size_t n = H.dim(), N = n * n;
  if (!H.has_pivot()) throw Error(ErrorCode::MissingPivot, "the double needs a pivot of H");
  IntegralData I = integrals ? *integrals : compute_integrals(H);
  if (integrals && !H.pair(I.lambda, I.Lambda).is_one()) {
    throw Error(ErrorCode::UnnormalizedIntegral, "supplied integrals have lambda(Lambda) != 1");
  }
  if (!verify_spherical(H, I)) throw Error(ErrorCode::NotSpherical, "H is not spherical");
  I.mu = symmetrized_integral(H, I.lambda, I);

  HopfData d = detail::double_structure(H);
  // Antipode needs the product, so build a provisional algebra first.
  auto provisional = std::make_shared<const HopfAlgebra>(d);
  const Scalar zero = Scalar::zero(H.field());
  const Matrix& Sinv = H.antipode_inverse_matrix();
  for (Index a = 0; a < n; ++a) {
    Vector fS(n, zero);  // e_a^* o S^{-1} = sum_k Sinv[a][k] e_k^*
    for (std::size_t k = 0; k < n; ++k) fS[k] = Sinv[a][k];
    Vector right = detail::tensor_vector(fS, H.unit_vector());
    for (Index b = 0; b < n; ++b) {
      Vector left = detail::tensor_vector(H.counit_vector(), H.antipode(H.basis_vector(b), 1));
      Vector s = provisional->mul(left, right);
      for (std::size_t k = 0; k < N; ++k) d.antipode[k][a * n + b] = s[k];
    }
  }
  DrinfeldDouble D;
  D.base = base;
  D.algebra = make_algebra(std::move(d));
  const HopfAlgebra& DH = *D.algebra;

  for (Index i = 0; i < n; ++i) {
    Vector r = detail::tensor_vector(H.counit_vector(), H.basis_vector(i));
    Vector rinv = detail::tensor_vector(H.counit_vector(), H.antipode(H.basis_vector(i), 1));
    Vector s = detail::tensor_vector(H.basis_vector(i), H.unit_vector());
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y) {
        if (!s[y].is_zero() && !r[x].is_zero()) detail::add_to(D.R, x * N + y, r[x] * s[y]);
        if (!s[y].is_zero() && !rinv[x].is_zero()) detail::add_to(D.R_inv, x * N + y, rinv[x] * s[y]);
      }
  }
  detail::prune(D.R);
  detail::prune(D.R_inv);
  D.gD = DH.pivot_vector();
  D.theta = ribbon_element(DH, D.R);
  D.u = drinfeld_element(DH, D.R);
  D.lambdaD = detail::tensor_vector(I.Lambda, I.lambda);
  D.aD = detail::tensor_vector(I.alpha, I.a);
  D.muD = detail::tensor_vector(I.Lambda, *I.mu);
  D.base_integrals = std::move(I);
  return D;
}

/// Checks every invariant of D(H) listed with its construction.
struct DoubleReport {
  AxiomReport axioms;
  QuasitriangularReport quasitriangular;
  RibbonReport ribbon;
  bool theta_alternative = false;  // theta = m((1 (x) g^{-1}) R) = sum r_i g^{-1} s_i
  bool r_inverse = false;          // R R^{-1} = 1 (x) 1
  bool pivot_square = false;       // (g^D)^2 = a^D
  bool lambda_right_integral = false;
  bool a_matches_solver = false;
  bool mu_matches = false;         // lambda^D(g^D .) = Lambda (x) mu
  bool lambda_normalized = false;  // lambda^D(Lambda^D) = 1 with Lambda^D solved
  bool u_properties = false;       // u S(u) = S(u) u central, theta = u^{-1} g^D
  bool all_passed() const {
    return axioms.all_passed() && quasitriangular.all_passed() && ribbon.central && ribbon.antipode_fixed &&
           ribbon.counit_one && theta_alternative && r_inverse && pivot_square && lambda_right_integral &&
           a_matches_solver && mu_matches && lambda_normalized && u_properties;
  }
};

inline DoubleReport verify_double(const DrinfeldDouble& D) {
  const HopfAlgebra& DH = *D.algebra;
  const std::size_t N = DH.dim();
  DoubleReport rep;
  rep.axioms = verify_hopf_axioms(DH);
  rep.quasitriangular = verify_quasitriangular(DH, D.R);
  rep.ribbon = verify_ribbon(DH, D.R);
  {
    Vector alt = DH.zero_vector();
    const Vector& gi = DH.pivot_inverse_vector();
    for (const auto& [k, c] : D.R) {
      Vector t = DH.mul(DH.mul(DH.basis_vector(static_cast<Index>(k / N)), gi), DH.basis_vector(static_cast<Index>(k % N)));
      for (std::size_t i = 0; i < N; ++i)
        if (!t[i].is_zero()) alt[i] += c * t[i];
    }
    rep.theta_alternative = alt == D.theta;
  }
  {
    detail::Tensor2 one2;
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y)
        if (!DH.unit_vector()[x].is_zero() && !DH.unit_vector()[y].is_zero())
          detail::add_to(one2, x * N + y, DH.unit_vector()[x] * DH.unit_vector()[y]);
    rep.r_inverse = detail::equal(detail::mul2(DH, D.R, D.R_inv), one2) &&
                    detail::equal(detail::mul2(DH, D.R_inv, D.R), one2);
  }
  rep.pivot_square = DH.mul(D.gD, D.gD) == D.aD;
  IntegralData ID = compute_integrals(DH);
  {
    bool ok = true;
    for (Index i = 0; i < N && ok; ++i) {
      Vector acc = DH.zero_vector();
      for (const auto& e : DH.coproduct_of_basis(i)) acc[e.index % N] += e.coef * D.lambdaD[e.index / N];
      Vector rhs = DH.unit_vector();
      for (auto& x : rhs) x = x * D.lambdaD[i];
      ok = acc == rhs;
    }
    rep.lambda_right_integral = ok;
  }
  rep.a_matches_solver = ID.a == D.aD;
  {
    bool ok = true;
    for (Index i = 0; i < N && ok; ++i)
      ok = DH.pair(D.lambdaD, DH.mul(D.gD, DH.basis_vector(i))) == D.muD[i];
    rep.mu_matches = ok;
  }
  {
    // The solved cointegral of D(H) is proportional to lambda (x) Lambda, which pairs to 1.
    Vector candidate = detail::tensor_vector(D.base_integrals.lambda, D.base_integrals.Lambda);
    std::size_t p = detail::first_nonzero(ID.Lambda);
    bool ok = p < N && !candidate[p].is_zero() &&
              detail::scaled(ID.Lambda, candidate[p] / ID.Lambda[p]) == candidate;
    rep.lambda_normalized = ok && DH.pair(D.lambdaD, candidate).is_one();
  }
  {
    Vector Su = DH.antipode(D.u, 1);
    Vector uSu = DH.mul(D.u, Su);
    bool ok = uSu == DH.mul(Su, D.u) && DH.is_central(uSu);
    auto uinv = algebra_inverse(DH, D.u);
    ok = ok && uinv && DH.mul(*uinv, D.gD) == D.theta;
    for (Index i = 0; i < N && ok; ++i) {
      Vector e = DH.basis_vector(i);
      ok = DH.antipode(e, 2) == DH.mul(DH.mul(D.u, e), *uinv);
    }
    rep.u_properties = ok;
  }
  return rep;
}

struct DeltaConstants {
  Scalar delta;      // mu^D(g^D theta^D)
  Scalar delta_inv;  // mu^D((g^D)^{-1} (theta^D)^{-1})
};

inline DeltaConstants delta_constants(const DrinfeldDouble& D) {
  const HopfAlgebra& DH = *D.algebra;
  auto theta_inv = algebra_inverse(DH, D.theta);
  if (!theta_inv) throw Error(ErrorCode::NotNondegenerate, "theta is not invertible");
  DeltaConstants c{DH.pair(D.muD, DH.mul(D.gD, D.theta)),
                   DH.pair(D.muD, DH.mul(DH.pivot_inverse_vector(), *theta_inv))};
  if ((c.delta * c.delta_inv).is_zero()) throw Error(ErrorCode::NotNondegenerate, "mu(g theta) mu(g^-1 theta^-1) = 0");
  return c;
}

}  // namespace hopfknot
