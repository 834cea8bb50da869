#pragma once

// Integrals, cointegrals, distinguished group-likes, sphericality, the
// symmetrized integral mu = lambda(g .), and quasitriangular/ribbon checks.

#include <optional>
#include <string>
#include <utility>

#include "hopfknot/hopf.hpp"

namespace hopfknot {

struct IntegralData {
  Vector lambda;  // right integral
  Vector Lambda;  // left cointegral, lambda(Lambda) = 1
  Vector alpha;   // Lambda v = alpha(v) Lambda
  Vector a;       // f lambda = f(a) lambda
  std::optional<Vector> mu;
};

namespace detail {

inline Vector unique_kernel_vector(RowEchelon& ech, const char* what) {
  auto ns = ech.null_space();
  if (ns.empty()) throw Error(ErrorCode::NoIntegral, std::string("no nonzero ") + what);
  if (ns.size() > 1)
    throw Error(ErrorCode::AmbiguousIntegral, std::string(what) + " space has dimension " + std::to_string(ns.size()));
  return ns.front();
}

inline std::size_t first_nonzero(const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

inline Vector scaled(Vector v, const Scalar& s) {
  for (auto& x : v)
    if (!x.is_zero()) x = x * s;
  return v;
}

}  // namespace detail

/// Solves lambda(x_(1)) x_(2) = lambda(x) 1 on the basis: for each (i, k),
/// sum_j c_i^{jk} lambda_j - lambda_i 1_k = 0.
inline Vector compute_right_integral(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  RowEchelon ech(H.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Row> rows(n, H.zero_vector());
    for (const auto& e : H.coproduct_of_basis(static_cast<Index>(i))) rows[e.index % n][e.index / n] += e.coef;
    for (std::size_t k = 0; k < n; ++k) {
      rows[k][i] -= H.unit_vector()[k];
      if (detail::first_nonzero(rows[k]) < n) ech.add(std::move(rows[k]));
    }
  }
  return detail::unique_kernel_vector(ech, "right integral");
}

/// Solves e_i Lambda = eps(e_i) Lambda: for each (i, k),
/// sum_j Lambda_j m_{ij}^k - eps_i Lambda_k = 0.
inline Vector compute_left_cointegral(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  RowEchelon ech(H.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Row> rows(n, H.zero_vector());
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& e : H.product_of_basis(static_cast<Index>(i), static_cast<Index>(j))) rows[e.index][j] += e.coef;
    for (std::size_t k = 0; k < n; ++k) {
      rows[k][k] -= H.counit_vector()[i];
      if (detail::first_nonzero(rows[k]) < n) ech.add(std::move(rows[k]));
    }
  }
  return detail::unique_kernel_vector(ech, "left cointegral");
}

/// Rescales Lambda so that lambda(Lambda) = 1.
inline std::pair<Vector, Vector> normalize_pair(const HopfAlgebra& H, Vector lambda, Vector Lambda) {
  Scalar p = H.pair(lambda, Lambda);
  if (p.is_zero()) throw Error(ErrorCode::DegeneratePairing, "lambda(Lambda) = 0");
  return {std::move(lambda), detail::scaled(std::move(Lambda), p.inverse())};
}

/// (alpha, a) read off at the lowest nonzero coordinate of Lambda (resp. lambda)
/// and checked against every other coordinate.
inline std::pair<Vector, Vector> distinguished_group_likes(const HopfAlgebra& H, const Vector& lambda,
                                                           const Vector& Lambda) {
  const std::size_t n = H.dim();
  const std::size_t p = detail::first_nonzero(Lambda);
  const std::size_t q = detail::first_nonzero(lambda);
  if (p == n || q == n) throw Error(ErrorCode::InconsistentSystem, "zero integral");
  Vector alpha = H.zero_vector(), a = H.zero_vector();
  Scalar invL = Lambda[p].inverse(), invl = lambda[q].inverse();
  for (std::size_t i = 0; i < n; ++i) {
    Vector prod = H.mul(Lambda, H.basis_vector(static_cast<Index>(i)));
    alpha[i] = prod[p] * invL;
    if (prod != detail::scaled(Lambda, alpha[i]))
      throw Error(ErrorCode::InconsistentSystem, "Lambda e_" + std::to_string(i) + " is not a multiple of Lambda");
  }
  // (e_i^* lambda)(e_j) = sum_k c_j^{ik} lambda_k = a_i lambda_j
  std::vector<Vector> conv(n, H.zero_vector());  // conv[i][j]
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& e : H.coproduct_of_basis(static_cast<Index>(j)))
      if (!lambda[e.index % n].is_zero()) conv[e.index / n][j] += e.coef * lambda[e.index % n];
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = conv[i][q] * invl;
    if (conv[i] != detail::scaled(lambda, a[i]))
      throw Error(ErrorCode::InconsistentSystem, "e_" + std::to_string(i) + "^* lambda is not a multiple of lambda");
  }
  return {alpha, a};
}

inline IntegralData compute_integrals(const HopfAlgebra& H) {
  auto [lambda, Lambda] = normalize_pair(H, compute_right_integral(H), compute_left_cointegral(H));
  auto [alpha, a] = distinguished_group_likes(H, lambda, Lambda);
  return IntegralData{lambda, Lambda, alpha, a, std::nullopt};
}

inline bool is_unimodular(const HopfAlgebra& H, const IntegralData& I) { return I.alpha == H.counit_vector(); }
inline bool is_unimodular(const HopfAlgebra& H) { return is_unimodular(H, compute_integrals(H)); }

inline bool is_pivotal(const HopfAlgebra& H) {
  if (!H.has_pivot()) return false;
  auto rep = verify_hopf_axioms(H);
  const AxiomResult* r = rep.find("pivot");
  return r && r->passed;
}

/// Pivot axioms, unimodularity and g^2 = a.
inline bool verify_spherical(const HopfAlgebra& H, const IntegralData& I) {
  if (!H.has_pivot()) throw Error(ErrorCode::MissingPivot, "sphericality needs a pivot");
  const Vector& g = H.pivot_vector();
  if (!H.is_group_like(g)) return false;
  for (std::size_t i = 0; i < H.dim(); ++i) {
    Vector e = H.basis_vector(static_cast<Index>(i));
    if (H.antipode(e, 2) != H.mul(H.mul(g, e), H.pivot_inverse_vector())) return false;
  }
  return is_unimodular(H, I) && H.mul(g, g) == I.a;
}
inline bool verify_spherical(const HopfAlgebra& H) {
  if (!H.has_pivot()) throw Error(ErrorCode::MissingPivot, "sphericality needs a pivot");
  return verify_spherical(H, compute_integrals(H));
}

/// mu = lambda(g .), checked against the three symmetrized-integral axioms.
inline Vector symmetrized_integral(const HopfAlgebra& H, const Vector& lambda, const IntegralData& I) {
  if (!verify_spherical(H, I)) throw Error(ErrorCode::NotSpherical, "mu needs a spherical algebra");
  const std::size_t n = H.dim();
  const Vector& g = H.pivot_vector();
  Vector mu = H.zero_vector();
  for (std::size_t i = 0; i < n; ++i) mu[i] = H.pair(lambda, H.mul(g, H.basis_vector(static_cast<Index>(i))));
  for (std::size_t i = 0; i < n; ++i) {
    Vector acc = H.zero_vector();
    for (const auto& e : H.coproduct_of_basis(static_cast<Index>(i))) {
      Scalar c = e.coef * mu[e.index / n];
      if (c.is_zero()) continue;
      Vector t = H.mul(g, H.basis_vector(e.index % n));
      for (std::size_t k = 0; k < n; ++k) acc[k] += c * t[k];
    }
    if (acc != detail::scaled(H.unit_vector(), mu[i]))
      throw Error(ErrorCode::AxiomFailure, "(mu (x) g) Delta at e_" + std::to_string(i));
    if (H.pair(mu, H.antipode(H.basis_vector(static_cast<Index>(i)), 1)) != mu[i])
      throw Error(ErrorCode::AxiomFailure, "mu S at e_" + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Index a = static_cast<Index>(i), b = static_cast<Index>(j);
      Scalar xy = H.zero_scalar(), yx = H.zero_scalar();
      for (const auto& e : H.product_of_basis(a, b)) xy += e.coef * mu[e.index];
      for (const auto& e : H.product_of_basis(b, a)) yx += e.coef * mu[e.index];
      if (xy != yx) throw Error(ErrorCode::AxiomFailure, "mu trace at e_" + std::to_string(i) + ",e_" + std::to_string(j));
    }
  return mu;
}

inline IntegralData compute_integrals_with_mu(const HopfAlgebra& H) {
  IntegralData I = compute_integrals(H);
  I.mu = symmetrized_integral(H, I.lambda, I);
  return I;
}

// ---- quasitriangular structure ----

/// R = sum coef e_j (x) e_k, keyed by j*dim + k.
using RMatrix = detail::Tensor2;

struct QuasitriangularReport {
  bool delta_left = true;   // (Delta (x) id) R = R_13 R_23
  bool delta_right = true;  // (id (x) Delta) R = R_13 R_12
  bool braiding = true;     // tau Delta(h) R = R Delta(h)
  std::string witness;
  bool all_passed() const { return delta_left && delta_right && braiding; }
};

namespace detail {

using Tensor3 = std::map<std::vector<Index>, Scalar>;

inline void add3(Tensor3& t, std::vector<Index> key, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t.find(key);
  if (it == t.end())
    t.emplace(std::move(key), c);
  else if ((it->second += c).is_zero())
    t.erase(it);
}

}  // namespace detail

inline QuasitriangularReport verify_quasitriangular(const HopfAlgebra& H, const RMatrix& R) {
  const std::size_t n = H.dim();
  QuasitriangularReport rep;
  std::vector<std::pair<Index, Index>> keys;
  std::vector<Scalar> coefs;
  for (const auto& [k, c] : R) {
    keys.push_back({static_cast<Index>(k / n), static_cast<Index>(k % n)});
    coefs.push_back(c);
  }
  {
    detail::Tensor3 lhs, rhs;
    for (std::size_t t = 0; t < keys.size(); ++t)
      for (const auto& e : H.coproduct_of_basis(keys[t].first))
        detail::add3(lhs, {static_cast<Index>(e.index / n), static_cast<Index>(e.index % n), keys[t].second},
                     coefs[t] * e.coef);
    for (std::size_t i = 0; i < keys.size(); ++i)
      for (std::size_t j = 0; j < keys.size(); ++j)
        for (const auto& e : H.product_of_basis(keys[i].second, keys[j].second))
          detail::add3(rhs, {keys[i].first, keys[j].first, e.index}, coefs[i] * coefs[j] * e.coef);
    rep.delta_left = lhs == rhs;
  }
  {
    detail::Tensor3 lhs, rhs;
    for (std::size_t t = 0; t < keys.size(); ++t)
      for (const auto& e : H.coproduct_of_basis(keys[t].second))
        detail::add3(lhs, {keys[t].first, static_cast<Index>(e.index / n), static_cast<Index>(e.index % n)},
                     coefs[t] * e.coef);
    for (std::size_t i = 0; i < keys.size(); ++i)
      for (std::size_t j = 0; j < keys.size(); ++j)
        for (const auto& e : H.product_of_basis(keys[j].first, keys[i].first))
          detail::add3(rhs, {e.index, keys[i].second, keys[j].second}, coefs[i] * coefs[j] * e.coef);
    rep.delta_right = lhs == rhs;
  }
  for (std::size_t h = 0; h < n && rep.braiding; ++h) {
    detail::Tensor2 d = H.coproduct_map(H.basis_vector(static_cast<Index>(h))), td;
    for (const auto& [k, c] : d) td.emplace((k % n) * n + k / n, c);
    if (!detail::equal(detail::mul2(H, td, R), detail::mul2(H, R, d))) {
      rep.braiding = false;
      rep.witness = "e_" + std::to_string(h);
    }
  }
  return rep;
}

/// theta = m(tau((g (x) 1) R)) = sum s_i g r_i.
inline Vector ribbon_element(const HopfAlgebra& H, const RMatrix& R) {
  const std::size_t n = H.dim();
  const Vector& g = H.pivot_vector();
  Vector theta = H.zero_vector();
  for (const auto& [k, c] : R) {
    Vector t = H.mul(H.mul(H.basis_vector(static_cast<Index>(k % n)), g), H.basis_vector(static_cast<Index>(k / n)));
    for (std::size_t i = 0; i < n; ++i)
      if (!t[i].is_zero()) theta[i] += c * t[i];
  }
  return theta;
}

/// u = sum S(s_i) r_i.
inline Vector drinfeld_element(const HopfAlgebra& H, const RMatrix& R) {
  const std::size_t n = H.dim();
  Vector u = H.zero_vector();
  for (const auto& [k, c] : R) {
    Vector t = H.mul(H.antipode(H.basis_vector(static_cast<Index>(k % n)), 1), H.basis_vector(static_cast<Index>(k / n)));
    for (std::size_t i = 0; i < n; ++i)
      if (!t[i].is_zero()) u[i] += c * t[i];
  }
  return u;
}

/// Multiplicative inverse via a linear solve of x y = 1; nullopt if singular.
inline std::optional<Vector> algebra_inverse(const HopfAlgebra& H, const Vector& x) {
  const std::size_t n = H.dim();
  Matrix L(n, Row(n, H.zero_scalar()));  // column j = x e_j
  for (std::size_t j = 0; j < n; ++j) {
    Vector c = H.mul(x, H.basis_vector(static_cast<Index>(j)));
    for (std::size_t i = 0; i < n; ++i) L[i][j] = c[i];
  }
  auto inv = invert(L, H.field());
  if (!inv) return std::nullopt;
  Vector y = H.zero_vector();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!(*inv)[i][k].is_zero() && !H.unit_vector()[k].is_zero()) y[i] += (*inv)[i][k] * H.unit_vector()[k];
  return y;
}

struct RibbonReport {
  bool central = false;
  bool antipode_fixed = false;  // S(theta) = theta
  bool counit_one = false;      // eps(theta) = 1
  Vector theta;
};

inline RibbonReport verify_ribbon(const HopfAlgebra& H, const RMatrix& R) {
  RibbonReport rep;
  rep.theta = ribbon_element(H, R);
  rep.central = H.is_central(rep.theta);
  rep.antipode_fixed = H.antipode(rep.theta, 1) == rep.theta;
  rep.counit_one = H.pair(H.counit_vector(), rep.theta).is_one();
  return rep;
}

}  // namespace hopfknot
