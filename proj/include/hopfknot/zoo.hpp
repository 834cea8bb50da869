#pragma once

// Built-in Hopf algebras: group algebras, the small quantum group U_q(sl2) and
// Sweedler's 4-dimensional algebra.

#include <algorithm>
#include <string>
#include <vector>

#include "hopfknot/hopf.hpp"

namespace hopfknot {

struct GroupTable {
  std::size_t order = 0;
  std::vector<std::vector<Index>> table;  // table[a][b] = a*b
  std::vector<Index> inverse;
  Index identity = 0;
};

inline void validate_group(const GroupTable& G) {
  const std::size_t n = G.order;
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidGroup, why); };
  if (n == 0) fail("empty group");
  if (G.table.size() != n || G.inverse.size() != n || G.identity >= n) fail("table shape");
  for (const auto& row : G.table) {
    if (row.size() != n) fail("table shape");
    for (Index x : row)
      if (x >= n) fail("entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (G.table[G.identity][a] != a || G.table[a][G.identity] != a) fail("identity");
    if (G.inverse[a] >= n || G.table[a][G.inverse[a]] != G.identity || G.table[G.inverse[a]][a] != G.identity)
      fail("inverse of " + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (G.table[G.table[a][b]][c] != G.table[a][G.table[b][c]]) fail("associativity");
  }
}

inline GroupTable cyclic_group(std::size_t n) {
  GroupTable G;
  G.order = n;
  G.table.assign(n, std::vector<Index>(n));
  G.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    G.inverse[a] = static_cast<Index>((n - a) % n);
    for (std::size_t b = 0; b < n; ++b) G.table[a][b] = static_cast<Index>((a + b) % n);
  }
  return G;
}

inline GroupTable trivial_group() { return cyclic_group(1); }

/// S_3 as permutations of {0,1,2} in lexicographic order; element 0 is the identity.
inline GroupTable symmetric_group_s3() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto find = [&](const std::vector<int>& q) {
    return static_cast<Index>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  GroupTable G;
  G.order = 6;
  G.table.assign(6, std::vector<Index>(6));
  G.inverse.resize(6);
  for (std::size_t a = 0; a < 6; ++a) {
    std::vector<int> inv(3);
    for (int i = 0; i < 3; ++i) inv[perms[a][i]] = i;
    G.inverse[a] = find(inv);
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<int> ab(3);
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
      G.table[a][b] = find(ab);
    }
  }
  return G;
}

inline HopfData group_algebra(const GroupTable& G, const Field* field) {
  validate_group(G);
  const std::size_t n = G.order;
  HopfData d;
  d.field = field;
  d.dim = n;
  Scalar one = Scalar::one(field), zero = Scalar::zero(field);
  for (std::size_t a = 0; a < n; ++a) d.labels.push_back("g" + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      d.mult.push_back({static_cast<Index>(a), static_cast<Index>(b), G.table[a][b], one});
    d.comult.push_back({static_cast<Index>(a), static_cast<Index>(a), static_cast<Index>(a), one});
  }
  d.unit.assign(n, zero);
  d.unit[G.identity] = one;
  d.counit.assign(n, one);
  d.antipode.assign(n, Row(n, zero));
  for (std::size_t a = 0; a < n; ++a) d.antipode[G.inverse[a]][a] = one;
  d.pivot = d.unit;
  return d;
}

namespace detail {

/// Left multiplication by generators on normal-ordered U_q elements
/// sum c K^m E^n F^l, stored densely at index m*r^2 + n*r + l.
struct UqRewriter {
  int r;
  const Field* F;
  Scalar q;
  std::vector<Scalar> qpow;  // q^k for k in [0, 2r)

  UqRewriter(int r_, const Field* f) : r(r_), F(f), q(Scalar::root_of_unity(f)) {
    for (int k = 0; k < 2 * r; ++k) qpow.push_back(q.pow(k));
  }
  std::size_t idx(int m, int n, int l) const { return static_cast<std::size_t>((m * r + n) * r + l); }
  Scalar qp(long k) const { return qpow[static_cast<std::size_t>(((k % (2 * r)) + 2 * r) % (2 * r))]; }
  Vector zero() const { return Vector(static_cast<std::size_t>(r * r * r), Scalar::zero(F)); }

  template <class Fn>
  Vector each(const Vector& x, Fn fn) const {
    Vector out = zero();
    for (int m = 0; m < r; ++m)
      for (int n = 0; n < r; ++n)
        for (int l = 0; l < r; ++l) {
          const Scalar& c = x[idx(m, n, l)];
          if (!c.is_zero()) fn(out, m, n, l, c);
        }
    return out;
  }
  Vector K(const Vector& x, int power) const {
    return each(x, [&](Vector& o, int m, int n, int l, const Scalar& c) {
      o[idx(((m + power) % r + r) % r, n, l)] += c;
    });
  }
  // E K^m = q^{-2m} K^m E
  Vector E(const Vector& x) const {
    return each(x, [&](Vector& o, int m, int n, int l, const Scalar& c) {
      if (n + 1 < r) o[idx(m, n + 1, l)] += c * qp(-2L * m);
    });
  }
  // F K^m = q^{2m} K^m F, then F E^n F^l rewritten with FE = EF - (K - K^{-1})/(q - q^{-1})
  Vector Fgen(const Vector& x) const {
    Scalar h = (q - q.inverse()).inverse();
    Vector out = zero();
    for (int m = 0; m < r; ++m)
      for (int n = 0; n < r; ++n)
        for (int l = 0; l < r; ++l) {
          const Scalar& c = x[idx(m, n, l)];
          if (c.is_zero()) continue;
          Vector t = F_times_EnFl(n, l, h);
          t = K(t, m);
          Scalar cc = c * qp(2L * m);
          for (std::size_t i = 0; i < t.size(); ++i)
            if (!t[i].is_zero()) out[i] += cc * t[i];
        }
    return out;
  }
  Vector F_times_EnFl(int n, int l, const Scalar& h) const {
    if (n == 0) {
      Vector v = zero();
      if (l + 1 < r) v[idx(0, 0, l + 1)] = Scalar::one(F);
      return v;
    }
    Vector rest = zero();
    rest[idx(0, n - 1, l)] = Scalar::one(F);
    Vector a = E(F_times_EnFl(n - 1, l, h));
    Vector b = K(rest, 1);
    Vector c = K(rest, -1);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= h * (b[i] - c[i]);
    return a;
  }
  /// K^m E^n F^l * y
  Vector monomial_times(int m, int n, int l, Vector y) const {
    for (int i = 0; i < l; ++i) y = Fgen(y);
    for (int i = 0; i < n; ++i) y = E(y);
    return K(y, m);
  }
};

}  // namespace detail

/// U_q(sl2) at q = zeta_{2r} over Q(zeta_{2r}), PBW basis K^m E^n F^l with
/// index m*r^2 + n*r + l. `c` only fixes the normalization of the integrals
/// (see uq_integrals) and is validated here.
inline HopfData small_quantum_sl2(int r, const Scalar& c) {
  if (r < 2) throw Error(ErrorCode::BadRoot, "r must be at least 2");
  const Field* F = Field::cyclotomic(2 * r);
  if (c.field() != F && c.field() != Field::rationals())
    throw Error(ErrorCode::MixedFields, "normalization constant must lie in Q(zeta_" + std::to_string(2 * r) + ")");
  if (c.is_zero()) throw Error(ErrorCode::DivisionByZero, "normalization constant is zero");
  detail::UqRewriter U(r, F);
  if (U.q.pow(2 * r) != Scalar::one(F) || U.q.pow(r) == Scalar::one(F))
    throw Error(ErrorCode::BadRoot, "q is not a primitive root of unity");
  const std::size_t n = static_cast<std::size_t>(r * r * r);
  Scalar one = Scalar::one(F), zero = Scalar::zero(F);
  HopfData d;
  d.field = F;
  d.dim = n;
  auto power_label = [](const char* g, int k) {
    if (k == 0) return std::string();
    return k == 1 ? std::string(g) : std::string(g) + "^" + std::to_string(k);
  };
  for (int m = 0; m < r; ++m)
    for (int a = 0; a < r; ++a)
      for (int l = 0; l < r; ++l) {
        std::string s = power_label("K", m) + power_label("E", a) + power_label("F", l);
        d.labels.push_back(s.empty() ? "1" : s);
      }

  std::vector<Vector> basis(n);
  for (std::size_t i = 0; i < n; ++i) {
    basis[i] = U.zero();
    basis[i][i] = one;
  }
  auto decode = [&](std::size_t i, int& m, int& a, int& l) {
    m = static_cast<int>(i) / (r * r), a = static_cast<int>(i) / r % r, l = static_cast<int>(i) % r;
  };
  std::vector<std::vector<Vector>> prod(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    int m, a, l;
    decode(i, m, a, l);
    for (std::size_t j = 0; j < n; ++j) {
      prod[i][j] = U.monomial_times(m, a, l, basis[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (!prod[i][j][k].is_zero())
          d.mult.push_back({static_cast<Index>(i), static_cast<Index>(j), static_cast<Index>(k), prod[i][j][k]});
    }
  }
  auto mul = [&](const Vector& x, const Vector& y) {
    Vector out = U.zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        Scalar xy = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k)
          if (!prod[i][j][k].is_zero()) out[k] += xy * prod[i][j][k];
      }
    }
    return out;
  };
  // order-2 tensors as map (j*n + k) -> coef
  using T2 = detail::Tensor2;
  auto mul2 = [&](const T2& x, const T2& y) {
    T2 out;
    for (const auto& [kx, cx] : x)
      for (const auto& [ky, cy] : y) {
        const Vector& ac = prod[kx / n][ky / n];
        const Vector& bd = prod[kx % n][ky % n];
        Scalar cc = cx * cy;
        for (std::size_t p = 0; p < n; ++p) {
          if (ac[p].is_zero()) continue;
          for (std::size_t s = 0; s < n; ++s)
            if (!bd[s].is_zero()) detail::add_to(out, p * n + s, cc * ac[p] * bd[s]);
        }
      }
    detail::prune(out);
    return out;
  };
  const std::size_t iK = U.idx(1, 0, 0), iKinv = U.idx(r - 1, 0, 0), iE = U.idx(0, 1, 0), iF = U.idx(0, 0, 1);
  const std::size_t i1 = 0;
  T2 dK{{iK * n + iK, one}};
  T2 dE{{i1 * n + iE, one}, {iE * n + iK, one}};
  T2 dF{{iKinv * n + iF, one}, {iF * n + i1, one}};
  Vector Sk = basis[iKinv];
  Vector SE = mul(basis[iE], basis[iKinv]);
  for (auto& x : SE) x = -x;
  Vector SF = mul(basis[iK], basis[iF]);
  for (auto& x : SF) x = -x;

  d.antipode.assign(n, Row(n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    int m, a, l;
    decode(i, m, a, l);
    T2 delta{{i1 * n + i1, one}};
    Vector s = basis[i1];
    for (int t = 0; t < m; ++t) delta = mul2(delta, dK);
    for (int t = 0; t < a; ++t) delta = mul2(delta, dE);
    for (int t = 0; t < l; ++t) delta = mul2(delta, dF);
    for (int t = 0; t < l; ++t) s = mul(s, SF);
    for (int t = 0; t < a; ++t) s = mul(s, SE);
    for (int t = 0; t < m; ++t) s = mul(s, Sk);
    for (const auto& [key, cf] : delta)
      d.comult.push_back({static_cast<Index>(i), static_cast<Index>(key / n), static_cast<Index>(key % n), cf});
    for (std::size_t k = 0; k < n; ++k) d.antipode[k][i] = s[k];
  }
  d.unit = basis[i1];
  d.counit.assign(n, zero);
  for (int m = 0; m < r; ++m) d.counit[U.idx(m, 0, 0)] = one;
  d.pivot = basis[iK];
  return d;
}

/// The closed forms lambda(K E^{r-1} F^{r-1}) = r/c (zero on other PBW monomials)
/// and Lambda = c (1/r sum_j K^j) E^{r-1} F^{r-1}, as coefficient vectors.
struct UqClosedForms {
  Vector lambda;
  Vector Lambda;
};

inline UqClosedForms uq_integrals(int r, const Scalar& c) {
  const Field* F = Field::cyclotomic(2 * r);
  Scalar cc = c.field() == F ? c : Scalar(F, c.coefficients().at(0));
  const std::size_t n = static_cast<std::size_t>(r * r * r);
  UqClosedForms out{Vector(n, Scalar::zero(F)), Vector(n, Scalar::zero(F))};
  auto idx = [r](int m, int a, int l) { return static_cast<std::size_t>((m * r + a) * r + l); };
  out.lambda[idx(1 % r, r - 1, r - 1)] = Scalar(F, r) / cc;
  for (int j = 0; j < r; ++j) out.Lambda[idx(j, r - 1, r - 1)] = cc / Scalar(F, r);
  return out;
}

/// Sweedler's algebra: basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx.
inline HopfData sweedler_algebra(const Field* field) {
  Scalar one = Scalar::one(field), zero = Scalar::zero(field), m1 = -one;
  HopfData d;
  d.field = field;
  d.dim = 4;
  d.labels = {"1", "g", "x", "gx"};
  // index = a + 2b for g^a x^b
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      int a = i % 2, b = i / 2, c = j % 2, e = j / 2;
      if (b + e >= 2) continue;
      Scalar s = (b * c) % 2 ? m1 : one;
      d.mult.push_back({i, j, static_cast<Index>((a + c) % 2 + 2 * (b + e)), s});
    }
  d.unit = {one, zero, zero, zero};
  d.counit = {one, one, zero, zero};
  d.comult = {{0, 0, 0, one}, {1, 1, 1, one}, {2, 2, 0, one}, {2, 1, 2, one}, {3, 3, 1, one}, {3, 0, 3, one}};
  d.antipode.assign(4, Row(4, zero));
  d.antipode[0][0] = one;  // S(1) = 1
  d.antipode[1][1] = one;  // S(g) = g
  d.antipode[3][2] = m1;   // S(x) = -gx
  d.antipode[2][3] = one;  // S(gx) = x
  d.pivot = Vector{zero, one, zero, zero};
  return d;
}

}  // namespace hopfknot
