#pragma once

// Finite-dimensional Hopf algebras given by structure constants on a fixed basis.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hopfknot/linalg.hpp"
#include "hopfknot/scalar.hpp"

namespace hopfknot {

using Index = std::uint32_t;
using Vector = std::vector<Scalar>;

/// One nonzero entry of a rank-3 structure tensor: (i, j, k) -> coef.
struct StructureEntry {
  Index i, j, k;
  Scalar coef;
};

struct SparseEntry {
  Index index;
  Scalar coef;
};

class HopfAlgebra;

struct AlgebraElement {
  const HopfAlgebra* algebra = nullptr;
  Vector coeffs;
};

struct Functional {
  const HopfAlgebra* algebra = nullptr;
  Vector coeffs;
};

/// Sparse element of H^{(x)order}. Zero coefficients are never stored.
struct TensorElement {
  const HopfAlgebra* algebra = nullptr;
  std::size_t order = 0;
  std::map<std::vector<Index>, Scalar> terms;

  void add(const std::vector<Index>& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

/// Raw description used to build a HopfAlgebra; this is also what the JSON
/// reader and the constructors in zoo/double produce.
struct HopfData {
  const Field* field = Field::rationals();
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<StructureEntry> mult;    // e_i e_j = sum coef e_k
  Vector unit;                         // 1_H
  std::vector<StructureEntry> comult;  // Delta(e_i) = sum coef e_j (x) e_k
  Vector counit;
  Matrix antipode;                     // antipode[r][c] = coefficient of e_r in S(e_c)
  std::optional<Vector> pivot;
};

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::string witness;  // basis index/indices of the first failure
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
  }
  const AxiomResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
};

class HopfAlgebra;
using AlgebraPtr = std::shared_ptr<const HopfAlgebra>;

class HopfAlgebra {
 public:
  /// Builds caches; S^{-1} is computed here. A singular antipode is kept as a
  /// data defect (reported by verify_hopf_axioms) rather than thrown.
  explicit HopfAlgebra(HopfData data) : d_(std::move(data)) {
    const std::size_t n = d_.dim;
    if (n == 0) throw Error(ErrorCode::ParseError, "dimension must be positive");
    if (d_.labels.empty())
      for (std::size_t i = 0; i < n; ++i) d_.labels.push_back("e" + std::to_string(i));
    if (d_.labels.size() != n || d_.unit.size() != n || d_.counit.size() != n || d_.antipode.size() != n)
      throw Error(ErrorCode::ParseError, "structure data length does not match dimension");
    if (d_.pivot && d_.pivot->size() != n) throw Error(ErrorCode::ParseError, "pivot length does not match dimension");
    mult_.assign(n * n, {});
    for (const auto& e : d_.mult) {
      check_index(e.i), check_index(e.j), check_index(e.k);
      accumulate(mult_[e.i * n + e.j], e.k, e.coef);
    }
    comult_.assign(n, {});
    for (const auto& e : d_.comult) {
      check_index(e.i), check_index(e.j), check_index(e.k);
      accumulate(comult_[e.i], static_cast<Index>(e.j * n + e.k), e.coef);
    }
    antipode_cols_ = columns(d_.antipode);
    if (auto inv = invert(d_.antipode, d_.field)) {
      antipode_inverse_ = *inv;
      antipode_inverse_cols_ = columns(antipode_inverse_);
    }
    if (d_.pivot) {
      pivot_inverse_ = antipode(*d_.pivot, 1);
    }
  }

  HopfAlgebra(const HopfAlgebra&) = delete;
  HopfAlgebra& operator=(const HopfAlgebra&) = delete;

  const Field* field() const { return d_.field; }
  std::size_t dim() const { return d_.dim; }
  const HopfData& data() const { return d_; }
  const std::vector<std::string>& labels() const { return d_.labels; }
  bool has_pivot() const { return d_.pivot.has_value(); }
  bool antipode_invertible() const { return !antipode_inverse_cols_.empty(); }
  const Matrix& antipode_inverse_matrix() const { return antipode_inverse_; }

  // ---- raw coefficient-vector API (hot paths) ----

  Scalar zero_scalar() const { return Scalar::zero(d_.field); }
  Vector zero_vector() const { return Vector(d_.dim, zero_scalar()); }
  Vector basis_vector(Index i) const {
    Vector v = zero_vector();
    v[i] = Scalar::one(d_.field);
    return v;
  }
  const Vector& unit_vector() const { return d_.unit; }
  const Vector& counit_vector() const { return d_.counit; }
  const Vector& pivot_vector() const {
    if (!d_.pivot) throw Error(ErrorCode::MissingPivot, "algebra has no pivot");
    return *d_.pivot;
  }
  const Vector& pivot_inverse_vector() const {
    if (!d_.pivot) throw Error(ErrorCode::MissingPivot, "algebra has no pivot");
    return pivot_inverse_;
  }
  /// g^k for any integer k.
  Vector pivot_power(long k) const {
    Vector acc = d_.unit;
    const Vector& base = k >= 0 ? pivot_vector() : pivot_inverse_vector();
    for (long i = 0; i < (k >= 0 ? k : -k); ++i) acc = mul(base, acc);
    return acc;
  }

  const std::vector<SparseEntry>& product_of_basis(Index i, Index j) const { return mult_[i * d_.dim + j]; }
  /// Delta(e_i) as entries with packed index j*dim + k.
  const std::vector<SparseEntry>& coproduct_of_basis(Index i) const { return comult_[i]; }

  Vector mul(const Vector& x, const Vector& y) const {
    const std::size_t n = d_.dim;
    Vector r = zero_vector();
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const auto& entries = mult_[i * n + j];
        if (entries.empty()) continue;
        Scalar xy = x[i] * y[j];
        for (const auto& e : entries) r[e.index] += xy * e.coef;
      }
    }
    return r;
  }

  /// S^power(x); negative powers use S^{-1}.
  Vector antipode(const Vector& x, long power) const {
    if (power < 0 && !antipode_invertible()) throw Error(ErrorCode::AxiomFailure, "antipode is not invertible");
    const auto& cols = power >= 0 ? antipode_cols_ : antipode_inverse_cols_;
    Vector cur = x;
    for (long p = 0; p < (power >= 0 ? power : -power); ++p) {
      Vector next = zero_vector();
      for (std::size_t i = 0; i < d_.dim; ++i) {
        if (cur[i].is_zero()) continue;
        for (const auto& e : cols[i]) next[e.index] += cur[i] * e.coef;
      }
      cur = std::move(next);
    }
    return cur;
  }

  Scalar pair(const Vector& f, const Vector& x) const {
    Scalar s = zero_scalar();
    for (std::size_t i = 0; i < d_.dim; ++i)
      if (!f[i].is_zero() && !x[i].is_zero()) s += f[i] * x[i];
    return s;
  }

  /// Delta(x) as a sparse map keyed by j*dim + k.
  std::unordered_map<std::uint64_t, Scalar> coproduct_map(const Vector& x) const {
    std::unordered_map<std::uint64_t, Scalar> out;
    for (std::size_t i = 0; i < d_.dim; ++i) {
      if (x[i].is_zero()) continue;
      for (const auto& e : comult_[i]) {
        Scalar c = x[i] * e.coef;
        auto it = out.find(e.index);
        if (it == out.end())
          out.emplace(e.index, c);
        else
          it->second += c;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  // ---- typed API ----

  AlgebraElement element(Vector c) const {
    if (c.size() != d_.dim) throw Error(ErrorCode::AlgebraMismatch, "coefficient length differs from dimension");
    return AlgebraElement{this, std::move(c)};
  }
  AlgebraElement basis(Index i) const { return AlgebraElement{this, basis_vector(i)}; }
  AlgebraElement one() const { return AlgebraElement{this, d_.unit}; }
  AlgebraElement pivot() const { return AlgebraElement{this, pivot_vector()}; }
  Functional functional(Vector c) const {
    if (c.size() != d_.dim) throw Error(ErrorCode::AlgebraMismatch, "covector length differs from dimension");
    return Functional{this, std::move(c)};
  }
  Functional counit() const { return Functional{this, d_.counit}; }

  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const {
    mine(x.algebra), mine(y.algebra);
    return AlgebraElement{this, mul(x.coeffs, y.coeffs)};
  }

  TensorElement comultiply(const AlgebraElement& x) const { return iterated_comultiply(x, 2); }

  /// Delta^{(0)} = epsilon, Delta^{(1)} = id, Delta^{(n+1)} applies Delta to the last slot.
  TensorElement iterated_comultiply(const AlgebraElement& x, std::size_t n) const {
    mine(x.algebra);
    TensorElement t{this, n, {}};
    if (n == 0) {
      t.add({}, pair(d_.counit, x.coeffs));
      return t;
    }
    for (std::size_t i = 0; i < d_.dim; ++i)
      if (!x.coeffs[i].is_zero()) t.add({static_cast<Index>(i)}, x.coeffs[i]);
    for (std::size_t level = 1; level < n; ++level) {
      TensorElement next{this, level + 1, {}};
      for (const auto& [key, c] : t.terms) {
        Index last = key.back();
        std::vector<Index> k2(key.begin(), key.end() - 1);
        k2.push_back(0);
        k2.push_back(0);
        for (const auto& e : comult_[last]) {
          k2[level - 1] = static_cast<Index>(e.index / d_.dim);
          k2[level] = static_cast<Index>(e.index % d_.dim);
          next.add(k2, c * e.coef);
        }
      }
      t = std::move(next);
    }
    return t;
  }

  AlgebraElement antipode_power(const AlgebraElement& x, long d) const {
    mine(x.algebra);
    return AlgebraElement{this, antipode(x.coeffs, d)};
  }

  Scalar apply_functional(const Functional& f, const AlgebraElement& x) const {
    mine(f.algebra), mine(x.algebra);
    return pair(f.coeffs, x.coeffs);
  }

  Scalar apply_functional_slotwise(const std::vector<Functional>& fs, const TensorElement& t) const {
    mine(t.algebra);
    if (fs.size() != t.order)
      throw Error(ErrorCode::OrderMismatch,
                  std::to_string(fs.size()) + " functionals for an order-" + std::to_string(t.order) + " tensor");
    for (const auto& f : fs) mine(f.algebra);
    Scalar total = zero_scalar();
    for (const auto& [key, c] : t.terms) {
      Scalar term = c;
      for (std::size_t s = 0; s < key.size() && !term.is_zero(); ++s) term = term * fs[s].coeffs[key[s]];
      total += term;
    }
    return total;
  }

  bool is_group_like(const Vector& x) const {
    if (!pair(d_.counit, x).is_one()) return false;
    auto dx = coproduct_map(x);
    const std::size_t n = d_.dim;
    std::size_t expected = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (x[k].is_zero()) continue;
        ++expected;
        auto it = dx.find(j * n + k);
        if (it == dx.end() || it->second != x[j] * x[k]) return false;
      }
    }
    return dx.size() == expected;
  }
  bool is_group_like(const AlgebraElement& x) const {
    mine(x.algebra);
    return is_group_like(x.coeffs);
  }

  bool is_central(const Vector& z) const {
    for (std::size_t i = 0; i < d_.dim; ++i) {
      Vector e = basis_vector(static_cast<Index>(i));
      if (mul(z, e) != mul(e, z)) return false;
    }
    return true;
  }

 private:
  void check_index(Index i) const {
    if (i >= d_.dim) throw Error(ErrorCode::ParseError, "structure index " + std::to_string(i) + " out of range");
  }
  void mine(const HopfAlgebra* a) const {
    if (a != this) throw Error(ErrorCode::AlgebraMismatch, "element belongs to a different algebra");
  }
  static void accumulate(std::vector<SparseEntry>& v, Index k, const Scalar& c) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it->index == k) {
        it->coef += c;
        if (it->coef.is_zero()) v.erase(it);
        return;
      }
    }
    if (!c.is_zero()) v.push_back({k, c});
  }
  std::vector<std::vector<SparseEntry>> columns(const Matrix& m) const {
    std::vector<std::vector<SparseEntry>> cols(d_.dim);
    for (std::size_t r = 0; r < d_.dim; ++r)
      for (std::size_t c = 0; c < d_.dim; ++c)
        if (!m[r][c].is_zero()) cols[c].push_back({static_cast<Index>(r), m[r][c]});
    return cols;
  }

  HopfData d_;
  std::vector<std::vector<SparseEntry>> mult_;
  std::vector<std::vector<SparseEntry>> comult_;
  std::vector<std::vector<SparseEntry>> antipode_cols_;
  std::vector<std::vector<SparseEntry>> antipode_inverse_cols_;
  Matrix antipode_inverse_;
  Vector pivot_inverse_;
};

inline AlgebraPtr make_algebra(HopfData d) { return std::make_shared<const HopfAlgebra>(std::move(d)); }

namespace detail {

using Tensor2 = std::unordered_map<std::uint64_t, Scalar>;

inline void add_to(Tensor2& t, std::uint64_t key, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t.find(key);
  if (it == t.end())
    t.emplace(key, c);
  else
    it->second += c;
}

inline void prune(Tensor2& t) {
  for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
}

inline bool equal(Tensor2 a, Tensor2 b) {
  prune(a), prune(b);
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second != v) return false;
  }
  return true;
}

/// (a (x) b)(c (x) d) summed over the sparse terms of two order-2 tensors.
inline Tensor2 mul2(const HopfAlgebra& H, const Tensor2& x, const Tensor2& y) {
  const std::uint64_t n = H.dim();
  Tensor2 out;
  for (const auto& [kx, cx] : x) {
    Index a = static_cast<Index>(kx / n), b = static_cast<Index>(kx % n);
    for (const auto& [ky, cy] : y) {
      Index c = static_cast<Index>(ky / n), d = static_cast<Index>(ky % n);
      const auto& ac = H.product_of_basis(a, c);
      if (ac.empty()) continue;
      const auto& bd = H.product_of_basis(b, d);
      if (bd.empty()) continue;
      Scalar cc = cx * cy;
      for (const auto& p : ac) {
        Scalar cp = cc * p.coef;
        for (const auto& q : bd) add_to(out, p.index * n + q.index, cp * q.coef);
      }
    }
  }
  prune(out);
  return out;
}

}  // namespace detail

/// Checks every Hopf axiom on basis elements (all axioms are multilinear).
inline AxiomReport verify_hopf_axioms(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  const Field* F = H.field();
  AxiomReport rep;
  auto record = [&](const std::string& name, const std::string& witness) {
    rep.results.push_back({name, witness.empty(), witness});
  };
  auto idx = [](std::size_t i) { return std::to_string(i); };

  // associativity, on sparse basis products
  {
    std::string w;
    auto times_basis = [&](const std::vector<SparseEntry>& x, Index k, bool left) {
      std::map<Index, Scalar> out;
      for (const auto& e : x)
        for (const auto& f : left ? H.product_of_basis(k, e.index) : H.product_of_basis(e.index, k)) {
          auto [it, fresh] = out.try_emplace(f.index, Scalar::zero(F));
          it->second += e.coef * f.coef;
        }
      for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
      return out;
    };
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < n && w.empty(); ++j)
        for (std::size_t k = 0; k < n && w.empty(); ++k) {
          auto lhs = times_basis(H.product_of_basis(Index(i), Index(j)), Index(k), false);
          auto rhs = times_basis(H.product_of_basis(Index(j), Index(k)), Index(i), true);
          if (lhs != rhs) w = idx(i) + "," + idx(j) + "," + idx(k);
        }
    record("associativity", w);
  }
  // unit
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      Vector e = H.basis_vector(i);
      if (H.mul(H.unit_vector(), e) != e || H.mul(e, H.unit_vector()) != e) w = idx(i);
    }
    record("unit", w);
  }
  // counit: (eps (x) id) Delta = id = (id (x) eps) Delta
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      Vector left = H.zero_vector(), right = H.zero_vector();
      for (const auto& e : H.coproduct_of_basis(i)) {
        std::size_t j = e.index / n, k = e.index % n;
        left[k] += e.coef * H.counit_vector()[j];
        right[j] += e.coef * H.counit_vector()[k];
      }
      if (left != H.basis_vector(i) || right != H.basis_vector(i)) w = idx(i);
    }
    record("counit", w);
  }
  // coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      std::map<std::vector<Index>, Scalar> a, b;
      auto put = [](std::map<std::vector<Index>, Scalar>& m, std::vector<Index> k, const Scalar& c) {
        auto it = m.find(k);
        if (it == m.end())
          m.emplace(std::move(k), c);
        else
          it->second += c;
      };
      for (const auto& e : H.coproduct_of_basis(i)) {
        Index j = e.index / n, k = e.index % n;
        for (const auto& f : H.coproduct_of_basis(j)) put(a, {f.index / Index(n), f.index % Index(n), k}, e.coef * f.coef);
        for (const auto& f : H.coproduct_of_basis(k)) put(b, {j, f.index / Index(n), f.index % Index(n)}, e.coef * f.coef);
      }
      for (auto* m : {&a, &b})
        for (auto it = m->begin(); it != m->end();) it = it->second.is_zero() ? m->erase(it) : std::next(it);
      if (a != b) w = idx(i);
    }
    record("coassociativity", w);
  }
  // Delta and epsilon are algebra maps
  {
    std::string w;
    detail::Tensor2 unit2;
    {
      auto du = H.coproduct_map(H.unit_vector());
      detail::Tensor2 expect;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!H.unit_vector()[j].is_zero() && !H.unit_vector()[k].is_zero())
            detail::add_to(expect, j * n + k, H.unit_vector()[j] * H.unit_vector()[k]);
      if (!detail::equal(du, expect)) w = "unit";
    }
    std::vector<detail::Tensor2> deltas(n);
    for (std::size_t i = 0; i < n; ++i) deltas[i] = H.coproduct_map(H.basis_vector(i));
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < n && w.empty(); ++j) {
        detail::Tensor2 lhs;
        for (const auto& e : H.product_of_basis(i, j))
          for (const auto& [key, c] : deltas[e.index]) detail::add_to(lhs, key, e.coef * c);
        if (!detail::equal(lhs, detail::mul2(H, deltas[i], deltas[j]))) w = idx(i) + "," + idx(j);
      }
    record("comultiplicativity", w);
  }
  {
    std::string w;
    if (!H.pair(H.counit_vector(), H.unit_vector()).is_one()) w = "unit";
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < n && w.empty(); ++j) {
        Scalar lhs = H.pair(H.counit_vector(), H.mul(H.basis_vector(i), H.basis_vector(j)));
        if (lhs != H.counit_vector()[i] * H.counit_vector()[j]) w = idx(i) + "," + idx(j);
      }
    record("counit_multiplicativity", w);
  }
  // antipode: m(S (x) id)Delta = eta eps = m(id (x) S)Delta
  {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      Vector left = H.zero_vector(), right = H.zero_vector();
      for (const auto& e : H.coproduct_of_basis(i)) {
        Vector a = H.basis_vector(e.index / n), b = H.basis_vector(e.index % n);
        Vector l = H.mul(H.antipode(a, 1), b), r = H.mul(a, H.antipode(b, 1));
        for (std::size_t k = 0; k < n; ++k) {
          if (!l[k].is_zero()) left[k] += e.coef * l[k];
          if (!r[k].is_zero()) right[k] += e.coef * r[k];
        }
      }
      Vector expect = H.unit_vector();
      for (auto& x : expect) x = x * H.counit_vector()[i];
      if (left != expect || right != expect) w = idx(i);
    }
    record("antipode", w);
  }
  record("antipode_bijective", H.antipode_invertible() ? "" : "singular");
  if (H.has_pivot()) {
    const Vector& g = H.pivot_vector();
    std::string w;
    if (!H.is_group_like(g)) w = "not group-like";
    if (w.empty()) {
      const Vector& gi = H.pivot_inverse_vector();
      if (H.mul(g, gi) != H.unit_vector()) w = "not invertible";
      for (std::size_t i = 0; i < n && w.empty(); ++i) {
        Vector e = H.basis_vector(i);
        if (H.antipode(e, 2) != H.mul(H.mul(g, e), gi)) w = idx(i);
      }
    }
    record("pivot", w);
  }
  return rep;
}

}  // namespace hopfknot
