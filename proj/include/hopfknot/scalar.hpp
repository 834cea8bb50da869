#pragma once

// Exact field arithmetic: rationals, prime fields and cyclotomic fields Q(zeta_m).
//
// Fields are interned: each distinct descriptor is built once and lives for the
// whole process, so scalars carry a plain pointer to it and two scalars share a
// field exactly when their pointers compare equal.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hopfknot/error.hpp"

namespace hopfknot {

using Poly = std::vector<mpq_class>;  // coefficients, lowest degree first

namespace poly {

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Exact division of a by b; throws if the remainder is nonzero.
inline Poly divexact(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) {
    if (a.empty()) return {};
    throw Error(ErrorCode::InconsistentSystem, "polynomial division not exact");
  }
  Poly q(a.size() - db, mpq_class(0));
  for (std::size_t k = a.size(); k-- > db;) {
    mpq_class c = a[k] / b[db];
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) throw Error(ErrorCode::InconsistentSystem, "polynomial division not exact");
  trim(q);
  return q;
}

}  // namespace poly

/// Phi_m computed by dividing x^m - 1 by every Phi_d with d | m, d < m.
inline Poly cyclotomic_polynomial(int m) {
  static std::mutex mu;
  static std::map<int, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  Poly p(static_cast<std::size_t>(m) + 1, mpq_class(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly::divexact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, p);
  return p;
}

class Field {
 public:
  enum class Kind { Rational, Prime, Cyclotomic };

  static const Field* rationals() { return intern(Kind::Rational, 0); }
  static const Field* prime(std::uint64_t p) {
    if (p < 2) throw Error(ErrorCode::ParseError, "prime field needs p >= 2");
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error(ErrorCode::ParseError, "Fp modulus is not prime: " + std::to_string(p));
    return intern(Kind::Prime, p);
  }
  static const Field* cyclotomic(int m) {
    if (m < 1) throw Error(ErrorCode::ParseError, "cyclotomic order must be >= 1");
    return intern(Kind::Cyclotomic, static_cast<std::uint64_t>(m));
  }

  Kind kind() const { return kind_; }
  std::uint64_t modulus() const { return param_; }
  int order() const { return static_cast<int>(param_); }
  /// Number of stored coefficients per scalar.
  std::size_t degree() const { return degree_; }
  const Poly& minimal_polynomial() const { return phi_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::Rational: return "Q";
      case Kind::Prime: return "F_" + std::to_string(param_);
      case Kind::Cyclotomic: return "Q(zeta_" + std::to_string(param_) + ")";
    }
    return "?";
  }

  // x^(degree+k) mod Phi, for k in [0, degree-1)
  const std::vector<Poly>& reduction_table() const { return reduce_; }

 private:
  Field(Kind k, std::uint64_t p) : kind_(k), param_(p) {
    if (k == Kind::Cyclotomic) {
      phi_ = cyclotomic_polynomial(static_cast<int>(p));
      degree_ = phi_.size() - 1;
      // x^d = -(phi_0 + ... + phi_{d-1} x^{d-1}) since phi is monic
      Poly cur(degree_);
      for (std::size_t j = 0; j < degree_; ++j) cur[j] = -phi_[j];
      for (std::size_t k2 = 0; k2 + 1 < degree_; ++k2) {
        reduce_.push_back(cur);
        Poly next(degree_, mpq_class(0));
        mpq_class top = cur[degree_ - 1];
        for (std::size_t j = degree_ - 1; j > 0; --j) next[j] = cur[j - 1];
        next[0] = 0;
        if (top != 0)
          for (std::size_t j = 0; j < degree_; ++j) next[j] -= top * phi_[j];
        cur = std::move(next);
      }
    } else {
      degree_ = 1;
    }
  }

  static const Field* intern(Kind k, std::uint64_t p) {
    static std::mutex mu;
    static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<Field>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(k), p);
    auto it = table.find(key);
    if (it == table.end()) it = table.emplace(key, std::unique_ptr<Field>(new Field(k, p))).first;
    return it->second.get();
  }

  Kind kind_;
  std::uint64_t param_;
  std::size_t degree_ = 1;
  Poly phi_;
  std::vector<Poly> reduce_;
};

/// Element of an exact field. Immutable in spirit: operators return new values.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), c_(1, mpq_class(0)) {}
  explicit Scalar(const Field* f) : field_(f), c_(f->degree(), mpq_class(0)) {}
  Scalar(const Field* f, const mpq_class& v) : Scalar(f) { set_base(v); }
  Scalar(const Field* f, long v) : Scalar(f, mpq_class(v)) {}

  static Scalar zero(const Field* f) { return Scalar(f); }
  static Scalar one(const Field* f) { return Scalar(f, 1L); }
  /// zeta_m, the class of x modulo Phi_m.
  static Scalar root_of_unity(const Field* f) {
    if (f->kind() != Field::Kind::Cyclotomic)
      throw Error(ErrorCode::BadRoot, "root_of_unity needs a cyclotomic field");
    Poly x{mpq_class(0), mpq_class(1)};
    return from_poly(f, x);
  }
  static Scalar from_coefficients(const Field* f, std::vector<mpq_class> c) {
    if (f->kind() == Field::Kind::Cyclotomic) return from_poly(f, c);
    Scalar s(f, c.empty() ? mpq_class(0) : c[0]);
    return s;
  }

  const Field* field() const { return field_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    check(a, b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar& operator+=(const Scalar& o) {
    check(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    normalize_prime();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    normalize_prime();
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    *this = *this * o.inverse();
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check(a, b);
    return a * b.inverse();
  }
  Scalar operator-() const {
    Scalar r(*this);
    for (auto& x : r.c_) x = -x;
    r.normalize_prime();
    return r;
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check(a, b);
    const Field* f = a.field_;
    Scalar r(f);
    if (f->kind() != Field::Kind::Cyclotomic) {
      r.c_[0] = a.c_[0] * b.c_[0];
      r.normalize_prime();
      return r;
    }
    const std::size_t d = f->degree();
    std::vector<mpq_class> full(2 * d - 1, mpq_class(0));
    bool any = false;
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j] == 0) continue;
        full[i + j] += a.c_[i] * b.c_[j];
        any = true;
      }
    }
    if (!any) return r;
    for (std::size_t i = 0; i < d; ++i) r.c_[i] = full[i];
    const auto& red = f->reduction_table();
    for (std::size_t k = d; k < 2 * d - 1; ++k) {
      if (full[k] == 0) continue;
      const Poly& row = red[k - d];
      for (std::size_t j = 0; j < d; ++j)
        if (row[j] != 0) r.c_[j] += full[k] * row[j];
    }
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + field_->describe());
    Scalar r(field_);
    switch (field_->kind()) {
      case Field::Kind::Rational: r.c_[0] = 1 / c_[0]; break;
      case Field::Kind::Prime: {
        mpz_class inv, p(static_cast<unsigned long>(field_->modulus()));
        mpz_class v = c_[0].get_num();
        mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        r.c_[0] = inv;
        break;
      }
      case Field::Kind::Cyclotomic: r = cyclotomic_inverse(); break;
    }
    return r;
  }

  Scalar pow(long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Scalar acc = one(field_);
    while (k) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  /// "n/d" strings for Q and F_p; JSON-friendly list for cyclotomics is built by io.
  std::string to_string() const {
    if (field_->kind() != Field::Kind::Cyclotomic) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i].get_str() << ")";
      if (i > 0) os << "*z^" << i;
    }
    if (first) os << "0";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static void check(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_)
      throw Error(ErrorCode::MixedFields, a.field_->describe() + " vs " + b.field_->describe());
  }

  void set_base(const mpq_class& v) {
    c_[0] = v;
    if (field_->kind() == Field::Kind::Prime) normalize_prime();
  }

  void normalize_prime() {
    if (field_->kind() != Field::Kind::Prime) return;
    mpz_class p(static_cast<unsigned long>(field_->modulus()));
    mpz_class num = c_[0].get_num(), den = c_[0].get_den();
    if (den != 1) {
      mpz_class dm = den % p;
      if (dm < 0) dm += p;
      if (dm == 0) throw Error(ErrorCode::DivisionByZero, "denominator divisible by p");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t());
      num *= inv;
    }
    mpz_class r = num % p;
    if (r < 0) r += p;
    c_[0] = mpq_class(r);
  }

  static Scalar from_poly(const Field* f, std::vector<mpq_class> p) {
    const std::size_t d = f->degree();
    const Poly& phi = f->minimal_polynomial();
    for (std::size_t k = p.size(); k-- > d;) {
      mpq_class c = p[k];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j) p[k - d + j] -= c * phi[j];
    }
    Scalar s(f);
    for (std::size_t i = 0; i < d && i < p.size(); ++i) s.c_[i] = p[i];
    return s;
  }

  // Solve (this) * y = 1 using the d x d multiplication matrix.
  Scalar cyclotomic_inverse() const {
    const std::size_t d = field_->degree();
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, mpq_class(0)));
    Scalar basis(field_);
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(basis.c_.begin(), basis.c_.end(), mpq_class(0));
      basis.c_[j] = 1;
      Scalar col = *this * basis;
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (piv < d && m[piv][col] == 0) ++piv;
      if (piv == d) throw Error(ErrorCode::DivisionByZero, "singular cyclotomic element");
      std::swap(m[piv], m[col]);
      mpq_class inv = 1 / m[col][col];
      for (std::size_t k = col; k <= d; ++k) m[col][k] *= inv;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == col || m[r][col] == 0) continue;
        mpq_class fct = m[r][col];
        for (std::size_t k = col; k <= d; ++k) m[r][k] -= fct * m[col][k];
      }
    }
    Scalar out(field_);
    for (std::size_t i = 0; i < d; ++i) out.c_[i] = m[i][d];
    return out;
  }

  const Field* field_;
  std::vector<mpq_class> c_;
};

}  // namespace hopfknot
