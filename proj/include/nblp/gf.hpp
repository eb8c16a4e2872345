#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nblp {

/// Arithmetic in F_p for a prime p. Elements are held as their integer
/// representatives in {0,...,p-1}; all operations reduce eagerly.
class PrimeField {
 public:
  static constexpr int kMaxP = 97;

  explicit PrimeField(int p);

  int p() const { return p_; }

  int add(int a, int b) const { return wrap(a + b); }
  int sub(int a, int b) const { return wrap(a - b + p_); }
  int mul(int a, int b) const { return (a * b) % p_; }
  int neg(int a) const { return a == 0 ? 0 : p_ - a; }
  int inv(int a) const {
    if (a == 0) throw std::domain_error("PrimeField::inv: division by zero");
    return inv_[a];
  }

  /// Congruence class of an arbitrary integer ([n]_p as a representative).
  int reduce(long long n) const {
    long long r = n % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }

  static bool is_prime(int n);

 private:
  int wrap(int a) const { return a >= p_ ? a - p_ : a; }

  int p_;
  std::vector<int> inv_;
};

/// Element of F_p bound to its field; a thin value wrapper over the
/// integer representative used at API boundaries and in tests.
class Fp {
 public:
  Fp() : v_(0), field_(nullptr) {}
  Fp(int value, const PrimeField& field) : v_(field.reduce(value)), field_(&field) {}

  int rep() const { return v_; }
  const PrimeField& field() const { return *field_; }

  friend Fp operator+(Fp a, Fp b) { return bin(a, b, a.field_->add(a.v_, b.v_)); }
  friend Fp operator-(Fp a, Fp b) { return bin(a, b, a.field_->sub(a.v_, b.v_)); }
  friend Fp operator*(Fp a, Fp b) { return bin(a, b, a.field_->mul(a.v_, b.v_)); }
  friend Fp operator-(Fp a) { return Fp::raw(a.field_->neg(a.v_), *a.field_); }
  Fp inverse() const { return raw(field_->inv(v_), *field_); }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.field_->p() == b.field_->p(); }

 private:
  static Fp raw(int v, const PrimeField& f) {
    Fp e;
    e.v_ = v;
    e.field_ = &f;
    return e;
  }
  static Fp bin(Fp a, Fp b, int v) {
    if (a.field_->p() != b.field_->p())
      throw std::invalid_argument("Fp: operands from different fields");
    return raw(v, *a.field_);
  }

  int v_;
  const PrimeField* field_;
};

/// F_{p^m} with polynomial representation. Elements are identified with
/// their integer representation sum_i [p_i]_Z p^{i-1} in {0,...,q-1}.
/// Multiplication goes through log/antilog tables built from a primitive
/// element (the smallest one in integer representation).
class ExtField {
 public:
  static constexpr int kMaxQ = 1024;

  /// Builds F_{p^m}. An empty modulus selects the lexicographically
  /// smallest monic irreducible polynomial of degree m over F_p
  /// (coefficients compared from the constant term upward).
  ExtField(int p, int m, std::vector<int> modulus = {});

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }
  bool prime() const { return m_ == 1; }
  const PrimeField& base() const { return base_; }
  /// Monic modulus, m+1 coefficients, constant term first.
  const std::vector<int>& modulus() const { return modulus_; }
  int primitive_element() const { return primitive_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  int inv(int a) const {
    if (a == 0) throw std::domain_error("ExtField::inv: division by zero");
    return a == 1 ? 1 : exp_[q_ - 1 - log_[a]];
  }
  /// Scalar action of F_p on the coefficient vector.
  int scalar_mul(int c, int a) const;

  /// p-ary vector representation (p_1,...,p_m) of an element.
  std::vector<int> p_vec(int a) const;
  int from_p_vec(const std::vector<int>& coeffs) const;

  /// Multiplication via plain polynomial arithmetic mod the modulus;
  /// the table path must agree with this everywhere.
  int mul_poly(int a, int b) const;

 private:
  void build_tables();

  int p_, m_, q_;
  PrimeField base_;
  std::vector<int> modulus_;
  std::vector<int> add_, neg_, log_, exp_;
  int primitive_ = 0;
};

/// True iff `poly` (constant-first, monic not required) has no factorization
/// into lower-degree polynomials over F_p. Brute force; fields are tiny.
bool is_irreducible(const PrimeField& f, const std::vector<int>& poly);

/// Element of F_{p^m} bound to its field.
class Ext {
 public:
  Ext() : v_(0), field_(nullptr) {}
  Ext(int value, const ExtField& field) : v_(value), field_(&field) {
    if (value < 0 || value >= field.q()) throw std::out_of_range("Ext: value outside field");
  }

  int rep() const { return v_; }
  const ExtField& field() const { return *field_; }
  std::vector<int> p_vec() const { return field_->p_vec(v_); }

  friend Ext operator+(Ext a, Ext b) { return Ext(a.field_->add(a.v_, b.v_), *a.field_); }
  friend Ext operator-(Ext a, Ext b) { return Ext(a.field_->sub(a.v_, b.v_), *a.field_); }
  friend Ext operator*(Ext a, Ext b) { return Ext(a.field_->mul(a.v_, b.v_), *a.field_); }
  Ext inverse() const { return Ext(field_->inv(v_), *field_); }
  friend bool operator==(Ext a, Ext b) { return a.v_ == b.v_; }

 private:
  int v_;
  const ExtField* field_;
};

}  // namespace nblp
