#include "nblp/gf.hpp"

#include <algorithm>

namespace nblp {

bool PrimeField::is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  if (p > kMaxP) throw std::invalid_argument("PrimeField: p exceeds supported limit");
  inv_.assign(p_, 0);
  for (int a = 1; a < p_; ++a)
    for (int b = 1; b < p_; ++b)
      if ((a * b) % p_ == 1) {
        inv_[a] = b;
        break;
      }
}

namespace {

// Polynomials over F_p, constant term first, trailing zeros trimmed.
std::vector<int> poly_trim(std::vector<int> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<int> poly_mul(const PrimeField& f, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = f.reduce(c[i + j] + a[i] * b[j]);
  return poly_trim(c);
}

std::vector<int> poly_mod(const PrimeField& f, std::vector<int> a, const std::vector<int>& mod) {
  a = poly_trim(a);
  const int dm = static_cast<int>(mod.size()) - 1;
  const int lead_inv = f.inv(mod[dm]);
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = f.mul(a.back(), lead_inv);
    for (int i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, mod[i]));
    a = poly_trim(a);
  }
  return a;
}

}  // namespace

bool is_irreducible(const PrimeField& f, const std::vector<int>& poly) {
  const auto a = poly_trim(poly);
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int db = 1; 2 * db <= deg; ++db) {
    long long count = 1;
    for (int i = 0; i < db; ++i) count *= f.p();
    for (long long code = 0; code < count; ++code) {
      std::vector<int> b(db + 1, 0);
      long long c = code;
      for (int i = 0; i < db; ++i) {
        b[i] = static_cast<int>(c % f.p());
        c /= f.p();
      }
      b[db] = 1;
      if (poly_mod(f, a, b).empty()) return false;
    }
  }
  return true;
}

ExtField::ExtField(int p, int m, std::vector<int> modulus) : p_(p), m_(m), base_(p) {
  if (m < 1) throw std::invalid_argument("ExtField: degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < m; ++i) q *= p;
  if (q > kMaxQ) throw std::invalid_argument("ExtField: field size exceeds supported limit");
  q_ = static_cast<int>(q);

  if (modulus.empty()) {
    // Lexicographically smallest monic irreducible of degree m, scanning
    // coefficient vectors (c_0,...,c_{m-1}) from the constant term upward.
    long long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      std::vector<int> cand(m + 1, 0);
      long long c = code;
      // Digit i of `code` in base p is c_{m-1-i}, so increasing `code`
      // enumerates in lex order on (c_0,...,c_{m-1}).
      for (int i = m - 1; i >= 0; --i) {
        cand[i] = static_cast<int>(c % p);
        c /= p;
      }
      std::reverse(cand.begin(), cand.begin() + m);
      cand[m] = 1;
      if (is_irreducible(base_, cand)) {
        modulus_ = cand;
        break;
      }
    }
  } else {
    if (static_cast<int>(modulus.size()) != m + 1 || modulus[m] != 1)
      throw std::invalid_argument("ExtField: modulus must be monic of degree m");
    for (int& c : modulus) c = base_.reduce(c);
    if (!is_irreducible(base_, modulus)) throw std::invalid_argument("ExtField: modulus is reducible");
    modulus_ = modulus;
  }
  build_tables();
}

std::vector<int> ExtField::p_vec(int a) const {
  std::vector<int> c(m_);
  for (int i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

int ExtField::from_p_vec(const std::vector<int>& coeffs) const {
  int v = 0;
  for (int i = m_ - 1; i >= 0; --i) v = v * p_ + base_.reduce(coeffs[i]);
  return v;
}

int ExtField::mul_poly(int a, int b) const {
  const auto pa = poly_trim(p_vec(a)), pb = poly_trim(p_vec(b));
  auto prod = poly_mod(base_, poly_mul(base_, pa, pb), modulus_);
  prod.resize(m_, 0);
  return from_p_vec(prod);
}

int ExtField::scalar_mul(int c, int a) const {
  auto v = p_vec(a);
  for (int& x : v) x = base_.mul(base_.reduce(c), x);
  return from_p_vec(v);
}

void ExtField::build_tables() {
  add_.assign(static_cast<size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    const auto va = p_vec(a);
    std::vector<int> nv(m_);
    for (int i = 0; i < m_; ++i) nv[i] = base_.neg(va[i]);
    neg_[a] = from_p_vec(nv);
    for (int b = 0; b < q_; ++b) {
      const auto vb = p_vec(b);
      std::vector<int> vc(m_);
      for (int i = 0; i < m_; ++i) vc[i] = base_.add(va[i], vb[i]);
      add_[static_cast<size_t>(a) * q_ + b] = from_p_vec(vc);
    }
  }

  // Primitive element: smallest integer representation with order q-1.
  primitive_ = 0;
  for (int g = 1; g < q_ && primitive_ == 0; ++g) {
    int x = g, ord = 1;
    while (x != 1) {
      x = mul_poly(x, g);
      ++ord;
      if (ord > q_) throw std::logic_error("ExtField: order computation ran away");
    }
    if (ord == q_ - 1) primitive_ = g;
  }
  if (primitive_ == 0) throw std::logic_error("ExtField: no primitive element found");

  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  int x = 1;
  for (int e = 0; e < q_ - 1; ++e) {
    exp_[e] = x;
    log_[x] = e;
    x = mul_poly(x, primitive_);
  }
}

}  // namespace nblp
