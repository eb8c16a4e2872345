#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nblp {

/// Thrown when an operation would exceed a configured resource guard.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

using int128 = __int128;

inline int128 abs128(int128 a) { return a < 0 ? -a : a; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Exact rank of an integer matrix via fraction-free (Bareiss-style)
/// elimination. Row-echelon with full pivoting on rows; entries stay
/// integral throughout.
int rank_exact(Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> a);

/// An integer linear inequality theta^T x <= kappa over R^{d*p} in the
/// canonical form used to compare (in)equalities modulo the block-sum
/// equalities: the 0-coordinate of each p-block is zeroed by subtracting
/// multiples of the sum-to-one rows, then the whole row is divided by the
/// gcd of its entries. Positive scalar multiples collapse to one form.
struct CanonicalIneq {
  std::vector<int64_t> theta;
  int64_t kappa = 0;

  bool operator==(const CanonicalIneq& o) const = default;
  bool operator<(const CanonicalIneq& o) const {
    if (theta != o.theta) return theta < o.theta;
    return kappa < o.kappa;
  }
};

CanonicalIneq canonicalize_ineq(std::vector<int64_t> theta, int64_t kappa, int p);

}  // namespace nblp
