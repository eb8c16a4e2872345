#include "nblp/exact.hpp"

namespace nblp {

int rank_exact(Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> a) {
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  int rank = 0;
  int64_t prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    a.row(rank).swap(a.row(pivot));
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c) {
        int128 v = int128(a(rank, col)) * a(r, c) - int128(a(r, col)) * a(rank, c);
        v /= prev;  // exact by the Bareiss identity
        a(r, c) = static_cast<int64_t>(v);
      }
      a(r, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

CanonicalIneq canonicalize_ineq(std::vector<int64_t> theta, int64_t kappa, int p) {
  const int d = static_cast<int>(theta.size()) / p;
  for (int i = 0; i < d; ++i) {
    const int64_t c0 = theta[i * p];
    if (c0 == 0) continue;
    for (int j = 0; j < p; ++j) theta[i * p + j] -= c0;
    kappa -= c0;
  }
  int64_t g = std::abs(kappa);
  for (int64_t v : theta) g = std::gcd(g, std::abs(v));
  if (g > 1) {
    for (int64_t& v : theta) v /= g;
    kappa /= g;
  }
  return CanonicalIneq{std::move(theta), kappa};
}

}  // namespace nblp
