#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nblp/gf.hpp"

namespace nblp {

/// The 0/1 vector m = (m_0,...,m_{p-1}) parameterizing a basic building
/// block class; m_0 = 0 always.
struct MVector {
  int p = 0;
  std::vector<uint8_t> bits;

  MVector() = default;
  MVector(int p_, std::vector<uint8_t> bits_);

  static MVector zero(int p);
  /// (0,1,0,1,...) continued over the full length.
  static MVector alternating(int p);
  /// Prefix (given as 0/1 chars) padded with zeros up to length p.
  static MVector from_prefix(int p, const std::string& prefix);

  std::string str() const;
  bool operator==(const MVector& o) const { return p == o.p && bits == o.bits; }
};

/// A basic building block class T^m: the p vectors t_0,...,t_{p-1}, each of
/// length p, plus the derived location/value structure of their extremes.
class BuildingBlockClass {
 public:
  explicit BuildingBlockClass(MVector m);

  int p() const { return p_; }
  const MVector& m() const { return m_; }
  /// Entry t_{k,j}.
  int t(int k, int j) const { return t_(k, j); }
  /// Row t_k as a length-p integer vector.
  Eigen::RowVectorXi block(int k) const { return t_.row(k); }
  const Eigen::MatrixXi& table() const { return t_; }

  /// sigma = argmax_j t_{0,j} (integer representative).
  int sigma() const { return sigma_; }
  /// max(t_0) = t_{0,sigma}.
  int t0_sigma() const { return t_(0, sigma_); }

  // Extreme-entry structure; all arguments/results are integer reps.
  int up_index(int k) const { return mod(sigma_ - k); }     // t_{k,up}
  int down_index(int k) const { return mod(-k); }           // t_{k,down}
  int up_block_of(int zeta) const { return mod(sigma_ - zeta); }  // t_{up,zeta}
  int down_block_of(int zeta) const { return mod(-zeta); }        // t_{down,zeta}
  int max_of(int k) const { return t_(0, sigma_) - t_(0, k); }
  int min_of(int k) const { return -t_(0, k); }

 private:
  int mod(int a) const { return ((a % p_) + p_) % p_; }

  int p_;
  MVector m_;
  Eigen::MatrixXi t_;
  int sigma_;
};

struct ClassFlags {
  bool symmetric = false;
  bool almost_doubly_symmetric = false;
  bool valid = false;
  bool unique = false;           // false only for the redundant (0,1,0,1,...) twin
  bool facet_defining = false;   // computed; see classify_class
};

bool is_symmetric(const BuildingBlockClass& cls);
bool is_almost_doubly_symmetric(const BuildingBlockClass& cls);
bool is_valid(const BuildingBlockClass& cls);
/// Validity via the shortcut system available for symmetric classes.
bool is_valid_symmetric_shortcut(const BuildingBlockClass& cls);

/// Full flag set for one class. The facet flag is proven for almost
/// doubly-symmetric classes (and for m = 0 at p = 2) and otherwise measured
/// with the tight-rank oracle at d = 3.
ClassFlags classify_class(const BuildingBlockClass& cls);

struct ClassificationReport {
  int p = 0;
  long long total_m = 0;
  long long valid = 0;
  long long unique_valid = 0;
  long long symmetric = 0;                // among unique valid
  long long almost_doubly_symmetric = 0;  // among unique valid
  long long facet_defining = 0;           // among unique valid
  std::vector<MVector> facet_classes;     // the unique valid facet-defining m's
};

/// Exhaustive classification over all 2^{p-1} m-vectors. Guarded at p <= 19
/// unless `allow_large` (cost, not correctness).
ClassificationReport enumerate_classes(int p, bool allow_large = false);

/// All m-prefixes (m_0,...,m_sigma) of symmetric valid classes, for each odd
/// sigma <= sigma_max, as 0/1 strings. These prefixes are p-independent.
std::vector<std::vector<std::string>> valid_symmetric_prefixes(int sigma_max);

}  // namespace nblp
