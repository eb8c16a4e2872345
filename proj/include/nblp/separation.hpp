#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nblp/blocks.hpp"
#include "nblp/cuts.hpp"

namespace nblp {

/// Violated inequalities are only emitted when the DP value clears the
/// class threshold by at least this margin.
constexpr double kMinCutViolation = 1e-9;

struct SeparationHit {
  std::vector<int> ks;  // one block index per position
  double psi = 0.0;     // optimal constrained value of the search objective
};

/// DP search over Theta^m for the all-ones SPC: minimizes
/// sum_i v^{k_i}(x_i) subject to sum k_i = [d-1] sigma. Returns the
/// minimizer when the value is below t_{0,sigma} (a cut exists).
std::optional<SeparationHit> separate_dp(const BuildingBlockClass& cls, const Eigen::VectorXd& x,
                                         int d);

/// General-SPC separation: rotates x back to the all-ones frame, runs the
/// DP, and rotates the found inequality to the (h, r) frame.
std::optional<CutInequality> separate_general(const BuildingBlockClass& cls, int r,
                                              const std::vector<int>& h, const Eigen::VectorXd& x);

/// Specialized p=3 search (unconditional argmin plus a one- or two-position
/// repair); value-equivalent to separate_dp on the single ternary class.
std::optional<SeparationHit> separate_p3(const Eigen::VectorXd& x, int d);

enum class HybridKind { kTheta5, kTheta6 };

/// p=7 hybrid families: the same DP with per-position v-tables and an outer
/// loop over the special indices. Returns the most violated cut found.
std::optional<CutInequality> separate_hybrid(HybridKind kind, const Eigen::VectorXd& x, int d);
std::optional<CutInequality> separate_hybrid_general(HybridKind kind, int r,
                                                     const std::vector<int>& h,
                                                     const Eigen::VectorXd& x);

}  // namespace nblp
