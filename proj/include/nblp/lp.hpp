#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

namespace nblp {

enum class LpStatus { kUnsolved, kOptimal, kInfeasible, kUnbounded, kIterLimit };

enum class RowSense { kEq, kLe };

/// Dense-tableau simplex for  min c^T x  s.t.  A_eq x = b, A_le x <= b,
/// x >= 0.  Rows can be appended between solves; after an optimal solve a
/// new <= row restarts from the previous basis with dual-simplex pivots
/// (cold two-phase restart as fallback).
class LpModel {
 public:
  struct Params {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    long long max_pivots = 2'000'000;
    // After this many consecutive degenerate pivots, Bland's rule kicks in.
    int degenerate_switch = 0;  // 0 = auto: 2*(rows+vars)
  };

  explicit LpModel(Eigen::VectorXd objective, Params params = {});

  int n_vars() const { return n_; }
  int n_rows() const { return static_cast<int>(rows_.size()); }

  /// Appends a row given as sparse (index, coefficient) pairs.
  int add_row(const std::vector<std::pair<int, double>>& coeffs, RowSense sense, double rhs);
  int add_row_dense(const Eigen::VectorXd& coeffs, RowSense sense, double rhs);

  LpStatus solve();

  LpStatus status() const { return status_; }
  const Eigen::VectorXd& solution() const { return x_; }
  double objective_value() const { return obj_; }
  /// Pivots spent in the most recent solve() call.
  long long last_iterations() const { return last_iters_; }
  /// Pivots accumulated over the model's lifetime.
  long long total_iterations() const { return total_iters_; }

  /// Row duals for the last optimal solve, in row insertion order.
  Eigen::VectorXd dual_values() const;

 private:
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    RowSense sense;
    double rhs;
  };

  // Tableau layout: columns [0,n_) structural, then one column per slack /
  // artificial in creation order; the reduced-cost row sits at index m_ of
  // the active block and the right-hand sides live in rhs_.
  void rebuild_tableau();
  LpStatus cold_solve();
  bool warm_add_and_restore(int row_index);
  LpStatus primal_simplex(bool phase1);
  LpStatus dual_simplex();
  void pivot(int row, int col);
  void install_phase2_costs();
  void extract_solution();
  void ensure_capacity(int rows, int cols);
  double& T(int r, int c) { return store_(r, c); }

  int n_ = 0;
  Eigen::VectorXd c_;
  Params params_;
  std::vector<Row> rows_;

  // Active tableau state.
  Eigen::MatrixXd store_;
  Eigen::VectorXd rhs_store_;
  int m_ = 0;      // active constraint rows
  int ncols_ = 0;  // active columns
  std::vector<int> basis_;
  std::vector<int> slack_col_;  // per row, -1 if none
  std::vector<bool> artificial_;
  std::vector<int> init_col_;   // per row: its initial identity column
  std::vector<bool> flipped_;   // row multiplied by -1 during normalization
  bool tableau_valid_ = false;

  LpStatus status_ = LpStatus::kUnsolved;
  Eigen::VectorXd x_;
  double obj_ = 0.0;
  long long last_iters_ = 0, total_iters_ = 0;
  int degen_streak_ = 0;
};

/// Per-block integer assignment when every p-block of x is within tol of a
/// unit vector; nullopt otherwise.
std::optional<std::vector<int>> integrality(const Eigen::VectorXd& x, int q, double tol = 1e-6);

}  // namespace nblp
