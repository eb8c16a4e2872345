#include "nblp/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nblp {

namespace {
constexpr double kClamp = 1e12;
}

LpModel::LpModel(Eigen::VectorXd objective, Params params)
    : n_(static_cast<int>(objective.size())), c_(std::move(objective)), params_(params) {
  for (int j = 0; j < n_; ++j) {
    if (std::isnan(c_[j])) throw std::invalid_argument("LpModel: NaN in objective");
    if (c_[j] > kClamp) c_[j] = kClamp;
    if (c_[j] < -kClamp) c_[j] = -kClamp;
  }
  x_ = Eigen::VectorXd::Zero(n_);
}

int LpModel::add_row(const std::vector<std::pair<int, double>>& coeffs, RowSense sense, double rhs) {
  for (auto [j, v] : coeffs) {
    if (j < 0 || j >= n_) throw std::out_of_range("LpModel::add_row: column out of range");
    if (std::isnan(v)) throw std::invalid_argument("LpModel::add_row: NaN coefficient");
  }
  rows_.push_back({coeffs, sense, rhs});
  const int idx = static_cast<int>(rows_.size()) - 1;
  if (tableau_valid_ && status_ == LpStatus::kOptimal && sense == RowSense::kLe) {
    if (!warm_add_and_restore(idx)) tableau_valid_ = false;
  } else {
    tableau_valid_ = false;
  }
  return idx;
}

int LpModel::add_row_dense(const Eigen::VectorXd& coeffs, RowSense sense, double rhs) {
  std::vector<std::pair<int, double>> sparse;
  for (int j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0.0) sparse.push_back({j, coeffs[j]});
  return add_row(sparse, sense, rhs);
}

void LpModel::ensure_capacity(int rows, int cols) {
  const int need_r = rows + 1, need_c = cols;
  if (store_.rows() >= need_r && store_.cols() >= need_c && rhs_store_.size() >= need_r) return;
  const int cap_r = std::max<int>(need_r + 32, static_cast<int>(store_.rows() * 2));
  const int cap_c = std::max<int>(need_c + 64, static_cast<int>(store_.cols() * 2));
  Eigen::MatrixXd ns = Eigen::MatrixXd::Zero(cap_r, cap_c);
  Eigen::VectorXd nr = Eigen::VectorXd::Zero(cap_r);
  if (store_.rows() > 0) {
    ns.topLeftCorner(store_.rows(), store_.cols()) = store_;
    nr.head(rhs_store_.size()) = rhs_store_;
  }
  store_.swap(ns);
  rhs_store_.swap(nr);
}

void LpModel::pivot(int row, int col) {
  const double piv = T(row, col);
  auto block = store_.topLeftCorner(m_ + 1, ncols_);
  block.row(row) /= piv;
  rhs_store_[row] /= piv;
  Eigen::VectorXd factors = block.col(col);
  factors[row] = 0.0;
  const Eigen::RowVectorXd prow = block.row(row);
  const double prhs = rhs_store_[row];
  block.noalias() -= factors * prow;
  rhs_store_.head(m_ + 1).noalias() -= factors * prhs;
  // Clean the pivot column to an exact unit vector.
  block.col(col).setZero();
  T(row, col) = 1.0;
  basis_[row] = col;
  ++last_iters_;
  ++total_iters_;
}

void LpModel::rebuild_tableau() {
  m_ = static_cast<int>(rows_.size());
  // Columns: structural + one slack per <= row + one artificial per row
  // that needs it. Count first.
  int cols = n_;
  slack_col_.assign(m_, -1);
  artificial_.clear();
  flipped_.assign(m_, false);
  init_col_.assign(m_, -1);
  for (int i = 0; i < m_; ++i)
    if (rows_[i].sense == RowSense::kLe) ++cols;
  // Upper bound on artificials: one per row.
  ensure_capacity(m_, cols + m_);
  store_.setZero();
  rhs_store_.setZero();
  artificial_.assign(static_cast<size_t>(cols + m_), false);

  basis_.assign(m_, -1);
  int next = n_;
  ncols_ = cols;
  for (int i = 0; i < m_; ++i) {
    const bool flip = rows_[i].rhs < 0;
    flipped_[i] = flip;
    const double sgn = flip ? -1.0 : 1.0;
    for (auto [j, v] : rows_[i].coeffs) T(i, j) += sgn * v;
    rhs_store_[i] = sgn * rows_[i].rhs;
    if (rows_[i].sense == RowSense::kLe) {
      slack_col_[i] = next;
      T(i, next) = sgn;
      ++next;
    }
  }
  // Initial basis: slack where usable, artificial otherwise.
  for (int i = 0; i < m_; ++i) {
    if (slack_col_[i] >= 0 && T(i, slack_col_[i]) > 0) {
      basis_[i] = slack_col_[i];
      init_col_[i] = slack_col_[i];
    } else {
      ensure_capacity(m_, ncols_ + 1);
      if (static_cast<int>(artificial_.size()) <= ncols_) artificial_.resize(ncols_ + 1, false);
      T(i, ncols_) = 1.0;
      artificial_[ncols_] = true;
      basis_[i] = ncols_;
      init_col_[i] = ncols_;
      ++ncols_;
    }
  }
  artificial_.resize(ncols_, false);
  tableau_valid_ = true;
}

LpStatus LpModel::primal_simplex(bool phase1) {
  degen_streak_ = 0;
  const int degen_cap =
      params_.degenerate_switch > 0 ? params_.degenerate_switch : 2 * (m_ + ncols_);
  while (true) {
    if (last_iters_ > params_.max_pivots) return LpStatus::kIterLimit;
    const bool bland = degen_streak_ > degen_cap;
    int enter = -1;
    double best = -params_.opt_tol;
    for (int j = 0; j < ncols_; ++j) {
      if (artificial_[j] && !phase1) continue;
      const double red = T(m_, j);
      if (red < best) {
        enter = j;
        best = red;
        if (bland) break;
      }
      if (bland && red < -params_.opt_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return LpStatus::kOptimal;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      const double a = T(i, enter);
      if (a <= params_.feas_tol) continue;
      const double ratio = rhs_store_[i] / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return LpStatus::kUnbounded;
    degen_streak_ = best_ratio < 1e-11 ? degen_streak_ + 1 : 0;
    pivot(leave, enter);
  }
}

LpStatus LpModel::dual_simplex() {
  int degen = 0;
  const int degen_cap =
      params_.degenerate_switch > 0 ? params_.degenerate_switch : 2 * (m_ + ncols_);
  while (true) {
    if (last_iters_ > params_.max_pivots) return LpStatus::kIterLimit;
    int leave = -1;
    double worst = -params_.feas_tol;
    for (int i = 0; i < m_; ++i)
      if (rhs_store_[i] < worst) {
        worst = rhs_store_[i];
        leave = i;
      }
    if (leave < 0) return LpStatus::kOptimal;
    const bool bland = degen > degen_cap;
    int enter = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ncols_; ++j) {
      if (artificial_[j]) continue;
      const double a = T(leave, j);
      if (a >= -params_.feas_tol) continue;
      const double ratio = T(m_, j) / (-a);
      if (bland) {
        if (enter < 0 || ratio < best_ratio - 1e-12) {
          enter = j;
          best_ratio = ratio;
        }
      } else if (ratio < best_ratio - 1e-12) {
        enter = j;
        best_ratio = ratio;
      }
    }
    if (enter < 0) return LpStatus::kInfeasible;
    degen = best_ratio < 1e-11 ? degen + 1 : 0;
    pivot(leave, enter);
  }
}

void LpModel::install_phase2_costs() {
  auto block = store_.topLeftCorner(m_ + 1, ncols_);
  block.row(m_).setZero();
  for (int j = 0; j < n_; ++j) T(m_, j) = c_[j];
  rhs_store_[m_] = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int b = basis_[i];
    const double cb = b < n_ ? c_[b] : 0.0;
    if (cb != 0.0) {
      block.row(m_).noalias() -= cb * block.row(i);
      rhs_store_[m_] -= cb * rhs_store_[i];
    }
  }
}

LpStatus LpModel::cold_solve() {
  rebuild_tableau();
  bool have_artificials = false;
  for (int i = 0; i < m_; ++i)
    if (artificial_[basis_[i]]) have_artificials = true;

  if (have_artificials) {
    auto block = store_.topLeftCorner(m_ + 1, ncols_);
    block.row(m_).setZero();
    rhs_store_[m_] = 0.0;
    for (int j = 0; j < ncols_; ++j)
      if (artificial_[j]) T(m_, j) = 1.0;
    for (int i = 0; i < m_; ++i)
      if (artificial_[basis_[i]]) {
        block.row(m_).noalias() -= block.row(i);
        rhs_store_[m_] -= rhs_store_[i];
      }
    const LpStatus s1 = primal_simplex(/*phase1=*/true);
    if (s1 == LpStatus::kIterLimit || s1 == LpStatus::kUnbounded) return LpStatus::kIterLimit;
    if (-rhs_store_[m_] > 1e-7) return LpStatus::kInfeasible;
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m_; ++i) {
      if (!artificial_[basis_[i]]) continue;
      for (int j = 0; j < ncols_; ++j)
        if (!artificial_[j] && std::abs(T(i, j)) > 1e-8) {
          pivot(i, j);
          break;
        }
    }
  }
  install_phase2_costs();
  return primal_simplex(/*phase1=*/false);
}

bool LpModel::warm_add_and_restore(int row_index) {
  const Row& row = rows_[row_index];
  ensure_capacity(m_ + 1, ncols_ + 1);
  if (static_cast<int>(artificial_.size()) <= ncols_) artificial_.resize(ncols_ + 1, false);
  // Shift the cost row down and write the new structural row in its place.
  store_.row(m_ + 1).head(ncols_ + 1) = store_.row(m_).head(ncols_ + 1);
  rhs_store_[m_ + 1] = rhs_store_[m_];
  store_.row(m_).head(ncols_ + 1).setZero();
  for (auto [j, v] : row.coeffs) T(m_, j) += v;
  rhs_store_[m_] = row.rhs;
  const int slack = ncols_;
  T(m_, slack) = 1.0;
  artificial_.resize(ncols_ + 1, false);
  slack_col_.push_back(slack);
  init_col_.push_back(slack);
  flipped_.push_back(false);
  basis_.push_back(slack);
  ++ncols_;
  ++m_;
  // Eliminate basic columns from the new row.
  auto block = store_.topLeftCorner(m_ + 1, ncols_);
  for (int i = 0; i < m_ - 1; ++i) {
    const double f = T(m_ - 1, basis_[i]);
    if (f != 0.0) {
      block.row(m_ - 1).noalias() -= f * block.row(i);
      rhs_store_[m_ - 1] -= f * rhs_store_[i];
    }
  }
  LpStatus s = dual_simplex();
  if (s == LpStatus::kOptimal) s = primal_simplex(/*phase1=*/false);
  if (s == LpStatus::kOptimal || s == LpStatus::kInfeasible) {
    status_ = s;
    if (s == LpStatus::kOptimal) extract_solution();
    return true;
  }
  return false;  // fall back to a cold restart
}

void LpModel::extract_solution() {
  x_.setZero(n_);
  for (int i = 0; i < m_; ++i)
    if (basis_[i] < n_) x_[basis_[i]] = rhs_store_[i];
  obj_ = c_.dot(x_);
}

LpStatus LpModel::solve() {
  last_iters_ = 0;
  if (rows_.empty()) {
    // Only x >= 0; bounded iff all costs are nonnegative.
    bool bounded = true;
    for (int j = 0; j < n_; ++j)
      if (c_[j] < -params_.opt_tol) bounded = false;
    x_.setZero(n_);
    obj_ = 0.0;
    status_ = bounded ? LpStatus::kOptimal : LpStatus::kUnbounded;
    return status_;
  }
  if (tableau_valid_ && status_ == LpStatus::kOptimal) {
    extract_solution();
    return status_;
  }
  status_ = cold_solve();
  if (status_ == LpStatus::kOptimal) extract_solution();
  return status_;
}

Eigen::VectorXd LpModel::dual_values() const {
  Eigen::VectorXd y(m_);
  for (int i = 0; i < m_; ++i) {
    double v = 0.0;
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[r];
      const double cb = b < n_ ? c_[b] : 0.0;
      if (cb != 0.0) v += cb * store_(r, init_col_[i]);
    }
    y[i] = flipped_[i] ? -v : v;
  }
  return y;
}

std::optional<std::vector<int>> integrality(const Eigen::VectorXd& x, int q, double tol) {
  const int d = static_cast<int>(x.size()) / q;
  std::vector<int> word(d);
  for (int i = 0; i < d; ++i) {
    int best = 0;
    for (int j = 1; j < q; ++j)
      if (x[i * q + j] > x[i * q + best]) best = j;
    if (std::abs(x[i * q + best] - 1.0) > tol) return std::nullopt;
    for (int j = 0; j < q; ++j)
      if (j != best && std::abs(x[i * q + j]) > tol) return std::nullopt;
    word[i] = best;
  }
  return word;
}

}  // namespace nblp
