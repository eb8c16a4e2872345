#include "nblp/separation.hpp"

#include <cmath>
#include <limits>

namespace nblp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd clamp_nonneg(Eigen::VectorXd x) {
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < 0.0) x[i] = 0.0;
  return x;
}

/// Constrained minimization of sum_i v(i, k_i) over k in F_p^d with
/// sum k_i = target (mod p). v is d x p. Implements the single-entry last
/// row, the unconstrained pre-pass, and the row-wise early abort.
std::optional<SeparationHit> dp_min(const Eigen::MatrixXd& v, int p, int target, double threshold) {
  const int d = static_cast<int>(v.rows());
  // Unconstrained pre-pass.
  {
    double total = 0.0;
    int ksum = 0;
    std::vector<int> khat(d);
    for (int i = 0; i < d; ++i) {
      int best = 0;
      for (int k = 1; k < p; ++k)
        if (v(i, k) < v(i, best)) best = k;
      khat[i] = best;
      ksum += best;
      total += v(i, best);
    }
    if (total >= threshold - kMinCutViolation) return std::nullopt;
    if (ksum % p == target) return SeparationHit{std::move(khat), total};
  }

  Eigen::MatrixXd tab(d, p);
  Eigen::MatrixXi back(d, p);
  for (int z = 0; z < p; ++z) {
    tab(0, z) = v(0, z);
    back(0, z) = z;
  }
  for (int i = 1; i < d; ++i) {
    const bool last = i == d - 1;
    for (int z = 0; z < p; ++z) {
      if (last && z != target) {
        tab(i, z) = kInf;
        continue;
      }
      double best = kInf;
      int arg = -1;
      for (int b = 0; b < p; ++b) {
        const double val = v(i, b) + tab(i - 1, ((z - b) % p + p) % p);
        if (val < best) {
          best = val;
          arg = b;
        }
      }
      tab(i, z) = best;
      back(i, z) = arg;
    }
    if (!last && tab.row(i).minCoeff() >= threshold - kMinCutViolation) return std::nullopt;
  }
  const double psi = tab(d - 1, target);
  if (psi >= threshold - kMinCutViolation) return std::nullopt;

  std::vector<int> ks(d);
  int z = target;
  for (int i = d - 1; i >= 1; --i) {
    ks[i] = back(i, z);
    z = ((z - ks[i]) % p + p) % p;
  }
  ks[0] = z;
  return SeparationHit{std::move(ks), psi};
}

Eigen::MatrixXd v_table(const BuildingBlockClass& cls, const Eigen::VectorXd& x, int d) {
  const int p = cls.p();
  Eigen::MatrixXd v(d, p);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < p; ++k) {
      double dot = 0.0;
      for (int j = 0; j < p; ++j) dot += cls.t(k, j) * x[i * p + j];
      v(i, k) = cls.t0_sigma() - cls.t(0, k) - dot;
    }
  return v;
}

Eigen::VectorXd rotate_back(const Eigen::VectorXd& x, const PrimeField& f, int r,
                            const std::vector<int>& h) {
  std::vector<int> mult(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    const int hi = f.reduce(h[i]);
    if (hi == 0) throw std::invalid_argument("separate: zero entry in h");
    mult[i] = f.inv(f.mul(f.reduce(r), hi));
  }
  return rotate_point(x, PermVector::scalar(f, mult));
}

CutInequality build_basic(const BuildingBlockClass& cls, const std::vector<int>& ks) {
  const int p = cls.p();
  const int d = static_cast<int>(ks.size());
  CutInequality ineq;
  ineq.p = p;
  ineq.d = d;
  ineq.theta.resize(d * p);
  long long kappa = static_cast<long long>(d - 1) * cls.t0_sigma();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < p; ++j) ineq.theta[i * p + j] = cls.t(ks[i], j);
    kappa -= cls.t(0, ks[i]);
  }
  ineq.kappa = kappa;
  ineq.prov.kind = CutProvenance::kBasic;
  ineq.prov.class_m = cls.m().str();
  return ineq;
}

}  // namespace

std::optional<SeparationHit> separate_dp(const BuildingBlockClass& cls, const Eigen::VectorXd& x,
                                         int d) {
  const int p = cls.p();
  if (x.size() != static_cast<Eigen::Index>(d) * p)
    throw std::invalid_argument("separate_dp: dimension mismatch");
  const Eigen::VectorXd xc = clamp_nonneg(x);
  const int target = static_cast<int>((static_cast<long long>(d - 1) * cls.sigma()) % p);
  return dp_min(v_table(cls, xc, d), p, target, cls.t0_sigma());
}

std::optional<CutInequality> separate_general(const BuildingBlockClass& cls, int r,
                                              const std::vector<int>& h, const Eigen::VectorXd& x) {
  const PrimeField f(cls.p());
  const int d = static_cast<int>(h.size());
  const Eigen::VectorXd xt = rotate_back(x, f, r, h);
  auto hit = separate_dp(cls, xt, d);
  if (!hit) return std::nullopt;
  return to_general_spc(build_basic(cls, hit->ks), h, r);
}

std::optional<SeparationHit> separate_p3(const Eigen::VectorXd& x, int d) {
  static const BuildingBlockClass cls(MVector::zero(3));
  const int p = 3;
  if (x.size() != static_cast<Eigen::Index>(d) * p)
    throw std::invalid_argument("separate_p3: dimension mismatch");
  const Eigen::VectorXd xc = clamp_nonneg(x);
  const Eigen::MatrixXd v = v_table(cls, xc, d);

  std::vector<int> k(d);
  double psi = 0.0;
  int eta = (-2 * (d - 1)) % p;
  eta = (eta % p + p) % p;
  for (int i = 0; i < d; ++i) {
    int best = 0;
    for (int b = 1; b < p; ++b)
      if (v(i, b) < v(i, best)) best = b;
    k[i] = best;
    eta = (eta + best) % p;
    psi += v(i, best);
  }
  const double threshold = 2.0;
  if (psi >= threshold - kMinCutViolation) return std::nullopt;
  if (eta == 0) return SeparationHit{std::move(k), psi};

  // psi_shift[z-1][i]: cost of replacing k_i by k_i + z.
  Eigen::MatrixXd shift(2, d);
  for (int i = 0; i < d; ++i)
    for (int z = 1; z <= 2; ++z) shift(z - 1, i) = v(i, (k[i] + z) % p) - v(i, k[i]);
  auto two_smallest = [&](int z, int& i1, int& i2) {
    i1 = -1;
    i2 = -1;
    for (int i = 0; i < d; ++i) {
      if (i1 < 0 || shift(z - 1, i) < shift(z - 1, i1)) {
        i2 = i1;
        i1 = i;
      } else if (i2 < 0 || shift(z - 1, i) < shift(z - 1, i2)) {
        i2 = i;
      }
    }
  };
  const int minus_eta = (p - eta) % p;
  int a1, a2, b1, b2;
  two_smallest(minus_eta, a1, a2);
  two_smallest(eta, b1, b2);
  if (shift(minus_eta - 1, a1) < shift(eta - 1, b1) + shift(eta - 1, b2)) {
    k[a1] = (k[a1] + minus_eta) % p;
    psi += shift(minus_eta - 1, a1);
  } else {
    k[b1] = (k[b1] + eta) % p;
    k[b2] = (k[b2] + eta) % p;
    psi += shift(eta - 1, b1) + shift(eta - 1, b2);
  }
  if (psi >= threshold - kMinCutViolation) return std::nullopt;
  return SeparationHit{std::move(k), psi};
}

namespace {

std::optional<CutInequality> hybrid_allones(HybridKind kind, const Eigen::VectorXd& x, int d) {
  const int p = 7;
  const Eigen::VectorXd xc = clamp_nonneg(x);
  std::optional<CutInequality> best;
  double best_violation = kMinCutViolation;

  auto consider = [&](const CutInequality& iq) {
    const double viol = iq.violation(xc);
    if (viol > best_violation) {
      best_violation = viol;
      best = iq;
    }
  };

  if (kind == HybridKind::kTheta5) {
    const auto& T = Theta5Blocks::get();
    const Eigen::MatrixXd vb = v_table(T.b, xc, d);
    const int target = static_cast<int>((static_cast<long long>(d - 1) * T.b.sigma()) % p);
    for (int i_nb = 0; i_nb < d; ++i_nb) {
      Eigen::MatrixXd v = vb;
      // v^k at the nb position uses the nb block with the b-class threshold.
      for (int k = 0; k < p; ++k) {
        double dot = 0.0;
        for (int j = 0; j < p; ++j) dot += T.nb.t(k, j) * xc[i_nb * p + j];
        v(i_nb, k) = T.b.t0_sigma() - T.nb.t(0, k) - dot;
      }
      auto hit = dp_min(v, p, target, T.b.t0_sigma());
      if (!hit) continue;
      std::vector<int> ks;
      for (int i = 0; i < d; ++i)
        if (i != i_nb) ks.push_back(hit->ks[i]);
      consider(theta5_inequality(d, i_nb, ks));
    }
  } else {
    const auto& T = Theta6Blocks::get();
    auto vtab = [&](const Eigen::MatrixXi& tab, int i) {
      Eigen::VectorXd row(p);
      for (int k = 0; k < p; ++k) {
        double dot = 0.0;
        for (int j = 0; j < p; ++j) dot += tab(k, j) * xc[i * p + j];
        row[k] = -tab(0, k) - dot;
      }
      return row;
    };
    Eigen::MatrixXd v_b(d, p), v_hi(d, p), v_lo(d, p);
    for (int i = 0; i < d; ++i) {
      v_b.row(i) = vtab(T.b, i);
      v_hi.row(i) = vtab(T.hi, i);
      v_lo.row(i) = vtab(T.lo, i);
    }
    for (int i_hi = 0; i_hi < d; ++i_hi)
      for (int i_lo = 0; i_lo < d; ++i_lo) {
        if (i_hi == i_lo) continue;
        Eigen::MatrixXd v = v_b;
        v.row(i_hi) = v_hi.row(i_hi);
        v.row(i_lo) = v_lo.row(i_lo);
        auto hit = dp_min(v, p, 0, 0.0);
        if (!hit) continue;
        std::vector<int> ks;
        for (int i = 0; i < d; ++i)
          if (i != i_lo) ks.push_back(hit->ks[i]);
        consider(theta6_inequality(d, i_hi, i_lo, ks));
      }
  }
  return best;
}

}  // namespace

std::optional<CutInequality> separate_hybrid(HybridKind kind, const Eigen::VectorXd& x, int d) {
  return hybrid_allones(kind, x, d);
}

std::optional<CutInequality> separate_hybrid_general(HybridKind kind, int r,
                                                     const std::vector<int>& h,
                                                     const Eigen::VectorXd& x) {
  const PrimeField f(7);
  const int d = static_cast<int>(h.size());
  const Eigen::VectorXd xt = rotate_back(x, f, r, h);
  auto inner = hybrid_allones(kind, xt, d);
  if (!inner) return std::nullopt;
  return to_general_spc(*inner, h, r);
}

}  // namespace nblp
