#include "nblp/cuts.hpp"

#include <algorithm>
#include <stdexcept>

namespace nblp {

CanonicalIneq CutInequality::canonical() const {
  std::vector<int64_t> th(theta.size());
  for (int i = 0; i < theta.size(); ++i) th[i] = theta[i];
  // Block width is q for lifted cuts; p otherwise. theta.size() = d * width.
  const int width = static_cast<int>(theta.size()) / d;
  return canonicalize_ineq(std::move(th), kappa, width);
}

PermVector PermVector::identity(int q, int d) {
  PermVector pv;
  pv.q = q;
  pv.perms.assign(d, {});
  for (auto& perm : pv.perms) {
    perm.resize(q);
    for (int j = 0; j < q; ++j) perm[j] = j;
  }
  return pv;
}

PermVector PermVector::scalar(const ExtField& f, const std::vector<int>& h) {
  PermVector pv;
  pv.q = f.q();
  for (int hi : h) {
    if (hi == 0) throw std::invalid_argument("PermVector::scalar: zero multiplier");
    std::vector<int> perm(f.q());
    for (int j = 0; j < f.q(); ++j) perm[j] = f.mul(hi, j);
    pv.perms.push_back(std::move(perm));
  }
  return pv;
}

PermVector PermVector::scalar(const PrimeField& f, const std::vector<int>& h) {
  PermVector pv;
  pv.q = f.p();
  for (int hi : h) {
    if (f.reduce(hi) == 0) throw std::invalid_argument("PermVector::scalar: zero multiplier");
    std::vector<int> perm(f.p());
    for (int j = 0; j < f.p(); ++j) perm[j] = f.mul(f.reduce(hi), j);
    pv.perms.push_back(std::move(perm));
  }
  return pv;
}

PermVector PermVector::inverse() const {
  PermVector pv;
  pv.q = q;
  for (const auto& perm : perms) {
    std::vector<int> inv(q);
    for (int j = 0; j < q; ++j) inv[perm[j]] = j;
    pv.perms.push_back(std::move(inv));
  }
  return pv;
}

namespace {

void check_perm(const PermVector& pv, Eigen::Index n) {
  if (static_cast<Eigen::Index>(pv.perms.size()) * pv.q != n)
    throw std::invalid_argument("rotate: dimension mismatch");
  for (const auto& perm : pv.perms) {
    std::vector<char> seen(pv.q, 0);
    for (int j : perm) {
      if (j < 0 || j >= pv.q || seen[j]) throw std::invalid_argument("rotate: not a bijection");
      seen[j] = 1;
    }
  }
}

}  // namespace

Eigen::VectorXd rotate_point(const Eigen::VectorXd& x, const PermVector& pv) {
  check_perm(pv, x.size());
  Eigen::VectorXd out(x.size());
  for (size_t i = 0; i < pv.perms.size(); ++i)
    for (int j = 0; j < pv.q; ++j) out[i * pv.q + j] = x[i * pv.q + pv.perms[i][j]];
  return out;
}

Eigen::VectorXi rotate_coeffs(const Eigen::VectorXi& a, const PermVector& pv) {
  check_perm(pv, a.size());
  Eigen::VectorXi out(a.size());
  for (size_t i = 0; i < pv.perms.size(); ++i)
    for (int j = 0; j < pv.q; ++j) out[i * pv.q + j] = a[i * pv.q + pv.perms[i][j]];
  return out;
}

CutInequality rotate_inequality(const CutInequality& ineq, const PermVector& pv) {
  CutInequality out = ineq;
  out.theta = rotate_coeffs(ineq.theta, pv);
  return out;
}

std::vector<int> hilo_canonical_codeword(const BuildingBlockClass& cls, const std::vector<int>& ks) {
  const int p = cls.p();
  const int d = static_cast<int>(ks.size()) + 1;
  std::vector<int> c(d);
  int sum = 0;
  for (int i = 0; i < d - 1; ++i) {
    c[i] = cls.up_index(ks[i]);
    sum += c[i];
  }
  c[d - 1] = ((-sum) % p + p) % p;
  return c;
}

CutInequality hilo_inequality(const BuildingBlockClass& cls, const std::vector<int>& ks) {
  const int p = cls.p();
  const int d = static_cast<int>(ks.size()) + 1;
  const auto c = hilo_canonical_codeword(cls, ks);
  std::vector<int> k(ks);
  k.push_back(cls.down_block_of(c[d - 1]));

  CutInequality ineq;
  ineq.p = p;
  ineq.d = d;
  ineq.theta.resize(d * p);
  long long kappa = static_cast<long long>(d - 1) * cls.t0_sigma();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < p; ++j) ineq.theta[i * p + j] = cls.t(k[i], j);
    kappa -= cls.t(0, k[i]);
  }
  ineq.kappa = kappa;
  ineq.prov.kind = CutProvenance::kBasic;
  ineq.prov.class_m = cls.m().str();
  return ineq;
}

bool membership_check(const CutInequality& ineq, const BuildingBlockClass& cls) {
  const int p = cls.p();
  if (ineq.p != p || ineq.theta.size() != ineq.d * p) return false;
  std::vector<int> k(ineq.d, -1);
  for (int i = 0; i < ineq.d; ++i) {
    for (int cand = 0; cand < p; ++cand) {
      bool match = true;
      for (int j = 0; j < p && match; ++j) match = ineq.theta[i * p + j] == cls.t(cand, j);
      if (match) {
        k[i] = cand;
        break;
      }
    }
    if (k[i] < 0) return false;
  }
  int ksum = 0;
  long long t0sum = 0;
  std::vector<int> vk(p, 0);
  for (int i = 0; i < ineq.d; ++i) {
    ksum = (ksum + k[i]) % p;
    t0sum += cls.t(0, k[i]);
    ++vk[k[i]];
  }
  const int target = static_cast<int>((static_cast<long long>(ineq.d - 1) * cls.sigma()) % p);
  const bool first = ksum == target &&
                     ineq.kappa == static_cast<long long>(ineq.d - 1) * cls.t0_sigma() - t0sum;
  // Second characterization through the multiplicities |V_k|.
  int vsum = 0;
  long long vmax = 0;
  for (int kk = 0; kk < p; ++kk) {
    vsum = (vsum + (vk[kk] % p) * ((cls.sigma() - kk) % p + p)) % p;
    vmax += static_cast<long long>(vk[kk]) * cls.max_of(kk);
  }
  const bool second = vsum % p == cls.sigma() && ineq.kappa == vmax - cls.max_of(0);
  return first && second;
}

void phi_family_foreach(const BuildingBlockClass& cls, int d,
                        const std::function<void(const CutInequality&)>& fn) {
  const int p = cls.p();
  long long total = 1;
  for (int i = 0; i < d - 1; ++i) total *= p;
  std::vector<int> ks(d - 1, 0);
  for (int h = 1; h < p; ++h) {
    const PermVector pv = PermVector::scalar(PrimeField(p), std::vector<int>(d, h));
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < d - 1; ++i) {
        ks[i] = static_cast<int>(c % p);
        c /= p;
      }
      CutInequality ineq = hilo_inequality(cls, ks);
      if (h != 1) ineq.theta = rotate_coeffs(ineq.theta, pv);
      ineq.prov.r = h;
      fn(ineq);
    }
  }
}

std::vector<CutInequality> phi_family(const BuildingBlockClass& cls, int d, size_t cap) {
  long long total = cls.p() - 1;
  for (int i = 0; i < d - 1; ++i) total *= cls.p();
  if (static_cast<size_t>(total) > cap)
    throw GuardError("phi_family: family too large to materialize; use phi_family_foreach");
  std::vector<CutInequality> out;
  out.reserve(total);
  phi_family_foreach(cls, d, [&](const CutInequality& iq) { out.push_back(iq); });
  return out;
}

CutInequality to_general_spc(const CutInequality& ineq, const std::vector<int>& h, int r) {
  const PrimeField f(ineq.p);
  if (static_cast<int>(h.size()) != ineq.d)
    throw std::invalid_argument("to_general_spc: h length mismatch");
  if (f.reduce(r) == 0) throw std::invalid_argument("to_general_spc: r must be nonzero");
  std::vector<int> mult(ineq.d);
  for (int i = 0; i < ineq.d; ++i) {
    const int hi = f.reduce(h[i]);
    if (hi == 0) throw std::invalid_argument("to_general_spc: zero entry in h");
    mult[i] = f.mul(f.reduce(r), hi);
  }
  CutInequality out = rotate_inequality(ineq, PermVector::scalar(f, mult));
  out.prov.h = h;
  out.prov.r = r;
  return out;
}

// ---- p = 7 hybrid families ---------------------------------------------

const Theta5Blocks& Theta5Blocks::get() {
  static const Theta5Blocks inst{BuildingBlockClass(MVector::from_prefix(7, "0010000")),
                                 BuildingBlockClass(MVector::from_prefix(7, "0110000"))};
  return inst;
}

const Theta6Blocks& Theta6Blocks::get() {
  static const Theta6Blocks inst = [] {
    Theta6Blocks t;
    t.b.resize(7, 7);
    t.hi.resize(7, 7);
    t.lo.resize(7, 7);
    t.b << 0, -1, -1, -1, -1, -1, -1,  //
        0, 0, 0, 0, 0, 0, 1,           //
        0, 0, 0, 0, 0, 1, 0,           //
        0, 0, 0, 0, 1, 0, 0,           //
        0, 0, 0, 1, 0, 0, 0,           //
        0, 0, 1, 0, 0, 0, 0,           //
        0, 1, 0, 0, 0, 0, 0;
    t.hi << 0, 0, 0, -1, 0, -1, -1,  //
        0, 0, -1, 0, -1, -1, 0,      //
        0, -1, 0, -1, -1, 0, 0,      //
        0, 1, 0, 0, 1, 1, 1,         //
        0, -1, -1, 0, 0, 0, -1,      //
        0, 0, 1, 1, 1, 0, 1,         //
        0, 1, 1, 1, 0, 1, 0;
    t.lo << 0, 1, 1, 0, 1, 0, 0,  //
        0, 0, -1, 0, -1, -1, -1,  //
        0, -1, 0, -1, -1, -1, 0,  //
        0, 1, 0, 0, 0, 1, 1,      //
        0, -1, -1, -1, 0, 0, -1,  //
        0, 0, 0, 1, 1, 0, 1,      //
        0, 0, 1, 1, 0, 1, 0;
    return t;
  }();
  return inst;
}

CutInequality theta5_inequality(int d, int i_nb, const std::vector<int>& ks) {
  const auto& T = Theta5Blocks::get();
  const int p = 7;
  if (i_nb < 0 || i_nb >= d) throw std::invalid_argument("theta5_inequality: bad index");
  if (static_cast<int>(ks.size()) != d - 1) throw std::invalid_argument("theta5_inequality: bad ks");

  std::vector<int> k(d, 0), c(d, 0);
  int pos = 0, sum = 0;
  for (int i = 0; i < d; ++i) {
    if (i == i_nb) continue;
    k[i] = ks[pos++];
    c[i] = T.b.up_index(k[i]);
    sum += c[i];
  }
  c[i_nb] = ((-sum) % p + p) % p;
  k[i_nb] = T.nb.down_block_of(c[i_nb]);

  CutInequality ineq;
  ineq.p = p;
  ineq.d = d;
  ineq.theta.resize(d * p);
  long long kappa = static_cast<long long>(d - 1) * T.b.t0_sigma();  // (d-1) * 9
  for (int i = 0; i < d; ++i) {
    const BuildingBlockClass& cls = (i == i_nb) ? T.nb : T.b;
    for (int j = 0; j < p; ++j) ineq.theta[i * p + j] = cls.t(k[i], j);
    kappa -= cls.t(0, k[i]);
  }
  ineq.kappa = kappa;
  ineq.prov.kind = CutProvenance::kTheta5;
  ineq.prov.i_nb = i_nb;
  return ineq;
}

CutInequality theta6_inequality(int d, int i_hi, int i_lo, const std::vector<int>& ks) {
  const auto& T = Theta6Blocks::get();
  const int p = 7;
  if (i_hi == i_lo || i_hi < 0 || i_lo < 0 || i_hi >= d || i_lo >= d)
    throw std::invalid_argument("theta6_inequality: indices must be distinct and in range");
  if (static_cast<int>(ks.size()) != d - 1) throw std::invalid_argument("theta6_inequality: bad ks");

  std::vector<int> k(d, 0), c(d, 0);
  int pos = 0, sum = 0;
  for (int i = 0; i < d; ++i) {
    if (i == i_lo) continue;
    k[i] = ks[pos++];
    c[i] = ((-k[i]) % p + p) % p;  // t^{b/hi}_{k,up} = -k
    sum += c[i];
  }
  c[i_lo] = ((-sum) % p + p) % p;
  k[i_lo] = ((-c[i_lo]) % p + p) % p;  // t^{lo}_{down,c} = -c

  CutInequality ineq;
  ineq.p = p;
  ineq.d = d;
  ineq.theta.resize(d * p);
  long long kappa = 0;  // -sum_i t^{l_i}_{0,k_i}
  for (int i = 0; i < d; ++i) {
    const Eigen::MatrixXi& tab = (i == i_hi) ? T.hi : (i == i_lo) ? T.lo : T.b;
    for (int j = 0; j < p; ++j) ineq.theta[i * p + j] = tab(k[i], j);
    kappa -= tab(0, k[i]);
  }
  ineq.kappa = kappa;
  ineq.prov.kind = CutProvenance::kTheta6;
  ineq.prov.i_hi = i_hi;
  ineq.prov.i_lo = i_lo;
  return ineq;
}

std::vector<CutInequality> theta5_family(int d) {
  long long total = 1;
  for (int i = 0; i < d - 1; ++i) total *= 7;
  std::vector<CutInequality> out;
  out.reserve(d * total);
  std::vector<int> ks(d - 1);
  for (int i_nb = 0; i_nb < d; ++i_nb)
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < d - 1; ++i) {
        ks[i] = static_cast<int>(c % 7);
        c /= 7;
      }
      out.push_back(theta5_inequality(d, i_nb, ks));
    }
  return out;
}

std::vector<CutInequality> theta6_family(int d) {
  long long total = 1;
  for (int i = 0; i < d - 1; ++i) total *= 7;
  std::vector<CutInequality> out;
  out.reserve(d * (d - 1) * total);
  std::vector<int> ks(d - 1);
  for (int i_hi = 0; i_hi < d; ++i_hi)
    for (int i_lo = 0; i_lo < d; ++i_lo) {
      if (i_hi == i_lo) continue;
      for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < d - 1; ++i) {
          ks[i] = static_cast<int>(c % 7);
          c /= 7;
        }
        out.push_back(theta6_inequality(d, i_hi, i_lo, ks));
      }
    }
  return out;
}

// ---- Flanagan projection -------------------------------------------------

FlanaganIneq flanagan_project(const CutInequality& ineq) {
  const int width = static_cast<int>(ineq.theta.size()) / ineq.d;
  CanonicalIneq can = [&] {
    std::vector<int64_t> th(ineq.theta.size());
    for (int i = 0; i < ineq.theta.size(); ++i) th[i] = ineq.theta[i];
    // Zero the block-0 coefficients only; keep the original scale.
    int64_t kap = ineq.kappa;
    const int d = ineq.d;
    for (int i = 0; i < d; ++i) {
      const int64_t c0 = th[i * width];
      if (c0 == 0) continue;
      for (int j = 0; j < width; ++j) th[i * width + j] -= c0;
      kap -= c0;
    }
    return CanonicalIneq{std::move(th), kap};
  }();
  FlanaganIneq out;
  out.p = width;
  out.d = ineq.d;
  out.kappa = can.kappa;
  out.coeffs.reserve(ineq.d * (width - 1));
  for (int i = 0; i < ineq.d; ++i)
    for (int j = 1; j < width; ++j) out.coeffs.push_back(can.theta[i * width + j]);
  return out;
}

Eigen::VectorXd flanagan_project_point(const Eigen::VectorXd& x, int q) {
  const int d = static_cast<int>(x.size()) / q;
  Eigen::VectorXd out(d * (q - 1));
  for (int i = 0; i < d; ++i)
    for (int j = 1; j < q; ++j) out[i * (q - 1) + j - 1] = x[i * q + j];
  return out;
}

Eigen::VectorXd flanagan_lift_point(const Eigen::VectorXd& xp, int q) {
  const int d = static_cast<int>(xp.size()) / (q - 1);
  Eigen::VectorXd out(d * q);
  for (int i = 0; i < d; ++i) {
    double s = 0;
    for (int j = 1; j < q; ++j) {
      out[i * q + j] = xp[i * (q - 1) + j - 1];
      s += out[i * q + j];
    }
    out[i * q] = 1.0 - s;
  }
  return out;
}

// ---- Extension-field machinery -------------------------------------------

std::vector<int> b_labels(const ExtField& f, const std::vector<int>& K,
                          const std::vector<int>& gamma, int h) {
  if (h == 0) throw std::invalid_argument("b_labels: h must be nonzero");
  if (K.empty() || K.size() != gamma.size()) throw std::invalid_argument("b_labels: bad (K, gamma)");
  const PrimeField& base = f.base();
  std::vector<int> labels(f.q());
  for (int zeta = 0; zeta < f.q(); ++zeta) {
    const auto pv = f.p_vec(f.mul(h, zeta));
    int beta = 0;
    for (size_t t = 0; t < K.size(); ++t) {
      const int k = K[t];
      if (k < 1 || k > f.m()) throw std::invalid_argument("b_labels: K index out of range");
      beta = base.add(beta, base.mul(base.reduce(gamma[t]), pv[k - 1]));
    }
    labels[zeta] = beta;
  }
  return labels;
}

std::vector<int> b_set(const ExtField& f, const std::vector<int>& K, const std::vector<int>& gamma,
                       int h, int beta) {
  const auto labels = b_labels(f, K, gamma, h);
  std::vector<int> out;
  for (int zeta = 0; zeta < f.q(); ++zeta)
    if (labels[zeta] == f.base().reduce(beta)) out.push_back(zeta);
  return out;
}

CutInequality lift_to_extension(const CutInequality& ineq, const ExtField& f,
                                const std::vector<int>& K, const std::vector<int>& gamma,
                                const std::vector<int>& h) {
  if (f.p() != ineq.p) throw std::invalid_argument("lift_to_extension: characteristic mismatch");
  if (static_cast<int>(h.size()) != ineq.d)
    throw std::invalid_argument("lift_to_extension: h length mismatch");
  CutInequality out;
  out.p = ineq.p;
  out.d = ineq.d;
  out.kappa = ineq.kappa;
  out.theta.resize(ineq.d * f.q());
  for (int i = 0; i < ineq.d; ++i) {
    const auto labels = b_labels(f, K, gamma, h[i]);
    for (int eta = 0; eta < f.q(); ++eta)
      out.theta[i * f.q() + eta] = ineq.theta[i * ineq.p + labels[eta]];
  }
  out.prov = ineq.prov;
  out.prov.kind = CutProvenance::kLifted;
  out.prov.h = h;
  return out;
}

std::vector<KGamma> kgamma_pairs(const ExtField& f, bool reduced) {
  std::vector<KGamma> out;
  const int m = f.m(), p = f.p();
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> K;
    for (int k = 1; k <= m; ++k)
      if (mask & (1 << (k - 1))) K.push_back(k);
    if (reduced) {
      out.push_back({K, std::vector<int>(K.size(), 1)});
      continue;
    }
    long long total = 1;
    for (size_t i = 0; i < K.size(); ++i) total *= p - 1;
    for (long long code = 0; code < total; ++code) {
      std::vector<int> gamma(K.size());
      long long c = code;
      for (size_t i = 0; i < K.size(); ++i) {
        gamma[i] = 1 + static_cast<int>(c % (p - 1));
        c /= p - 1;
      }
      out.push_back({K, std::move(gamma)});
    }
  }
  return out;
}

// ---- Counting -------------------------------------------------------------

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct CountState {
  const BuildingBlockClass* cls;
  int p, d;
  long long cut = 0, tight = 0;

  void account(long long sum_t, int sum_f, long long ways) {
    for (int c = 0; c < p; ++c) {
      const long long lhs = cls->t(0, c) + sum_t;
      if (lhs > 0) cut += ways;
      if (lhs == 0 && (c + sum_f) % p == 0) tight += ways;
    }
  }

  void dfs(int value, int used, long long sum_t, int sum_f, long long ways) {
    account(sum_t, sum_f, ways);
    for (int j = value; j < p; ++j) {
      const long long tj = cls->t(cls->sigma(), j);
      long long st = sum_t;
      int sf = sum_f;
      for (int cnt = 1; used + cnt <= d - 1; ++cnt) {
        st += tj;
        if (st + cls->t0_sigma() < 0) break;  // no c can reach > or = 0
        sf = (sf + j) % p;
        dfs(j + 1, used + cnt, st, sf, ways * binom(d - 1 - used, cnt));
      }
    }
  }
};

}  // namespace

CutTightCounts count_cut_and_tight(const BuildingBlockClass& cls, int d) {
  if (d < 2 || d > 40) throw std::invalid_argument("count_cut_and_tight: d out of range");
  CountState st{&cls, cls.p(), d};
  st.dfs(1, 0, 0, 0, 1);
  return {st.cut, st.tight};
}

}  // namespace nblp
