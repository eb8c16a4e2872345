#include "nblp/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nblp {

SpcCodebook enumerate_spc(const ExtField& field, int d, std::vector<int> h, long long guard) {
  if (static_cast<int>(h.size()) != d) throw std::invalid_argument("enumerate_spc: h length");
  for (int hi : h)
    if (hi == 0) throw std::invalid_argument("enumerate_spc: zero entry in h");
  long long total = 1;
  for (int i = 0; i < d - 1; ++i) {
    total *= field.q();
    if (total > guard) throw GuardError("enumerate_spc: q^(d-1) beyond guard");
  }
  SpcCodebook cb;
  cb.field = &field;
  cb.d = d;
  cb.h = h;
  const int hd_inv = field.inv(h[d - 1]);
  std::vector<int> w(d, 0);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    int s = 0;
    for (int i = d - 2; i >= 0; --i) {
      w[i] = static_cast<int>(c % field.q());
      c /= field.q();
    }
    for (int i = 0; i < d - 1; ++i) s = field.add(s, field.mul(h[i], w[i]));
    w[d - 1] = field.mul(field.neg(s), hd_inv);
    cb.words.push_back(w);
  }
  // The free prefix enumerated most-significant-first is already
  // lexicographic on the full words.
  std::sort(cb.words.begin(), cb.words.end());
  return cb;
}

bool validity_oracle(const CutInequality& ineq, const SpcCodebook& cb) {
  const int q = cb.q();
  for (const auto& w : cb.words)
    if (ineq.lhs_at_word(w, q) > ineq.kappa) return false;
  return true;
}

std::vector<int> tight_set(const CutInequality& ineq, const SpcCodebook& cb) {
  const int q = cb.q();
  std::vector<int> out;
  for (size_t i = 0; i < cb.words.size(); ++i)
    if (ineq.lhs_at_word(cb.words[i], q) == ineq.kappa) out.push_back(static_cast<int>(i));
  return out;
}

long long cut_count_oracle(const CutInequality& ineq, const SpcCodebook& cb, long long guard) {
  const int q = cb.q();
  const ExtField& f = *cb.field;
  long long total = 1;
  for (int i = 0; i < cb.d; ++i) {
    total *= q;
    if (total > guard) throw GuardError("cut_count_oracle: q^d beyond guard");
  }
  long long cuts = 0;
  std::vector<int> w(cb.d, 0);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    int syndrome = 0;
    for (int i = 0; i < cb.d; ++i) {
      w[i] = static_cast<int>(c % q);
      c /= q;
      syndrome = f.add(syndrome, f.mul(cb.h[i], w[i]));
    }
    if (syndrome == 0) continue;  // codeword
    if (ineq.lhs_at_word(w, q) > ineq.kappa) ++cuts;
  }
  return cuts;
}

int face_dimension(const CutInequality& ineq, const SpcCodebook& cb) {
  const int q = cb.q();
  const ExtField& f = *cb.field;
  const auto tight = tight_set(ineq, cb);
  if (tight.empty()) return -1;
  const auto& c0 = cb.words[tight[0]];
  Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> m(tight.size() - 1, cb.d * (q - 1));
  m.setZero();
  for (size_t r = 1; r < tight.size(); ++r) {
    const auto& c = cb.words[tight[r]];
    for (int i = 0; i < cb.d; ++i) {
      const int diff = f.sub(c[i], c0[i]);
      if (diff != 0) m(r - 1, i * (q - 1) + diff - 1) = 1;
    }
  }
  return rank_exact(std::move(m));
}

// ---- Exact hull enumeration -----------------------------------------------

namespace {

using Vec128 = std::vector<int128>;

void gcd_reduce(Vec128& v) {
  int128 g = 0;
  for (int128 x : v) g = gcd128(g, x);
  if (g > 1)
    for (int128& x : v) x /= g;
}

int128 dot128(const Vec128& a, const Vec128& b) {
  int128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int128 det_bareiss(std::vector<Vec128> a) {
  const int n = static_cast<int>(a.size());
  int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int sw = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          sw = r;
          break;
        }
      if (sw < 0) return 0;
      std::swap(a[k], a[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Embedded codeword in selected coordinates.
std::vector<int> embed_selected(const std::vector<int>& word, int q, const std::vector<int>& cols) {
  std::vector<int> out(cols.size(), 0);
  for (size_t t = 0; t < cols.size(); ++t) {
    const int i = cols[t] / q, j = cols[t] % q;
    out[t] = word[i] == j ? 1 : 0;
  }
  return out;
}

struct Ray {
  Vec128 g;                    // 1 + r coordinates, (y0, y)
  std::vector<uint64_t> tight; // bitset over processed inequality rows
  bool tight_bit(int i) const { return (tight[i >> 6] >> (i & 63)) & 1; }
};

bool subset_of(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

FacetList hull_facets_tiny(const SpcCodebook& cb, HullGuards guards) {
  const int q = cb.q();
  const int V = static_cast<int>(cb.words.size());
  if (V < 2) throw std::invalid_argument("hull_facets_tiny: need at least two codewords");

  // Coordinate chart of the affine hull: greedily pick columns of the
  // vertex-difference matrix that increase its rank.
  std::vector<int> cols;
  {
    Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> sel(V - 1, 0);
    const auto& w0 = cb.words[0];
    for (int col = 0; col < cb.d * q; ++col) {
      const int i = col / q, j = col % q;
      Eigen::Matrix<int64_t, Eigen::Dynamic, 1> cand(V - 1);
      for (int r = 1; r < V; ++r)
        cand[r - 1] = (cb.words[r][i] == j ? 1 : 0) - (w0[i] == j ? 1 : 0);
      Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> test(V - 1, sel.cols() + 1);
      test << sel, cand;
      if (rank_exact(test) > static_cast<int>(cols.size())) {
        sel = std::move(test);
        cols.push_back(col);
      }
    }
  }
  const int r = static_cast<int>(cols.size());
  if (V > guards.max_codewords || r > guards.max_dim)
    throw GuardError("hull_facets_tiny: instance beyond guards (" + std::to_string(V) +
                     " codewords, dim " + std::to_string(r) + ")");

  // Reduced integer vertices and centered, scaled copies.
  std::vector<std::vector<int>> u(V);
  std::vector<long long> s(r, 0);
  for (int i = 0; i < V; ++i) {
    u[i] = embed_selected(cb.words[i], q, cols);
    for (int t = 0; t < r; ++t) s[t] += u[i][t];
  }
  std::vector<Vec128> ineqs;  // rows (-1, z_i) of the homogenized polar
  for (int i = 0; i < V; ++i) {
    Vec128 row(1 + r);
    row[0] = -1;
    for (int t = 0; t < r; ++t) row[1 + t] = int128(V) * u[i][t] - s[t];
    ineqs.push_back(std::move(row));
  }
  {
    Vec128 row(1 + r, 0);
    row[0] = -1;  // y0 >= 0
    ineqs.push_back(std::move(row));
  }
  const int n_rows = static_cast<int>(ineqs.size());

  // Initial simplicial cone from r+1 independent rows.
  std::vector<int> base;
  {
    Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> sel(0, 1 + r);
    for (int i = 0; i < n_rows && static_cast<int>(base.size()) < 1 + r; ++i) {
      Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> test(sel.rows() + 1, 1 + r);
      if (sel.rows() > 0) test.topRows(sel.rows()) = sel;
      for (int t = 0; t <= r; ++t) test(sel.rows(), t) = static_cast<int64_t>(ineqs[i][t]);
      if (rank_exact(test) > sel.rows()) {
        sel = std::move(test);
        base.push_back(i);
      }
    }
    if (static_cast<int>(base.size()) != 1 + r)
      throw std::logic_error("hull_facets_tiny: polar cone not pointed");
  }

  std::vector<Ray> rays;
  {
    // Generators of {z : A_B z <= 0}: columns of -sign(det) * adj(A_B).
    std::vector<Vec128> ab(1 + r, Vec128(1 + r));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j <= r; ++j) ab[i][j] = ineqs[base[i]][j];
    const int128 det = det_bareiss(ab);
    const int sgn = det > 0 ? 1 : -1;
    for (int col = 0; col <= r; ++col) {
      Vec128 g(1 + r);
      for (int row = 0; row <= r; ++row) {
        // adj(A)_{row,col} = (-1)^{row+col} * minor(col,row)
        std::vector<Vec128> minor;
        minor.reserve(r);
        for (int i = 0; i <= r; ++i) {
          if (i == col) continue;
          Vec128 mrow;
          mrow.reserve(r);
          for (int j = 0; j <= r; ++j) {
            if (j == row) continue;
            mrow.push_back(ab[i][j]);
          }
          minor.push_back(std::move(mrow));
        }
        const int128 m = r == 0 ? 1 : det_bareiss(std::move(minor));
        g[row] = (((row + col) % 2) ? -m : m) * -sgn;
      }
      gcd_reduce(g);
      rays.push_back(Ray{std::move(g), {}});
    }
  }

  const int words64 = (n_rows + 63) / 64;

  // Process the base rows first (their tight sets matter), then the rest.
  std::vector<int> order = base;
  for (int i = 0; i < n_rows; ++i)
    if (std::find(base.begin(), base.end(), i) == base.end()) order.push_back(i);

  // Re-index inequality rows in processing order so tight bitsets are
  // prefix-aligned.
  std::vector<Vec128> proc;
  proc.reserve(n_rows);
  for (int i : order) proc.push_back(ineqs[i]);

  auto recompute_tight = [&](Ray& ray, int upto) {
    ray.tight.assign(words64, 0);
    for (int i = 0; i < upto; ++i)
      if (dot128(proc[i], ray.g) == 0) ray.tight[i >> 6] |= uint64_t(1) << (i & 63);
  };

  for (auto& ray : rays) {
    ray.tight.assign(words64, 0);
    for (int i = 0; i < 1 + r; ++i)
      if (dot128(proc[i], ray.g) == 0) ray.tight[i >> 6] |= uint64_t(1) << (i & 63);
  }

  for (int step = 1 + r; step < n_rows; ++step) {
    const Vec128& a = proc[step];
    std::vector<int> plus, minus, zero;
    std::vector<int128> vals(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      vals[i] = dot128(a, rays[i].g);
      if (vals[i] > 0)
        plus.push_back(static_cast<int>(i));
      else if (vals[i] < 0)
        minus.push_back(static_cast<int>(i));
      else
        zero.push_back(static_cast<int>(i));
    }
    if (plus.empty()) {  // all rays satisfy; just extend tight sets
      for (size_t i = 0; i < rays.size(); ++i)
        if (vals[i] == 0) rays[i].tight[step >> 6] |= uint64_t(1) << (step & 63);
      continue;
    }
    std::vector<Ray> next;
    next.reserve(minus.size() + zero.size() + plus.size() * 2);
    for (int i : minus) next.push_back(std::move(rays[i]));
    for (int i : zero) {
      rays[i].tight[step >> 6] |= uint64_t(1) << (step & 63);
      next.push_back(std::move(rays[i]));
    }
    // Adjacent (plus, minus) pairs spawn replacement rays. A ridge in a
    // pointed (r+1)-cone carries at least r-1 tight rows, which prunes most
    // pairs before the quadratic adjacency scan.
    for (int ip : plus)
      for (int im : minus) {
        const Ray& gp = rays[ip];
        const Ray& gm = rays[im];
        std::vector<uint64_t> common(words64);
        int popcount = 0;
        for (int w = 0; w < words64; ++w) {
          common[w] = gp.tight[w] & gm.tight[w];
          popcount += __builtin_popcountll(common[w]);
        }
        if (popcount < r - 1) continue;
        bool adjacent = true;
        for (size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (static_cast<int>(k) == ip || static_cast<int>(k) == im) continue;
          if (subset_of(common, rays[k].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.g.resize(1 + r);
        const int128 wp = vals[ip], wm = vals[im];
        for (int t = 0; t <= r; ++t) nr.g[t] = wp * gm.g[t] - wm * gp.g[t];
        gcd_reduce(nr.g);
        recompute_tight(nr, step + 1);
        next.push_back(std::move(nr));
      }
    rays.swap(next);
  }

  // Translate rays (y0 > 0) back into facet inequalities of the hull.
  FacetList out;
  out.dim = r;
  std::set<CanonicalIneq> seen;
  for (const auto& ray : rays) {
    if (ray.g[0] <= 0) {
      bool allzero = true;
      for (int t = 0; t <= r; ++t) allzero = allzero && ray.g[t] == 0;
      if (!allzero && ray.g[0] == 0) throw std::logic_error("hull_facets_tiny: unbounded polar");
      continue;
    }
    // y = g[1..]/g0; facet: y^T (V w - s) <= 1  =>  (V g_y)^T w <= g0 + g_y^T s.
    std::vector<int64_t> theta(cb.d * q, 0);
    int128 rhs = ray.g[0];
    for (int t = 0; t < r; ++t) {
      theta[cols[t]] = static_cast<int64_t>(ray.g[1 + t] * V);
      rhs += ray.g[1 + t] * s[t];
    }
    CanonicalIneq can = canonicalize_ineq(std::move(theta), static_cast<int64_t>(rhs), q);
    if (!seen.insert(can).second) continue;
  }
  out.facets.assign(seen.begin(), seen.end());

  if (guards.verify_ranks) {
    for (const auto& can : out.facets) {
      CutInequality iq;
      iq.p = q;
      iq.d = cb.d;
      iq.theta.resize(cb.d * q);
      for (int i = 0; i < cb.d * q; ++i) iq.theta[i] = static_cast<int>(can.theta[i]);
      iq.kappa = can.kappa;
      if (!validity_oracle(iq, cb)) throw std::logic_error("hull_facets_tiny: invalid facet");
      if (face_dimension(iq, cb) != r - 1)
        throw std::logic_error("hull_facets_tiny: non-facet survived");
    }
  }
  return out;
}

FacetList hull_facets_by_subsets(const SpcCodebook& cb, long long max_subsets) {
  const int q = cb.q();
  const int V = static_cast<int>(cb.words.size());

  std::vector<int> cols;
  {
    Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> sel(V - 1, 0);
    const auto& w0 = cb.words[0];
    for (int col = 0; col < cb.d * q; ++col) {
      const int i = col / q, j = col % q;
      Eigen::Matrix<int64_t, Eigen::Dynamic, 1> cand(V - 1);
      for (int rr = 1; rr < V; ++rr)
        cand[rr - 1] = (cb.words[rr][i] == j ? 1 : 0) - (w0[i] == j ? 1 : 0);
      Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> test(V - 1, sel.cols() + 1);
      test << sel, cand;
      if (rank_exact(test) > static_cast<int>(cols.size())) {
        sel = std::move(test);
        cols.push_back(col);
      }
    }
  }
  const int r = static_cast<int>(cols.size());

  // Count subsets of size r.
  {
    long long c = 1;
    for (int i = 1; i <= r; ++i) {
      c = c * (V - r + i) / i;
      if (c > max_subsets) throw GuardError("hull_facets_by_subsets: too many subsets");
    }
  }
  std::vector<std::vector<int>> u(V);
  for (int i = 0; i < V; ++i) u[i] = embed_selected(cb.words[i], q, cols);

  std::set<CanonicalIneq> seen;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    // Normal via Cramer: kernel vector of the r x (r+1) system (u_i, -1).
    std::vector<Vec128> m(r, Vec128(r + 1));
    for (int i = 0; i < r; ++i) {
      for (int t = 0; t < r; ++t) m[i][t] = u[idx[i]][t];
      m[i][r] = -1;
    }
    Vec128 normal(r + 1);
    bool nonzero = false;
    for (int drop = 0; drop <= r; ++drop) {
      std::vector<Vec128> minor(r, Vec128(r));
      for (int i = 0; i < r; ++i) {
        int c = 0;
        for (int j = 0; j <= r; ++j) {
          if (j == drop) continue;
          minor[i][c++] = m[i][j];
        }
      }
      normal[drop] = (drop % 2 ? -1 : 1) * det_bareiss(std::move(minor));
      nonzero = nonzero || normal[drop] != 0;
    }
    if (nonzero) {
      // normal = (a, b) with a^T u = b on the subset. Orient and test.
      bool ok_le = true, ok_ge = true;
      for (int i = 0; i < V && (ok_le || ok_ge); ++i) {
        int128 val = -normal[r];  // a^T u - b with b = normal[r]
        for (int t = 0; t < r; ++t) val += normal[t] * u[i][t];
        if (val > 0) ok_le = false;
        if (val < 0) ok_ge = false;
      }
      if (ok_le != ok_ge) {  // a proper face, not the whole hull
        const int sign = ok_le ? 1 : -1;
        std::vector<int64_t> theta(cb.d * q, 0);
        for (int t = 0; t < r; ++t) theta[cols[t]] = static_cast<int64_t>(sign * normal[t]);
        const int64_t kappa = static_cast<int64_t>(sign * normal[r]);
        CutInequality iq;
        iq.p = q;
        iq.d = cb.d;
        iq.theta.resize(cb.d * q);
        for (int i = 0; i < cb.d * q; ++i) iq.theta[i] = static_cast<int>(theta[i]);
        iq.kappa = kappa;
        if (face_dimension(iq, cb) == r - 1)
          seen.insert(canonicalize_ineq(std::move(theta), kappa, q));
      }
    }
    // next combination
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == V - r + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
  FacetList out;
  out.dim = r;
  out.facets.assign(seen.begin(), seen.end());
  return out;
}

std::optional<BruteSeparation> separation_bruteforce(const BuildingBlockClass& cls,
                                                     const Eigen::VectorXd& x, int d,
                                                     long long guard) {
  const int p = cls.p();
  long long total = 1;
  for (int i = 0; i < d - 1; ++i) {
    total *= p;
    if (total > guard) throw GuardError("separation_bruteforce: p^(d-1) beyond guard");
  }
  Eigen::MatrixXd v(d, p);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < p; ++k) {
      double dot = 0.0;
      for (int j = 0; j < p; ++j) dot += cls.t(k, j) * std::max(x[i * p + j], 0.0);
      v(i, k) = cls.t0_sigma() - cls.t(0, k) - dot;
    }
  const int target = static_cast<int>((static_cast<long long>(d - 1) * cls.sigma()) % p);

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_ks;
  std::vector<int> ks(d);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    int sum = 0;
    double psi = 0.0;
    for (int i = 0; i < d - 1; ++i) {
      ks[i] = static_cast<int>(c % p);
      c /= p;
      sum += ks[i];
      psi += v(i, ks[i]);
    }
    ks[d - 1] = ((target - sum) % p + p) % p;
    psi += v(d - 1, ks[d - 1]);
    if (psi < best - 1e-15 || (psi < best + 1e-15 && (best_ks.empty() || ks < best_ks))) {
      best = psi;
      best_ks = ks;
    }
  }
  if (best >= cls.t0_sigma() - kMinCutViolation) return std::nullopt;
  return BruteSeparation{best_ks, best};
}

CoverageReport coverage_check(const std::vector<CutInequality>& family, const SpcCodebook& cb,
                              long long guard) {
  const int q = cb.q();
  const ExtField& f = *cb.field;
  long long total = 1;
  for (int i = 0; i < cb.d; ++i) {
    total *= q;
    if (total > guard) throw GuardError("coverage_check: q^d beyond guard");
  }
  CoverageReport rep;
  rep.per_ineq_cut_counts.assign(family.size(), 0);
  std::vector<int> w(cb.d, 0);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    int syndrome = 0;
    for (int i = 0; i < cb.d; ++i) {
      w[i] = static_cast<int>(c % q);
      c /= q;
      syndrome = f.add(syndrome, f.mul(cb.h[i], w[i]));
    }
    if (syndrome == 0) continue;
    ++rep.noncodewords;
    bool covered = false;
    for (size_t t = 0; t < family.size(); ++t)
      if (family[t].lhs_at_word(w, q) > family[t].kappa) {
        ++rep.per_ineq_cut_counts[t];
        covered = true;
      }
    if (!covered) ++rep.uncovered;
  }
  return rep;
}

}  // namespace nblp
