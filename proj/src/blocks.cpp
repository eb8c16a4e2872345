#include "nblp/blocks.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "nblp/exact.hpp"

namespace nblp {

MVector::MVector(int p_, std::vector<uint8_t> bits_) : p(p_), bits(std::move(bits_)) {
  if (static_cast<int>(bits.size()) != p) throw std::invalid_argument("MVector: length mismatch");
  if (bits[0] != 0) throw std::invalid_argument("MVector: m_0 must be 0");
  for (uint8_t b : bits)
    if (b > 1) throw std::invalid_argument("MVector: entries must be 0/1");
}

MVector MVector::zero(int p) { return MVector(p, std::vector<uint8_t>(p, 0)); }

MVector MVector::alternating(int p) {
  std::vector<uint8_t> b(p, 0);
  for (int j = 1; j < p; j += 2) b[j] = 1;
  return MVector(p, std::move(b));
}

MVector MVector::from_prefix(int p, const std::string& prefix) {
  if (static_cast<int>(prefix.size()) > p) throw std::invalid_argument("MVector: prefix longer than p");
  std::vector<uint8_t> b(p, 0);
  for (size_t i = 0; i < prefix.size(); ++i) b[i] = prefix[i] == '1';
  return MVector(p, std::move(b));
}

std::string MVector::str() const {
  std::string s(p, '0');
  for (int j = 0; j < p; ++j)
    if (bits[j]) s[j] = '1';
  return s;
}

BuildingBlockClass::BuildingBlockClass(MVector m) : p_(m.p), m_(std::move(m)) {
  t_.resize(p_, p_);
  for (int j = 0; j < p_; ++j) t_(0, j) = j + m_.bits[j] * p_;
  for (int k = 1; k < p_; ++k)
    for (int j = 0; j < p_; ++j) t_(k, j) = t_(0, (j + k) % p_) - t_(0, k);
  sigma_ = 0;
  for (int j = 1; j < p_; ++j)
    if (t_(0, j) > t_(0, sigma_)) sigma_ = j;
}

bool is_symmetric(const BuildingBlockClass& cls) {
  // set(t_0) == t_{0,sigma} - set(t_0)
  const int p = cls.p();
  std::set<int> s;
  for (int j = 0; j < p; ++j) s.insert(cls.t(0, j));
  for (int v : s)
    if (!s.count(cls.t0_sigma() - v)) return false;
  return true;
}

bool is_almost_doubly_symmetric(const BuildingBlockClass& cls) {
  const int p = cls.p();
  if (p < 3 || !is_symmetric(cls)) return false;
  std::vector<int> sorted(p);
  for (int j = 0; j < p; ++j) sorted[j] = cls.t(0, j);
  std::sort(sorted.begin(), sorted.end());
  const int smax = sorted[p - 2];
  std::set<int> proj(sorted.begin() + 1, sorted.end() - 1);  // interior entries
  // The three subset conditions are downward closed, so the maximal
  // candidate set decides.
  int count = 0;
  for (int v : proj)
    if (v <= smax / 2 && proj.count(smax - v)) ++count;
  return count >= (p - 3) / 2;
}

namespace {

// Reachability for the validity system: states (s, f) where s is the
// accumulated integer sum of weights -t_{sigma,i} and f tracks
// r = -sum [n_i]_p * i in F_p.
bool validity_system_solvable(const BuildingBlockClass& cls) {
  const int p = cls.p();
  const int sigma = cls.sigma();
  std::vector<std::pair<int, int>> moves;  // (weight, i)
  for (int i = 0; i < p; ++i) {
    const int t = cls.t(sigma, i);
    if (t < 0 && t >= -sigma) moves.push_back({-t, i});
  }
  const int cap = p - 1;
  std::vector<std::vector<bool>> reach(cap + 1, std::vector<bool>(p, false));
  reach[0][0] = true;
  for (int s = 0; s <= cap; ++s)
    for (int f = 0; f < p; ++f) {
      if (!reach[s][f]) continue;
      for (auto [w, i] : moves) {
        if (s + w > cap) continue;
        reach[s + w][(f - i % p + p) % p] = true;
      }
    }
  for (int f = 1; f < p; ++f)
    if (cls.m().bits[f] && reach[f][f]) return true;
  return false;
}

// Coin-reachability form of the validity test for symmetric prefixes:
// values {j : m_j = 0, 0 < j < sigma}, targets {s : m_s = 1}.
bool prefix_system_solvable(const std::vector<uint8_t>& m, int sigma) {
  std::vector<int> coins;
  for (int j = 1; j < sigma; ++j)
    if (!m[j]) coins.push_back(j);
  std::vector<bool> reach(sigma + 1, false);
  reach[0] = true;
  for (int s = 0; s <= sigma; ++s) {
    if (!reach[s]) continue;
    for (int c : coins)
      if (s + c <= sigma) reach[s + c] = true;
  }
  for (int s = 1; s <= sigma; ++s)
    if (m[s] && reach[s]) return true;
  return false;
}

// Face dimension of one class inequality at d = 3 measured from the tight
// vectors xi with t_{sigma,xi_1} + t_{sigma,xi_2} + t_{0,xi_3} = 0, via the
// rank of their Flanagan embeddings.
bool facet_rank_test_d3(const BuildingBlockClass& cls) {
  const int p = cls.p();
  const int sigma = cls.sigma();
  std::vector<std::array<int, 3>> tight;
  for (int x1 = 0; x1 < p; ++x1)
    for (int x2 = 0; x2 < p; ++x2) {
      const int x3 = ((-(x1 + x2)) % p + p) % p;
      if (x1 == 0 && x2 == 0 && x3 == 0) continue;
      if (cls.t(sigma, x1) + cls.t(sigma, x2) + cls.t(0, x3) == 0) tight.push_back({x1, x2, x3});
    }
  Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> m(tight.size(), 3 * (p - 1));
  m.setZero();
  for (size_t r = 0; r < tight.size(); ++r)
    for (int i = 0; i < 3; ++i)
      if (tight[r][i] != 0) m(r, i * (p - 1) + tight[r][i] - 1) = 1;
  return rank_exact(std::move(m)) == 3 * (p - 1) - 1;
}

}  // namespace

bool is_valid(const BuildingBlockClass& cls) { return !validity_system_solvable(cls); }

bool is_valid_symmetric_shortcut(const BuildingBlockClass& cls) {
  std::vector<uint8_t> m(cls.m().bits.begin(), cls.m().bits.end());
  return !prefix_system_solvable(m, cls.sigma());
}

ClassFlags classify_class(const BuildingBlockClass& cls) {
  ClassFlags f;
  f.symmetric = is_symmetric(cls);
  f.almost_doubly_symmetric = is_almost_doubly_symmetric(cls);
  f.valid = is_valid(cls);
  f.unique = !(cls.m() == MVector::alternating(cls.p()));
  if (f.valid) {
    if (f.almost_doubly_symmetric || (cls.p() == 2))
      f.facet_defining = true;
    else
      f.facet_defining = facet_rank_test_d3(cls);
  }
  return f;
}

ClassificationReport enumerate_classes(int p, bool allow_large) {
  if (!PrimeField::is_prime(p)) throw std::invalid_argument("enumerate_classes: p must be prime");
  if (p > 19) throw GuardError("enumerate_classes: p > 19 refused (2^(p-1) candidates)");
  if (p > 13 && !allow_large)
    throw GuardError("enumerate_classes: p in {17,19} requires the large-p flag");

  ClassificationReport rep;
  rep.p = p;
  rep.total_m = 1LL << (p - 1);
  for (long long code = 0; code < rep.total_m; ++code) {
    std::vector<uint8_t> bits(p, 0);
    for (int j = 1; j < p; ++j) bits[j] = (code >> (j - 1)) & 1;
    BuildingBlockClass cls(MVector(p, std::move(bits)));
    ClassFlags f = classify_class(cls);
    if (!f.valid) continue;
    ++rep.valid;
    if (!f.unique) continue;
    ++rep.unique_valid;
    if (f.symmetric) ++rep.symmetric;
    if (f.almost_doubly_symmetric) ++rep.almost_doubly_symmetric;
    if (f.facet_defining) {
      ++rep.facet_defining;
      rep.facet_classes.push_back(cls.m());
    }
  }
  return rep;
}

std::vector<std::vector<std::string>> valid_symmetric_prefixes(int sigma_max) {
  if (sigma_max > 17) throw GuardError("valid_symmetric_prefixes: sigma > 17 refused");
  std::vector<std::vector<std::string>> rows;
  for (int sigma = 1; sigma <= sigma_max; sigma += 2) {
    std::vector<std::string> found;
    const int free_bits = (sigma - 1) / 2;
    for (long long code = 0; code < (1LL << free_bits); ++code) {
      std::vector<uint8_t> m(sigma + 1, 0);
      m[sigma] = 1;
      for (int i = 1; i <= free_bits; ++i) {
        m[i] = (code >> (i - 1)) & 1;
        m[sigma - i] = 1 - m[i];
      }
      if (!prefix_system_solvable(m, sigma)) {
        std::string s(sigma + 1, '0');
        for (int i = 0; i <= sigma; ++i)
          if (m[i]) s[i] = '1';
        found.push_back(std::move(s));
      }
    }
    std::sort(found.begin(), found.end());
    rows.push_back(std::move(found));
  }
  return rows;
}

}  // namespace nblp
