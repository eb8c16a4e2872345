#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nblp/blocks.hpp"
#include "nblp/exact.hpp"
#include "nblp/gf.hpp"

namespace nblp {

/// How a cut inequality was produced.
struct CutProvenance {
  enum Kind { kBasic, kTheta5, kTheta6, kSimplex, kLifted } kind = kBasic;
  std::string class_m;       // m-vector string for basic classes
  int r = 1;                 // automorphism applied (0 means none recorded)
  std::vector<int> h;        // parity-check vector, empty = all-ones
  int i_nb = -1, i_hi = -1, i_lo = -1;
};

/// An integer inequality theta^T x <= kappa over d blocks of p coordinates.
struct CutInequality {
  int p = 0, d = 0;
  Eigen::VectorXi theta;  // length d*p
  long long kappa = 0;
  CutProvenance prov;

  double violation(const Eigen::VectorXd& x) const {
    return theta.cast<double>().dot(x) - static_cast<double>(kappa);
  }
  long long lhs_at_word(const std::vector<int>& word, int q) const {
    long long s = 0;
    for (int i = 0; i < d; ++i) s += theta[i * q + word[i]];
    return s;
  }
  CanonicalIneq canonical() const;
};

/// The d sum-to-one equalities and d*p nonnegativity rows of the product of
/// simplices.
struct SimplexConstraintSet {
  int p = 0, d = 0;
  // Equalities are sum_j x_{i,j} = 1 for each block; inequalities are
  // x_{i,j} >= 0, indexed i*p+j. Represented implicitly; helpers below
  // materialize rows on demand.
  int n_equalities() const { return d; }
  int n_inequalities() const { return d * p; }
};

inline SimplexConstraintSet simplex_constraints(int p, int d) { return {p, d}; }

/// One permutation of F_q per block position.
struct PermVector {
  int q = 0;
  std::vector<std::vector<int>> perms;  // each a bijection on {0..q-1}

  static PermVector identity(int q, int d);
  /// Blockwise multiplication maps j -> h_i * j.
  static PermVector scalar(const ExtField& f, const std::vector<int>& h);
  static PermVector scalar(const PrimeField& f, const std::vector<int>& h);
  PermVector inverse() const;
  PermVector compose_after(const PermVector& inner) const;  // this ∘ inner
};

/// rot_pi on points: block i, coordinate j picks up a_{i,pi_i(j)}.
Eigen::VectorXd rotate_point(const Eigen::VectorXd& x, const PermVector& pv);
Eigen::VectorXi rotate_coeffs(const Eigen::VectorXi& a, const PermVector& pv);
CutInequality rotate_inequality(const CutInequality& ineq, const PermVector& pv);

/// Hi-Lo construction: the d-1 free block choices k_1..k_{d-1} determine the
/// canonical codeword and the forced last block.
CutInequality hilo_inequality(const BuildingBlockClass& cls, const std::vector<int>& ks);

/// Canonical codeword of a Hi-Lo inequality (for tests and counting).
std::vector<int> hilo_canonical_codeword(const BuildingBlockClass& cls, const std::vector<int>& ks);

/// Checks the two characterizations of membership in Theta^m. Blocks of
/// theta must each match some t_k of the class; otherwise false.
bool membership_check(const CutInequality& ineq, const BuildingBlockClass& cls);

/// All (p-1) p^{d-1} inequalities of Phi(Theta^m). The callback form streams;
/// the vector form refuses beyond `cap` rows.
void phi_family_foreach(const BuildingBlockClass& cls, int d,
                        const std::function<void(const CutInequality&)>& fn);
std::vector<CutInequality> phi_family(const BuildingBlockClass& cls, int d,
                                      size_t cap = 2'000'000);

/// rot_h ∘ rot_r applied blockwise; h entries must be nonzero.
CutInequality to_general_spc(const CutInequality& ineq, const std::vector<int>& h, int r);

// ---- p = 7 hybrid families ---------------------------------------------

/// The block classes behind Theta5 (two basic classes) and Theta6 (three
/// nonbasic classes, fixed tables).
struct Theta5Blocks {
  BuildingBlockClass b;   // T^(0010000)
  BuildingBlockClass nb;  // T^(0110000)
  static const Theta5Blocks& get();
};
struct Theta6Blocks {
  Eigen::MatrixXi b, hi, lo;  // 7x7 each, row k = t_k
  static const Theta6Blocks& get();
};

CutInequality theta5_inequality(int d, int i_nb, const std::vector<int>& ks);
CutInequality theta6_inequality(int d, int i_hi, int i_lo, const std::vector<int>& ks);

std::vector<CutInequality> theta5_family(int d);
std::vector<CutInequality> theta6_family(int d);

// ---- Flanagan projection -------------------------------------------------

/// Drops coordinate j=0 of every block after normalizing the block-0
/// coefficients to zero via the sum-to-one equalities.
struct FlanaganIneq {
  int p = 0, d = 0;
  std::vector<long long> coeffs;  // length d*(p-1)
  long long kappa = 0;
  bool operator==(const FlanaganIneq&) const = default;
};
FlanaganIneq flanagan_project(const CutInequality& ineq);
Eigen::VectorXd flanagan_project_point(const Eigen::VectorXd& x, int q);
Eigen::VectorXd flanagan_lift_point(const Eigen::VectorXd& xp, int q);

// ---- Extension-field machinery -------------------------------------------

/// B^(beta)(K, gamma, h) = { zeta : sum_{k in K} gamma_k p(h zeta)_k = beta }.
std::vector<int> b_set(const ExtField& f, const std::vector<int>& K, const std::vector<int>& gamma,
                       int h, int beta);

/// beta-label of every field element under (K, gamma, h); the slices
/// partition F_q into p sets of size p^{m-1}.
std::vector<int> b_labels(const ExtField& f, const std::vector<int>& K,
                          const std::vector<int>& gamma, int h);

/// Lifts a p-ary cut to F_{p^m}: block i entry eta carries t_{k_i, beta}
/// where beta is the label of eta under (K, gamma, h_i). kappa is unchanged.
CutInequality lift_to_extension(const CutInequality& ineq, const ExtField& f,
                                const std::vector<int>& K, const std::vector<int>& gamma,
                                const std::vector<int>& h);

/// The (K, gamma) pairs of the full relaxation (all p^m - 1 of them) or the
/// reduced mode (gamma all-ones, K over all nonempty subsets).
struct KGamma {
  std::vector<int> K;
  std::vector<int> gamma;
};
std::vector<KGamma> kgamma_pairs(const ExtField& f, bool reduced);

// ---- Counting -------------------------------------------------------------

struct CutTightCounts {
  long long cut = 0;
  long long tight = 0;
};
/// Evaluates the multiset counting formulas for one inequality of a valid
/// class at length d.
CutTightCounts count_cut_and_tight(const BuildingBlockClass& cls, int d);

}  // namespace nblp
