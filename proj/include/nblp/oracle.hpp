#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nblp/blocks.hpp"
#include "nblp/cuts.hpp"
#include "nblp/exact.hpp"
#include "nblp/gf.hpp"

namespace nblp {

/// Fully enumerated SPC code over F_q: all q^{d-1} codewords in
/// lexicographic order of the d-1 free symbols.
struct SpcCodebook {
  const ExtField* field = nullptr;
  int d = 0;
  std::vector<int> h;
  std::vector<std::vector<int>> words;

  int q() const { return field->q(); }
};

SpcCodebook enumerate_spc(const ExtField& field, int d, std::vector<int> h,
                          long long guard = 10'000'000);

/// theta^T F_v(c) <= kappa for every codeword (exact integers).
bool validity_oracle(const CutInequality& ineq, const SpcCodebook& cb);
/// Indices of codewords met with equality.
std::vector<int> tight_set(const CutInequality& ineq, const SpcCodebook& cb);
/// Number of non-codewords zeta in F_q^d whose embedding violates the
/// inequality (exact; guards q^d).
long long cut_count_oracle(const CutInequality& ineq, const SpcCodebook& cb,
                           long long guard = 10'000'000);

/// Affine dimension of the face induced by a valid inequality: the exact
/// rank of the Flanagan embeddings of the differences of tight codewords.
/// -1 for an empty face.
int face_dimension(const CutInequality& ineq, const SpcCodebook& cb);

struct HullGuards {
  int max_codewords = 200;
  int max_dim = 14;
  bool verify_ranks = true;
};

struct FacetList {
  int dim = 0;                        // dimension of the polytope
  std::vector<CanonicalIneq> facets;  // complete irredundant facet set
};

/// Complete exact facet enumeration of conv(F_v(C)) for tiny codebooks:
/// works in a full-dimensional coordinate chart of the affine hull and
/// enumerates extreme rays of the polar cone with the double-description
/// method in exact integer arithmetic.
FacetList hull_facets_tiny(const SpcCodebook& cb, HullGuards guards = {});

/// Independent cross-check of hull_facets_tiny on the very smallest
/// instances: candidate hyperplanes through dim-subsets of vertices.
FacetList hull_facets_by_subsets(const SpcCodebook& cb, long long max_subsets = 500'000);

/// Exhaustive minimum of the separation objective over all admissible
/// k-vectors; ties resolved toward the lexicographically smallest vector.
struct BruteSeparation {
  std::vector<int> ks;
  double psi;
};
std::optional<BruteSeparation> separation_bruteforce(const BuildingBlockClass& cls,
                                                     const Eigen::VectorXd& x, int d,
                                                     long long guard = 10'000'000);

struct CoverageReport {
  long long noncodewords = 0;
  long long uncovered = 0;                      // non-codewords no family member cuts
  std::vector<long long> per_ineq_cut_counts;   // aligned with the family
  bool complete() const { return uncovered == 0; }
};
CoverageReport coverage_check(const std::vector<CutInequality>& family, const SpcCodebook& cb,
                              long long guard = 10'000'000);

}  // namespace nblp
