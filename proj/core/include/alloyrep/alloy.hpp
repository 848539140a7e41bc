#pragma once

#include "alloyrep/algebra.hpp"
#include "alloyrep/numkernel.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace alloyrep {

/// A space split into parts with an antisymmetric bracket defined only on
/// pairs inside the same part, valued in the whole space. Parts are disjoint
/// index sets covering {0..dim-1}; the domain W of the bracket is the union
/// of the Lambda^2 of the parts.
class Alloy {
 public:
  struct Part {
    std::vector<Index> indices;   // ascending global basis indices
    PairBasis pair_basis;         // over local positions within the part
    std::vector<CVector> table;   // bracket values in C^dim, one per pair
  };

  Alloy() = default;
  Alloy(Index dim, std::vector<std::vector<Index>> parts);

  Index dim() const { return dim_; }
  Index part_count() const { return static_cast<Index>(parts_.size()); }
  const Part& part(Index p) const { return parts_.at(static_cast<size_t>(p)); }

  /// Part id containing a global basis index.
  Index part_of(Index global) const;

  bool in_domain(Index gi, Index gj) const;

  /// [x_gi, x_gj] for gi < gj in the same part; throws outside W.
  const CVector& basis_bracket(Index gi, Index gj) const;
  void set_basis_bracket(Index gi, Index gj, CVector out);

  /// Structural + numerical sanity: parts disjoint and covering, table
  /// shapes right, entries finite. Returns a reason on failure.
  bool well_formed(std::string* why = nullptr) const;

 private:
  std::pair<Index, Index> locate(Index gi, Index gj) const;

  Index dim_ = 0;
  std::vector<Part> parts_;
  std::vector<Index> part_of_;    // global index -> part id
  std::vector<Index> local_pos_;  // global index -> position within part
};

/// Brackets equal entrywise within tol.residual_tol and identical part
/// structure.
bool same_alloy(const Alloy& a, const Alloy& b,
                const ToleranceConfig& tol = default_tol());

/// The pair of maps T_i from two anticommutative algebras into End(V) whose
/// commutator defects are expected to land in each other's image span.
struct CrossProjRep {
  AntiAlgebra g1;
  AntiAlgebra g2;
  std::vector<CMatrix> T1;  // one matrix per basis element of g1
  std::vector<CMatrix> T2;
  Index space_dim = 0;

  void validate() const;  // shape consistency; throws std::invalid_argument
};

/// lam1: Lambda^2(g1) -> g2 and lam2: Lambda^2(g2) -> g1 as matrices over the
/// canonical pair bases (m x n(n-1)/2 and n x m(m-1)/2).
struct AlloyFactorization {
  CMatrix lam1;
  CMatrix lam2;
};

struct DefectCoordinate {
  int part = 0;  // 1 or 2: which algebra the commutator pair came from
  Index i = 0;
  Index j = 0;
  CVector coords;  // coordinates of the defect over the other side's images
};

struct CrossProjReport {
  bool ok = false;
  double worst_residual = 0.0;
  std::vector<DefectCoordinate> defect_coords;  // present when the span map
                                                // on the other side is injective
};

/// Verifies both congruences of the definition: every commutator defect of
/// T1 lies in span(T2 images) and symmetrically. Failure is a report.
CrossProjReport cross_projective_check(const CrossProjRep& r,
                                       const ToleranceConfig& tol = default_tol());

struct TracelessResult {
  CrossProjRep rep;
  CrossProjReport recheck;
};

/// T(X) - tr(T(X))/dim(V) * E applied to every image, then re-checked.
TracelessResult traceless_normalize(const CrossProjRep& r,
                                    const ToleranceConfig& tol = default_tol());

struct AlloyConstruction {
  Alloy alloy;
  AlloyFactorization factorization;
};

/// The unique alloy realized by a strict transversal cross-projective pair:
/// on Lambda^2(g1) the bracket is <X,Y>_1 plus the unique g2-coordinates of
/// the commutator defect, and symmetrically. Throws std::runtime_error
/// "not strict" / "not transversal" / "not cross-projective".
AlloyConstruction alloy_from_cross_projective(const CrossProjRep& r,
                                              const ToleranceConfig& tol = default_tol());

/// The derived quaternary operations of a two-part alloy:
/// <U,V,X,Y>_1 = lam2(lam1(U,V), lam1(X,Y)) on part 1 and symmetrically.
std::pair<QuaternaryAlgebra, QuaternaryAlgebra> quaternary_from_alloy(
    const Alloy& a);

/// The cross-part components of a two-part alloy's bracket.
AlloyFactorization extract_factorization(const Alloy& a);

struct AlloyabilityReport {
  bool ok = false;
  double worst_residual = 0.0;
};

/// Verifies the mutual-factorization identities on all basis tuples.
AlloyabilityReport alloyability_check(const QuaternaryAlgebra& q1,
                                      const QuaternaryAlgebra& q2,
                                      const AlloyFactorization& f,
                                      const ToleranceConfig& tol = default_tol());

struct CanonicalPartner {
  QuaternaryAlgebra partner;  // quaternary algebra on Lambda^2(g1)
  AlloyFactorization factorization;
};

/// The alloyable partner Lambda^2(g1) with lam1 the canonical wedge
/// identification and lam2 the given operation itself.
CanonicalPartner canonical_partner(const QuaternaryAlgebra& q1);

struct SearchBudget {
  int restarts = 50;
  int iters = 500;
  std::uint64_t seed = 0;
};

struct SearchResult {
  AlloyFactorization best;
  double best_residual = 0.0;
  int best_restart = -1;
  // One trace per restart: the best residual reached up to each iteration.
  std::vector<std::vector<double>> traces;
};

/// Search for a mutual factorization. Each restart alternates least squares
/// (identity one is linear in lam2 given lam1, identity two linear in lam1
/// given lam2) and then refines its best iterate with a damped joint
/// Gauss-Newton pass; the alternation alone stalls or diverges on generic
/// instances. The trace records the running-best residual, so it is
/// non-increasing. Restart 0 starts from zero maps, restart 1 from the
/// canonical wedge shape, later restarts from seeded uniform [-1,1] entries.
/// Non-convergence shows up as the returned residual.
SearchResult alloyability_search(const QuaternaryAlgebra& q1,
                                 const QuaternaryAlgebra& q2,
                                 const SearchBudget& budget,
                                 const ToleranceConfig& tol = default_tol());

/// The alloy on g (+) Lambda^2(g): part-1 pairs bracket to <X,Y> + X^Y,
/// part-2 pairs to the Lambda^2 bracket plus q acting as lam2.
Alloy wedge_square_alloy(const AntiAlgebra& g, const QuaternaryAlgebra& q);

}  // namespace alloyrep
