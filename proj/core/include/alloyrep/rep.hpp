#pragma once

#include "alloyrep/alloy.hpp"
#include "alloyrep/numkernel.hpp"

#include <cstdint>
#include <vector>

namespace alloyrep {

/// One square matrix per alloy basis element. Validity is a property
/// established by check_rep, not by construction.
struct AlloyRep {
  Alloy alloy;
  std::vector<CMatrix> mats;
  Index space_dim = 0;

  void validate_shapes() const;  // throws std::invalid_argument
};

struct CheckRepReport {
  bool ok = false;
  double worst_residual = 0.0;
};

/// [T(X),T(Y)] = T([X,Y]) over every within-part basis pair. Pairs outside
/// the bracket domain are not constrained.
CheckRepReport check_rep(const AlloyRep& r,
                         const ToleranceConfig& tol = default_tol());

/// Block-diagonal sum; requires the same alloy.
AlloyRep direct_sum(const AlloyRep& r1, const AlloyRep& r2,
                    const ToleranceConfig& tol = default_tol());

/// T(x) = T1(x) (x) I + I (x) T2(x); requires the same alloy.
AlloyRep tensor_product(const AlloyRep& r1, const AlloyRep& r2,
                        const ToleranceConfig& tol = default_tol());

/// Span of the unital associative algebra generated by the matrices, as a
/// subspace of the space of vectorized d x d matrices.
Subspace generated_algebra(const std::vector<CMatrix>& mats,
                           const ToleranceConfig& tol = default_tol());

struct IrreducibilityResult {
  bool irreducible = false;
  Index generated_dim = 0;  // the Burnside certificate
};

/// Burnside criterion over C: irreducible iff the generated unital algebra
/// is the full matrix algebra.
IrreducibilityResult is_irreducible(const AlloyRep& r,
                                    const ToleranceConfig& tol = default_tol());

/// All matrices commuting with every image, as vectorized matrices.
Subspace commutant(const AlloyRep& r, const ToleranceConfig& tol = default_tol());

struct Decomposition {
  std::vector<AlloyRep> components;
  CMatrix basis;  // conjugating blockdiag(components) by this reproduces r
};

/// Recursive splitting along eigenspaces of random commutant elements.
/// Throws std::runtime_error("decomposition failed") when no diagonalizable
/// splitting element is found within the resampling budget.
Decomposition decompose(const AlloyRep& r, std::uint64_t seed,
                        const ToleranceConfig& tol = default_tol());

/// All S with S T1(x) = T2(x) S, as vectorized (dim2 x dim1)-matrices.
Subspace intertwiner_space(const AlloyRep& r1, const AlloyRep& r2,
                           const ToleranceConfig& tol = default_tol());

/// Equal space dimensions and an invertible random element of the
/// intertwiner space (up to five seeded draws).
bool are_isomorphic(const AlloyRep& r1, const AlloyRep& r2,
                    std::uint64_t seed = 0,
                    const ToleranceConfig& tol = default_tol());

/// A concrete finite-dimensional Lie algebra of endomorphisms containing the
/// representation images, with the coordinates of those images over its basis.
struct EnvelopeAvatar {
  std::vector<CMatrix> basis;
  CMatrix embed;  // column k: coordinates of the k-th alloy image
};

/// Commutator closure of the span of the images.
EnvelopeAvatar lie_closure(const AlloyRep& r,
                           const ToleranceConfig& tol = default_tol());

/// Restriction equality: the two representations assign the same matrices to
/// the alloy basis, entrywise within residual_tol. Both envelopes must
/// contain their representation's images.
bool def_equivalent(const EnvelopeAvatar& e1, const AlloyRep& r1,
                    const EnvelopeAvatar& e2, const AlloyRep& r2,
                    const ToleranceConfig& tol = default_tol());

}  // namespace alloyrep
