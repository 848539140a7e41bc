#pragma once

#include "alloyrep/numkernel.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace alloyrep {

/// Canonical identification of Lambda^2(C^n) with C^N, N = n(n-1)/2:
/// index pairs {i<j} in lexicographic order.
struct PairBasis {
  Index dim = 0;
  std::vector<std::pair<Index, Index>> pairs;

  static PairBasis of(Index n);

  Index size() const { return static_cast<Index>(pairs.size()); }

  Index index(Index i, Index j) const {
    if (i < 0 || j < 0 || i >= j || j >= dim) {
      throw std::invalid_argument("PairBasis::index: need 0 <= i < j < dim");
    }
    return i * dim - i * (i + 1) / 2 + (j - i - 1);
  }
};

/// Wedge of two coefficient vectors of equal length n, in the PairBasis
/// coordinates of Lambda^2(C^n): (u ^ v)_{ij} = u_i v_j - u_j v_i.
CVector wedge(const CVector& u, const CVector& v);

/// Finite-dimensional anticommutative algebra held as a structure table over
/// the PairBasis. No Jacobi identity is assumed anywhere.
class AntiAlgebra {
 public:
  AntiAlgebra() = default;
  explicit AntiAlgebra(Index dim, std::vector<std::string> names = {});

  Index dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const PairBasis& pair_basis() const { return pair_basis_; }

  /// <x_i, x_j> for i < j.
  const CVector& basis_bracket(Index i, Index j) const;
  const CVector& basis_bracket(Index pair_index) const;
  void set_basis_bracket(Index i, Index j, CVector out);

  /// Bilinear antisymmetric evaluation.
  CVector eval(const CVector& x, const CVector& y) const;

  bool is_zero() const;

 private:
  Index dim_ = 0;
  std::vector<std::string> names_;
  PairBasis pair_basis_;
  std::vector<CVector> table_;  // one C^dim vector per pair {i<j}
};

/// 4-ary operation Lambda^2(Lambda^2(C^n)) -> C^n stored as an
/// n x C(N,2) matrix over the canonical pair-of-pairs basis, N = n(n-1)/2.
/// Antisymmetry within each argument pair and under pair exchange is a
/// property of the storage, not a runtime check.
class QuaternaryAlgebra {
 public:
  QuaternaryAlgebra() = default;
  explicit QuaternaryAlgebra(Index dim);
  QuaternaryAlgebra(Index dim, CMatrix tensor);

  Index dim() const { return dim_; }
  Index pair_dim() const { return pair_basis_.size(); }
  Index pair_pair_dim() const { return tensor_.cols(); }
  const PairBasis& pair_basis() const { return pair_basis_; }
  const PairBasis& pair_pair_basis() const { return pair_pair_basis_; }
  const CMatrix& tensor() const { return tensor_; }
  CMatrix& tensor() { return tensor_; }

  /// <a, b, c, d>, multilinear in all four arguments.
  CVector eval(const CVector& a, const CVector& b, const CVector& c,
               const CVector& d) const;

  /// Evaluation on already-wedged arguments w1, w2 in Lambda^2 coordinates.
  CVector eval_pairs(const CVector& w1, const CVector& w2) const;

  bool is_zero() const;

 private:
  Index dim_ = 0;
  PairBasis pair_basis_;       // pairs of basis indices of C^dim
  PairBasis pair_pair_basis_;  // pairs of pair indices
  CMatrix tensor_;             // dim x C(N,2)
};

/// <x, y> extended bilinearly; identical to g.eval.
CVector bracket_eval(const AntiAlgebra& g, const CVector& x, const CVector& y);

/// The anticommutative algebra on Lambda^2(g) with
/// [a^b, c^d] = <a,b> ^ <c,d>.
AntiAlgebra wedge_square_algebra(const AntiAlgebra& g);

/// <A,B,C,D> = <<A,B>,<C,D>> of a single bracket.
QuaternaryAlgebra quaternary_from_bracket(const AntiAlgebra& g);

/// The six symmetrized operations <A,B,C,D>_{ij}^k = <<A,B>_i,<C,D>_j>_k
/// + (i<->j), for unordered (i,j) in {11,12,22} and k in {1,2}.
struct SixQuaternaryOps {
  // Order: (1,1,1), (1,1,2), (1,2,1), (1,2,2), (2,2,1), (2,2,2).
  std::array<QuaternaryAlgebra, 6> ops;

  const QuaternaryAlgebra& op(int i, int j, int k) const;
};

SixQuaternaryOps six_quaternary_ops(Index g_dim, const AntiAlgebra& b1,
                                    const AntiAlgebra& b2);

/// The quaternary algebra on Lambda^2(g) with
/// <u1,u2,u3,u4>' = q(u1^u2) ^ q(u3^u4).
QuaternaryAlgebra quaternary_wedge_square(const QuaternaryAlgebra& q);

/// The extension homomorphism pi: Lambda^2(Lambda^2(g)) -> g determined by
/// pi((a^b)^(c^d)) = <a,b,c,d>, as a matrix over the canonical bases.
CMatrix quaternary_extension_hom(const QuaternaryAlgebra& q);

/// Dimension of the space of n-dimensional quaternary algebras:
/// (n+1) n^2 (n-1) (n-2) / 8.
std::int64_t dim_Q(std::int64_t n);

/// Dimension of the graph of the alloyability relation on pairs of
/// quaternary algebras of dimensions n, m: n m (n+m-2) / 2.
std::int64_t dim_graph_RA(std::int64_t n, std::int64_t m);

}  // namespace alloyrep
