#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace alloyrep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Thresholds shared by every numerical decision in the library.
///
/// rank_tol is relative to the largest singular value of the matrix at hand,
/// residual_tol bounds max-norm residuals of equality checks, and
/// eigen_gap_tol is the clustering gap for eigenvalue grouping.
struct ToleranceConfig {
  double rank_tol = 1e-9;
  double residual_tol = 1e-9;
  double eigen_gap_tol = 1e-7;
};

const ToleranceConfig& default_tol();

bool all_finite(const CMatrix& m);

/// A subspace of C^ambient_dim held as orthonormal basis columns.
struct Subspace {
  Index ambient_dim = 0;
  CMatrix basis;  // ambient_dim x dim(), orthonormal columns

  Index dim() const { return basis.cols(); }
};

struct SpanQuery {
  bool contained = false;
  double residual = 0.0;  // 2-norm distance from the vector to the span
};

/// ab - ba. Throws std::invalid_argument unless a, b are square of equal size.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Orthonormal basis of the span of the given vectors; rank decided by
/// singular values above rank_tol relative to the largest one.
Subspace span_close(const std::vector<CVector>& vectors,
                    const ToleranceConfig& tol = default_tol());
Subspace span_close(const CMatrix& columns,
                    const ToleranceConfig& tol = default_tol());

/// Membership of v in s up to residual_tol * max(1, |v|).
SpanQuery span_contains(const Subspace& s, const CVector& v,
                        const ToleranceConfig& tol = default_tol());

/// Kronecker product, (rows_a*rows_b) x (cols_a*cols_b).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Orthonormal basis of { v : a v = 0 } under rank_tol thresholding.
Subspace nullspace(const CMatrix& a, const ToleranceConfig& tol = default_tol());

Index matrix_rank(const CMatrix& a, const ToleranceConfig& tol = default_tol());

struct EigenCluster {
  Complex eigenvalue;     // mean of the clustered eigenvalues
  Index multiplicity = 0; // algebraic multiplicity of the cluster
  Subspace space;         // invariant subspace spanned by its eigenvectors
};

/// Eigenvalues grouped with gap eigen_gap_tol together with the invariant
/// subspace of each cluster. Clusters are ordered by (re, im) of their
/// smallest member. Throws std::runtime_error("non-diagonalizable") when the
/// eigenvectors of some cluster do not span a space of full multiplicity.
std::vector<EigenCluster> eigen_split(const CMatrix& a,
                                      const ToleranceConfig& tol = default_tol());

/// Minimum-norm least-squares solution of a x = b (SVD, rank_tol truncation).
CVector lstsq(const CMatrix& a, const CVector& b,
              const ToleranceConfig& tol = default_tol());
CMatrix lstsq(const CMatrix& a, const CMatrix& b,
              const ToleranceConfig& tol = default_tol());

/// Column-major flattening of a matrix and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Index rows, Index cols);

/// sum_k coeffs[k] * mats[k]; coeffs must have one entry per matrix.
CMatrix lincomb(const std::vector<CMatrix>& mats, const CVector& coeffs);

/// The matrices stacked as columns of a (rows*cols) x count matrix.
CMatrix stack_vectorized(const std::vector<CMatrix>& mats);

}  // namespace alloyrep
