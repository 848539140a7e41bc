#include "alloyrep/numkernel.hpp"

#include <algorithm>
#include <numeric>

namespace alloyrep {

const ToleranceConfig& default_tol() {
  static const ToleranceConfig tol{};
  return tol;
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

Subspace span_close(const CMatrix& columns, const ToleranceConfig& tol) {
  Subspace s;
  s.ambient_dim = columns.rows();
  if (columns.cols() == 0 || columns.rows() == 0 ||
      columns.norm() == 0.0) {
    s.basis = CMatrix::Zero(columns.rows(), 0);
    return s;
  }
  Eigen::JacobiSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_tol * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  s.basis = svd.matrixU().leftCols(rank);
  return s;
}

Subspace span_close(const std::vector<CVector>& vectors, const ToleranceConfig& tol) {
  if (vectors.empty()) {
    return Subspace{0, CMatrix::Zero(0, 0)};
  }
  const Index amb = vectors.front().size();
  CMatrix columns(amb, static_cast<Index>(vectors.size()));
  for (Index k = 0; k < columns.cols(); ++k) {
    if (vectors[static_cast<size_t>(k)].size() != amb) {
      throw std::invalid_argument("span_close: vectors of unequal length");
    }
    columns.col(k) = vectors[static_cast<size_t>(k)];
  }
  return span_close(columns, tol);
}

SpanQuery span_contains(const Subspace& s, const CVector& v, const ToleranceConfig& tol) {
  if (v.size() != s.ambient_dim) {
    throw std::invalid_argument("span_contains: dimension mismatch");
  }
  SpanQuery q;
  if (s.dim() == 0) {
    q.residual = v.norm();
  } else {
    q.residual = (v - s.basis * (s.basis.adjoint() * v)).norm();
  }
  q.contained = q.residual <= tol.residual_tol * std::max(1.0, v.norm());
  return q;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Subspace nullspace(const CMatrix& a, const ToleranceConfig& tol) {
  const Index n = a.cols();
  if (a.rows() == 0 || a.norm() == 0.0) {
    return Subspace{n, CMatrix::Identity(n, n)};
  }
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_tol * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return Subspace{n, svd.matrixV().rightCols(n - rank)};
}

Index matrix_rank(const CMatrix& a, const ToleranceConfig& tol) {
  if (a.rows() == 0 || a.cols() == 0 || a.norm() == 0.0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_tol * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return rank;
}

std::vector<EigenCluster> eigen_split(const CMatrix& a, const ToleranceConfig& tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("eigen_split: matrix not square");
  }
  const Index n = a.rows();
  if (n == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> es(a, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigen_split: eigenvalue iteration failed");
  }
  const CVector& lam = es.eigenvalues();
  const CMatrix& vecs = es.eigenvectors();

  // Union-find clustering: eigenvalues chained by gaps <= eigen_gap_tol.
  std::vector<Index> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index i) {
    while (parent[static_cast<size_t>(i)] != i) {
      parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
      i = parent[static_cast<size_t>(i)];
    }
    return i;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(lam(i) - lam(j)) <= tol.eigen_gap_tol) {
        parent[static_cast<size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<std::vector<Index>> groups;
  std::vector<Index> root_of(static_cast<size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    Index r = find(i);
    if (root_of[static_cast<size_t>(r)] < 0) {
      root_of[static_cast<size_t>(r)] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<size_t>(root_of[static_cast<size_t>(r)])].push_back(i);
  }
  auto key = [&](const std::vector<Index>& g) {
    Complex best = lam(g.front());
    for (Index i : g) {
      const Complex c = lam(i);
      if (c.real() < best.real() ||
          (c.real() == best.real() && c.imag() < best.imag())) {
        best = c;
      }
    }
    return best;
  };
  std::sort(groups.begin(), groups.end(),
            [&](const std::vector<Index>& x, const std::vector<Index>& y) {
              const Complex kx = key(x), ky = key(y);
              return kx.real() < ky.real() ||
                     (kx.real() == ky.real() && kx.imag() < ky.imag());
            });

  std::vector<EigenCluster> out;
  Index total = 0;
  for (const auto& g : groups) {
    EigenCluster c;
    Complex mean = 0.0;
    CMatrix cols(n, static_cast<Index>(g.size()));
    for (size_t k = 0; k < g.size(); ++k) {
      mean += lam(g[k]);
      cols.col(static_cast<Index>(k)) = vecs.col(g[k]);
    }
    c.eigenvalue = mean / static_cast<double>(g.size());
    c.multiplicity = static_cast<Index>(g.size());
    c.space = span_close(cols, tol);
    if (c.space.dim() < c.multiplicity) {
      throw std::runtime_error("non-diagonalizable");
    }
    total += c.space.dim();
    out.push_back(std::move(c));
  }
  if (total != n) {
    throw std::runtime_error("non-diagonalizable");
  }
  return out;
}

CMatrix lstsq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& tol) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("lstsq: dimension mismatch");
  }
  if (a.cols() == 0) return CMatrix::Zero(0, b.cols());
  if (a.norm() == 0.0) return CMatrix::Zero(a.cols(), b.cols());
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol.rank_tol);
  return svd.solve(b);
}

CVector lstsq(const CMatrix& a, const CVector& b, const ToleranceConfig& tol) {
  return CVector(lstsq(a, CMatrix(b), tol));
}

CVector vec(const CMatrix& m) {
  return CVector(Eigen::Map<const CVector>(m.data(), m.size()));
}

CMatrix unvec(const CVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw std::invalid_argument("unvec: size mismatch");
  }
  return CMatrix(Eigen::Map<const CMatrix>(v.data(), rows, cols));
}

CMatrix lincomb(const std::vector<CMatrix>& mats, const CVector& coeffs) {
  if (static_cast<Index>(mats.size()) != coeffs.size()) {
    throw std::invalid_argument("lincomb: coefficient count mismatch");
  }
  if (mats.empty()) return CMatrix::Zero(0, 0);
  CMatrix out = CMatrix::Zero(mats.front().rows(), mats.front().cols());
  for (size_t k = 0; k < mats.size(); ++k) {
    out += coeffs(static_cast<Index>(k)) * mats[k];
  }
  return out;
}

CMatrix stack_vectorized(const std::vector<CMatrix>& mats) {
  if (mats.empty()) return CMatrix::Zero(0, 0);
  const Index len = mats.front().size();
  CMatrix out(len, static_cast<Index>(mats.size()));
  for (size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].size() != len) {
      throw std::invalid_argument("stack_vectorized: unequal matrix sizes");
    }
    out.col(static_cast<Index>(k)) = vec(mats[k]);
  }
  return out;
}

}  // namespace alloyrep
