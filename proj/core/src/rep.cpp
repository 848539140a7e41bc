#include "alloyrep/rep.hpp"

#include "alloyrep/rng.hpp"

#include <algorithm>
#include <cmath>

namespace alloyrep {

void AlloyRep::validate_shapes() const {
  if (static_cast<Index>(mats.size()) != alloy.dim()) {
    throw std::invalid_argument("AlloyRep: one matrix per alloy basis element");
  }
  for (const CMatrix& m : mats) {
    if (m.rows() != space_dim || m.cols() != space_dim) {
      throw std::invalid_argument("AlloyRep: matrix of wrong size");
    }
    if (!all_finite(m)) {
      throw std::invalid_argument("AlloyRep: matrix not finite");
    }
  }
}

CheckRepReport check_rep(const AlloyRep& r, const ToleranceConfig& tol) {
  r.validate_shapes();
  CheckRepReport report;
  report.ok = true;
  for (Index p = 0; p < r.alloy.part_count(); ++p) {
    const auto& part = r.alloy.part(p);
    for (const auto& [a, b] : part.pair_basis.pairs) {
      const Index gi = part.indices[static_cast<size_t>(a)];
      const Index gj = part.indices[static_cast<size_t>(b)];
      const CMatrix lhs = commutator(r.mats[static_cast<size_t>(gi)],
                                     r.mats[static_cast<size_t>(gj)]);
      const CMatrix rhs = lincomb(r.mats, r.alloy.basis_bracket(gi, gj));
      const double residual = (lhs - rhs).lpNorm<Eigen::Infinity>();
      const double scale = std::max({1.0, lhs.lpNorm<Eigen::Infinity>(),
                                     rhs.lpNorm<Eigen::Infinity>()});
      report.worst_residual = std::max(report.worst_residual, residual);
      report.ok = report.ok && residual <= tol.residual_tol * scale;
    }
  }
  return report;
}

namespace {

void require_same_alloy(const AlloyRep& r1, const AlloyRep& r2,
                        const ToleranceConfig& tol) {
  if (!same_alloy(r1.alloy, r2.alloy, tol)) {
    throw std::invalid_argument("alloy mismatch");
  }
}

}  // namespace

AlloyRep direct_sum(const AlloyRep& r1, const AlloyRep& r2,
                    const ToleranceConfig& tol) {
  require_same_alloy(r1, r2, tol);
  AlloyRep out{r1.alloy, {}, r1.space_dim + r2.space_dim};
  for (size_t k = 0; k < r1.mats.size(); ++k) {
    CMatrix m = CMatrix::Zero(out.space_dim, out.space_dim);
    m.topLeftCorner(r1.space_dim, r1.space_dim) = r1.mats[k];
    m.bottomRightCorner(r2.space_dim, r2.space_dim) = r2.mats[k];
    out.mats.push_back(std::move(m));
  }
  return out;
}

AlloyRep tensor_product(const AlloyRep& r1, const AlloyRep& r2,
                        const ToleranceConfig& tol) {
  require_same_alloy(r1, r2, tol);
  AlloyRep out{r1.alloy, {}, r1.space_dim * r2.space_dim};
  const CMatrix eye1 = CMatrix::Identity(r1.space_dim, r1.space_dim);
  const CMatrix eye2 = CMatrix::Identity(r2.space_dim, r2.space_dim);
  for (size_t k = 0; k < r1.mats.size(); ++k) {
    out.mats.push_back(kron(r1.mats[k], eye2) + kron(eye1, r2.mats[k]));
  }
  return out;
}

namespace {

// Orthonormal span of vectorized d x d matrices that grows one matrix at a
// time; re-orthogonalizes twice before deciding a direction is new.
class MatrixSpan {
 public:
  MatrixSpan(Index d, const ToleranceConfig& tol)
      : d_(d), basis_(d * d, 0), tol_(tol) {}

  bool add(const CMatrix& m) {
    CVector v = vec(m);
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass) {
      if (basis_.cols() > 0) v -= basis_ * (basis_.adjoint() * v);
    }
    if (v.norm() <= tol_.rank_tol * scale) return false;
    basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
    basis_.col(basis_.cols() - 1) = v / v.norm();
    elements_.push_back(unvec(basis_.col(basis_.cols() - 1), d_, d_));
    return true;
  }

  Index dim() const { return basis_.cols(); }
  const std::vector<CMatrix>& elements() const { return elements_; }
  const CMatrix& basis() const { return basis_; }

 private:
  Index d_;
  CMatrix basis_;
  std::vector<CMatrix> elements_;
  const ToleranceConfig& tol_;
};

// Closes the span under a binary operation on matrices, taking only products
// with at least one factor not yet processed.
template <typename Op>
void close_under(MatrixSpan& span, Index max_dim, Op&& op) {
  size_t processed = 0;
  while (processed < span.elements().size() && span.dim() < max_dim) {
    const size_t frontier = span.elements().size();
    for (size_t a = 0; a < frontier && span.dim() < max_dim; ++a) {
      const size_t b_start = a < processed ? processed : 0;
      for (size_t b = b_start; b < frontier && span.dim() < max_dim; ++b) {
        span.add(op(span.elements()[a], span.elements()[b]));
      }
    }
    processed = frontier;
  }
}

}  // namespace

Subspace generated_algebra(const std::vector<CMatrix>& mats,
                           const ToleranceConfig& tol) {
  Index d = 0;
  for (const CMatrix& m : mats) {
    if (m.rows() != m.cols() || (d != 0 && m.rows() != d)) {
      throw std::invalid_argument("generated_algebra: matrices must be square of equal size");
    }
    d = m.rows();
  }
  if (mats.empty()) d = 1;  // scalars
  MatrixSpan span(d, tol);
  span.add(CMatrix::Identity(d, d));
  for (const CMatrix& m : mats) span.add(m);
  close_under(span, d * d, [](const CMatrix& a, const CMatrix& b) { return a * b; });
  return Subspace{d * d, span.basis()};
}

IrreducibilityResult is_irreducible(const AlloyRep& r, const ToleranceConfig& tol) {
  if (!check_rep(r, tol).ok) {
    throw std::invalid_argument("is_irreducible: invalid representation");
  }
  const Index dim = generated_algebra(r.mats, tol).dim();
  return {dim == r.space_dim * r.space_dim, dim};
}

Subspace commutant(const AlloyRep& r, const ToleranceConfig& tol) {
  r.validate_shapes();
  const Index d = r.space_dim;
  if (r.mats.empty()) {
    return Subspace{d * d, CMatrix::Identity(d * d, d * d)};
  }
  const CMatrix eye = CMatrix::Identity(d, d);
  CMatrix system(static_cast<Index>(r.mats.size()) * d * d, d * d);
  for (size_t k = 0; k < r.mats.size(); ++k) {
    system.middleRows(static_cast<Index>(k) * d * d, d * d) =
        kron(r.mats[k].transpose(), eye) - kron(eye, r.mats[k]);
  }
  return nullspace(system, tol);
}

namespace {

Decomposition decompose_impl(const AlloyRep& r, Rng& rng,
                             const ToleranceConfig& tol) {
  const Index d = r.space_dim;
  const Subspace comm = commutant(r, tol);
  if (comm.dim() <= 1) {
    return {{r}, CMatrix::Identity(d, d)};
  }
  constexpr int kMaxDraws = 20;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const CMatrix m = unvec(comm.basis * rng.vector(comm.dim()), d, d);
    std::vector<EigenCluster> clusters;
    try {
      clusters = eigen_split(m, tol);
    } catch (const std::runtime_error&) {
      continue;  // defective draw, resample
    }
    if (clusters.size() < 2) continue;
    Decomposition out;
    out.basis = CMatrix::Zero(d, d);
    Index col = 0;
    for (const EigenCluster& cluster : clusters) {
      const CMatrix& q = cluster.space.basis;
      AlloyRep sub{r.alloy, {}, q.cols()};
      for (const CMatrix& mat : r.mats) {
        sub.mats.push_back(q.adjoint() * mat * q);
      }
      Decomposition rec = decompose_impl(sub, rng, tol);
      for (AlloyRep& comp : rec.components) {
        out.components.push_back(std::move(comp));
      }
      out.basis.middleCols(col, q.cols()) = q * rec.basis;
      col += q.cols();
    }
    return out;
  }
  throw std::runtime_error("decomposition failed");
}

}  // namespace

Decomposition decompose(const AlloyRep& r, std::uint64_t seed,
                        const ToleranceConfig& tol) {
  if (!check_rep(r, tol).ok) {
    throw std::invalid_argument("decompose: invalid representation");
  }
  Rng rng(seed);
  return decompose_impl(r, rng, tol);
}

Subspace intertwiner_space(const AlloyRep& r1, const AlloyRep& r2,
                           const ToleranceConfig& tol) {
  require_same_alloy(r1, r2, tol);
  const Index d1 = r1.space_dim;
  const Index d2 = r2.space_dim;
  const CMatrix eye1 = CMatrix::Identity(d1, d1);
  const CMatrix eye2 = CMatrix::Identity(d2, d2);
  if (r1.mats.empty()) {
    return Subspace{d1 * d2, CMatrix::Identity(d1 * d2, d1 * d2)};
  }
  CMatrix system(static_cast<Index>(r1.mats.size()) * d1 * d2, d1 * d2);
  for (size_t k = 0; k < r1.mats.size(); ++k) {
    system.middleRows(static_cast<Index>(k) * d1 * d2, d1 * d2) =
        kron(r1.mats[k].transpose(), eye2) - kron(eye1, r2.mats[k]);
  }
  return nullspace(system, tol);
}

bool are_isomorphic(const AlloyRep& r1, const AlloyRep& r2, std::uint64_t seed,
                    const ToleranceConfig& tol) {
  if (!check_rep(r1, tol).ok || !check_rep(r2, tol).ok) {
    throw std::invalid_argument("are_isomorphic: invalid representation");
  }
  if (r1.space_dim != r2.space_dim) return false;
  const Subspace iw = intertwiner_space(r1, r2, tol);
  if (iw.dim() == 0) return false;
  Rng rng(seed);
  constexpr int kDraws = 5;
  for (int t = 0; t < kDraws; ++t) {
    const CMatrix s = unvec(iw.basis * rng.vector(iw.dim()), r2.space_dim,
                            r1.space_dim);
    if (matrix_rank(s, tol) == r1.space_dim) return true;
  }
  return false;
}

EnvelopeAvatar lie_closure(const AlloyRep& r, const ToleranceConfig& tol) {
  if (!check_rep(r, tol).ok) {
    throw std::invalid_argument("lie_closure: invalid representation");
  }
  const Index d = r.space_dim;
  MatrixSpan span(d, tol);
  for (const CMatrix& m : r.mats) span.add(m);
  close_under(span, d * d,
              [](const CMatrix& a, const CMatrix& b) { return a * b - b * a; });
  EnvelopeAvatar env;
  env.basis = span.elements();
  env.embed = CMatrix::Zero(span.dim(), static_cast<Index>(r.mats.size()));
  for (size_t k = 0; k < r.mats.size(); ++k) {
    env.embed.col(static_cast<Index>(k)) = span.basis().adjoint() * vec(r.mats[k]);
  }
  return env;
}

bool def_equivalent(const EnvelopeAvatar& e1, const AlloyRep& r1,
                    const EnvelopeAvatar& e2, const AlloyRep& r2,
                    const ToleranceConfig& tol) {
  auto contains_images = [&](const EnvelopeAvatar& e, const AlloyRep& r) {
    const Subspace span = span_close(stack_vectorized(e.basis), tol);
    for (const CMatrix& m : r.mats) {
      if (!span_contains(span, vec(m), tol).contained) return false;
    }
    return true;
  };
  if (!contains_images(e1, r1) || !contains_images(e2, r2)) {
    throw std::invalid_argument(
        "def_equivalent: envelope does not contain the representation images");
  }
  if (r1.space_dim != r2.space_dim || r1.mats.size() != r2.mats.size()) {
    return false;
  }
  for (size_t k = 0; k < r1.mats.size(); ++k) {
    if ((r1.mats[k] - r2.mats[k]).lpNorm<Eigen::Infinity>() > tol.residual_tol) {
      return false;
    }
  }
  return true;
}

}  // namespace alloyrep
