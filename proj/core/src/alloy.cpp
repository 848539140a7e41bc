#include "alloyrep/alloy.hpp"

#include "alloyrep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alloyrep {

Alloy::Alloy(Index dim, std::vector<std::vector<Index>> parts) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("Alloy: negative dimension");
  part_of_.assign(static_cast<size_t>(dim), -1);
  local_pos_.assign(static_cast<size_t>(dim), -1);
  for (auto& idx : parts) {
    std::sort(idx.begin(), idx.end());
    Part p;
    for (size_t k = 0; k < idx.size(); ++k) {
      const Index g = idx[k];
      if (g < 0 || g >= dim) {
        throw std::invalid_argument("Alloy: part index out of range");
      }
      if (part_of_[static_cast<size_t>(g)] >= 0) {
        throw std::invalid_argument("Alloy: parts not disjoint");
      }
      part_of_[static_cast<size_t>(g)] = static_cast<Index>(parts_.size());
      local_pos_[static_cast<size_t>(g)] = static_cast<Index>(k);
    }
    p.indices = idx;
    p.pair_basis = PairBasis::of(static_cast<Index>(idx.size()));
    p.table.assign(static_cast<size_t>(p.pair_basis.size()), CVector::Zero(dim));
    parts_.push_back(std::move(p));
  }
  for (Index g = 0; g < dim; ++g) {
    if (part_of_[static_cast<size_t>(g)] < 0) {
      throw std::invalid_argument("Alloy: parts do not cover the space");
    }
  }
}

Index Alloy::part_of(Index global) const {
  if (global < 0 || global >= dim_) {
    throw std::invalid_argument("Alloy: basis index out of range");
  }
  return part_of_[static_cast<size_t>(global)];
}

bool Alloy::in_domain(Index gi, Index gj) const {
  return gi != gj && part_of(gi) == part_of(gj);
}

std::pair<Index, Index> Alloy::locate(Index gi, Index gj) const {
  if (!in_domain(gi, gj)) {
    throw std::invalid_argument("Alloy: pair outside the bracket domain W");
  }
  if (gi > gj) std::swap(gi, gj);
  const Index p = part_of(gi);
  const Index a = local_pos_[static_cast<size_t>(gi)];
  const Index b = local_pos_[static_cast<size_t>(gj)];
  return {p, parts_[static_cast<size_t>(p)].pair_basis.index(a, b)};
}

const CVector& Alloy::basis_bracket(Index gi, Index gj) const {
  const auto [p, pair] = locate(gi, gj);
  return parts_[static_cast<size_t>(p)].table[static_cast<size_t>(pair)];
}

void Alloy::set_basis_bracket(Index gi, Index gj, CVector out) {
  if (gi > gj) {
    set_basis_bracket(gj, gi, -out);
    return;
  }
  const auto [p, pair] = locate(gi, gj);
  if (out.size() != dim_) {
    throw std::invalid_argument("Alloy: bracket value of wrong length");
  }
  if (!all_finite(out)) {
    throw std::invalid_argument("Alloy: bracket value not finite");
  }
  parts_[static_cast<size_t>(p)].table[static_cast<size_t>(pair)] = std::move(out);
}

bool Alloy::well_formed(std::string* why) const {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  Index covered = 0;
  for (const Part& p : parts_) {
    covered += static_cast<Index>(p.indices.size());
    if (p.table.size() != static_cast<size_t>(p.pair_basis.size())) {
      return fail("bracket table size mismatch");
    }
    for (const CVector& v : p.table) {
      if (v.size() != dim_) return fail("bracket value of wrong length");
      if (!v.allFinite()) return fail("bracket value not finite");
    }
  }
  if (covered != dim_) return fail("parts do not partition the space");
  return true;
}

bool same_alloy(const Alloy& a, const Alloy& b, const ToleranceConfig& tol) {
  if (a.dim() != b.dim() || a.part_count() != b.part_count()) return false;
  for (Index p = 0; p < a.part_count(); ++p) {
    if (a.part(p).indices != b.part(p).indices) return false;
    for (size_t k = 0; k < a.part(p).table.size(); ++k) {
      const CVector diff = a.part(p).table[k] - b.part(p).table[k];
      if (diff.lpNorm<Eigen::Infinity>() > tol.residual_tol) return false;
    }
  }
  return true;
}

void CrossProjRep::validate() const {
  if (static_cast<Index>(T1.size()) != g1.dim() ||
      static_cast<Index>(T2.size()) != g2.dim()) {
    throw std::invalid_argument("CrossProjRep: one matrix per basis element");
  }
  for (const auto* side : {&T1, &T2}) {
    for (const CMatrix& m : *side) {
      if (m.rows() != space_dim || m.cols() != space_dim) {
        throw std::invalid_argument("CrossProjRep: matrix of wrong size");
      }
      if (!all_finite(m)) {
        throw std::invalid_argument("CrossProjRep: matrix not finite");
      }
    }
  }
}

namespace {

// One direction of the cross-projective congruence: defects of `own` must
// land in the span of `other`'s images.
void check_one_side(const AntiAlgebra& own, const std::vector<CMatrix>& own_mats,
                    const std::vector<CMatrix>& other_mats, int part_label,
                    const ToleranceConfig& tol, CrossProjReport& report,
                    Index space_dim) {
  const CMatrix other_stack = other_mats.empty()
                                  ? CMatrix::Zero(space_dim * space_dim, 0)
                                  : stack_vectorized(other_mats);
  const Subspace other_span = span_close(other_stack, tol);
  const bool injective =
      matrix_rank(other_stack, tol) == static_cast<Index>(other_mats.size());
  for (Index i = 0; i < own.dim(); ++i) {
    for (Index j = i + 1; j < own.dim(); ++j) {
      const CMatrix defect = commutator(own_mats[static_cast<size_t>(i)],
                                        own_mats[static_cast<size_t>(j)]) -
                             lincomb(own_mats, own.basis_bracket(i, j));
      const SpanQuery q = span_contains(other_span, vec(defect), tol);
      report.worst_residual = std::max(report.worst_residual, q.residual);
      report.ok = report.ok && q.contained;
      if (injective) {
        report.defect_coords.push_back(
            {part_label, i, j, lstsq(other_stack, vec(defect), tol)});
      }
    }
  }
}

}  // namespace

CrossProjReport cross_projective_check(const CrossProjRep& r,
                                       const ToleranceConfig& tol) {
  r.validate();
  CrossProjReport report;
  report.ok = true;
  check_one_side(r.g1, r.T1, r.T2, 1, tol, report, r.space_dim);
  check_one_side(r.g2, r.T2, r.T1, 2, tol, report, r.space_dim);
  return report;
}

TracelessResult traceless_normalize(const CrossProjRep& r,
                                    const ToleranceConfig& tol) {
  r.validate();
  TracelessResult result;
  result.rep = r;
  const double d = static_cast<double>(r.space_dim);
  const CMatrix eye = CMatrix::Identity(r.space_dim, r.space_dim);
  for (auto* side : {&result.rep.T1, &result.rep.T2}) {
    for (CMatrix& m : *side) {
      m -= (m.trace() / d) * eye;
    }
  }
  result.recheck = cross_projective_check(result.rep, tol);
  return result;
}

namespace {

// Defect coordinates for all pairs of one side; fills both the alloy bracket
// and the corresponding lambda matrix.
void build_one_side(const AntiAlgebra& own, const std::vector<CMatrix>& own_mats,
                    const std::vector<CMatrix>& other_mats,
                    const CMatrix& other_stack, Index own_offset,
                    Index other_offset, Index total_dim,
                    const ToleranceConfig& tol, Alloy& alloy, CMatrix& lam) {
  const Index m = static_cast<Index>(other_mats.size());
  lam = CMatrix::Zero(m, own.pair_basis().size());
  for (Index i = 0; i < own.dim(); ++i) {
    for (Index j = i + 1; j < own.dim(); ++j) {
      const CMatrix defect = commutator(own_mats[static_cast<size_t>(i)],
                                        own_mats[static_cast<size_t>(j)]) -
                             lincomb(own_mats, own.basis_bracket(i, j));
      const CVector coords = lstsq(other_stack, vec(defect), tol);
      const double residual =
          m == 0 ? vec(defect).norm()
                 : (other_stack * coords - vec(defect)).norm();
      if (residual > tol.residual_tol * std::max(1.0, vec(defect).norm())) {
        throw std::runtime_error("not cross-projective");
      }
      CVector bracket = CVector::Zero(total_dim);
      bracket.segment(own_offset, own.dim()) = own.basis_bracket(i, j);
      if (m > 0) bracket.segment(other_offset, m) = coords;
      alloy.set_basis_bracket(own_offset + i, own_offset + j, std::move(bracket));
      if (m > 0) lam.col(own.pair_basis().index(i, j)) = coords;
    }
  }
}

}  // namespace

AlloyConstruction alloy_from_cross_projective(const CrossProjRep& r,
                                              const ToleranceConfig& tol) {
  r.validate();
  const Index n = r.g1.dim();
  const Index m = r.g2.dim();
  const Index d2 = r.space_dim * r.space_dim;
  const CMatrix stack1 =
      r.T1.empty() ? CMatrix::Zero(d2, 0) : stack_vectorized(r.T1);
  const CMatrix stack2 =
      r.T2.empty() ? CMatrix::Zero(d2, 0) : stack_vectorized(r.T2);
  if (matrix_rank(stack1, tol) != n || matrix_rank(stack2, tol) != m) {
    throw std::runtime_error("not strict");
  }
  CMatrix joint(d2, n + m);
  joint << stack1, stack2;
  if (matrix_rank(joint, tol) != n + m) {
    throw std::runtime_error("not transversal");
  }

  std::vector<Index> part1, part2;
  for (Index i = 0; i < n; ++i) part1.push_back(i);
  for (Index i = 0; i < m; ++i) part2.push_back(n + i);
  AlloyConstruction out{Alloy(n + m, {part1, part2}), {}};
  build_one_side(r.g1, r.T1, r.T2, stack2, 0, n, n + m, tol, out.alloy,
                 out.factorization.lam1);
  build_one_side(r.g2, r.T2, r.T1, stack1, n, 0, n + m, tol, out.alloy,
                 out.factorization.lam2);
  return out;
}

AlloyFactorization extract_factorization(const Alloy& a) {
  if (a.part_count() != 2) {
    throw std::invalid_argument("extract_factorization: alloy must have two parts");
  }
  const auto& p1 = a.part(0);
  const auto& p2 = a.part(1);
  const Index n = static_cast<Index>(p1.indices.size());
  const Index m = static_cast<Index>(p2.indices.size());
  AlloyFactorization f;
  f.lam1 = CMatrix::Zero(m, p1.pair_basis.size());
  f.lam2 = CMatrix::Zero(n, p2.pair_basis.size());
  for (Index c = 0; c < p1.pair_basis.size(); ++c) {
    const CVector& full = p1.table[static_cast<size_t>(c)];
    for (Index k = 0; k < m; ++k) {
      f.lam1(k, c) = full(p2.indices[static_cast<size_t>(k)]);
    }
  }
  for (Index c = 0; c < p2.pair_basis.size(); ++c) {
    const CVector& full = p2.table[static_cast<size_t>(c)];
    for (Index k = 0; k < n; ++k) {
      f.lam2(k, c) = full(p1.indices[static_cast<size_t>(k)]);
    }
  }
  return f;
}

std::pair<QuaternaryAlgebra, QuaternaryAlgebra> quaternary_from_alloy(
    const Alloy& a) {
  const AlloyFactorization f = extract_factorization(a);
  const Index n = f.lam2.rows();
  const Index m = f.lam1.rows();
  QuaternaryAlgebra q1(n), q2(m);
  for (Index c = 0; c < q1.pair_pair_basis().size(); ++c) {
    const auto [p, q] = q1.pair_pair_basis().pairs[static_cast<size_t>(c)];
    q1.tensor().col(c) =
        f.lam2 * wedge(CVector(f.lam1.col(p)), CVector(f.lam1.col(q)));
  }
  for (Index c = 0; c < q2.pair_pair_basis().size(); ++c) {
    const auto [p, q] = q2.pair_pair_basis().pairs[static_cast<size_t>(c)];
    q2.tensor().col(c) =
        f.lam1 * wedge(CVector(f.lam2.col(p)), CVector(f.lam2.col(q)));
  }
  return {std::move(q1), std::move(q2)};
}

namespace {

void require_factorization_shapes(const QuaternaryAlgebra& q1,
                                  const QuaternaryAlgebra& q2,
                                  const AlloyFactorization& f) {
  if (f.lam1.rows() != q2.dim() || f.lam1.cols() != q1.pair_dim() ||
      f.lam2.rows() != q1.dim() || f.lam2.cols() != q2.pair_dim()) {
    throw std::invalid_argument("alloyability: factorization of wrong shape");
  }
}

// Worst-entry residual of both factorization identities, plus the scale of
// the entries met along the way. Non-finite maps (a diverged search iterate)
// count as infinite residual; a plain max would silently drop NaN.
std::pair<double, double> factorization_residual(const QuaternaryAlgebra& q1,
                                                 const QuaternaryAlgebra& q2,
                                                 const AlloyFactorization& f) {
  if (!f.lam1.allFinite() || !f.lam2.allFinite()) {
    return {std::numeric_limits<double>::infinity(), 1.0};
  }
  double worst = 0.0;
  double scale = 1.0;
  auto account = [&](const CVector& lhs, const CVector& rhs) {
    const double r = (lhs - rhs).lpNorm<Eigen::Infinity>();
    if (!std::isfinite(r)) {
      worst = std::numeric_limits<double>::infinity();
      return;
    }
    worst = std::max(worst, r);
    scale = std::max({scale, lhs.lpNorm<Eigen::Infinity>(),
                      rhs.lpNorm<Eigen::Infinity>()});
  };
  for (Index c = 0; c < q1.pair_pair_basis().size(); ++c) {
    const auto [p, q] = q1.pair_pair_basis().pairs[static_cast<size_t>(c)];
    account(CVector(q1.tensor().col(c)),
            f.lam2 * wedge(CVector(f.lam1.col(p)), CVector(f.lam1.col(q))));
  }
  for (Index c = 0; c < q2.pair_pair_basis().size(); ++c) {
    const auto [p, q] = q2.pair_pair_basis().pairs[static_cast<size_t>(c)];
    account(CVector(q2.tensor().col(c)),
            f.lam1 * wedge(CVector(f.lam2.col(p)), CVector(f.lam2.col(q))));
  }
  return {worst, scale};
}

}  // namespace

AlloyabilityReport alloyability_check(const QuaternaryAlgebra& q1,
                                      const QuaternaryAlgebra& q2,
                                      const AlloyFactorization& f,
                                      const ToleranceConfig& tol) {
  require_factorization_shapes(q1, q2, f);
  const auto [worst, scale] = factorization_residual(q1, q2, f);
  return {worst <= tol.residual_tol * scale, worst};
}

CanonicalPartner canonical_partner(const QuaternaryAlgebra& q1) {
  CanonicalPartner out;
  out.partner = quaternary_wedge_square(q1);
  out.factorization.lam1 = CMatrix::Identity(q1.pair_dim(), q1.pair_dim());
  out.factorization.lam2 = q1.tensor();
  return out;
}

namespace {

// Least-squares lam2 with lam1 held fixed: stack the first identity over all
// pair-of-pair columns and solve lam2 * W = Q1 in the Frobenius norm.
CMatrix solve_lam2(const QuaternaryAlgebra& q1, const CMatrix& lam1,
                   Index n2_pairs, const ToleranceConfig& tol) {
  const Index cols = q1.pair_pair_basis().size();
  CMatrix w(n2_pairs, cols);
  for (Index c = 0; c < cols; ++c) {
    const auto [p, q] = q1.pair_pair_basis().pairs[static_cast<size_t>(c)];
    w.col(c) = wedge(CVector(lam1.col(p)), CVector(lam1.col(q)));
  }
  const CMatrix solved =
      lstsq(CMatrix(w.transpose()), CMatrix(q1.tensor().transpose()), tol);
  return solved.transpose();
}

// The joint refinement treats both identities as one real nonlinear
// least-squares system in the stacked re/im entries of the two maps.
Eigen::VectorXd pack_maps(const AlloyFactorization& f) {
  Eigen::VectorXd x(2 * (f.lam1.size() + f.lam2.size()));
  Index k = 0;
  for (const CMatrix* lam : {&f.lam1, &f.lam2}) {
    for (Index j = 0; j < lam->cols(); ++j) {
      for (Index i = 0; i < lam->rows(); ++i) {
        x(k++) = (*lam)(i, j).real();
        x(k++) = (*lam)(i, j).imag();
      }
    }
  }
  return x;
}

void unpack_maps(const Eigen::VectorXd& x, AlloyFactorization& f) {
  Index k = 0;
  for (CMatrix* lam : {&f.lam1, &f.lam2}) {
    for (Index j = 0; j < lam->cols(); ++j) {
      for (Index i = 0; i < lam->rows(); ++i) {
        (*lam)(i, j) = Complex(x(k), x(k + 1));
        k += 2;
      }
    }
  }
}

Eigen::VectorXd stacked_residual(const QuaternaryAlgebra& q1,
                                 const QuaternaryAlgebra& q2,
                                 const AlloyFactorization& f) {
  Eigen::VectorXd out(2 * (q1.dim() * q1.pair_pair_basis().size() +
                           q2.dim() * q2.pair_pair_basis().size()));
  Index k = 0;
  auto emit = [&](const CVector& lhs, const CVector& rhs) {
    for (Index i = 0; i < lhs.size(); ++i) {
      const Complex d = lhs(i) - rhs(i);
      out(k++) = d.real();
      out(k++) = d.imag();
    }
  };
  for (Index c = 0; c < q1.pair_pair_basis().size(); ++c) {
    const auto [p, q] = q1.pair_pair_basis().pairs[static_cast<size_t>(c)];
    emit(CVector(q1.tensor().col(c)),
         f.lam2 * wedge(CVector(f.lam1.col(p)), CVector(f.lam1.col(q))));
  }
  for (Index c = 0; c < q2.pair_pair_basis().size(); ++c) {
    const auto [p, q] = q2.pair_pair_basis().pairs[static_cast<size_t>(c)];
    emit(CVector(q2.tensor().col(c)),
         f.lam1 * wedge(CVector(f.lam2.col(p)), CVector(f.lam2.col(q))));
  }
  return out;
}

// Damped Gauss-Newton (Levenberg-Marquardt) on the joint system with a
// forward-difference Jacobian. The alternation alone stalls or diverges on
// generic instances; started from its best iterate, this pulls into nearby
// solutions.
void joint_refine(const QuaternaryAlgebra& q1, const QuaternaryAlgebra& q2,
                  AlloyFactorization& f, int max_iters) {
  if (!f.lam1.allFinite() || !f.lam2.allFinite()) return;
  Eigen::VectorXd x = pack_maps(f);
  const Eigen::Index dim = x.size();
  if (dim == 0) return;
  AlloyFactorization work = f;
  Eigen::VectorXd r = stacked_residual(q1, q2, work);
  double mu = 1e-3;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::MatrixXd jac(r.size(), dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double h = 1e-7 * (1.0 + std::abs(x(k)));
      Eigen::VectorXd shifted = x;
      shifted(k) += h;
      unpack_maps(shifted, work);
      jac.col(k) = (stacked_residual(q1, q2, work) - r) / h;
    }
    const Eigen::MatrixXd gram = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 8; ++tries) {
      const Eigen::MatrixXd damped =
          gram + mu * Eigen::MatrixXd::Identity(dim, dim);
      const Eigen::VectorXd candidate = x - damped.ldlt().solve(grad);
      unpack_maps(candidate, work);
      const Eigen::VectorXd rn = stacked_residual(q1, q2, work);
      if (rn.squaredNorm() < r.squaredNorm()) {
        x = candidate;
        r = rn;
        mu = std::max(mu * 0.3, 1e-12);
        stepped = true;
        break;
      }
      mu *= 4.0;
    }
    if (!stepped) break;
    if (r.lpNorm<Eigen::Infinity>() <= 1e-14) break;
  }
  unpack_maps(x, f);
}

}  // namespace

SearchResult alloyability_search(const QuaternaryAlgebra& q1,
                                 const QuaternaryAlgebra& q2,
                                 const SearchBudget& budget,
                                 const ToleranceConfig& tol) {
  const Index n = q1.dim();
  const Index m = q2.dim();
  const Index n1_pairs = q1.pair_dim();
  const Index n2_pairs = q2.pair_dim();

  SearchResult result;
  result.best_residual = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < budget.restarts; ++restart) {
    AlloyFactorization f;
    if (restart == 0) {
      f.lam1 = CMatrix::Zero(m, n1_pairs);
      f.lam2 = CMatrix::Zero(n, n2_pairs);
    } else if (restart == 1) {
      // Warm start shaped like the canonical wedge factorization; exact for
      // partners produced by the Lambda^2 construction.
      f.lam1 = CMatrix::Identity(m, n1_pairs);
      f.lam2 = CMatrix::Zero(n, n2_pairs);
    } else {
      Rng rng(Rng::derive(budget.seed, static_cast<std::uint64_t>(restart)));
      f.lam1 = rng.matrix(m, n1_pairs);
      f.lam2 = rng.matrix(n, n2_pairs);
    }
    // The raw alternation residual may oscillate; the trace records the best
    // residual reached so far, and the best iterate is what the restart keeps.
    AlloyFactorization restart_best = f;
    std::vector<double> trace{factorization_residual(q1, q2, f).first};
    for (int it = 0; it < budget.iters; ++it) {
      const AlloyFactorization previous = f;
      f.lam2 = solve_lam2(q1, f.lam1, n2_pairs, tol);
      f.lam1 = solve_lam2(q2, f.lam2, n1_pairs, tol);
      const double r = factorization_residual(q1, q2, f).first;
      if (r < trace.back()) {
        restart_best = f;
        trace.push_back(r);
      } else {
        trace.push_back(trace.back());
      }
      if (trace.back() <= 1e-15) break;
      if (!std::isfinite(r)) break;  // diverged
      const double moved = (f.lam1 - previous.lam1).norm() +
                           (f.lam2 - previous.lam2).norm();
      if (moved == 0.0) break;  // alternation fixed point
    }
    if (trace.back() > 1e-15) {
      AlloyFactorization refined = restart_best;
      joint_refine(q1, q2, refined, 60);
      const double r = factorization_residual(q1, q2, refined).first;
      if (r < trace.back()) {
        restart_best = std::move(refined);
        trace.push_back(r);
      }
    }
    if (trace.back() < result.best_residual) {
      result.best_residual = trace.back();
      result.best = restart_best;
      result.best_restart = restart;
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

Alloy wedge_square_alloy(const AntiAlgebra& g, const QuaternaryAlgebra& q) {
  if (g.dim() != q.dim()) {
    throw std::invalid_argument("wedge_square_alloy: dimension mismatch");
  }
  const Index n = g.dim();
  const Index big_n = g.pair_basis().size();
  std::vector<Index> part1, part2;
  for (Index i = 0; i < n; ++i) part1.push_back(i);
  for (Index i = 0; i < big_n; ++i) part2.push_back(n + i);
  Alloy alloy(n + big_n, {part1, part2});

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      CVector bracket = CVector::Zero(n + big_n);
      bracket.head(n) = g.basis_bracket(i, j);
      bracket(n + g.pair_basis().index(i, j)) = 1.0;
      alloy.set_basis_bracket(i, j, std::move(bracket));
    }
  }
  const AntiAlgebra wedge_alg = wedge_square_algebra(g);
  for (Index p = 0; p < big_n; ++p) {
    for (Index r = p + 1; r < big_n; ++r) {
      CVector bracket = CVector::Zero(n + big_n);
      bracket.head(n) = q.tensor().col(q.pair_pair_basis().index(p, r));
      bracket.tail(big_n) = wedge_alg.basis_bracket(p, r);
      alloy.set_basis_bracket(n + p, n + r, std::move(bracket));
    }
  }
  return alloy;
}

}  // namespace alloyrep
