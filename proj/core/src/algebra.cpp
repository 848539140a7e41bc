#include "alloyrep/algebra.hpp"

namespace alloyrep {

namespace {

// Λ² inputs stay desk-scale: dim 12 gives N = 66.
constexpr Index kMaxExpandDim = 12;
// The double-Λ² construction grows as N(N-1)/2 choose 2; dim 8 is the
// largest input that stays within a few tens of megabytes.
constexpr Index kMaxDoubleWedgeDim = 8;
// Large enough to hold Λ² of the largest expandable algebra.
constexpr Index kMaxStoredDim = 66;

}  // namespace

PairBasis PairBasis::of(Index n) {
  if (n < 0) throw std::invalid_argument("PairBasis: negative dimension");
  PairBasis pb;
  pb.dim = n;
  pb.pairs.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      pb.pairs.emplace_back(i, j);
    }
  }
  return pb;
}

CVector wedge(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("wedge: vectors of unequal length");
  }
  const Index n = u.size();
  CVector out(n * (n - 1) / 2);
  Index p = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      out(p++) = u(i) * v(j) - u(j) * v(i);
    }
  }
  return out;
}

AntiAlgebra::AntiAlgebra(Index dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)), pair_basis_(PairBasis::of(dim)) {
  if (dim < 0 || dim > kMaxStoredDim) {
    throw std::invalid_argument("AntiAlgebra: dimension out of range");
  }
  if (names_.empty()) {
    for (Index i = 0; i < dim; ++i) names_.push_back("x" + std::to_string(i));
  }
  if (static_cast<Index>(names_.size()) != dim) {
    throw std::invalid_argument("AntiAlgebra: wrong number of names");
  }
  table_.assign(static_cast<size_t>(pair_basis_.size()), CVector::Zero(dim));
}

const CVector& AntiAlgebra::basis_bracket(Index i, Index j) const {
  return table_[static_cast<size_t>(pair_basis_.index(i, j))];
}

const CVector& AntiAlgebra::basis_bracket(Index pair_index) const {
  return table_.at(static_cast<size_t>(pair_index));
}

void AntiAlgebra::set_basis_bracket(Index i, Index j, CVector out) {
  if (out.size() != dim_) {
    throw std::invalid_argument("AntiAlgebra: bracket value of wrong length");
  }
  if (!all_finite(out)) {
    throw std::invalid_argument("AntiAlgebra: bracket value not finite");
  }
  table_[static_cast<size_t>(pair_basis_.index(i, j))] = std::move(out);
}

CVector AntiAlgebra::eval(const CVector& x, const CVector& y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw std::invalid_argument("bracket_eval: dimension mismatch");
  }
  CVector out = CVector::Zero(dim_);
  for (Index p = 0; p < pair_basis_.size(); ++p) {
    const auto [i, j] = pair_basis_.pairs[static_cast<size_t>(p)];
    const Complex coeff = x(i) * y(j) - x(j) * y(i);
    if (coeff != 0.0) {
      out += coeff * table_[static_cast<size_t>(p)];
    }
  }
  return out;
}

bool AntiAlgebra::is_zero() const {
  for (const CVector& v : table_) {
    if (v.norm() != 0.0) return false;
  }
  return true;
}

QuaternaryAlgebra::QuaternaryAlgebra(Index dim)
    : dim_(dim),
      pair_basis_(PairBasis::of(dim)),
      pair_pair_basis_(PairBasis::of(PairBasis::of(dim).size())) {
  if (dim < 0 || dim > kMaxStoredDim) {
    throw std::invalid_argument("QuaternaryAlgebra: dimension out of range");
  }
  tensor_ = CMatrix::Zero(dim, pair_pair_basis_.size());
}

QuaternaryAlgebra::QuaternaryAlgebra(Index dim, CMatrix tensor)
    : QuaternaryAlgebra(dim) {
  if (tensor.rows() != dim || tensor.cols() != pair_pair_basis_.size()) {
    throw std::invalid_argument("QuaternaryAlgebra: tensor of wrong shape");
  }
  if (!all_finite(tensor)) {
    throw std::invalid_argument("QuaternaryAlgebra: tensor not finite");
  }
  tensor_ = std::move(tensor);
}

CVector QuaternaryAlgebra::eval(const CVector& a, const CVector& b,
                                const CVector& c, const CVector& d) const {
  if (a.size() != dim_ || b.size() != dim_ || c.size() != dim_ ||
      d.size() != dim_) {
    throw std::invalid_argument("QuaternaryAlgebra::eval: dimension mismatch");
  }
  return eval_pairs(wedge(a, b), wedge(c, d));
}

CVector QuaternaryAlgebra::eval_pairs(const CVector& w1,
                                      const CVector& w2) const {
  if (w1.size() != pair_dim() || w2.size() != pair_dim()) {
    throw std::invalid_argument(
        "QuaternaryAlgebra::eval_pairs: dimension mismatch");
  }
  return tensor_ * wedge(w1, w2);
}

bool QuaternaryAlgebra::is_zero() const { return tensor_.norm() == 0.0; }

CVector bracket_eval(const AntiAlgebra& g, const CVector& x, const CVector& y) {
  return g.eval(x, y);
}

AntiAlgebra wedge_square_algebra(const AntiAlgebra& g) {
  if (g.dim() > kMaxExpandDim) {
    throw std::invalid_argument("wedge_square_algebra: dimension above 12");
  }
  const PairBasis& pb = g.pair_basis();
  const Index big_n = pb.size();
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(big_n));
  for (const auto& [i, j] : pb.pairs) {
    names.push_back(g.names()[static_cast<size_t>(i)] + "^" +
                    g.names()[static_cast<size_t>(j)]);
  }
  AntiAlgebra out(big_n, std::move(names));
  for (Index p = 0; p < big_n; ++p) {
    for (Index q = p + 1; q < big_n; ++q) {
      out.set_basis_bracket(p, q, wedge(g.basis_bracket(p), g.basis_bracket(q)));
    }
  }
  return out;
}

QuaternaryAlgebra quaternary_from_bracket(const AntiAlgebra& g) {
  if (g.dim() > kMaxExpandDim) {
    throw std::invalid_argument("quaternary_from_bracket: dimension above 12");
  }
  QuaternaryAlgebra q(g.dim());
  const PairBasis& ppb = q.pair_pair_basis();
  for (Index c = 0; c < ppb.size(); ++c) {
    const auto [p1, p2] = ppb.pairs[static_cast<size_t>(c)];
    q.tensor().col(c) = g.eval(g.basis_bracket(p1), g.basis_bracket(p2));
  }
  return q;
}

const QuaternaryAlgebra& SixQuaternaryOps::op(int i, int j, int k) const {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > 2 || k < 1 || k > 2) {
    throw std::invalid_argument("SixQuaternaryOps::op: indices must be 1 or 2");
  }
  const int pair_slot = (i == 1) ? (j == 1 ? 0 : 1) : 2;
  return ops[static_cast<size_t>(pair_slot * 2 + (k - 1))];
}

SixQuaternaryOps six_quaternary_ops(Index g_dim, const AntiAlgebra& b1,
                                    const AntiAlgebra& b2) {
  if (b1.dim() != g_dim || b2.dim() != g_dim) {
    throw std::invalid_argument("six_quaternary_ops: dimension mismatch");
  }
  if (g_dim > kMaxExpandDim) {
    throw std::invalid_argument("six_quaternary_ops: dimension above 12");
  }
  const std::array<const AntiAlgebra*, 2> b{&b1, &b2};
  SixQuaternaryOps out;
  int slot = 0;
  for (const auto& [i, j] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 2}}) {
    for (int k = 1; k <= 2; ++k) {
      QuaternaryAlgebra q(g_dim);
      const PairBasis& ppb = q.pair_pair_basis();
      for (Index c = 0; c < ppb.size(); ++c) {
        const auto [p1, p2] = ppb.pairs[static_cast<size_t>(c)];
        const CVector& ab_i = b[static_cast<size_t>(i - 1)]->basis_bracket(p1);
        const CVector& cd_j = b[static_cast<size_t>(j - 1)]->basis_bracket(p2);
        const CVector& ab_j = b[static_cast<size_t>(j - 1)]->basis_bracket(p1);
        const CVector& cd_i = b[static_cast<size_t>(i - 1)]->basis_bracket(p2);
        const AntiAlgebra& outer = *b[static_cast<size_t>(k - 1)];
        q.tensor().col(c) = outer.eval(ab_i, cd_j) + outer.eval(ab_j, cd_i);
      }
      out.ops[static_cast<size_t>(slot++)] = std::move(q);
    }
  }
  return out;
}

QuaternaryAlgebra quaternary_wedge_square(const QuaternaryAlgebra& q) {
  if (q.dim() > kMaxDoubleWedgeDim) {
    throw std::invalid_argument("quaternary_wedge_square: dimension above 8");
  }
  QuaternaryAlgebra out(q.pair_dim());
  const PairBasis& ppb = out.pair_pair_basis();
  for (Index c = 0; c < ppb.size(); ++c) {
    const auto [r1, r2] = ppb.pairs[static_cast<size_t>(c)];
    out.tensor().col(c) = wedge(CVector(q.tensor().col(r1)),
                                CVector(q.tensor().col(r2)));
  }
  return out;
}

CMatrix quaternary_extension_hom(const QuaternaryAlgebra& q) {
  return q.tensor();
}

std::int64_t dim_Q(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("dim_Q: n must be positive");
  return (n + 1) * n * n * (n - 1) * (n - 2) / 8;
}

std::int64_t dim_graph_RA(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("dim_graph_RA: n, m must be positive");
  }
  return n * m * (n + m - 2) / 2;
}

}  // namespace alloyrep
