#include "alloyrep/asl2.hpp"

#include "alloyrep/rng.hpp"

#include <algorithm>
#include <numeric>

namespace alloyrep {

namespace {

CVector unit(Index dim, Index k, Complex value = 1.0) {
  CVector v = CVector::Zero(dim);
  v(k) = value;
  return v;
}

}  // namespace

AntiAlgebra sl2_algebra() {
  AntiAlgebra g(3, {"e0", "f+", "f-"});
  g.set_basis_bracket(0, 1, unit(3, 1));         // [e0,f+] = f+
  g.set_basis_bracket(0, 2, unit(3, 2, -1.0));   // [e0,f-] = -f-
  g.set_basis_bracket(1, 2, unit(3, 0, 2.0));    // [f+,f-] = 2 e0
  return g;
}

Alloy asl2_alloy() {
  Alloy a(4, {{0, 1, 2}, {3}});
  a.set_basis_bracket(0, 1, unit(4, 1));
  a.set_basis_bracket(0, 2, unit(4, 2, -1.0));
  CVector ff = unit(4, 0, 2.0);  // [f+,f-] = 2 e0 + e1
  ff(3) = 1.0;
  a.set_basis_bracket(1, 2, std::move(ff));
  return a;
}

Index Asl2Params::total_dim() const {
  return std::accumulate(dims.begin(), dims.end(), Index{0});
}

void Asl2Params::validate() const {
  if (dims.empty()) {
    throw std::invalid_argument("Asl2Params: empty block-size vector");
  }
  for (Index n : dims) {
    if (n < 1) throw std::invalid_argument("Asl2Params: block sizes must be positive");
  }
  const Index n_blocks = block_count();
  if (static_cast<Index>(A.size()) != n_blocks ||
      static_cast<Index>(B.size()) != n_blocks) {
    throw std::invalid_argument("Asl2Params: need N off-diagonal blocks");
  }
  for (Index i = 1; i <= n_blocks; ++i) {
    const CMatrix& a = A[static_cast<size_t>(i - 1)];
    const CMatrix& b = B[static_cast<size_t>(i - 1)];
    if (a.rows() != dims[static_cast<size_t>(i - 1)] ||
        a.cols() != dims[static_cast<size_t>(i)]) {
      throw std::invalid_argument("Asl2Params: A block of wrong shape");
    }
    if (b.rows() != dims[static_cast<size_t>(i)] ||
        b.cols() != dims[static_cast<size_t>(i - 1)]) {
      throw std::invalid_argument("Asl2Params: B block of wrong shape");
    }
    if (!all_finite(a) || !all_finite(b)) {
      throw std::invalid_argument("Asl2Params: block not finite");
    }
  }
}

AlloyRep build_rep(const Asl2Params& p) {
  p.validate();
  const Index d = p.total_dim();
  std::vector<Index> offset(p.dims.size() + 1, 0);
  for (size_t i = 0; i < p.dims.size(); ++i) {
    offset[i + 1] = offset[i] + p.dims[i];
  }

  CMatrix f_plus = CMatrix::Zero(d, d);
  CMatrix f_minus = CMatrix::Zero(d, d);
  CMatrix e0 = CMatrix::Zero(d, d);
  for (Index i = 0; i <= p.block_count(); ++i) {
    const Index n_i = p.dims[static_cast<size_t>(i)];
    e0.block(offset[static_cast<size_t>(i)], offset[static_cast<size_t>(i)], n_i, n_i) =
        (p.gamma - static_cast<double>(i)) * CMatrix::Identity(n_i, n_i);
  }
  for (Index i = 1; i <= p.block_count(); ++i) {
    const Index r = offset[static_cast<size_t>(i - 1)];
    const Index c = offset[static_cast<size_t>(i)];
    const CMatrix& a = p.A[static_cast<size_t>(i - 1)];
    const CMatrix& b = p.B[static_cast<size_t>(i - 1)];
    f_plus.block(r, c, a.rows(), a.cols()) = a;
    f_minus.block(c, r, b.rows(), b.cols()) = b;
  }
  const CMatrix e1 = commutator(f_plus, f_minus) - 2.0 * e0;

  AlloyRep rep{asl2_alloy(), {e0, f_plus, f_minus, e1}, d};
  return rep;
}

bool IrreducibilityConditions::all_ok() const {
  return boundary_ok &&
         std::all_of(inequality_ok.begin(), inequality_ok.end(),
                     [](bool b) { return b; }) &&
         std::all_of(generation_ok.begin(), generation_ok.end(),
                     [](bool b) { return b; });
}

IrreducibilityConditions check_irreducibility_conditions(const Asl2Params& p,
                                         const ToleranceConfig& tol) {
  p.validate();
  const Index n_blocks = p.block_count();
  IrreducibilityConditions report;
  report.boundary_ok = p.dims.front() == 1 && p.dims.back() == 1;
  for (Index i = 1; i < n_blocks; ++i) {
    report.inequality_ok.push_back(p.dims[static_cast<size_t>(i)] <=
                                   p.dims[static_cast<size_t>(i - 1)] +
                                       p.dims[static_cast<size_t>(i + 1)]);
  }
  for (Index i = 0; i <= n_blocks; ++i) {
    const Index n_i = p.dims[static_cast<size_t>(i)];
    const CMatrix up =
        i < n_blocks ? CMatrix(p.A[static_cast<size_t>(i)] * p.B[static_cast<size_t>(i)])
                     : CMatrix(CMatrix::Zero(n_i, n_i));
    const CMatrix down =
        i > 0 ? CMatrix(p.B[static_cast<size_t>(i - 1)] * p.A[static_cast<size_t>(i - 1)])
              : CMatrix(CMatrix::Zero(n_i, n_i));
    const Index dim = generated_algebra({up, down}, tol).dim();
    report.generated_dims.push_back(dim);
    report.generation_ok.push_back(dim == n_i * n_i);
  }
  return report;
}

namespace {

void enumerate_rec(Index remaining, std::vector<Index>& prefix,
                   std::vector<std::vector<Index>>& out) {
  if (remaining == 0) {
    // Complete vector: must end with 1 and satisfy the interior inequality.
    if (prefix.back() != 1) return;
    for (size_t i = 1; i + 1 < prefix.size(); ++i) {
      if (prefix[i] > prefix[i - 1] + prefix[i + 1]) return;
    }
    out.push_back(prefix);
    return;
  }
  for (Index next = 1; next <= remaining; ++next) {
    prefix.push_back(next);
    enumerate_rec(remaining - next, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Index>> enumerate_dim_vectors(Index total) {
  if (total < 1) {
    throw std::invalid_argument("enumerate_dim_vectors: total must be positive");
  }
  std::vector<std::vector<Index>> out;
  std::vector<Index> prefix{1};
  enumerate_rec(total - 1, prefix, out);
  return out;
}

namespace {

Asl2Params random_params(const std::vector<Index>& dims, Complex gamma, Rng& rng) {
  Asl2Params p;
  p.gamma = gamma;
  p.dims = dims;
  for (size_t i = 1; i < dims.size(); ++i) {
    p.A.push_back(rng.matrix(dims[i - 1], dims[i]));
    p.B.push_back(rng.matrix(dims[i], dims[i - 1]));
  }
  return p;
}

}  // namespace

std::vector<SampleRecord> sample_irreps(const std::vector<Index>& dims,
                                        Complex gamma, int trials,
                                        std::uint64_t seed,
                                        const ToleranceConfig& tol) {
  std::vector<SampleRecord> out;
  out.reserve(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    SampleRecord rec;
    rec.sub_seed = Rng::derive(seed, static_cast<std::uint64_t>(t));
    Rng rng(rec.sub_seed);
    rec.params = random_params(dims, gamma, rng);
    rec.rep = build_rep(rec.params);
    const IrreducibilityResult irr = is_irreducible(rec.rep, tol);
    rec.irreducible = irr.irreducible;
    rec.burnside_dim = irr.generated_dim;
    rec.conditions = check_irreducibility_conditions(rec.params, tol);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<std::vector<bool>> moduli_family(const std::vector<Index>& dims,
                                             Complex gamma,
                                             const std::vector<double>& t_values,
                                             std::uint64_t seed,
                                             const ToleranceConfig& tol) {
  if (dims.size() < 2) {
    throw std::invalid_argument("moduli_family: need at least one A block");
  }
  Rng rng(seed);
  const Asl2Params base = random_params(dims, gamma, rng);
  std::vector<AlloyRep> reps;
  for (double t : t_values) {
    Asl2Params p = base;
    p.A[0](0, 0) = t;
    reps.push_back(build_rep(p));
  }
  const size_t count = t_values.size();
  std::vector<std::vector<bool>> iso(count, std::vector<bool>(count, false));
  for (size_t i = 0; i < count; ++i) {
    for (size_t j = 0; j < count; ++j) {
      iso[i][j] = are_isomorphic(
          reps[i], reps[j],
          Rng::derive(seed, 1000 + i * count + j), tol);
    }
  }
  return iso;
}

Asl2Params spin_rep(Index N) {
  if (N < 0) throw std::invalid_argument("spin_rep: N must be nonnegative");
  Asl2Params p;
  p.gamma = static_cast<double>(N) / 2.0;
  p.dims.assign(static_cast<size_t>(N + 1), 1);
  for (Index i = 1; i <= N; ++i) {
    p.A.push_back(CMatrix::Constant(1, 1, 1.0));
    p.B.push_back(CMatrix::Constant(1, 1, static_cast<double>(i * (N - i + 1))));
  }
  return p;
}

}  // namespace alloyrep
