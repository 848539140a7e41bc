#include <alloyrep/asl2.hpp>
#include <alloyrep/rep.hpp>
#include <alloyrep/rng.hpp>

#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"

using namespace alloyrep;

namespace {

AlloyRep spin_half() { return build_rep(spin_rep(1)); }

AlloyRep generic_rep(Complex gamma, std::uint64_t seed,
                     const std::vector<Index>& dims = {1, 1}) {
  Rng rng(seed);
  Asl2Params p;
  p.gamma = gamma;
  p.dims = dims;
  for (size_t i = 1; i < dims.size(); ++i) {
    p.A.push_back(rng.matrix(dims[i - 1], dims[i]));
    p.B.push_back(rng.matrix(dims[i], dims[i - 1]));
  }
  return build_rep(p);
}

std::vector<Index> component_dims(const Decomposition& d) {
  std::vector<Index> dims;
  for (const AlloyRep& c : d.components) dims.push_back(c.space_dim);
  std::sort(dims.begin(), dims.end(), std::greater<>());
  return dims;
}

double reassembly_residual(const AlloyRep& r, const Decomposition& d) {
  const CMatrix s_inv = d.basis.inverse();
  double worst = 0.0;
  for (size_t k = 0; k < r.mats.size(); ++k) {
    CMatrix block = CMatrix::Zero(r.space_dim, r.space_dim);
    Index at = 0;
    for (const AlloyRep& c : d.components) {
      block.block(at, at, c.space_dim, c.space_dim) = c.mats[k];
      at += c.space_dim;
    }
    worst = std::max(worst, oracles::max_abs_diff(d.basis * block * s_inv,
                                                  r.mats[k]));
  }
  return worst;
}

}  // namespace

TEST_CASE("check_rep on built representations") {
  const AlloyRep r = generic_rep({0.37, 0.21}, 5);
  const CheckRepReport report = check_rep(r);
  CHECK(report.ok);
  CHECK(report.worst_residual <= 1e-12);
}

TEST_CASE("check_rep accepts the zero representation") {
  AlloyRep r{asl2_alloy(),
             {CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2),
              CMatrix::Zero(2, 2)},
             2};
  CHECK(check_rep(r).ok);
}

TEST_CASE("check_rep detects a perturbed image") {
  AlloyRep r = generic_rep({0.37, 0.21}, 5);
  r.mats[1](0, 0) += 1e-3;
  const CheckRepReport report = check_rep(r);
  CHECK(!report.ok);
  CHECK(report.worst_residual >= 1e-4);
}

TEST_CASE("direct sum") {
  const AlloyRep a = generic_rep({0.4, 0.1}, 11);
  const AlloyRep b = generic_rep({-0.2, 0.3}, 13, {1, 1, 1});
  const AlloyRep sum = direct_sum(a, b);
  CHECK(sum.space_dim == 5);
  CHECK(check_rep(sum).ok);
  CHECK(!is_irreducible(sum).irreducible);
}

TEST_CASE("commutant of a doubled irreducible has dimension four") {
  const AlloyRep a = generic_rep({0.4, 0.1}, 11);
  REQUIRE(is_irreducible(a).irreducible);
  CHECK(commutant(direct_sum(a, a)).dim() == 4);
}

TEST_CASE("tensor product dimensions and validity") {
  const AlloyRep a = generic_rep({0.4, 0.1}, 17);
  const AlloyRep b = generic_rep({-0.3, 0.2}, 19, {1, 1, 1});
  const AlloyRep prod = tensor_product(a, b);
  CHECK(prod.space_dim == 6);
  CHECK(check_rep(prod).ok);
}

TEST_CASE("tensor with the trivial representation is isomorphic to the input") {
  const AlloyRep r = generic_rep({0.4, 0.1}, 23);
  AlloyRep trivial{r.alloy,
                   {CMatrix::Zero(1, 1), CMatrix::Zero(1, 1),
                    CMatrix::Zero(1, 1), CMatrix::Zero(1, 1)},
                   1};
  REQUIRE(check_rep(trivial).ok);
  CHECK(are_isomorphic(tensor_product(trivial, r), r));
}

TEST_CASE("tensor products of valid representations stay valid") {
  Rng rng(29);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const AlloyRep a = generic_rep(rng.cuniform(), rng.raw(),
                                   t % 2 ? std::vector<Index>{1, 1}
                                         : std::vector<Index>{1, 1, 1});
    const AlloyRep b = generic_rep(rng.cuniform(), rng.raw());
    const AlloyRep prod = tensor_product(a, b);
    REQUIRE(check_rep(prod).ok);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("generated algebra examples") {
  CMatrix d = CMatrix::Zero(2, 2);
  d.diagonal() << 1, 2;
  CHECK(generated_algebra({d}).dim() == 2);

  CMatrix e(2, 2), f(2, 2);
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  CHECK(generated_algebra({e, f}).dim() == 4);

  CHECK(generated_algebra({}).dim() == 1);

  // Upper-triangular generators close on the 3-dimensional Borel algebra.
  CHECK(generated_algebra({d, e}).dim() == 3);
}

TEST_CASE("irreducibility by the Burnside criterion") {
  const AlloyRep one_dim = build_rep(spin_rep(0));
  CHECK(is_irreducible(one_dim).irreducible);

  const AlloyRep r = generic_rep({0.4, 0.1}, 31);
  const IrreducibilityResult irr = is_irreducible(r);
  CHECK(irr.irreducible);
  CHECK(irr.generated_dim == 4);

  const AlloyRep sum = direct_sum(r, build_rep(spin_rep(1)));
  CHECK(!is_irreducible(sum).irreducible);
}

TEST_CASE("burnside verdict and commutant dimension agree") {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const std::vector<Index> dims =
        t % 3 == 0 ? std::vector<Index>{1, 1, 1}
                   : (t % 3 == 1 ? std::vector<Index>{1, 2, 1}
                                 : std::vector<Index>{1, 1});
    const AlloyRep r = generic_rep(rng.cuniform(), rng.raw(), dims);
    const bool burnside = is_irreducible(r).irreducible;
    const bool schur = commutant(r).dim() == 1;
    CHECK(burnside == schur);
  }
}

TEST_CASE("commutant of the zero representation is everything") {
  AlloyRep r{asl2_alloy(),
             {CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), CMatrix::Zero(3, 3),
              CMatrix::Zero(3, 3)},
             3};
  CHECK(commutant(r).dim() == 9);
}

TEST_CASE("decompose leaves irreducibles alone") {
  const AlloyRep r = generic_rep({0.4, 0.1}, 41);
  const Decomposition d = decompose(r, 7);
  REQUIRE(d.components.size() == 1);
  CHECK(oracles::max_abs_diff(d.basis, CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("decompose splits a direct sum of non-isomorphic irreducibles") {
  const AlloyRep r1 = generic_rep({0.4, 0.1}, 43);
  const AlloyRep r2 = generic_rep({-0.6, 0.2}, 47, {1, 1, 1});
  const AlloyRep sum = direct_sum(r1, r2);
  const Decomposition d = decompose(sum, 11);
  REQUIRE(d.components.size() == 2);
  CHECK(reassembly_residual(sum, d) <= 1e-8);
  int matched = 0;
  for (const AlloyRep& c : d.components) {
    if (c.space_dim == r1.space_dim && are_isomorphic(c, r1)) ++matched;
    if (c.space_dim == r2.space_dim && are_isomorphic(c, r2)) ++matched;
  }
  CHECK(matched == 2);
}

TEST_CASE("decompose handles repeated and conjugated components") {
  const AlloyRep r = generic_rep({0.4, 0.1}, 97);
  const AlloyRep other = generic_rep({-0.6, 0.2}, 98, {1, 1, 1});

  SUBCASE("threefold sum with a repeated summand") {
    const AlloyRep sum = direct_sum(direct_sum(r, r), other);
    CHECK(commutant(sum).dim() == 5);
    const Decomposition d = decompose(sum, 21);
    REQUIRE(d.components.size() == 3);
    CHECK(reassembly_residual(sum, d) <= 1e-8);
    int like_r = 0, like_other = 0;
    for (const AlloyRep& c : d.components) {
      if (c.space_dim == r.space_dim && are_isomorphic(c, r)) ++like_r;
      if (c.space_dim == other.space_dim && are_isomorphic(c, other)) ++like_other;
    }
    CHECK(like_r == 2);
    CHECK(like_other == 1);
  }

  SUBCASE("summands hidden by a change of basis") {
    Rng rng(99);
    AlloyRep conj = r;
    const CMatrix s = rng.invertible(r.space_dim);
    for (CMatrix& m : conj.mats) m = s * m * s.inverse();
    const AlloyRep sum = direct_sum(conj, r);
    const Decomposition d = decompose(sum, 23);
    REQUIRE(d.components.size() == 2);
    for (const AlloyRep& c : d.components) {
      CHECK(are_isomorphic(c, r));
    }
  }
}

TEST_CASE("isomorphism of reducible representations") {
  const AlloyRep a = generic_rep({0.4, 0.1}, 107);
  const AlloyRep b = generic_rep({-0.3, 0.6}, 109, {1, 1, 1});
  CHECK(are_isomorphic(direct_sum(a, b), direct_sum(b, a)));
  CHECK(!are_isomorphic(direct_sum(a, a), direct_sum(a, b)));
}

TEST_CASE("spin half squared decomposes into triplet and singlet") {
  const AlloyRep prod = tensor_product(spin_half(), spin_half());
  const Decomposition d = decompose(prod, 13);
  CHECK(component_dims(d) == std::vector<Index>{3, 1});
  CHECK(reassembly_residual(prod, d) <= 1e-8);
}

TEST_CASE("intertwiner spaces") {
  const AlloyRep r = generic_rep({0.4, 0.1}, 53);
  CHECK(intertwiner_space(r, r).dim() == 1);

  const AlloyRep other = generic_rep({-0.8, 0.5}, 59, {1, 1, 1});
  CHECK(intertwiner_space(r, other).dim() == 0);

  Rng rng(61);
  const CMatrix s0 = rng.invertible(r.space_dim);
  AlloyRep conj = r;
  for (CMatrix& m : conj.mats) m = s0 * m * s0.inverse();
  const Subspace iw = intertwiner_space(r, conj);
  CHECK(span_contains(iw, vec(s0)).contained);
}

TEST_CASE("isomorphism testing") {
  const AlloyRep r = generic_rep({0.4, 0.1}, 67);
  CHECK(are_isomorphic(r, r));

  Rng rng(71);
  const CMatrix s = rng.invertible(r.space_dim);
  AlloyRep conj = r;
  for (CMatrix& m : conj.mats) m = s * m * s.inverse();
  CHECK(are_isomorphic(r, conj));
  CHECK(are_isomorphic(conj, r));

  const AlloyRep bigger = generic_rep({0.4, 0.1}, 73, {1, 1, 1});
  CHECK(!are_isomorphic(r, bigger));
}

TEST_CASE("lie closure of a classical spin representation is sl2") {
  const AlloyRep r = build_rep(spin_rep(2));
  const EnvelopeAvatar env = lie_closure(r);
  CHECK(env.basis.size() == 3);
}

TEST_CASE("lie closure is commutator-closed and bounded") {
  const AlloyRep r = generic_rep({0.45, -0.3}, 79, {1, 1, 1});
  const EnvelopeAvatar env = lie_closure(r);
  CHECK(env.basis.size() <= 9);
  const Subspace span = span_close(stack_vectorized(env.basis));
  double scale = 1.0;
  for (const CMatrix& m : env.basis) scale = std::max(scale, m.norm());
  for (const CMatrix& a : env.basis) {
    for (const CMatrix& b : env.basis) {
      CHECK(span_contains(span, vec(commutator(a, b))).residual <=
            1e-10 * scale);
    }
  }
}

TEST_CASE("lie closure of a one-dimensional representation") {
  const AlloyRep r = build_rep(spin_rep(0));
  CHECK(lie_closure(r).basis.size() <= 1);
}

TEST_CASE("restriction equality of envelopes") {
  const AlloyRep r = generic_rep({0.4, 0.1}, 83);
  const EnvelopeAvatar env1 = lie_closure(r);

  // The same representation sitting inside a strictly larger envelope.
  EnvelopeAvatar env2 = env1;
  env2.basis.push_back(CMatrix::Identity(r.space_dim, r.space_dim));
  CHECK(def_equivalent(env1, r, env2, r));

  // Prop 4 operationally: mutual tensor products across envelopes stay valid.
  CHECK(check_rep(tensor_product(r, r)).ok);

  const AlloyRep other = generic_rep({0.4, 0.1}, 89);
  const EnvelopeAvatar env3 = lie_closure(other);
  CHECK(!def_equivalent(env1, r, env3, other));

  // A trace shift changes the restriction unless the trace vanishes.
  AlloyRep shifted = r;
  bool any_trace = false;
  for (CMatrix& m : shifted.mats) {
    if (std::abs(m.trace()) > 1e-12) any_trace = true;
    m -= (m.trace() / static_cast<double>(r.space_dim)) *
         CMatrix::Identity(r.space_dim, r.space_dim);
  }
  REQUIRE(any_trace);
  EnvelopeAvatar env4 = env1;  // images of the shift stay inside span + I
  env4.basis.push_back(CMatrix::Identity(r.space_dim, r.space_dim));
  CHECK(!def_equivalent(env1, r, env4, shifted));
}
