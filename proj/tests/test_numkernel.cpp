#include <alloyrep/numkernel.hpp>
#include <alloyrep/rng.hpp>

#include <doctest.h>

#include "oracles.hpp"

using namespace alloyrep;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("commutator of the standard nilpotent pair") {
  const CMatrix e = mat2(0, 1, 0, 0);
  const CMatrix f = mat2(0, 0, 1, 0);
  const CMatrix h = commutator(e, f);
  CHECK(oracles::max_abs_diff(h, mat2(1, 0, 0, -1)) == 0.0);
}

TEST_CASE("commutator degenerate cases") {
  Rng rng(7);
  const CMatrix a = rng.matrix(3, 3);
  CHECK(commutator(a, a).norm() == 0.0);
  CHECK(commutator(CMatrix::Identity(3, 3), a).norm() == 0.0);
  CHECK_THROWS_AS(commutator(a, rng.matrix(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(commutator(rng.matrix(2, 3), rng.matrix(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("commutator antisymmetry is exact") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = rng.matrix(4, 4);
    const CMatrix b = rng.matrix(4, 4);
    CHECK(oracles::max_abs_diff(commutator(a, b), -commutator(b, a)) == 0.0);
  }
}

TEST_CASE("commutator satisfies the Leibniz rule numerically") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = rng.matrix(4, 4);
    const CMatrix b = rng.matrix(4, 4);
    const CMatrix c = rng.matrix(4, 4);
    const CMatrix lhs = commutator(a, b * c);
    const CMatrix rhs = commutator(a, b) * c + b * commutator(a, c);
    const double scale = std::max(1.0, a.norm() * b.norm() * c.norm());
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-12 * scale);
  }
}

TEST_CASE("span_contains examples") {
  CVector e0(2), e1(2), twice(2);
  e0 << 1, 0;
  e1 << 0, 1;
  twice << 2, 0;
  const Subspace line = span_close(std::vector<CVector>{e0});
  CHECK(span_contains(line, twice).contained);
  CHECK(!span_contains(line, e1).contained);
  CHECK(span_contains(line, e1).residual == doctest::Approx(1.0));

  const Subspace empty = span_close(std::vector<CVector>{});
  CHECK(span_contains(empty, CVector::Zero(0)).contained);
}

TEST_CASE("span_close ranks") {
  CVector a(2), b(2), c(2);
  a << 1, 0;
  b << 2, 0;
  c << 0, 1;
  CHECK(span_close(std::vector<CVector>{a, b}).dim() == 1);
  CHECK(span_close(std::vector<CVector>{a, c}).dim() == 2);
  CHECK(span_close(std::vector<CVector>{}).dim() == 0);
}

TEST_CASE("span_close spans its input") {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    std::vector<CVector> vectors;
    for (int k = 0; k < 4; ++k) vectors.push_back(rng.vector(6));
    vectors.push_back(vectors[0] + vectors[1]);  // force a dependency
    const Subspace s = span_close(vectors);
    CHECK(s.dim() == 4);
    for (const CVector& v : vectors) {
      CHECK(span_contains(s, v).contained);
    }
  }
}

TEST_CASE("kron identities and shapes") {
  CHECK(oracles::max_abs_diff(
            kron(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)),
            CMatrix::Identity(6, 6)) == 0.0);
  Rng rng(19);
  const CMatrix k = kron(rng.matrix(2, 2), rng.matrix(3, 3));
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 6);
}

TEST_CASE("kron of nilpotents has rank two") {
  const CMatrix e = mat2(0, 1, 0, 0);
  const CMatrix eye = CMatrix::Identity(2, 2);
  CHECK(matrix_rank(kron(e, eye) + kron(eye, e)) == 2);
}

TEST_CASE("kron is multiplicative on ranks") {
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const Index ra = 1 + static_cast<Index>(rng.raw() % 3);
    const Index rb = 1 + static_cast<Index>(rng.raw() % 3);
    const CMatrix a = rng.matrix(4, ra) * rng.matrix(ra, 4);
    const CMatrix b = rng.matrix(4, rb) * rng.matrix(rb, 4);
    CHECK(matrix_rank(kron(a, b)) == matrix_rank(a) * matrix_rank(b));
  }
}

TEST_CASE("nullspace examples") {
  const Subspace n1 = nullspace(mat2(1, 0, 0, 0));
  CHECK(n1.dim() == 1);
  CVector e1(2);
  e1 << 0, 1;
  CHECK(span_contains(n1, e1).contained);

  Rng rng(29);
  CHECK(nullspace(rng.invertible(3)).dim() == 0);
  CHECK(nullspace(CMatrix::Zero(3, 3)).dim() == 3);
}

TEST_CASE("eigen_split clusters and invariant subspaces") {
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1, 1, 2;
  const auto clusters = eigen_split(d);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].space.dim() == 2);
  CHECK(clusters[1].space.dim() == 1);
  CHECK(clusters[0].eigenvalue == Complex(1.0));

  const auto whole = eigen_split(CMatrix::Identity(4, 4));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].space.dim() == 4);
}

TEST_CASE("eigen_split chains eigenvalues within the gap") {
  // 1 and 1 + gap/2 merge; 1 + gap/2 also pulls in 1 + gap via chaining.
  const double gap = default_tol().eigen_gap_tol;
  CMatrix d = CMatrix::Zero(4, 4);
  d.diagonal() << Complex(1.0), Complex(1.0 + 0.5 * gap),
      Complex(1.0 + 1.0 * gap), Complex(2.0, 0.5);
  const auto clusters = eigen_split(d);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].multiplicity == 3);
  CHECK(clusters[1].multiplicity == 1);
  CHECK(std::abs(clusters[1].eigenvalue - Complex(2.0, 0.5)) <= 1e-12);
}

TEST_CASE("eigen_split refuses a Jordan block") {
  CHECK_THROWS_WITH_AS(eigen_split(mat2(0, 1, 0, 0)), "non-diagonalizable",
                       std::runtime_error);
}

TEST_CASE("eigen_split covers the space for diagonalizable matrices") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const CMatrix v = rng.invertible(6);
    CVector lam(6);
    for (Index i = 0; i < 6; ++i) {
      lam(i) = Complex(static_cast<double>(i % 3), (i % 2) ? 0.5 : -0.5) +
               0.01 * rng.cuniform();
    }
    const CMatrix a = v * lam.asDiagonal() * v.inverse();
    const auto clusters = eigen_split(a);
    Index total = 0;
    for (const auto& c : clusters) {
      total += c.space.dim();
      // Invariance of each returned subspace.
      const CMatrix q = c.space.basis;
      const CMatrix restricted = q.adjoint() * a * q;
      CHECK((a * q - q * restricted).norm() <= 1e-8 * std::max(1.0, a.norm()));
    }
    CHECK(total == 6);
  }
}

TEST_CASE("span bases are orthonormal") {
  Rng rng(39);
  for (int t = 0; t < 10; ++t) {
    const Subspace s = span_close(rng.matrix(6, 4));
    const CMatrix gram = s.basis.adjoint() * s.basis;
    CHECK((gram - CMatrix::Identity(s.dim(), s.dim())).lpNorm<Eigen::Infinity>() <=
          1e-12);
  }
}

TEST_CASE("lstsq reproduces consistent systems") {
  Rng rng(37);
  const CMatrix a = rng.matrix(6, 3);
  const CVector x = rng.vector(3);
  const CVector sol = lstsq(a, CVector(a * x));
  CHECK((sol - x).norm() <= 1e-10);
}
