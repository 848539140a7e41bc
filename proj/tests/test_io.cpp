#include <alloyrep/io.hpp>
#include <alloyrep/rng.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"

using namespace alloyrep;
namespace io = alloyrep::io;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::path("io_test_scratch");
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("complex and matrix round trips are exact") {
  Rng rng(7);
  const CMatrix m = rng.matrix(3, 4);
  const io::json j = io::to_json(m);
  CHECK(oracles::max_abs_diff(io::cmatrix_from_json(j), m) == 0.0);

  const Complex z{0.1234567890123456, -9.87654321e-7};
  CHECK(io::complex_from_json(io::to_json(z)) == z);
}

TEST_CASE("algebra round trip") {
  const AntiAlgebra g = sl2_algebra();
  const AntiAlgebra back = io::anti_algebra_from_json(io::to_json(g));
  CHECK(back.dim() == 3);
  CHECK(back.names() == g.names());
  for (Index p = 0; p < g.pair_basis().size(); ++p) {
    CHECK((back.basis_bracket(p) - g.basis_bracket(p)).norm() == 0.0);
  }
}

TEST_CASE("quaternary round trip") {
  Rng rng(11);
  const QuaternaryAlgebra q = oracles::random_quaternary(3, rng);
  const QuaternaryAlgebra back = io::quaternary_from_json(io::to_json(q));
  CHECK(oracles::max_abs_diff(back.tensor(), q.tensor()) == 0.0);
}

TEST_CASE("alloy round trip") {
  const Alloy a = wedge_square_alloy(sl2_algebra(),
                                quaternary_from_bracket(sl2_algebra()));
  const Alloy back = io::alloy_from_json(io::to_json(a));
  CHECK(same_alloy(a, back));
  for (Index p = 0; p < a.part_count(); ++p) {
    for (size_t k = 0; k < a.part(p).table.size(); ++k) {
      CHECK((a.part(p).table[k] - back.part(p).table[k]).norm() == 0.0);
    }
  }
}

TEST_CASE("representation round trip with inline alloy") {
  const AlloyRep r = build_rep(spin_rep(1));
  const AlloyRep back = io::rep_from_json(io::rep_to_json(r));
  CHECK(back.space_dim == r.space_dim);
  for (size_t k = 0; k < r.mats.size(); ++k) {
    CHECK(oracles::max_abs_diff(back.mats[k], r.mats[k]) == 0.0);
  }
}

TEST_CASE("representation file with an alloy reference") {
  const auto dir = scratch_dir();
  io::write_file(dir / "alloy.json", io::to_json(asl2_alloy()));
  io::json rep_json = io::rep_to_json(build_rep(spin_rep(1)));
  rep_json["alloy"] = "alloy.json";
  io::write_file(dir / "rep.json", rep_json);
  const AlloyRep back = io::rep_from_json(io::load_file(dir / "rep.json"), dir);
  CHECK(check_rep(back).ok);
}

TEST_CASE("cross pair and parameter round trips") {
  Asl2Params p;
  p.gamma = {0.3, 0.0};
  p.dims = {1, 1};
  p.A = {CMatrix::Constant(1, 1, Complex{1.0, -0.5})};
  p.B = {CMatrix::Constant(1, 1, Complex{0.25, 2.0})};
  const Asl2Params back = io::asl2_params_from_json(io::to_json(p));
  CHECK(back.gamma == p.gamma);
  CHECK(back.dims == p.dims);
  CHECK(oracles::max_abs_diff(back.A[0], p.A[0]) == 0.0);

  const AlloyRep rep = build_rep(p);
  CrossProjRep cross;
  cross.g1 = sl2_algebra();
  cross.g2 = AntiAlgebra(1);
  cross.T1 = {rep.mats[0], rep.mats[1], rep.mats[2]};
  cross.T2 = {rep.mats[3]};
  cross.space_dim = rep.space_dim;
  const CrossProjRep cross_back = io::cross_from_json(io::to_json(cross));
  CHECK(cross_back.space_dim == 2);
  CHECK(oracles::max_abs_diff(cross_back.T2[0], cross.T2[0]) == 0.0);
}

TEST_CASE("factorization round trip") {
  Rng rng(13);
  AlloyFactorization f;
  f.lam1 = rng.matrix(3, 3);
  f.lam2 = rng.matrix(3, 3);
  const AlloyFactorization back =
      io::factorization_from_json(io::to_json(f));
  CHECK(oracles::max_abs_diff(back.lam1, f.lam1) == 0.0);
  CHECK(oracles::max_abs_diff(back.lam2, f.lam2) == 0.0);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(io::cmatrix_from_json(io::json{{"rows", 2}, {"cols", 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      io::anti_algebra_from_json(io::json::parse(R"({"dim": 2, "format": 3})")),
      std::invalid_argument);
  CHECK_THROWS_AS(io::complex_from_json(io::json::parse("[1.0]")),
                  std::invalid_argument);

  const auto dir = scratch_dir();
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"format\": 1, \"dim\"";
  }
  CHECK_THROWS_AS(io::load_file(dir / "bad.json"), io::json::parse_error);
  CHECK_THROWS_AS(io::load_file(dir / "missing.json"), std::invalid_argument);
}

TEST_CASE("file digests are stable") {
  const auto dir = scratch_dir();
  io::write_file(dir / "digest.json", io::to_json(asl2_alloy()));
  const std::string d1 = io::file_digest(dir / "digest.json");
  const std::string d2 = io::file_digest(dir / "digest.json");
  CHECK(d1 == d2);
  CHECK(d1.size() == 16);
}
