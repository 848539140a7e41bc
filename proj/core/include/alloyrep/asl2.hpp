#pragma once

#include "alloyrep/alloy.hpp"
#include "alloyrep/rep.hpp"

#include <cstdint>
#include <vector>

namespace alloyrep {

/// The anticommutative algebra on (e0, f+, f-) with [e0,f+-] = +-f+- and
/// [f+,f-] = 2 e0.
AntiAlgebra sl2_algebra();

/// The four-dimensional alloy asl(2,C) on (e0, f+, f-, e1): parts
/// {e0,f+,f-} and {e1}, brackets [e0,f+-] = +-f+- and [f+,f-] = 2 e0 + e1.
Alloy asl2_alloy();

/// Block data of an e0-diagonal representation: gamma, block sizes
/// n_0..n_N, and the off-diagonal blocks A_i (n_{i-1} x n_i) and
/// B_i (n_i x n_{i-1}).
struct Asl2Params {
  Complex gamma;
  std::vector<Index> dims;
  std::vector<CMatrix> A;
  std::vector<CMatrix> B;

  Index block_count() const { return static_cast<Index>(dims.size()) - 1; }
  Index total_dim() const;
  void validate() const;  // throws std::invalid_argument on shape violations
};

/// f+ block-bidiagonal above with the A_i, f- below with the B_i, e0 block
/// diagonal with (gamma - i) I, and e1 = [f+,f-] - 2 e0. The result passes
/// check_rep by construction.
AlloyRep build_rep(const Asl2Params& p);

struct IrreducibilityConditions {
  bool boundary_ok = false;            // n_0 = n_N = 1
  std::vector<bool> inequality_ok;     // n_i <= n_{i-1} + n_{i+1}, interior i
  std::vector<bool> generation_ok;     // per block i = 0..N
  std::vector<Index> generated_dims;   // achieved algebra dimension per block

  bool all_ok() const;
};

/// The conditions irreducibility places on the block data: n_0 = n_N = 1,
/// n_i <= n_{i-1} + n_{i+1}, and the pair {A_{i+1} B_{i+1}, B_i A_i} has to
/// generate Mat_{n_i}, with the boundary conventions A_{N+1} B_{N+1} = 0 and
/// B_0 A_0 = 0.
IrreducibilityConditions check_irreducibility_conditions(const Asl2Params& p,
                                         const ToleranceConfig& tol = default_tol());

/// All admissible block-size vectors summing to `total`, lexicographic.
std::vector<std::vector<Index>> enumerate_dim_vectors(Index total);

struct SampleRecord {
  Asl2Params params;
  AlloyRep rep;
  bool irreducible = false;
  Index burnside_dim = 0;
  IrreducibilityConditions conditions;
  std::uint64_t sub_seed = 0;
};

/// Seeded random A, B with entries uniform on the [-1,1]^2 complex square;
/// every sample carries both the Burnside verdict and the condition report.
std::vector<SampleRecord> sample_irreps(const std::vector<Index>& dims,
                                        Complex gamma, int trials,
                                        std::uint64_t seed,
                                        const ToleranceConfig& tol = default_tol());

/// One-parameter family: the (0,0) entry of A_1 is set to t, every other
/// entry is drawn once from the seed. Returns the pairwise are_isomorphic
/// matrix over the t-grid.
std::vector<std::vector<bool>> moduli_family(const std::vector<Index>& dims,
                                             Complex gamma,
                                             const std::vector<double>& t_values,
                                             std::uint64_t seed,
                                             const ToleranceConfig& tol = default_tol());

/// The classical (N+1)-dimensional highest-weight fixture: all blocks 1x1,
/// gamma = N/2, A_i = (1), B_i = (i (N-i+1)). Its e1 image vanishes.
Asl2Params spin_rep(Index N);

}  // namespace alloyrep
