#pragma once

#include "alloyrep/algebra.hpp"
#include "alloyrep/alloy.hpp"
#include "alloyrep/asl2.hpp"
#include "alloyrep/rep.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace alloyrep::io {

using nlohmann::json;

// Complex scalars serialize as [re, im]; matrices as
// {"rows": r, "cols": c, "entries": [...]} with row-major entries.
json to_json(const Complex& z);
Complex complex_from_json(const json& j);

json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j);

json to_json(const CVector& v);
CVector cvector_from_json(const json& j);

// {"format":1, "dim":n, "names":[...], "brackets":[{"i","j","out"}]}
// listing only i<j pairs with nonzero bracket.
json to_json(const AntiAlgebra& g);
AntiAlgebra anti_algebra_from_json(const json& j);

// {"format":1, "dim":n, "entries":[{"p1":[i,j], "p2":[k,l], "out"}]}.
json to_json(const QuaternaryAlgebra& q);
QuaternaryAlgebra quaternary_from_json(const json& j);

// {"format":1, "dim":d, "parts":[[...],...],
//  "brackets":[{"part","i","j","out"}]} with global i<j inside the part.
json to_json(const Alloy& a);
Alloy alloy_from_json(const json& j);

// {"format":1, "lam1": matrix, "lam2": matrix}
json to_json(const AlloyFactorization& f);
AlloyFactorization factorization_from_json(const json& j);

// {"format":1, "alloy": <inline object or file-ref string>,
//  "space_dim": d, "mats":[matrix...]}
json rep_to_json(const AlloyRep& r);
AlloyRep rep_from_json(const json& j,
                       const std::filesystem::path& base_dir = ".");

// {"format":1, "g1","g2": algebras, "T1","T2": [matrix...], "space_dim": d}
json to_json(const CrossProjRep& r);
CrossProjRep cross_from_json(const json& j);

// {"format":1, "gamma":[re,im], "dims":[...], "A":[matrix...], "B":[...]}
json to_json(const Asl2Params& p);
Asl2Params asl2_params_from_json(const json& j);

json to_json(const ToleranceConfig& t);

json load_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

/// FNV-1a 64-bit digest of the file bytes, as 16 hex characters.
std::string file_digest(const std::filesystem::path& path);

}  // namespace alloyrep::io
