#include "alloyrep/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace alloyrep::io {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument("json: " + what);
}

void check_format(const json& j) {
  if (j.is_object() && j.contains("format")) {
    require(j.at("format").is_number_integer() && j.at("format") == 1,
            "unsupported format version");
  }
}

double finite_number(const json& j) {
  require(j.is_number(), "expected a number");
  const double x = j.get<double>();
  require(std::isfinite(x), "non-finite number");
  return x;
}

}  // namespace

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  require(j.is_array() && j.size() == 2, "complex scalar must be [re, im]");
  return {finite_number(j[0]), finite_number(j[1])};
}

json to_json(const CMatrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      entries.push_back(to_json(m(i, k)));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

CMatrix cmatrix_from_json(const json& j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") &&
              j.contains("entries"),
          "matrix must have rows, cols, entries");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  require(rows >= 0 && cols >= 0, "negative matrix size");
  const json& entries = j.at("entries");
  require(entries.is_array() &&
              static_cast<Index>(entries.size()) == rows * cols,
          "entry count must be rows*cols");
  CMatrix m(rows, cols);
  Index pos = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(entries[static_cast<size_t>(pos++)]);
    }
  }
  return m;
}

json to_json(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

CVector cvector_from_json(const json& j) {
  require(j.is_array(), "vector must be an array");
  CVector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = complex_from_json(j[static_cast<size_t>(i)]);
  }
  return v;
}

json to_json(const AntiAlgebra& g) {
  json brackets = json::array();
  for (Index i = 0; i < g.dim(); ++i) {
    for (Index k = i + 1; k < g.dim(); ++k) {
      const CVector& out = g.basis_bracket(i, k);
      if (out.norm() == 0.0) continue;
      brackets.push_back(json{{"i", i}, {"j", k}, {"out", to_json(out)}});
    }
  }
  return json{{"format", 1},
              {"dim", g.dim()},
              {"names", g.names()},
              {"brackets", brackets}};
}

AntiAlgebra anti_algebra_from_json(const json& j) {
  check_format(j);
  require(j.is_object() && j.contains("dim"), "algebra must have dim");
  const Index dim = j.at("dim").get<Index>();
  std::vector<std::string> names;
  if (j.contains("names")) {
    names = j.at("names").get<std::vector<std::string>>();
  }
  AntiAlgebra g(dim, std::move(names));
  for (const json& entry : j.value("brackets", json::array())) {
    const Index i = entry.at("i").get<Index>();
    const Index k = entry.at("j").get<Index>();
    require(i >= 0 && i < k && k < dim, "bracket pair must satisfy 0 <= i < j < dim");
    CVector out = cvector_from_json(entry.at("out"));
    require(out.size() == dim, "bracket value of wrong length");
    g.set_basis_bracket(i, k, std::move(out));
  }
  return g;
}

json to_json(const QuaternaryAlgebra& q) {
  json entries = json::array();
  const PairBasis& pb = q.pair_basis();
  for (Index c = 0; c < q.pair_pair_basis().size(); ++c) {
    const CVector col = q.tensor().col(c);
    if (col.norm() == 0.0) continue;
    const auto [p1, p2] = q.pair_pair_basis().pairs[static_cast<size_t>(c)];
    const auto [i, k] = pb.pairs[static_cast<size_t>(p1)];
    const auto [l, m] = pb.pairs[static_cast<size_t>(p2)];
    entries.push_back(json{{"p1", {i, k}}, {"p2", {l, m}}, {"out", to_json(col)}});
  }
  return json{{"format", 1}, {"dim", q.dim()}, {"entries", entries}};
}

QuaternaryAlgebra quaternary_from_json(const json& j) {
  check_format(j);
  require(j.is_object() && j.contains("dim"), "quaternary algebra must have dim");
  QuaternaryAlgebra q(j.at("dim").get<Index>());
  const PairBasis& pb = q.pair_basis();
  for (const json& entry : j.value("entries", json::array())) {
    const auto read_pair = [&](const json& p) {
      require(p.is_array() && p.size() == 2, "pair key must be [i, j]");
      return pb.index(p[0].get<Index>(), p[1].get<Index>());
    };
    const Index p1 = read_pair(entry.at("p1"));
    const Index p2 = read_pair(entry.at("p2"));
    require(p1 < p2, "pair keys must be ordered p1 < p2");
    CVector out = cvector_from_json(entry.at("out"));
    require(out.size() == q.dim(), "entry value of wrong length");
    q.tensor().col(q.pair_pair_basis().index(p1, p2)) = out;
  }
  return q;
}

json to_json(const Alloy& a) {
  json parts = json::array();
  json brackets = json::array();
  for (Index p = 0; p < a.part_count(); ++p) {
    parts.push_back(a.part(p).indices);
    const auto& part = a.part(p);
    for (const auto& [x, y] : part.pair_basis.pairs) {
      const Index gi = part.indices[static_cast<size_t>(x)];
      const Index gj = part.indices[static_cast<size_t>(y)];
      const CVector& out = a.basis_bracket(gi, gj);
      if (out.norm() == 0.0) continue;
      brackets.push_back(json{{"part", p}, {"i", gi}, {"j", gj}, {"out", to_json(out)}});
    }
  }
  return json{{"format", 1}, {"dim", a.dim()}, {"parts", parts}, {"brackets", brackets}};
}

Alloy alloy_from_json(const json& j) {
  check_format(j);
  require(j.is_object() && j.contains("dim") && j.contains("parts"),
          "alloy must have dim and parts");
  Alloy a(j.at("dim").get<Index>(),
          j.at("parts").get<std::vector<std::vector<Index>>>());
  for (const json& entry : j.value("brackets", json::array())) {
    const Index gi = entry.at("i").get<Index>();
    const Index gj = entry.at("j").get<Index>();
    require(gi < gj, "bracket pair must satisfy i < j");
    if (entry.contains("part")) {
      require(a.part_of(gi) == entry.at("part").get<Index>(),
              "bracket pair not inside its declared part");
    }
    CVector out = cvector_from_json(entry.at("out"));
    require(out.size() == a.dim(), "bracket value of wrong length");
    a.set_basis_bracket(gi, gj, std::move(out));
  }
  return a;
}

json to_json(const AlloyFactorization& f) {
  return json{{"format", 1}, {"lam1", to_json(f.lam1)}, {"lam2", to_json(f.lam2)}};
}

AlloyFactorization factorization_from_json(const json& j) {
  check_format(j);
  require(j.is_object() && j.contains("lam1") && j.contains("lam2"),
          "factorization must have lam1 and lam2");
  return {cmatrix_from_json(j.at("lam1")), cmatrix_from_json(j.at("lam2"))};
}

json rep_to_json(const AlloyRep& r) {
  json mats = json::array();
  for (const CMatrix& m : r.mats) mats.push_back(to_json(m));
  return json{{"format", 1},
              {"alloy", to_json(r.alloy)},
              {"space_dim", r.space_dim},
              {"mats", mats}};
}

AlloyRep rep_from_json(const json& j, const std::filesystem::path& base_dir) {
  check_format(j);
  require(j.is_object() && j.contains("alloy") && j.contains("space_dim") &&
              j.contains("mats"),
          "representation must have alloy, space_dim, mats");
  AlloyRep r;
  const json& alloy_field = j.at("alloy");
  if (alloy_field.is_string()) {
    r.alloy = alloy_from_json(load_file(base_dir / alloy_field.get<std::string>()));
  } else {
    r.alloy = alloy_from_json(alloy_field);
  }
  r.space_dim = j.at("space_dim").get<Index>();
  for (const json& m : j.at("mats")) {
    r.mats.push_back(cmatrix_from_json(m));
  }
  r.validate_shapes();
  return r;
}

json to_json(const CrossProjRep& r) {
  json t1 = json::array(), t2 = json::array();
  for (const CMatrix& m : r.T1) t1.push_back(to_json(m));
  for (const CMatrix& m : r.T2) t2.push_back(to_json(m));
  return json{{"format", 1},   {"g1", to_json(r.g1)}, {"g2", to_json(r.g2)},
              {"T1", t1},      {"T2", t2},            {"space_dim", r.space_dim}};
}

CrossProjRep cross_from_json(const json& j) {
  check_format(j);
  require(j.is_object() && j.contains("g1") && j.contains("g2") &&
              j.contains("T1") && j.contains("T2") && j.contains("space_dim"),
          "cross-projective pair must have g1, g2, T1, T2, space_dim");
  CrossProjRep r;
  r.g1 = anti_algebra_from_json(j.at("g1"));
  r.g2 = anti_algebra_from_json(j.at("g2"));
  for (const json& m : j.at("T1")) r.T1.push_back(cmatrix_from_json(m));
  for (const json& m : j.at("T2")) r.T2.push_back(cmatrix_from_json(m));
  r.space_dim = j.at("space_dim").get<Index>();
  r.validate();
  return r;
}

json to_json(const Asl2Params& p) {
  json a = json::array(), b = json::array();
  for (const CMatrix& m : p.A) a.push_back(to_json(m));
  for (const CMatrix& m : p.B) b.push_back(to_json(m));
  return json{{"format", 1},
              {"gamma", to_json(p.gamma)},
              {"dims", p.dims},
              {"A", a},
              {"B", b}};
}

Asl2Params asl2_params_from_json(const json& j) {
  check_format(j);
  require(j.is_object() && j.contains("gamma") && j.contains("dims") &&
              j.contains("A") && j.contains("B"),
          "parameters must have gamma, dims, A, B");
  Asl2Params p;
  p.gamma = complex_from_json(j.at("gamma"));
  p.dims = j.at("dims").get<std::vector<Index>>();
  for (const json& m : j.at("A")) p.A.push_back(cmatrix_from_json(m));
  for (const json& m : j.at("B")) p.B.push_back(cmatrix_from_json(m));
  p.validate();
  return p;
}

json to_json(const ToleranceConfig& t) {
  return json{{"rank_tol", t.rank_tol},
              {"residual_tol", t.residual_tol},
              {"eigen_gap_tol", t.eigen_gap_tol}};
}

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open " + path.string());
  }
  json j;
  in >> j;  // throws nlohmann::json::parse_error on malformed input
  return j;
}

void write_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open " + path.string());
  }
  std::uint64_t hash = 0xCBF29CE484222325ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << hash;
  return hex.str();
}

}  // namespace alloyrep::io
