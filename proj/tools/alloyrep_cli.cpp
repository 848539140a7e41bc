// Command-line front end: JSON artifacts in, JSON reports on stdout, a short
// human summary on stderr. Exit codes: 0 ok, 1 failed check, 2 bad input.

#include <alloyrep/io.hpp>
#include <alloyrep/rng.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

namespace fs = std::filesystem;
using namespace alloyrep;
using alloyrep::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct GlobalOpts {
  std::uint64_t seed = 0;
  ToleranceConfig tol;
};

json base_report(const std::string& command, const GlobalOpts& opts,
                 const std::vector<fs::path>& inputs) {
  json digests = json::object();
  for (const fs::path& p : inputs) {
    digests[p.string()] = io::file_digest(p);
  }
  return json{{"command", command},
              {"inputs", digests},
              {"seed", opts.seed},
              {"generator", Rng::kName},
              {"tolerances", io::to_json(opts.tol)},
              {"results", json::object()},
              {"residuals", json::object()}};
}

void emit(const json& report, const std::string& summary) {
  std::cout << report.dump(2) << '\n';
  std::cerr << summary << '\n';
}

int run_check(const GlobalOpts& opts, const std::string& kind,
              const fs::path& path) {
  const json input = io::load_file(path);
  json report = base_report("check", opts, {path});
  report["results"]["kind"] = kind;
  bool ok = true;
  if (kind == "algebra") {
    const AntiAlgebra g = io::anti_algebra_from_json(input);
    Index nonzero = 0;
    for (Index p = 0; p < g.pair_basis().size(); ++p) {
      if (g.basis_bracket(p).norm() != 0.0) ++nonzero;
    }
    report["results"]["dim"] = g.dim();
    report["results"]["nonzero_brackets"] = nonzero;
  } else if (kind == "alloy") {
    const Alloy a = io::alloy_from_json(input);
    std::string why;
    ok = a.well_formed(&why);
    report["results"]["dim"] = a.dim();
    report["results"]["parts"] = a.part_count();
    if (!ok) report["results"]["reason"] = why;
  } else if (kind == "rep") {
    const AlloyRep r = io::rep_from_json(input, path.parent_path());
    const CheckRepReport rr = check_rep(r, opts.tol);
    ok = rr.ok;
    report["results"]["space_dim"] = r.space_dim;
    report["residuals"]["bracket"] = rr.worst_residual;
  } else {  // cross
    const CrossProjRep r = io::cross_from_json(input);
    const CrossProjReport cr = cross_projective_check(r, opts.tol);
    ok = cr.ok;
    report["results"]["space_dim"] = r.space_dim;
    report["residuals"]["defect_span"] = cr.worst_residual;
  }
  report["results"]["ok"] = ok;
  emit(report, std::string("check ") + kind + (ok ? ": ok" : ": FAILED"));
  return ok ? kExitOk : kExitCheckFailed;
}

bool dims_admissible(const std::vector<Index>& dims) {
  if (dims.empty() || dims.front() != 1 || dims.back() != 1) return false;
  for (size_t i = 1; i + 1 < dims.size(); ++i) {
    if (dims[i] > dims[i - 1] + dims[i + 1]) return false;
  }
  for (Index n : dims) {
    if (n < 1) return false;
  }
  return true;
}

int run_build_asl2(const GlobalOpts& opts, const std::vector<Index>& dims,
                   Complex gamma, int spin, const fs::path& out) {
  Asl2Params params;
  if (spin >= 0) {
    params = spin_rep(spin);
  } else {
    if (!dims_admissible(dims)) {
      throw std::invalid_argument("inadmissible block-size vector");
    }
    params.gamma = gamma;
    params.dims = dims;
    Rng rng(opts.seed);
    for (size_t i = 1; i < dims.size(); ++i) {
      params.A.push_back(rng.matrix(dims[i - 1], dims[i]));
      params.B.push_back(rng.matrix(dims[i], dims[i - 1]));
    }
  }
  const AlloyRep rep = build_rep(params);
  const CheckRepReport rr = check_rep(rep, opts.tol);

  json file = io::rep_to_json(rep);
  file["asl2_params"] = io::to_json(params);
  io::write_file(out, file);

  json report = base_report("build-asl2", opts, {});
  report["results"]["output"] = out.string();
  report["results"]["dims"] = params.dims;
  report["results"]["total_dim"] = rep.space_dim;
  report["results"]["ok"] = rr.ok;
  report["residuals"]["bracket"] = rr.worst_residual;
  emit(report, "build-asl2: wrote " + out.string());
  return rr.ok ? kExitOk : kExitCheckFailed;
}

int run_tensor_decompose(const GlobalOpts& opts, const fs::path& a_path,
                         const fs::path& b_path, const fs::path& out_dir) {
  const AlloyRep a = io::rep_from_json(io::load_file(a_path), a_path.parent_path());
  const AlloyRep b = io::rep_from_json(io::load_file(b_path), b_path.parent_path());
  const AlloyRep prod = tensor_product(a, b, opts.tol);
  const Decomposition dec = decompose(prod, opts.seed, opts.tol);

  fs::create_directories(out_dir);
  std::vector<Index> dims;
  json files = json::array();
  for (size_t k = 0; k < dec.components.size(); ++k) {
    const fs::path comp = out_dir / ("component_" + std::to_string(k) + ".json");
    io::write_file(comp, io::rep_to_json(dec.components[k]));
    dims.push_back(dec.components[k].space_dim);
    files.push_back(comp.string());
  }
  io::write_file(out_dir / "basis.json",
                 json{{"format", 1}, {"basis", io::to_json(dec.basis)}});

  // Reassembly residual of the block-diagonal against the tensor product.
  const CMatrix s_inv = dec.basis.inverse();
  double residual = 0.0;
  for (size_t k = 0; k < prod.mats.size(); ++k) {
    CMatrix block = CMatrix::Zero(prod.space_dim, prod.space_dim);
    Index at = 0;
    for (const AlloyRep& c : dec.components) {
      block.block(at, at, c.space_dim, c.space_dim) = c.mats[k];
      at += c.space_dim;
    }
    residual = std::max(residual, (dec.basis * block * s_inv - prod.mats[k])
                                      .lpNorm<Eigen::Infinity>());
  }

  json report = base_report("tensor-decompose", opts, {a_path, b_path});
  report["results"]["component_dims"] = dims;
  report["results"]["files"] = files;
  report["results"]["basis"] = (out_dir / "basis.json").string();
  report["residuals"]["reassembly"] = residual;
  std::string summary = "tensor-decompose: dims";
  for (Index d : dims) summary += " " + std::to_string(d);
  emit(report, summary);
  return kExitOk;
}

int run_classify(const GlobalOpts& opts, Index dim, int trials, Complex gamma,
                 bool force, const fs::path& out_dir) {
  if (dim > 8 && !force) {
    throw std::invalid_argument(
        "classification above dimension 8 needs --force");
  }
  const auto vectors = enumerate_dim_vectors(dim);
  json table = json::array();
  json counterexamples = json::array();
  int total_samples = 0, total_irreducible = 0, necessity_violations = 0;
  int conditions_ok = 0, conditions_ok_and_irreducible = 0;
  for (size_t v = 0; v < vectors.size(); ++v) {
    const auto records =
        sample_irreps(vectors[v], gamma, trials,
                      Rng::derive(opts.seed, v), opts.tol);
    int irr = 0, cond = 0, both = 0;
    for (const auto& rec : records) {
      ++total_samples;
      if (rec.irreducible) ++irr;
      if (rec.conditions.all_ok()) ++cond;
      if (rec.irreducible && rec.conditions.all_ok()) ++both;
      if (rec.irreducible && !rec.conditions.all_ok()) {
        ++necessity_violations;
        const fs::path file =
            out_dir / ("counterexample_" + std::to_string(necessity_violations) +
                       ".json");
        io::write_file(file, io::to_json(rec.params));
        counterexamples.push_back(file.string());
      }
    }
    total_irreducible += irr;
    conditions_ok += cond;
    conditions_ok_and_irreducible += both;
    table.push_back(json{{"dims", vectors[v]},
                         {"samples", records.size()},
                         {"irreducible", irr},
                         {"conditions_ok", cond}});
  }
  json report = base_report("classify", opts, {});
  report["results"]["dim"] = dim;
  report["results"]["gamma"] = io::to_json(gamma);
  report["results"]["vectors"] = table;
  report["results"]["samples"] = total_samples;
  report["results"]["irreducible"] = total_irreducible;
  report["results"]["necessity_violations"] = necessity_violations;
  report["results"]["necessity_agreement"] =
      total_irreducible == 0
          ? 1.0
          : 1.0 - static_cast<double>(necessity_violations) /
                      static_cast<double>(total_irreducible);
  report["results"]["sufficiency_agreement"] =
      conditions_ok == 0
          ? 1.0
          : static_cast<double>(conditions_ok_and_irreducible) /
                static_cast<double>(conditions_ok);
  report["results"]["counterexamples"] = counterexamples;
  emit(report, "classify: " + std::to_string(total_samples) + " samples, " +
                   std::to_string(necessity_violations) +
                   " necessity violations");
  return kExitOk;
}

int run_alloyability(const GlobalOpts& opts, const fs::path& q1_path,
                     const fs::path& q2_path, const fs::path& fact_path,
                     bool canonical, bool search, int restarts, int iters,
                     const fs::path& out) {
  const QuaternaryAlgebra q1 = io::quaternary_from_json(io::load_file(q1_path));
  if (canonical) {
    const CanonicalPartner cp = canonical_partner(q1);
    const AlloyabilityReport check =
        alloyability_check(q1, cp.partner, cp.factorization, opts.tol);
    if (!out.empty()) {
      json file = io::to_json(cp.factorization);
      file["partner"] = io::to_json(cp.partner);
      io::write_file(out, file);
    }
    json report = base_report("alloyability", opts, {q1_path});
    report["results"]["mode"] = "canonical";
    report["results"]["partner_dim"] = cp.partner.dim();
    report["results"]["ok"] = check.ok;
    report["residuals"]["factorization"] = check.worst_residual;
    emit(report, "alloyability canonical: residual " +
                     std::to_string(check.worst_residual));
    return check.ok ? kExitOk : kExitCheckFailed;
  }

  const QuaternaryAlgebra q2 = io::quaternary_from_json(io::load_file(q2_path));
  if (search) {
    if (restarts < 1 || iters < 1) {
      throw std::invalid_argument("search needs positive --restarts and --iters");
    }
    SearchBudget budget;
    budget.restarts = restarts;
    budget.iters = iters;
    budget.seed = opts.seed;
    const SearchResult result = alloyability_search(q1, q2, budget, opts.tol);
    if (!out.empty()) {
      io::write_file(out, io::to_json(result.best));
    }
    const AlloyabilityReport verdict =
        alloyability_check(q1, q2, result.best, opts.tol);
    json per_restart = json::array();
    for (const auto& trace : result.traces) {
      per_restart.push_back(json{{"iterations", trace.size() - 1},
                                 {"final_residual", trace.back()}});
    }
    json report = base_report("alloyability", opts, {q1_path, q2_path});
    report["results"]["mode"] = "search";
    report["results"]["best_restart"] = result.best_restart;
    report["results"]["restarts"] = per_restart;
    report["results"]["converged"] = verdict.ok;
    report["residuals"]["best"] = result.best_residual;
    emit(report, "alloyability search: best residual " +
                     std::to_string(result.best_residual));
    return verdict.ok ? kExitOk : kExitCheckFailed;
  }

  const AlloyFactorization f =
      io::factorization_from_json(io::load_file(fact_path));
  const AlloyabilityReport check = alloyability_check(q1, q2, f, opts.tol);
  json report = base_report("alloyability", opts, {q1_path, q2_path, fact_path});
  report["results"]["mode"] = "check";
  report["results"]["ok"] = check.ok;
  report["residuals"]["factorization"] = check.worst_residual;
  emit(report, std::string("alloyability check: ") + (check.ok ? "ok" : "FAILED"));
  return check.ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for alloys, cross-projective pairs and their representations"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts opts;
  app.add_option("--seed", opts.seed, "Seed for every random draw");
  app.add_option("--rank-tol", opts.tol.rank_tol, "Relative singular-value threshold")
      ->envname("ALLOYREP_RANK_TOL");
  app.add_option("--residual-tol", opts.tol.residual_tol, "Equality-check residual bound")
      ->envname("ALLOYREP_RESIDUAL_TOL");
  app.add_option("--eigen-gap-tol", opts.tol.eigen_gap_tol, "Eigenvalue clustering gap")
      ->envname("ALLOYREP_EIGEN_GAP_TOL");

  auto* check = app.add_subcommand("check", "Validate a JSON artifact");
  std::string check_kind;
  std::string check_path;
  check->add_option("kind", check_kind, "algebra, alloy, rep or cross")
      ->required()
      ->check(CLI::IsMember({"algebra", "alloy", "rep", "cross"}));
  check->add_option("path", check_path, "Input file")->required();

  auto* build = app.add_subcommand("build-asl2", "Build an e0-diagonal asl(2,C) representation");
  std::vector<Index> build_dims;
  double gamma_re = 0.5, gamma_im = 0.0;
  int spin = -1;
  std::string build_out;
  auto* dims_opt = build->add_option("--dims", build_dims, "Block sizes n_0,..,n_N")
                       ->delimiter(',');
  build->add_option("--gamma", gamma_re, "Real part of gamma");
  build->add_option("--gamma-im", gamma_im, "Imaginary part of gamma");
  auto* spin_opt = build->add_option("--spin", spin, "Classical spin fixture of dimension N+1");
  build->add_option("-o,--output", build_out, "Output representation file")->required();
  dims_opt->excludes(spin_opt);

  auto* tensor = app.add_subcommand("tensor-decompose", "Decompose a tensor product");
  std::string tensor_a, tensor_b, tensor_out;
  tensor->add_option("a", tensor_a, "First representation file")->required();
  tensor->add_option("b", tensor_b, "Second representation file")->required();
  tensor->add_option("-o,--output", tensor_out, "Output directory")->required();

  auto* classify = app.add_subcommand("classify", "Sample and cross-validate representations of one total dimension");
  Index classify_dim = 0;
  int classify_trials = 40;
  double cgamma_re = 0.5618, cgamma_im = 0.2393;
  bool classify_force = false;
  std::string classify_out = ".";
  classify->add_option("--dim", classify_dim, "Total dimension")->required();
  classify->add_option("--trials", classify_trials, "Trials per block-size vector");
  classify->add_option("--gamma", cgamma_re, "Real part of gamma");
  classify->add_option("--gamma-im", cgamma_im, "Imaginary part of gamma");
  classify->add_flag("--force", classify_force, "Allow dimensions above 8");
  classify->add_option("-o,--output", classify_out, "Directory for counterexample files");

  auto* alloyability = app.add_subcommand("alloyability", "Check or search mutual factorizations");
  std::string q1_path, q2_path, fact_path, alloy_out;
  bool canonical = false, search = false;
  int restarts = 50, iters = 500;
  alloyability->add_option("--q1", q1_path, "First quaternary algebra")->required();
  alloyability->add_option("--q2", q2_path, "Second quaternary algebra");
  alloyability->add_option("--factorization", fact_path, "Factorization to verify");
  alloyability->add_flag("--canonical", canonical, "Build and verify the canonical partner of --q1");
  alloyability->add_flag("--search", search, "Alternating least squares search");
  alloyability->add_option("--restarts", restarts, "Search restarts");
  alloyability->add_option("--iters", iters, "Iterations per restart");
  alloyability->add_option("-o,--output", alloy_out, "Output factorization file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (opts.tol.rank_tol <= 0 || opts.tol.residual_tol <= 0 ||
        opts.tol.eigen_gap_tol <= 0) {
      throw std::invalid_argument("tolerances must be positive");
    }
    if (*check) return run_check(opts, check_kind, check_path);
    if (*build) {
      if (spin < 0 && build_dims.empty()) {
        throw std::invalid_argument("need --dims or --spin");
      }
      return run_build_asl2(opts, build_dims, {gamma_re, gamma_im}, spin,
                            build_out);
    }
    if (*tensor) return run_tensor_decompose(opts, tensor_a, tensor_b, tensor_out);
    if (*classify) {
      return run_classify(opts, classify_dim, classify_trials,
                          {cgamma_re, cgamma_im}, classify_force, classify_out);
    }
    if (*alloyability) {
      if (!canonical && !search && fact_path.empty()) {
        throw std::invalid_argument(
            "need --canonical, --search, or --factorization");
      }
      if (!canonical && q2_path.empty()) {
        throw std::invalid_argument("need --q2");
      }
      return run_alloyability(opts, q1_path, q2_path, fact_path, canonical,
                              search, restarts, iters, alloy_out);
    }
  } catch (const io::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitBadInput;
}
