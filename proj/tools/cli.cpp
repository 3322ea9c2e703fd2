#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "conelap/cone.hpp"
#include "conelap/errors.hpp"
#include "conelap/estimator.hpp"
#include "conelap/experiment.hpp"
#include "conelap/fgft.hpp"
#include "conelap/glasso.hpp"
#include "conelap/matrix_io.hpp"
#include "conelap/metrics.hpp"
#include "conelap/synthgen.hpp"
#include "run_manifest.hpp"

namespace conelap::cli {

namespace fs = std::filesystem;

namespace {

/// Flags that appear on several subcommands.
struct SolverFlags {
  double rho = kDefaultRho;
  double tol = 1e-4;
  std::size_t max_iter = 0;  // 0: keep the solver default
  std::size_t sweeps_per_round = 1;
  double mu_floor = 1e-8;

  void attach(CLI::App* sub) {
    sub->add_option("--rho", rho, "l1 shrinkage (> 0)")->check(CLI::PositiveNumber);
    sub->add_option("--tol", tol, "convergence tolerance")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--max-iter", max_iter, "iteration cap (rounds or sweeps)");
    sub->add_option("--sweeps-per-round", sweeps_per_round, "BCD sweeps between projections")
        ->check(CLI::PositiveNumber);
    sub->add_option("--mu-floor", mu_floor, "threshold floor as a fraction of mu_1")
        ->check(CLI::Range(0.0, 1.0));
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.rho = rho;
    cfg.tol = tol;
    cfg.max_sweeps_per_round = sweeps_per_round;
    cfg.mu_floor_ratio = mu_floor;
    if (max_iter > 0) {
      cfg.max_outer = max_iter;
      cfg.max_sweeps = max_iter;
    }
    return cfg;
  }
};

std::map<std::string, std::string> resolved_config(const CLI::App* sub) {
  std::map<std::string, std::string> cfg;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    cfg[opt->get_lnames().front()] = value;
  }
  return cfg;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

std::string join_lines(const std::vector<double>& values) {
  std::string s;
  for (double v : values) s += io::format_number(v) + "\n";
  return s;
}

std::string metrics_csv(const MetricTriple& m) {
  return "re,deltacon,lambda_dist\n" + io::format_number(m.re) + "," +
         io::format_number(m.deltacon) + "," + io::format_number(m.lambda_dist) + "\n";
}

std::string metrics_markdown(const MetricTriple& m) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "| Metric | Learned |\n|---|---|\n| RE | %.4f |\n| DeltaCon | %.4f |\n"
                "| lambda-distance | %.4f |\n",
                m.re, m.deltacon, m.lambda_dist);
  return buf;
}

SpectrumScaling parse_scaling(const std::string& s) {
  return s == "unit" ? SpectrumScaling::unit_radius : SpectrumScaling::raw;
}

// ---------------------------------------------------------------------------

struct GenerateCmd {
  GraphSpec spec;
  std::string degree_rule = "absolute";
  std::string out_dir = ".";

  void attach(CLI::App* sub) {
    sub->add_option("--n", spec.n, "node count")->check(CLI::PositiveNumber);
    sub->add_option("--m", spec.m_signals, "signal count")->check(CLI::PositiveNumber);
    sub->add_option("--er-prob", spec.er_prob, "edge probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--sigma", spec.sigma, "Gaussian kernel width")->check(CLI::PositiveNumber);
    sub->add_option("--threshold", spec.weight_threshold, "drop weights below this");
    sub->add_option("--flip-prob", spec.flip_prob, "sign flip probability")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--eps", spec.diag_eps, "covariance ridge")->check(CLI::PositiveNumber);
    sub->add_option("--seed", spec.seed, "random seed");
    sub->add_option("--degree-rule", degree_rule, "absolute | signed")
        ->check(CLI::IsMember({"absolute", "signed"}));
    sub->add_option("--out-dir", out_dir, "output directory");
  }

  int run(const CLI::App* sub, std::ostream& out) {
    spec.degree_rule = degree_rule == "signed" ? DegreeRule::signed_sum : DegreeRule::absolute;
    RunManifest manifest("generate");
    manifest.set_config(resolved_config(sub));
    const GroundTruth gt = generate(spec);
    const fs::path dir = prepare_dir(out_dir);

    std::vector<Vector> positions;
    for (const auto& p : gt.positions) positions.push_back({p[0], p[1]});
    const std::vector<std::pair<std::string, const SymMatrix*>> matrices{
        {"adjacency.txt", &gt.adjacency},
        {"laplacian.txt", &gt.laplacian},
        {"covariance.txt", &gt.covariance},
        {"empirical_cov.txt", &gt.empirical_cov}};
    io::save_vectors(dir / "positions.txt", positions);
    manifest.add_output(dir / "positions.txt");
    for (const auto& [name, m] : matrices) {
      io::save_matrix(dir / name, *m);
      manifest.add_output(dir / name);
    }
    io::save_vectors(dir / "signals.txt", gt.signals);
    manifest.add_output(dir / "signals.txt");
    manifest.write(dir);
    out << "generated n=" << spec.n << " m=" << spec.m_signals << " (attempt " << gt.attempt
        << ") in " << dir.string() << "\n";
    return kOk;
  }
};

struct LearnCmd {
  std::string mode;
  std::string cov_path;
  std::string prior_path;
  std::string out_dir = ".";
  SolverFlags solver;

  void attach(CLI::App* sub) {
    sub->add_option("--mode", mode, "glasso | proj-lasso")
        ->required()
        ->check(CLI::IsMember({"glasso", "proj-lasso"}));
    sub->add_option("--cov", cov_path, "empirical covariance file")->required();
    sub->add_option("--prior", prior_path, "eigen prior file (proj-lasso)");
    sub->add_option("--out-dir", out_dir, "output directory");
    solver.attach(sub);
  }

  int run(const CLI::App* sub, std::ostream& out) {
    if (mode == "proj-lasso" && prior_path.empty())
      throw ValidationError("--prior is required in proj-lasso mode");
    RunManifest manifest("learn");
    manifest.set_config(resolved_config(sub));
    const SolverConfig cfg = solver.config();
    cfg.validate();

    const SymMatrix c_bar = io::load_matrix(cov_path);
    manifest.add_input(cov_path);
    RunRecord record;
    record.mode = mode;
    record.config = resolved_config(sub);
    record.input_hashes[cov_path] = digest_file(cov_path);

    SymMatrix laplacian, covariance;
    std::vector<double> trace;
    if (mode == "glasso") {
      GlassoResult r = solve_glasso(c_bar, cfg.rho, cfg);
      laplacian = std::move(r.laplacian);
      covariance = std::move(r.covariance);
      trace = std::move(r.dual_trace);
      record.iterations = r.sweeps;
      record.converged = r.converged;
      record.last_change = r.last_change;
      record.final_objective = glasso_objective(laplacian, c_bar, cfg.rho);
    } else {
      const EigenPrior prior = io::load_prior(prior_path);
      manifest.add_input(prior_path);
      record.input_hashes[prior_path] = digest_file(prior_path);
      EstimateReport r = proj_lasso(c_bar, prior, cfg);
      laplacian = std::move(r.laplacian);
      covariance = std::move(r.covariance);
      trace = std::move(r.objective_trace);
      record.iterations = r.outer_iters;
      record.converged = r.converged;
      record.last_change = r.last_change;
      record.final_objective = glasso_objective(laplacian, c_bar, cfg.rho);
    }

    const fs::path dir = prepare_dir(out_dir);
    io::save_matrix(dir / "laplacian.txt", laplacian);
    io::save_matrix(dir / "covariance.txt", covariance);
    write_text(dir / "objective_trace.txt", join_lines(trace));
    record.laplacian_path = fs::absolute(dir / "laplacian.txt").string();
    record.covariance_path = fs::absolute(dir / "covariance.txt").string();
    append_run_record(dir / "run.jsonl", record);
    for (const char* f : {"laplacian.txt", "covariance.txt", "objective_trace.txt"})
      manifest.add_output(dir / f);
    manifest.write(dir);

    out << mode << ": " << record.iterations << " iterations, "
        << (record.converged ? "converged" : "NOT converged") << ", objective "
        << io::format_number(record.final_objective) << "\n";
    return record.converged ? kOk : kUnconverged;
  }
};

struct ProjectCmd {
  std::string matrix_path;
  std::string prior_path;
  std::string out_dir = ".";
  double mu_floor = 1e-8;

  void attach(CLI::App* sub) {
    sub->add_option("--matrix", matrix_path, "positive definite matrix to project")->required();
    sub->add_option("--prior", prior_path, "eigen prior file")->required();
    sub->add_option("--mu-floor", mu_floor, "threshold floor as a fraction of mu_1")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--out-dir", out_dir, "output directory");
  }

  int run(const CLI::App* sub, std::ostream& out) {
    RunManifest manifest("project");
    manifest.set_config(resolved_config(sub));
    const SymMatrix p = io::load_matrix(matrix_path);
    const EigenPrior prior = io::load_prior(prior_path);
    manifest.add_input(matrix_path);
    manifest.add_input(prior_path);
    SolverConfig cfg;
    cfg.mu_floor_ratio = mu_floor;
    const ConeProjection proj = project_to_cone(p, prior, cfg);

    const fs::path dir = prepare_dir(out_dir);
    io::save_matrix(dir / "projected.txt", proj.projected);
    io::save_matrix(dir / "c_hat.txt", proj.c_hat);
    write_text(dir / "mus.txt", join_lines(proj.mus));
    std::ostringstream basis;
    basis << proj.completed_basis.size() << ' ' << p.n() << '\n';
    for (const auto& v : proj.completed_basis) {
      for (std::size_t i = 0; i < v.size(); ++i)
        basis << (i ? " " : "") << io::format_number(v[i]);
      basis << '\n';
    }
    write_text(dir / "completed_basis.txt", basis.str());
    for (const char* f : {"projected.txt", "c_hat.txt", "mus.txt", "completed_basis.txt"})
      manifest.add_output(dir / f);
    manifest.write(dir);
    out << "projected " << p.n() << "x" << p.n() << " onto cone with K=" << prior.k() << "\n";
    return kOk;
  }
};

struct FgftCmd {
  std::string laplacian_path;
  std::size_t givens = 200;
  std::size_t k = 1;
  std::string out_path;
  std::string out_dir = ".";

  void attach(CLI::App* sub) {
    sub->add_option("--laplacian", laplacian_path, "symmetric matrix file")->required();
    sub->add_option("--givens", givens, "number of Givens rotations J");
    sub->add_option("--k", k, "number of approximate eigenvectors")->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "prior file (default <out-dir>/prior.txt)");
    sub->add_option("--out-dir", out_dir, "output directory");
  }

  int run(const CLI::App* sub, std::ostream& out) {
    RunManifest manifest("fgft");
    manifest.set_config(resolved_config(sub));
    const SymMatrix l = io::load_matrix(laplacian_path);
    manifest.add_input(laplacian_path);
    if (k > l.n()) throw ValidationError("--k must not exceed the matrix dimension");
    const GivensProduct gp = greedy_givens_diagonalize(l, givens);
    const EigenPrior prior = approximate_eigenvectors(gp, k);

    const fs::path dir = prepare_dir(out_dir);
    const fs::path target = out_path.empty() ? dir / "prior.txt" : fs::path(out_path);
    io::save_prior(target, prior);
    manifest.add_output(target);
    manifest.write(dir);
    out << "fgft: " << gp.rotations.size() << " rotations, off-diagonal norm "
        << io::format_number(off_diagonal_norm(gp.lambda_hat)) << ", wrote K=" << k << " prior to "
        << target.string() << "\n";
    return kOk;
  }
};

struct EvalCmd {
  std::string truth_path;
  std::string learned_path;
  std::string run_log;
  std::string format = "csv";
  std::string scaling = "raw";
  std::string out_dir = ".";

  void attach(CLI::App* sub) {
    sub->add_option("--truth", truth_path, "ground-truth Laplacian")->required();
    sub->add_option("--learned", learned_path, "learned Laplacian");
    sub->add_option("--run-log", run_log, "learner run log; uses its last record");
    sub->add_option("--format", format, "csv | md")->check(CLI::IsMember({"csv", "md"}));
    sub->add_option("--lambda-scaling", scaling, "raw | unit")
        ->check(CLI::IsMember({"raw", "unit"}));
    sub->add_option("--out-dir", out_dir, "output directory");
  }

  int run(const CLI::App* sub, std::ostream& out) {
    if (learned_path.empty() == run_log.empty())
      throw ValidationError("exactly one of --learned and --run-log is required");
    RunManifest manifest("eval");
    manifest.set_config(resolved_config(sub));
    const std::string learned =
        learned_path.empty() ? read_last_run_record(run_log).laplacian_path : learned_path;
    const SymMatrix truth = io::load_matrix(truth_path);
    const SymMatrix l = io::load_matrix(learned);
    manifest.add_input(truth_path);
    manifest.add_input(learned);
    const MetricTriple m = compare_laplacians(truth, l, parse_scaling(scaling));

    const fs::path dir = prepare_dir(out_dir);
    write_text(dir / "eval.csv", metrics_csv(m));
    write_text(dir / "eval.md", metrics_markdown(m));
    manifest.add_output(dir / "eval.csv");
    manifest.add_output(dir / "eval.md");
    manifest.write(dir);
    out << (format == "md" ? metrics_markdown(m) : metrics_csv(m));
    return kOk;
  }
};

struct BenchCmd {
  BenchConfig cfg;
  SolverFlags solver;
  std::string prior_source = "eigs";
  std::string givens_input = "glasso";
  std::string scaling = "raw";
  std::string format = "md";
  std::string out_dir = ".";

  void attach(CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.base_seed, "base seed");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    sub->add_option("--n", cfg.graph.n, "node count")->check(CLI::PositiveNumber);
    sub->add_option("--m", cfg.graph.m_signals, "signals per trial")->check(CLI::PositiveNumber);
    sub->add_option("--prior-source", prior_source, "eigs | givens")
        ->check(CLI::IsMember({"eigs", "givens"}));
    sub->add_option("--givens", cfg.givens_rotations, "Givens rotations J");
    sub->add_option("--givens-input", givens_input, "glasso | truth")
        ->check(CLI::IsMember({"glasso", "truth"}));
    sub->add_option("--k", cfg.ks, "prior sizes")->delimiter(',');
    sub->add_option("--lambda-scaling", scaling, "raw | unit")
        ->check(CLI::IsMember({"raw", "unit"}));
    sub->add_option("--format", format, "csv | md")->check(CLI::IsMember({"csv", "md"}));
    sub->add_option("--out-dir", out_dir, "output directory");
    solver.attach(sub);
  }

  int run(const CLI::App* sub, std::ostream& out, std::ostream& err) {
    RunManifest manifest("bench");
    manifest.set_config(resolved_config(sub));
    cfg.solver = solver.config();
    cfg.prior_source = prior_source == "givens" ? PriorSource::givens : PriorSource::ground_truth;
    cfg.givens_input =
        givens_input == "truth" ? GivensInput::ground_truth : GivensInput::glasso_estimate;
    cfg.scaling = parse_scaling(scaling);

    const BenchReport report = run_bench(cfg);
    const std::string csv = bench_csv(report);
    const std::string md = bench_markdown(report);
    const fs::path dir = prepare_dir(out_dir);
    write_text(dir / "bench.csv", csv);
    write_text(dir / "bench.md", md);
    manifest.add_output(dir / "bench.csv");
    manifest.add_output(dir / "bench.md");
    manifest.write(dir);
    out << (format == "csv" ? csv : md);

    std::size_t failures = 0;
    for (const auto& t : report.trials) {
      if (!t.error.empty()) ++failures;
      for (const auto& m : t.methods) failures += m.ok ? 0 : 1;
    }
    if (failures > 0) {
      err << "bench: " << failures << " failed runs (see status column)\n";
      return kNumeric;
    }
    return kOk;
  }
};

struct VerifyCmd {
  std::string matrix_path;
  std::string prior_path;
  std::string cbar_path;
  double rho = kDefaultRho;
  double tol = 1e-6;
  bool cone = false;
  bool pd = false;
  bool feasible = false;
  std::string out_dir = ".";

  void attach(CLI::App* sub) {
    sub->add_option("--matrix", matrix_path, "matrix to check")->required();
    sub->add_option("--prior", prior_path, "eigen prior file");
    sub->add_flag("--cone", cone, "cone membership (needs --prior)");
    sub->add_flag("--pd", pd, "positive definiteness");
    sub->add_flag("--feasible", feasible, "dual box |C - C_bar| <= rho (needs --cbar)");
    sub->add_option("--cbar", cbar_path, "empirical covariance for --feasible");
    sub->add_option("--rho", rho, "box radius for --feasible")->check(CLI::PositiveNumber);
    sub->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", out_dir, "directory for the run manifest");
  }

  int run(const CLI::App* sub, std::ostream& out) {
    RunManifest manifest("verify");
    manifest.set_config(resolved_config(sub));
    const SymMatrix m = io::load_matrix(matrix_path);
    manifest.add_input(matrix_path);
    if (!cone && !pd && !feasible) {
      pd = true;
      cone = !prior_path.empty();
    }
    if (cone && prior_path.empty()) throw ValidationError("--cone needs --prior");
    if (feasible && cbar_path.empty()) throw ValidationError("--feasible needs --cbar");

    bool all = true;
    auto report = [&](const char* name, bool pass, const std::string& detail) {
      out << (pass ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
      all = all && pass;
    };
    out << "PASS symmetric (loader tolerance " << io::format_number(io::kSymmetryTolerance) << ")\n";
    if (pd) {
      const double lmin = eig_sym(m).eigenvalues.front();
      report("pd", is_positive_definite(m), "min_eigenvalue=" + io::format_number(lmin));
    }
    if (cone) {
      const EigenPrior prior = io::load_prior(prior_path);
      manifest.add_input(prior_path);
      const ConeCheck c = check_cone(m, prior, tol);
      report("cone", c.member,
             "min_eigenvalue=" + io::format_number(c.min_eigenvalue) +
                 " eigvec_residual=" + io::format_number(c.max_eigvec_residual) +
                 " eigval_mismatch=" + io::format_number(c.max_eigval_mismatch));
    }
    if (feasible) {
      const SymMatrix c_bar = io::load_matrix(cbar_path);
      manifest.add_input(cbar_path);
      const double gap = max_abs_diff(m, c_bar);
      report("feasible", gap <= rho + 1e-12, "max_abs_diff=" + io::format_number(gap));
    }
    manifest.write(prepare_dir(out_dir));
    return all ? kOk : kCheckFailed;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"conelap: graph Laplacian learning with eigenvector priors"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  GenerateCmd generate_cmd;
  LearnCmd learn_cmd;
  ProjectCmd project_cmd;
  FgftCmd fgft_cmd;
  EvalCmd eval_cmd;
  BenchCmd bench_cmd;
  VerifyCmd verify_cmd;

  auto* gen = app.add_subcommand("generate", "synthetic ground truth and signals");
  auto* learn = app.add_subcommand("learn", "estimate a Laplacian from a covariance");
  auto* project = app.add_subcommand("project", "project a PD matrix onto a prior's cone");
  auto* fgft = app.add_subcommand("fgft", "approximate eigenvectors by Givens rotations");
  auto* eval = app.add_subcommand("eval", "compare learned and ground-truth Laplacians");
  auto* bench = app.add_subcommand("bench", "multi-trial synthetic benchmark");
  auto* verify = app.add_subcommand("verify", "check invariants of a matrix file");
  generate_cmd.attach(gen);
  learn_cmd.attach(learn);
  project_cmd.attach(project);
  fgft_cmd.attach(fgft);
  eval_cmd.attach(eval);
  bench_cmd.attach(bench);
  verify_cmd.attach(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (*gen) return generate_cmd.run(gen, out);
    if (*learn) return learn_cmd.run(learn, out);
    if (*project) return project_cmd.run(project, out);
    if (*fgft) return fgft_cmd.run(fgft, out);
    if (*eval) return eval_cmd.run(eval, out);
    if (*bench) return bench_cmd.run(bench, out, err);
    if (*verify) return verify_cmd.run(verify, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kValidation;
}

}  // namespace conelap::cli
