#include "conelap/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include "conelap/errors.hpp"
#include "conelap/estimator.hpp"
#include "conelap/fgft.hpp"
#include "conelap/glasso.hpp"
#include "conelap/matrix_io.hpp"
#include "conelap/rng.hpp"

namespace conelap {

namespace {

struct MethodPlan {
  std::string method;
  std::size_t k = 0;
  std::optional<EigenPrior> prior;
};

std::vector<MethodPlan> plan_methods(const BenchConfig& cfg, const GroundTruth& gt) {
  const SymMatrix& truth = gt.laplacian;
  std::vector<MethodPlan> plans;
  const std::size_t n = truth.n();
  if (cfg.prior_source == PriorSource::ground_truth) {
    plans.push_back({"GLASSO", 0, std::nullopt});
    const EigenDecomp eig = eig_sym(truth);
    for (std::size_t k : cfg.ks) plans.push_back({"Proj-Lasso", k, EigenPrior::leading(eig, k)});
  } else {
    const SymMatrix source = cfg.givens_input == GivensInput::ground_truth
                                 ? truth
                                 : solve_glasso(gt.empirical_cov, cfg.solver.rho, cfg.solver).laplacian;
    const GivensProduct gp = greedy_givens_diagonalize(source, cfg.givens_rotations);
    plans.push_back({"Proj-Lasso", n, approximate_eigenvectors(gp, n)});
    for (std::size_t k : cfg.ks) plans.push_back({"Proj-Lasso", k, approximate_eigenvectors(gp, k)});
  }
  return plans;
}

std::string column_label(const MethodSummary& s, PriorSource source, std::size_t n) {
  if (s.method == "GLASSO") return "GLASSO";
  if (source == PriorSource::givens && s.k == n) return "Givens K=N";
  return s.method + " K=" + std::to_string(s.k);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

void BenchConfig::validate() const {
  if (trials == 0) throw ValidationError("BenchConfig.trials must be >= 1");
  graph.validate();
  solver.validate();
  for (std::size_t k : ks)
    if (k == 0 || k > graph.n) throw ValidationError("BenchConfig.ks entries must be in [1, n]");
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) {
  return derive_seed(base_seed, trial);
}

TrialReport run_trial(const BenchConfig& cfg, std::size_t trial) {
  TrialReport report;
  report.trial = trial;
  report.seed = trial_seed(cfg.base_seed, trial);

  GraphSpec spec = cfg.graph;
  spec.seed = report.seed;
  GroundTruth gt;
  std::vector<MethodPlan> plans;
  try {
    gt = generate(spec);
    report.truth = gt.laplacian;
    plans = plan_methods(cfg, gt);
  } catch (const std::exception& e) {
    report.error = e.what();
    return report;
  }

  for (auto& plan : plans) {
    MethodResult r;
    r.method = plan.method;
    r.k = plan.k;
    try {
      if (plan.prior) {
        EstimateReport est = proj_lasso(gt.empirical_cov, *plan.prior, cfg.solver);
        r.converged = est.converged;
        r.iterations = est.outer_iters;
        r.learned = std::move(est.laplacian);
      } else {
        GlassoResult g = solve_glasso(gt.empirical_cov, cfg.solver.rho, cfg.solver);
        r.converged = g.converged;
        r.iterations = g.sweeps;
        r.learned = std::move(g.laplacian);
      }
      r.metrics = compare_laplacians(gt.laplacian, r.learned, cfg.scaling);
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    report.methods.push_back(std::move(r));
  }
  return report;
}

BenchReport run_bench(const BenchConfig& cfg) {
  cfg.validate();
  BenchReport out;
  out.config = cfg;
  out.trials.resize(cfg.trials);

  std::size_t workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  workers = std::clamp<std::size_t>(workers, 1, cfg.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) out.trials[t] = run_trial(cfg, t);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (const auto& trial : out.trials)
    for (const auto& m : trial.methods) {
      auto it = std::find_if(out.summary.begin(), out.summary.end(), [&](const MethodSummary& s) {
        return s.method == m.method && s.k == m.k;
      });
      if (it == out.summary.end()) {
        out.summary.push_back({m.method, m.k, 0, {0.0, 0.0, 0.0}});
        it = std::prev(out.summary.end());
      }
      if (!m.ok) continue;
      ++it->count;
      it->mean.re += m.metrics.re;
      it->mean.deltacon += m.metrics.deltacon;
      it->mean.lambda_dist += m.metrics.lambda_dist;
    }
  for (auto& s : out.summary)
    if (s.count > 0) {
      const double inv = 1.0 / static_cast<double>(s.count);
      s.mean.re *= inv;
      s.mean.deltacon *= inv;
      s.mean.lambda_dist *= inv;
    }
  return out;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "trial,seed,method,k,re,deltacon,lambda_dist,converged,iterations,status\n";
  for (const auto& t : report.trials) {
    if (!t.error.empty()) {
      os << t.trial << ',' << t.seed << ",,,,,,,,\"" << t.error << "\"\n";
      continue;
    }
    for (const auto& m : t.methods) {
      os << t.trial << ',' << t.seed << ',' << m.method << ',' << m.k << ',';
      if (m.ok)
        os << io::format_number(m.metrics.re) << ',' << io::format_number(m.metrics.deltacon) << ','
           << io::format_number(m.metrics.lambda_dist) << ',' << (m.converged ? 1 : 0) << ','
           << m.iterations << ",ok\n";
      else
        os << ",,,,," << '"' << m.error << "\"\n";
    }
  }
  for (const auto& s : report.summary)
    os << "mean,," << s.method << ',' << s.k << ',' << io::format_number(s.mean.re) << ','
       << io::format_number(s.mean.deltacon) << ',' << io::format_number(s.mean.lambda_dist)
       << ",," << s.count << ",mean\n";
  return os.str();
}

std::string bench_markdown(const BenchReport& report) {
  const auto& cfg = report.config;
  std::ostringstream os;
  os << "| Metric |";
  for (const auto& s : report.summary)
    os << ' ' << column_label(s, cfg.prior_source, cfg.graph.n) << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < report.summary.size(); ++i) os << "---|";
  os << '\n';

  auto row = [&](const char* name, double MetricTriple::*field) {
    os << "| " << name << " |";
    for (const auto& s : report.summary) os << ' ' << fmt(s.mean.*field) << " |";
    os << '\n';
  };
  row("RE", &MetricTriple::re);
  row("DeltaCon", &MetricTriple::deltacon);
  row("lambda-distance", &MetricTriple::lambda_dist);

  os << "\nAverages over " << cfg.trials << " trials (n = " << cfg.graph.n
     << ", M = " << cfg.graph.m_signals << ", rho = " << io::format_number(cfg.solver.rho)
     << ", tol = " << io::format_number(cfg.solver.tol) << ", base seed " << cfg.base_seed << ").\n";
  os << "DeltaCon: root-Euclidean affinity distance, |w| degrees, eps = 1/(1+max degree), "
        "negative affinities clamped to 0. lambda-distance: "
     << (cfg.scaling == SpectrumScaling::raw ? "raw" : "unit-radius") << " spectra.\n";
  if (cfg.prior_source == PriorSource::givens) {
    os << "Priors: rows of a greedy Givens transform (J = " << cfg.givens_rotations
       << " rotations) of the "
       << (cfg.givens_input == GivensInput::ground_truth ? "ground-truth Laplacian"
                                                         : "unconstrained GLASSO estimate")
       << "; K=N uses the whole transform.\n";
  } else {
    os << "Priors: leading eigenvectors of the ground-truth Laplacian.\n";
    os << "\nReference values reported in the literature for baselines not run here "
          "(not recomputed): GL-SigRep RE 0.7740, DeltaCon 0.9449, lambda-distance 8.7168; "
          "DDGL RE 0.7543, DeltaCon 0.9407, lambda-distance 28.7918.\n";
  }
  return os.str();
}

}  // namespace conelap
