// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fjl/fjl.h"

namespace {

// Exit codes: 0 pass, 1 violation, 2 non-convergence, 3 invalid parameters,
// 4 anything else (I/O, internal).
constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitOther = 4;

struct CliFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(fjl_status s) {
  switch (s) {
    case FJL_OK: return kExitPass;
    case FJL_ERR_INVALID_ARGUMENT:
    case FJL_ERR_OUT_OF_DOMAIN: return kExitInvalid;
    case FJL_ERR_NON_CONVERGENCE:
    case FJL_ERR_POSITIVITY_LOSS: return kExitNonConvergence;
    default: return kExitOther;
  }
}

void check(fjl_status s) {
  if (s != FJL_OK) throw CliFailure{exit_code_for(s), std::string(fjl_status_name(s)) + ": " + fjl_last_error()};
}

struct MeasureDeleter {
  void operator()(fjl_measure* m) const { fjl_measure_destroy(m); }
};
struct ReportDeleter {
  void operator()(fjl_report* r) const { fjl_report_destroy(r); }
};
struct SimDeleter {
  void operator()(fjl_sim* s) const { fjl_sim_destroy(s); }
};
using MeasurePtr = std::unique_ptr<fjl_measure, MeasureDeleter>;

MeasurePtr make_measure(const std::string& family, double lambda, double theta) {
  fjl_measure* m = nullptr;
  check(fjl_measure_create(family.c_str(), lambda, theta, &m));
  return MeasurePtr(m);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!(f << text)) throw CliFailure{kExitOther, "cannot write " + path};
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Common {
  double lambda = 1.0;
  double theta = 0.5;
  std::string out = "-";
};

// ---- density ---------------------------------------------------------------

struct DensityArgs : Common {
  std::string family = "mu";
  int npoints = 201;
};

int run_density(const DensityArgs& a) {
  if (a.npoints < 1) throw CliFailure{kExitInvalid, "--npoints must be positive"};
  const MeasurePtr m = make_measure(a.family, a.lambda, a.theta);
  double lo = 0.0;
  double hi = 0.0;
  check(fjl_measure_support(m.get(), &lo, &hi));
  const char* name = nullptr;
  check(fjl_measure_name(m.get(), &name));
  std::ostringstream os;
  os << "# schema: fjl.density/1\n# measure: " << name << "\n# support: " << num(lo) << ',' << num(hi) << '\n';
  os << "x,density\n";
  for (int i = 0; i < a.npoints; ++i) {
    // cell midpoints, so edge singularities are never sampled
    const double x = lo + (hi - lo) * (i + 0.5) / a.npoints;
    double d = 0.0;
    check(fjl_measure_density(m.get(), x, &d));
    os << num(x) << ',' << num(d) << '\n';
  }
  std::size_t count = 0;
  check(fjl_measure_atoms(m.get(), nullptr, nullptr, 0, &count));
  std::vector<double> loc(count);
  std::vector<double> w(count);
  if (count > 0) check(fjl_measure_atoms(m.get(), loc.data(), w.data(), count, &count));
  for (std::size_t i = 0; i < count; ++i) os << "# atom," << num(loc[i]) << ',' << num(w[i]) << '\n';
  write_output(a.out, os.str());
  return kExitPass;
}

// ---- moments -----------------------------------------------------------------

struct MomentsArgs : Common {
  std::string family = "mu";
  int k_max = 16;
  double tol = 1e-8;
};

int run_moments(const MomentsArgs& a) {
  if (a.k_max < 0 || a.k_max > 40) throw CliFailure{kExitInvalid, "--kmax must lie in [0, 40]"};
  const MeasurePtr m = make_measure(a.family, a.lambda, a.theta);
  std::vector<double> quad(static_cast<std::size_t>(a.k_max) + 1);
  check(fjl_measure_moments(m.get(), a.k_max, quad.data()));
  const int dim = a.k_max / 2 + 1;
  std::vector<double> alpha(static_cast<std::size_t>(dim));
  std::vector<double> omega(static_cast<std::size_t>(dim));
  check(fjl_jacobi_extract(m.get(), dim - 1, alpha.data(), omega.data()));
  std::vector<double> fock(quad.size());
  check(fjl_fock_moments(alpha.data(), omega.data(), dim, a.k_max, fock.data()));
  const char* name = nullptr;
  check(fjl_measure_name(m.get(), &name));
  std::ostringstream os;
  os << "# schema: fjl.moments/1\n# measure: " << name << "\n# fock: recurrence extracted from the measure\n";
  os << "k,quadrature,fock,rel_diff\n";
  double worst = 0.0;
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const double diff = std::abs(quad[k] - fock[k]) / std::max(1.0, std::abs(quad[k]));
    worst = std::max(worst, diff);
    os << k << ',' << num(quad[k]) << ',' << num(fock[k]) << ',' << num(diff) << '\n';
  }
  write_output(a.out, os.str());
  std::cerr << "moments: max relative difference " << worst << " (tol " << a.tol << ")\n";
  return worst <= a.tol ? kExitPass : kExitViolation;
}

// ---- jacobi ------------------------------------------------------------------

struct JacobiArgs : Common {
  std::string family = "Q_lambda";
  int n_max = 10;
  double tol = 1e-8;
};

int run_jacobi(const JacobiArgs& a) {
  if (a.n_max < 0 || a.n_max > 200) throw CliFailure{kExitInvalid, "--nmax must lie in [0, 200]"};
  std::string measure;
  if (a.family == "Q_lambda")
    measure = "nu";
  else if (a.family == "P_lambda")
    measure = "xi";
  else if (a.family == "Q_lambda_theta")
    measure = "nu_theta";
  else
    throw CliFailure{kExitInvalid, "--family must be Q_lambda, P_lambda or Q_lambda_theta"};
  const std::size_t n = static_cast<std::size_t>(a.n_max);
  std::vector<double> sa(n + 1), so(n + 1), ea(n + 1), eo(n + 1);
  check(fjl_jacobi_stated(a.family.c_str(), a.lambda, a.theta, a.n_max, sa.data(), so.data()));
  const MeasurePtr m = make_measure(measure, a.lambda, a.theta);
  check(fjl_jacobi_extract(m.get(), a.n_max, ea.data(), eo.data()));
  std::ostringstream os;
  os << "# schema: fjl.jacobi/1\n# family: " << a.family << " lambda=" << num(a.lambda)
     << " theta=" << num(a.theta) << "\n";
  os << "n,alpha_stated,omega_stated,alpha_extracted,omega_extracted\n";
  double worst = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    worst = std::max(worst, std::abs(sa[k] - ea[k]));
    os << k << ',' << num(sa[k]) << ',';
    if (k >= 1) {
      worst = std::max(worst, std::abs(so[k - 1] - eo[k - 1]));
      os << num(so[k - 1]);
    }
    os << ',' << num(ea[k]) << ',';
    if (k >= 1) os << num(eo[k - 1]);
    os << '\n';
  }
  write_output(a.out, os.str());
  std::cerr << "jacobi: max |stated - extracted| " << worst << " (tol " << a.tol << ")\n";
  return worst <= a.tol ? kExitPass : kExitViolation;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::vector<double> lambdas;
  std::vector<double> thetas;
  int n_max = 0;
  int k_max = 0;
  double tol = 0.0;
  std::string family;
  std::uint64_t seed = 1;
  std::string out = "-";
};

int run_verify(const VerifyArgs& a) {
  fjl_verify_options o;
  fjl_verify_options_init(&o);
  o.lambdas = a.lambdas.data();
  o.n_lambdas = a.lambdas.size();
  o.thetas = a.thetas.data();
  o.n_thetas = a.thetas.size();
  o.n_max = a.n_max;
  o.k_max = a.k_max;
  o.tol = a.tol;
  o.family = a.family.c_str();
  o.seed = a.seed;
  fjl_report* raw = nullptr;
  check(fjl_verify(a.suite.c_str(), &o, &raw));
  const std::unique_ptr<fjl_report, ReportDeleter> r(raw);
  write_output(a.out, std::string(fjl_report_json(r.get())) + "\n");
  const std::size_t n = fjl_report_entry_count(r.get());
  for (std::size_t i = 0; i < n; ++i) {
    const char* label = nullptr;
    double res = 0.0;
    double tol = 0.0;
    int pass = 0;
    check(fjl_report_entry(r.get(), i, &label, &res, &tol, &pass));
    std::cerr << (pass ? "  ok    " : "  FAIL  ") << label << "  residual=" << res << " tol=" << tol << '\n';
  }
  const bool ok = fjl_report_pass(r.get()) != 0;
  std::cerr << "verify " << a.suite << ": " << (ok ? "PASS" : "FAIL") << " (max residual "
            << fjl_report_max_residual(r.get()) << ")\n";
  return ok ? kExitPass : kExitViolation;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
  double lambda = 1.0;
  double theta = 0.5;
  int d = 200;
  int trials = 200;
  double dt = 1e-2;
  std::vector<double> times{0.0, 0.2, 0.4};
  std::uint64_t seed = 1;
  int n_max = 3;
  int bins = 50;
  unsigned threads = 0;
  std::string out = "fjl_sim";
};

int run_simulate(const SimulateArgs& a) {
  fjl_sim_config c;
  fjl_sim_config_init(&c);
  c.lambda = a.lambda;
  c.theta = a.theta;
  c.d = a.d;
  c.trials = a.trials;
  c.dt = a.dt;
  c.times = a.times.data();
  c.n_times = a.times.size();
  c.seed = a.seed;
  c.n_max = a.n_max;
  c.bins = a.bins;
  c.threads = a.threads;
  fjl_sim* raw = nullptr;
  check(fjl_simulate(&c, &raw));
  const std::unique_ptr<fjl_sim, SimDeleter> s(raw);
  const std::filesystem::path dir(a.out);
  std::filesystem::create_directories(dir);
  write_output((dir / "histogram.csv").string(), fjl_sim_histogram_csv(s.get()));
  write_output((dir / "series.csv").string(), fjl_sim_series_csv(s.get()));
  write_output((dir / "manifest.json").string(), std::string(fjl_sim_manifest_json(s.get())) + "\n");
  for (std::size_t i = 0; i < fjl_sim_time_count(s.get()); ++i)
    std::cerr << "t=" << a.times[i] << "  KS=" << fjl_sim_ks(s.get(), i) << '\n';
  std::cerr << "simulate: " << fjl_sim_seconds(s.get()) << " s, output in " << dir.string() << '\n';
  return kExitPass;
}

void add_params(CLI::App* cmd, Common& c) {
  cmd->add_option("--lambda", c.lambda, "lambda in (0, 1]")->capture_default_str();
  cmd->add_option("--theta", c.theta, "theta in (0, 1/(lambda+1)]")->capture_default_str();
  cmd->add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerics for the stationary free Jacobi process: measures, orthogonal polynomial "
               "families, Fock realisations, martingale checks and a matrix Monte Carlo."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fjl_version()));
  app.footer("Exit codes: 0 pass, 1 violation, 2 non-convergence, 3 invalid parameters, 4 other errors.");

  DensityArgs dens;
  CLI::App* c_density = app.add_subcommand("density", "sample the density of a measure to CSV");
  c_density->add_option("--family", dens.family, "mu | nu | nu_theta | xi")->capture_default_str();
  c_density->add_option("--npoints", dens.npoints, "number of sample points")->capture_default_str();
  add_params(c_density, dens);

  MomentsArgs mom;
  CLI::App* c_moments = app.add_subcommand("moments", "quadrature and Fock vacuum moments of a measure");
  c_moments->add_option("--family", mom.family, "mu | nu | nu_theta | xi")->capture_default_str();
  c_moments->add_option("--kmax", mom.k_max, "largest moment order")->capture_default_str();
  c_moments->add_option("--tol", mom.tol, "allowed relative difference")->capture_default_str();
  add_params(c_moments, mom);

  JacobiArgs jac;
  CLI::App* c_jacobi = app.add_subcommand("jacobi", "stated vs extracted recurrence coefficients");
  c_jacobi->add_option("--family", jac.family, "Q_lambda | P_lambda | Q_lambda_theta")->capture_default_str();
  c_jacobi->add_option("--nmax", jac.n_max, "largest index")->capture_default_str();
  c_jacobi->add_option("--tol", jac.tol, "allowed absolute difference")->capture_default_str();
  add_params(c_jacobi, jac);

  VerifyArgs ver;
  CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  c_verify->add_option("suite", ver.suite,
                       "orthogonality | jacobi | fock | renorm | martingale | flows | mass | cauchy")
      ->required();
  c_verify->add_option("--lambda", ver.lambdas, "lambda grid (comma separated); default per suite")
      ->delimiter(',');
  c_verify->add_option("--theta", ver.thetas, "theta grid (comma separated); default 0.3,0.4,0.5")->delimiter(',');
  c_verify->add_option("--nmax", ver.n_max, "largest degree/index; 0 = suite default")->capture_default_str();
  c_verify->add_option("--kmax", ver.k_max, "largest moment order (fock); 0 = 16")->capture_default_str();
  c_verify->add_option("--tol", ver.tol, "tolerance override; 0 = suite default")->capture_default_str();
  c_verify->add_option("--family", ver.family,
                       "orthogonality/jacobi/renorm: nu | xi | nu_theta | all; martingale: P | Q | P_unrooted");
  c_verify->add_option("--seed", ver.seed, "seed for random sample points (cauchy)")
      ->envname("FJL_SEED")
      ->capture_default_str();
  c_verify->add_option("--out", ver.out, "report path, - for stdout")->capture_default_str();

  SimulateArgs sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "matrix Monte Carlo of the stationary process");
  c_sim->add_option("--lambda", sim.lambda, "lambda in (0, 1]")->capture_default_str();
  c_sim->add_option("--theta", sim.theta, "theta in (0, 1]")->capture_default_str();
  c_sim->add_option("--d", sim.d, "matrix dimension")->capture_default_str();
  c_sim->add_option("--trials", sim.trials, "independent trials")->capture_default_str();
  c_sim->add_option("--dt", sim.dt, "time step of the unitary Brownian motion")->capture_default_str();
  c_sim->add_option("--times", sim.times, "observation times (comma separated, ascending)")
      ->delimiter(',')
      ->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "master seed")->envname("FJL_SEED")->capture_default_str();
  c_sim->add_option("--nmax", sim.n_max, "martingale series degrees 1..nmax (theta = 1/2)")->capture_default_str();
  c_sim->add_option("--bins", sim.bins, "histogram bins on [0, 1]")->capture_default_str();
  c_sim->add_option("--threads", sim.threads, "worker threads, 0 = all cores")->capture_default_str();
  c_sim->add_option("--out", sim.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (c_density->parsed()) return run_density(dens);
    if (c_moments->parsed()) return run_moments(mom);
    if (c_jacobi->parsed()) return run_jacobi(jac);
    if (c_verify->parsed()) return run_verify(ver);
    if (c_sim->parsed()) return run_simulate(sim);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitInvalid;
}
