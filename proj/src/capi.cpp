#include "fjl/fjl.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "fjl/error.hpp"
#include "fjl/fock.hpp"
#include "fjl/martingale.hpp"
#include "fjl/measures.hpp"
#include "fjl/recurrence.hpp"
#include "fjl/renorm.hpp"
#include "fjl/simulator.hpp"
#include "fjl/verify.hpp"

struct fjl_measure {
  fjl::SpectralMeasure m;
};

struct fjl_report {
  fjl::VerifyReport r;
  std::string json;
};

struct fjl_sim {
  fjl::SimResult r;
  std::string histogram;
  std::string series;
  std::string manifest;
};

namespace {

thread_local std::string g_last_error;

fjl_status set_error(fjl_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

fjl_status from_code(fjl::ErrorCode c) {
  switch (c) {
    case fjl::ErrorCode::InvalidArgument: return FJL_ERR_INVALID_ARGUMENT;
    case fjl::ErrorCode::OutOfDomain: return FJL_ERR_OUT_OF_DOMAIN;
    case fjl::ErrorCode::NonConvergence: return FJL_ERR_NON_CONVERGENCE;
    case fjl::ErrorCode::PositivityLoss: return FJL_ERR_POSITIVITY_LOSS;
  }
  return FJL_ERR_INTERNAL;
}

template <class F>
fjl_status guarded(F&& f) {
  try {
    f();
    return FJL_OK;
  } catch (const fjl::Error& e) {
    return set_error(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FJL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FJL_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(FJL_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) fjl::fail(fjl::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

fjl::Family parse_family(const std::string& name) {
  if (name == "Q_lambda") return fjl::Family::Q_lambda;
  if (name == "P_lambda") return fjl::Family::P_lambda;
  if (name == "Q_lambda_theta") return fjl::Family::Q_lambda_theta;
  fjl::fail(fjl::ErrorCode::InvalidArgument, "family must be Q_lambda, P_lambda or Q_lambda_theta");
}

void copy_js(const fjl::JacobiSzego& js, double* alpha, double* omega) {
  for (std::size_t k = 0; k < js.alpha.size(); ++k) alpha[k] = js.alpha[k];
  if (omega)
    for (std::size_t k = 0; k < js.omega.size(); ++k) omega[k] = js.omega[k];
}

}  // namespace

extern "C" {

const char* fjl_last_error(void) { return g_last_error.c_str(); }

const char* fjl_status_name(fjl_status s) {
  switch (s) {
    case FJL_OK: return "ok";
    case FJL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FJL_ERR_OUT_OF_DOMAIN: return "out of domain";
    case FJL_ERR_NON_CONVERGENCE: return "non-convergence";
    case FJL_ERR_POSITIVITY_LOSS: return "positivity loss";
    case FJL_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case FJL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fjl_version(void) { return "1.0.0"; }

fjl_status fjl_measure_create(const char* family, double lambda, double theta, fjl_measure** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const std::string f = str(family);
    if (f == "mu") {
      *out = new fjl_measure{fjl::mu_lambda_theta(fjl::JacobiParams::make(lambda, theta))};
    } else if (f == "nu") {
      *out = new fjl_measure{fjl::nu_lambda(lambda)};
    } else if (f == "nu_theta") {
      *out = new fjl_measure{fjl::nu_lambda_theta(fjl::JacobiParams::make(lambda, theta))};
    } else if (f == "xi") {
      fjl::require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
      *out = new fjl_measure{fjl::xi_lambda(lambda)};
    } else {
      fjl::fail(fjl::ErrorCode::InvalidArgument, "measure family must be mu, nu, nu_theta or xi");
    }
  });
}

void fjl_measure_destroy(fjl_measure* m) { delete m; }

fjl_status fjl_measure_name(const fjl_measure* m, const char** out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = m->m.name().c_str();
  });
}

fjl_status fjl_measure_support(const fjl_measure* m, double* lo, double* hi) {
  return guarded([&] {
    need(m, "measure");
    need(lo, "lo");
    need(hi, "hi");
    *lo = m->m.support_lo();
    *hi = m->m.support_hi();
  });
}

fjl_status fjl_measure_density(const fjl_measure* m, double x, double* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = m->m.density(x);
  });
}

fjl_status fjl_measure_cdf(const fjl_measure* m, double x, double* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = fjl::cdf(m->m, x);
  });
}

fjl_status fjl_measure_ac_mass(const fjl_measure* m, double* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = m->m.ac_mass();
  });
}

fjl_status fjl_measure_atoms(const fjl_measure* m, double* locations, double* weights, size_t cap, size_t* count) {
  fjl_status s = guarded([&] {
    need(m, "measure");
    need(count, "count");
    const auto atoms = m->m.atoms();
    *count = atoms.size();
    if (cap > 0) {
      need(locations, "locations");
      need(weights, "weights");
    }
    for (std::size_t i = 0; i < atoms.size() && i < cap; ++i) {
      locations[i] = atoms[i].location;
      weights[i] = atoms[i].weight;
    }
  });
  if (s == FJL_OK && cap > 0 && *count > cap) return set_error(FJL_ERR_BUFFER_TOO_SMALL, "atom buffer too small");
  return s;
}

fjl_status fjl_measure_moments(const fjl_measure* m, int k_max, double* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    const auto mom = fjl::moments(m->m, k_max);
    for (std::size_t k = 0; k < mom.size(); ++k) out[k] = mom[k];
  });
}

fjl_status fjl_measure_cauchy(const fjl_measure* m, double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    need(m, "measure");
    need(out_re, "out_re");
    need(out_im, "out_im");
    const std::complex<double> g = fjl::cauchy_transform(m->m, {re, im});
    *out_re = g.real();
    *out_im = g.imag();
  });
}

fjl_status fjl_measure_stieltjes_invert(const fjl_measure* m, double x, double* out) {
  return guarded([&] {
    need(m, "measure");
    need(out, "out");
    *out = fjl::stieltjes_invert(m->m, x);
  });
}

fjl_status fjl_poly_family(const char* family, double lambda, double theta, int n, double* coeffs) {
  return guarded([&] {
    need(coeffs, "coeffs");
    fjl::require(n >= 0 && n <= 60, "n must lie in [0, 60]");
    fjl::Poly p;
    switch (parse_family(str(family))) {
      case fjl::Family::Q_lambda: p = fjl::build_Q_lambda(lambda, n); break;
      case fjl::Family::P_lambda:
        fjl::require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
        p = fjl::build_P_lambda(lambda, n);
        break;
      case fjl::Family::Q_lambda_theta:
        p = fjl::build_Q_lambda_theta(fjl::JacobiParams::make(lambda, theta), n);
        break;
    }
    for (int k = 0; k <= n; ++k) coeffs[k] = p.coeff(k);
  });
}

fjl_status fjl_jacobi_stated(const char* family, double lambda, double theta, int n_max, double* alpha,
                             double* omega) {
  return guarded([&] {
    need(alpha, "alpha");
    if (n_max > 0) need(omega, "omega");
    fjl::require(n_max >= 0 && n_max <= 1000, "n_max must lie in [0, 1000]");
    const fjl::Family f = parse_family(str(family));
    fjl::require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
    copy_js(fjl::stated_params(f, fjl::JacobiParams{lambda, theta}, n_max), alpha, omega);
  });
}

fjl_status fjl_jacobi_extract(const fjl_measure* m, int n_max, double* alpha, double* omega) {
  return guarded([&] {
    need(m, "measure");
    need(alpha, "alpha");
    if (n_max > 0) need(omega, "omega");
    fjl::require(n_max >= 0 && n_max <= 200, "n_max must lie in [0, 200]");
    copy_js(fjl::extract_from_measure(m->m, n_max), alpha, omega);
  });
}

fjl_status fjl_fock_moments(const double* alpha, const double* omega, int dim, int k_max, double* out) {
  return guarded([&] {
    need(alpha, "alpha");
    need(out, "out");
    fjl::require(dim >= 1 && dim <= 100000, "dim must lie in [1, 100000]");
    if (dim > 1) need(omega, "omega");
    fjl::JacobiSzego js;
    js.alpha.assign(alpha, alpha + dim);
    if (dim > 1) js.omega.assign(omega, omega + dim - 1);
    const auto mom = fjl::FockSpace::build(js, dim).vacuum_moments(k_max);
    for (std::size_t k = 0; k < mom.size(); ++k) out[k] = mom[k];
  });
}

fjl_status fjl_martingale_residual(const char* family, double lambda, int n, double* out) {
  return guarded([&] {
    need(out, "out");
    const std::string f = str(family);
    fjl::MartingaleFamily fam;
    if (f == "P")
      fam = fjl::MartingaleFamily::P_lambda;
    else if (f == "Q")
      fam = fjl::MartingaleFamily::Q_lambda;
    else if (f == "P_unrooted")
      fam = fjl::MartingaleFamily::P_lambda_unrooted_a;
    else
      fjl::fail(fjl::ErrorCode::InvalidArgument, "martingale family must be P, Q or P_unrooted");
    fjl::require(n >= 1 && n <= 30, "n must lie in [1, 30]");
    *out = fjl::martingale_residual(lambda, n, fam);
  });
}

void fjl_verify_options_init(fjl_verify_options* o) {
  if (!o) return;
  *o = fjl_verify_options{};
  o->seed = 1;
}

fjl_status fjl_verify(const char* suite, const fjl_verify_options* o, fjl_report** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    fjl::VerifyOptions opts;
    if (o) {
      if (o->n_lambdas > 0) {
        need(o->lambdas, "lambdas");
        opts.lambdas.assign(o->lambdas, o->lambdas + o->n_lambdas);
      }
      if (o->n_thetas > 0) {
        need(o->thetas, "thetas");
        opts.thetas.assign(o->thetas, o->thetas + o->n_thetas);
      }
      opts.n_max = o->n_max;
      opts.k_max = o->k_max;
      if (o->tol > 0.0) opts.tol = o->tol;
      opts.family = str(o->family);
      opts.seed = o->seed;
    }
    auto* r = new fjl_report{fjl::run_verify(str(suite), opts), {}};
    r->json = r->r.to_json();
    *out = r;
  });
}

void fjl_report_destroy(fjl_report* r) { delete r; }

int fjl_report_pass(const fjl_report* r) { return r && r->r.pass() ? 1 : 0; }

double fjl_report_max_residual(const fjl_report* r) {
  return r ? r->r.max_residual() : std::numeric_limits<double>::quiet_NaN();
}

size_t fjl_report_entry_count(const fjl_report* r) { return r ? r->r.entries.size() : 0; }

fjl_status fjl_report_entry(const fjl_report* r, size_t i, const char** label, double* residual, double* tol,
                            int* pass) {
  return guarded([&] {
    need(r, "report");
    fjl::require(i < r->r.entries.size(), "entry index out of range");
    const fjl::VerifyEntry& e = r->r.entries[i];
    if (label) *label = e.label.c_str();
    if (residual) *residual = e.residual;
    if (tol) *tol = e.tol;
    if (pass) *pass = e.pass ? 1 : 0;
  });
}

const char* fjl_report_json(const fjl_report* r) { return r ? r->json.c_str() : ""; }

void fjl_sim_config_init(fjl_sim_config* c) {
  if (!c) return;
  const fjl::SimConfig d;
  *c = fjl_sim_config{};
  c->lambda = d.lambda;
  c->theta = d.theta;
  c->d = d.d;
  c->trials = d.trials;
  c->dt = d.dt;
  c->seed = d.seed;
  c->n_max = d.n_max;
  c->bins = d.bins;
  c->threads = d.threads;
}

fjl_status fjl_simulate(const fjl_sim_config* c, fjl_sim** out) {
  return guarded([&] {
    need(c, "config");
    need(out, "out");
    *out = nullptr;
    fjl::SimConfig cfg;
    cfg.lambda = c->lambda;
    cfg.theta = c->theta;
    cfg.d = c->d;
    cfg.trials = c->trials;
    cfg.dt = c->dt;
    if (c->times) cfg.times.assign(c->times, c->times + c->n_times);
    cfg.seed = c->seed;
    cfg.n_max = c->n_max;
    cfg.bins = c->bins;
    cfg.threads = c->threads;
    auto* s = new fjl_sim{fjl::simulate(cfg), {}, {}, {}};
    s->histogram = s->r.histogram_csv();
    s->series = s->r.series_csv();
    s->manifest = s->r.manifest_json();
    *out = s;
  });
}

void fjl_sim_destroy(fjl_sim* s) { delete s; }

size_t fjl_sim_time_count(const fjl_sim* s) { return s ? s->r.spectra.size() : 0; }

double fjl_sim_ks(const fjl_sim* s, size_t i) {
  if (!s || i >= s->r.ks.size()) return std::numeric_limits<double>::quiet_NaN();
  return s->r.ks[i];
}

fjl_status fjl_sim_spectrum(const fjl_sim* s, size_t i, const double** data, size_t* count) {
  return guarded([&] {
    need(s, "sim");
    need(data, "data");
    need(count, "count");
    fjl::require(i < s->r.spectra.size(), "time index out of range");
    *data = s->r.spectra[i].data();
    *count = s->r.spectra[i].size();
  });
}

fjl_status fjl_sim_series(const fjl_sim* s, char family, int n, size_t i, double* mean, double* stderr_out) {
  return guarded([&] {
    need(s, "sim");
    fjl::require(family == 'P' || family == 'Q', "series family must be 'P' or 'Q'");
    const auto& all = family == 'P' ? s->r.p_series : s->r.q_series;
    fjl::require(n >= 1 && static_cast<std::size_t>(n) <= all.size(), "series degree out of range");
    const auto& ser = all[static_cast<std::size_t>(n - 1)];
    fjl::require(i < ser.size(), "time index out of range");
    if (mean) *mean = ser[i].mean;
    if (stderr_out) *stderr_out = ser[i].stderr_;
  });
}

double fjl_sim_seconds(const fjl_sim* s) { return s ? s->r.seconds : 0.0; }
const char* fjl_sim_histogram_csv(const fjl_sim* s) { return s ? s->histogram.c_str() : ""; }
const char* fjl_sim_series_csv(const fjl_sim* s) { return s ? s->series.c_str() : ""; }
const char* fjl_sim_manifest_json(const fjl_sim* s) { return s ? s->manifest.c_str() : ""; }

}  // extern "C"
