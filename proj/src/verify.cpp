#include "fjl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "fjl/error.hpp"
#include "fjl/fock.hpp"
#include "fjl/martingale.hpp"
#include "fjl/measures.hpp"
#include "fjl/recurrence.hpp"
#include "fjl/renorm.hpp"
#include "json.hpp"

namespace fjl {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> or_default(const std::vector<double>& given, std::vector<double> fallback) {
  return given.empty() ? fallback : given;
}

struct Grid {
  std::vector<double> lambdas;
  std::vector<double> thetas;

  // (lambda, theta) pairs inside the regime theta <= 1/(lambda + 1)
  std::vector<JacobiParams> regime_pairs(double theta_cap = 1.0) const {
    std::vector<JacobiParams> out;
    for (double l : lambdas)
      for (double t : thetas)
        if (t <= 1.0 / (l + 1.0) + 1e-15 && t <= theta_cap) out.push_back(JacobiParams::make(l, t));
    return out;
  }
};

Grid grid_for(const VerifyOptions& o, std::vector<double> default_lambdas) {
  Grid g{or_default(o.lambdas, std::move(default_lambdas)), or_default(o.thetas, {0.3, 0.4, 0.5})};
  for (double l : g.lambdas) require(l > 0.0 && l <= 1.0, "lambda must lie in (0, 1]");
  for (double t : g.thetas) require(t > 0.0 && t <= 1.0, "theta must lie in (0, 1]");
  return g;
}

VerifyEntry entry(std::string label, double lambda, double theta, double residual, double tol) {
  VerifyEntry e;
  e.label = std::move(label);
  e.lambda = lambda;
  e.theta = theta;
  e.residual = residual;
  e.tol = tol;
  e.pass = residual <= tol;
  return e;
}

VerifyEntry control(std::string label, double lambda, double theta, double residual, double tol) {
  VerifyEntry e = entry(std::move(label), lambda, theta, residual, tol);
  e.expect_violation = true;
  e.pass = residual > tol;
  return e;
}

// Which (family, measure) pairs a selector asks for.
struct FamilyCase {
  Family family;
  std::string tag;
  JacobiParams p;
};

std::vector<FamilyCase> family_cases(const std::string& selector, const Grid& g) {
  const std::string sel = selector.empty() ? "all" : selector;
  require(sel == "all" || sel == "nu" || sel == "xi" || sel == "nu_theta",
          "family must be one of nu, xi, nu_theta, all");
  std::vector<FamilyCase> out;
  for (double l : g.lambdas) {
    if (sel == "all" || sel == "nu") out.push_back({Family::Q_lambda, "nu", JacobiParams{l, 0.5}});
    if (sel == "all" || sel == "xi") out.push_back({Family::P_lambda, "xi", JacobiParams{l, 0.5}});
  }
  if (sel == "all" || sel == "nu_theta")
    for (const JacobiParams& p : g.regime_pairs()) out.push_back({Family::Q_lambda_theta, "nu_theta", p});
  return out;
}

SpectralMeasure measure_of(const FamilyCase& c) {
  switch (c.family) {
    case Family::Q_lambda: return nu_lambda(c.p.lambda);
    case Family::P_lambda: return xi_lambda(c.p.lambda);
    case Family::Q_lambda_theta: return nu_lambda_theta(c.p);
  }
  fail(ErrorCode::InvalidArgument, "unknown family");
}

Poly member_of(const FamilyCase& c, int n) {
  switch (c.family) {
    case Family::Q_lambda: return build_Q_lambda(c.p.lambda, n);
    case Family::P_lambda: return build_P_lambda(c.p.lambda, n);
    case Family::Q_lambda_theta: return build_Q_lambda_theta(c.p, n);
  }
  fail(ErrorCode::InvalidArgument, "unknown family");
}

std::string case_label(const FamilyCase& c) {
  std::string s = std::string(family_name(c.family)) + " vs " + c.tag + "(lambda=" + fmt(c.p.lambda);
  if (c.family == Family::Q_lambda_theta) s += ",theta=" + fmt(c.p.theta);
  return s + ")";
}

void suite_orthogonality(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-9);
  const int n_max = o.n_max > 0 ? o.n_max : 12;
  for (const FamilyCase& c : family_cases(o.family, grid_for(o, {0.3, 0.6, 1.0}))) {
    const SpectralMeasure m = measure_of(c);
    std::vector<Poly> fam;
    for (int n = 0; n <= n_max; ++n) fam.push_back(member_of(c, n));
    const std::size_t dim = static_cast<std::size_t>((n_max + 1) * (n_max + 2) / 2);
    const std::vector<double> gram = m.integrate(
        [&](double x, std::span<double> out) {
          std::vector<double> v(fam.size());
          for (std::size_t n = 0; n < fam.size(); ++n) v[n] = fam[n](x);
          std::size_t k = 0;
          for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i; j < v.size(); ++j) out[k++] = v[i] * v[j];
        },
        dim);
    double off = 0.0;
    double min_norm = INFINITY;
    std::size_t k = 0;
    for (int i = 0; i <= n_max; ++i)
      for (int j = i; j <= n_max; ++j, ++k) {
        if (i == j)
          min_norm = std::min(min_norm, gram[k]);
        else
          off = std::max(off, std::abs(gram[k]));
      }
    rep.entries.push_back(entry(case_label(c) + " max|<P_m,P_n>|", c.p.lambda, c.p.theta, off, tol));
    VerifyEntry pos = entry(case_label(c) + " min <P_n,P_n>", c.p.lambda, c.p.theta, min_norm, 0.0);
    pos.pass = min_norm > 0.0;
    pos.tol = 0.0;
    rep.entries.push_back(pos);
  }
}

void suite_jacobi(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-8);
  const int n_max = o.n_max > 0 ? o.n_max : 10;
  for (const FamilyCase& c : family_cases(o.family, grid_for(o, {0.3, 0.6, 1.0}))) {
    const JacobiSzego stated = stated_params(c.family, c.p, n_max);
    const JacobiSzego got = extract_from_measure(measure_of(c), n_max);
    double diff = 0.0;
    for (std::size_t k = 0; k < stated.alpha.size(); ++k)
      diff = std::max(diff, std::abs(stated.alpha[k] - got.alpha[k]));
    for (std::size_t k = 0; k < stated.omega.size(); ++k)
      diff = std::max(diff, std::abs(stated.omega[k] - got.omega[k]));
    rep.entries.push_back(entry(case_label(c) + " stated vs extracted", c.p.lambda, c.p.theta, diff, tol));
  }
}

double moment_gap(const JacobiSzego& js, const SpectralMeasure& m, int k_max) {
  const int dim = k_max / 2 + 1;
  const std::vector<double> fock = FockSpace::build(js, dim).vacuum_moments(k_max);
  const std::vector<double> quad = moments(m, k_max);
  double gap = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const double scale = std::max(1.0, std::abs(quad[static_cast<std::size_t>(k)]));
    gap = std::max(gap, std::abs(fock[static_cast<std::size_t>(k)] - quad[static_cast<std::size_t>(k)]) / scale);
  }
  return gap;
}

void suite_fock(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-8);
  const int k_max = o.k_max > 0 ? o.k_max : 16;
  require(k_max <= 40, "k_max must be at most 40");
  const int dim = k_max / 2 + 1;
  const Grid g = grid_for(o, {0.3, 0.6, 1.0});
  for (const JacobiParams& p : g.regime_pairs()) {
    const SpectralMeasure mu = mu_lambda_theta(p);
    rep.entries.push_back(entry("mu(lambda=" + fmt(p.lambda) + ",theta=" + fmt(p.theta) + ") extracted",
                                p.lambda, p.theta, moment_gap(extract_from_measure(mu, dim), mu, k_max), tol));
    rep.entries.push_back(entry("nu_theta(lambda=" + fmt(p.lambda) + ",theta=" + fmt(p.theta) + ") stated",
                                p.lambda, p.theta,
                                moment_gap(stated_params(Family::Q_lambda_theta, p, dim), nu_lambda_theta(p), k_max),
                                tol));
  }
  for (double l : g.lambdas) {
    const JacobiParams p{l, 0.5};
    rep.entries.push_back(entry("nu(lambda=" + fmt(l) + ") stated", l, 0.5,
                                moment_gap(stated_params(Family::Q_lambda, p, dim), nu_lambda(l), k_max), tol));
    rep.entries.push_back(entry("xi(lambda=" + fmt(l) + ") stated", l, 0.5,
                                moment_gap(stated_params(Family::P_lambda, p, dim), xi_lambda(l), k_max), tol));
  }
}

void suite_renorm(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-10);
  const std::vector<ProductPair> grid = default_product_grid();
  for (const FamilyCase& c : family_cases(o.family, grid_for(o, {0.3, 0.6, 1.0}))) {
    const SpectralMeasure m = measure_of(c);
    const RenormKernel trig(m, rho_trig, "2u/(1+u^2)");
    const RenormKernel ident(m, [](double u) { return u; }, "u");
    const CertificationReport good = certify_product_dependence(trig, grid, tol);
    const CertificationReport bad = certify_product_dependence(ident, grid, tol);
    rep.entries.push_back(entry(c.tag + " rho=2u/(1+u^2) (lambda=" + fmt(c.p.lambda) +
                                    (c.family == Family::Q_lambda_theta ? ",theta=" + fmt(c.p.theta) : "") + ")",
                                c.p.lambda, c.p.theta, good.max_violation, tol));
    rep.entries.push_back(control(c.tag + " rho=u control (lambda=" + fmt(c.p.lambda) +
                                      (c.family == Family::Q_lambda_theta ? ",theta=" + fmt(c.p.theta) : "") + ")",
                                  c.p.lambda, c.p.theta, bad.max_violation, tol));
  }
}

void suite_martingale(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-9);
  const int n_max = o.n_max > 0 ? o.n_max : 15;
  require(n_max <= 30, "n_max must be at most 30");
  const std::string sel = o.family.empty() ? "P" : o.family;
  MartingaleFamily fam;
  if (sel == "P")
    fam = MartingaleFamily::P_lambda;
  else if (sel == "Q")
    fam = MartingaleFamily::Q_lambda;
  else if (sel == "P_unrooted")
    fam = MartingaleFamily::P_lambda_unrooted_a;
  else
    fail(ErrorCode::InvalidArgument, "martingale family must be one of P, Q, P_unrooted");
  for (double l : grid_for(o, {0.25, 0.5, 0.75, 1.0}).lambdas) {
    const DriftModel dm = DriftModel::from_measure(JacobiParams::make(l, 0.5), n_max + 2);
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) worst = std::max(worst, martingale_residual(dm, n, fam));
    rep.entries.push_back(entry(sel + " family, n<=" + std::to_string(n_max) + " (lambda=" + fmt(l) + ")", l, 0.5,
                                worst, tol));
  }
  if (fam == MartingaleFamily::P_lambda)
    rep.entries.push_back(control("P with unrooted a, n=2 (lambda=0.5)", 0.5, 0.5,
                                  martingale_residual(0.5, 2, MartingaleFamily::P_lambda_unrooted_a), 1e-3));
}

void suite_flows(const VerifyOptions& o, VerifyReport& rep) {
  const double tol_z = o.tol.value_or(1e-7);
  const double tol_k = o.tol.value_or(1e-6);
  for (const JacobiParams& p : grid_for(o, {0.3, 0.6, 1.0}).regime_pairs(0.5)) {
    const FlowConstants fc = FlowConstants::make(p, FlowConstants::default_r(p));
    double z = 0.0;
    double k_gen = 0.0;
    double k_half = 0.0;
    double k_one = 0.0;
    double k_printed = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double t = fc.t0 * i / 11.0;
      z = std::max(z, flow_Z_ode_residual(fc, t));
      k_gen = std::max(k_gen, flow_K_ode_residual(fc, t));
      k_printed = std::max(k_printed, flow_K_ode_residual(fc, t, KForm::General, KConvention::AsPrinted));
      if (p.theta == 0.5) k_half = std::max(k_half, flow_K_ode_residual(fc, t, KForm::HalfTheta));
      if (p.lambda == 1.0) k_one = std::max(k_one, flow_K_ode_residual(fc, t, KForm::LambdaOne));
    }
    const std::string at = "(lambda=" + fmt(p.lambda) + ",theta=" + fmt(p.theta) + ")";
    rep.entries.push_back(entry("Z ODE " + at, p.lambda, p.theta, z, tol_z));
    rep.entries.push_back(entry("K ODE general form " + at, p.lambda, p.theta, k_gen, tol_k));
    if (p.theta == 0.5) rep.entries.push_back(entry("K ODE theta=1/2 form " + at, p.lambda, p.theta, k_half, tol_k));
    if (p.lambda == 1.0) rep.entries.push_back(entry("K ODE lambda=1 form " + at, p.lambda, p.theta, k_one, tol_k));
    VerifyEntry info = entry("K ODE general form as printed " + at, p.lambda, p.theta, k_printed, tol_k);
    info.informational = true;
    rep.entries.push_back(info);
  }
}

void suite_mass(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-9);
  for (double l : grid_for(o, {0.2, 0.5, 0.9}).lambdas) {
    const double a = a_of_lambda(l);
    const double expected = 1.0 - a / std::sqrt(a * a + 1.0);
    rep.entries.push_back(
        entry("xi a.c. mass (lambda=" + fmt(l) + ")", l, 0.5, std::abs(xi_lambda(l).ac_mass() - expected), tol));
  }
}

void suite_cauchy(const VerifyOptions& o, VerifyReport& rep) {
  const double tol = o.tol.value_or(1e-8);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> ux(-0.5, 1.5);
  std::uniform_real_distribution<double> uy(std::log(1e-2), 0.0);
  for (const JacobiParams& p : grid_for(o, {0.3, 0.6, 1.0}).regime_pairs()) {
    const SpectralMeasure mu = mu_lambda_theta(p);
    const MuCauchyClosedForm closed(p);
    const bool half = p.theta == 0.5;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double y = std::exp(uy(rng)) * (i % 2 ? 1.0 : -1.0);
      const std::complex<double> z(ux(rng), y);
      const std::complex<double> gq = cauchy_transform(mu, z);
      const std::complex<double> gc = closed(z);
      const double scale = std::abs(gq);
      worst = std::max(worst, std::abs(gq - gc) / scale);
      if (half) {
        const std::complex<double> gh = cauchy_mu_half(p.lambda, z);
        worst = std::max({worst, std::abs(gh - gq) / scale, std::abs(gh - gc) / scale});
      }
    }
    const std::string at = "(lambda=" + fmt(p.lambda) + ",theta=" + fmt(p.theta) + ")";
    rep.entries.push_back(entry(std::string(half ? "closed forms and quadrature " : "closed form and quadrature ") + at,
                                p.lambda, p.theta, worst, tol));
    double inv = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double x = mu.support_lo() + (mu.support_hi() - mu.support_lo()) * (0.05 + 0.9 * i / 19.0);
      const double dens = mu.density(x);
      inv = std::max(inv, std::abs(stieltjes_invert(mu, x) - dens) / dens);
    }
    rep.entries.push_back(entry("Stieltjes inversion " + at, p.lambda, p.theta, inv, 1e-4));
  }
}

using SuiteFn = std::function<void(const VerifyOptions&, VerifyReport&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table{
      {"orthogonality", suite_orthogonality}, {"jacobi", suite_jacobi}, {"fock", suite_fock},
      {"renorm", suite_renorm},               {"martingale", suite_martingale}, {"flows", suite_flows},
      {"mass", suite_mass},                   {"cauchy", suite_cauchy},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"orthogonality", "jacobi", "fock", "renorm",
                                              "martingale",    "flows",  "mass", "cauchy"};
  return names;
}

bool VerifyReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const VerifyEntry& e) { return e.informational || e.pass; });
}

double VerifyReport::max_residual() const {
  double m = 0.0;
  for (const VerifyEntry& e : entries)
    if (!e.informational && !e.expect_violation && e.tol > 0.0) m = std::max(m, e.residual);
  return m;
}

std::string VerifyReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const VerifyEntry& e : entries)
    list.push_back({{"label", e.label},
                    {"lambda", e.lambda},
                    {"theta", e.theta},
                    {"residual", e.residual},
                    {"tol", e.tol},
                    {"expect_violation", e.expect_violation},
                    {"informational", e.informational},
                    {"pass", e.pass}});
  nlohmann::json j{{"schema", "fjl.verify/1"}, {"suite", suite},           {"pass", pass()},
                   {"max_residual", max_residual()}, {"seconds", seconds}, {"entries", list}};
  return j.dump(2);
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts) {
  const auto& table = suites();
  const auto it = table.find(suite);
  if (it == table.end()) fail(ErrorCode::InvalidArgument, "unknown verify suite '" + suite + "'");
  if (opts.tol) require(*opts.tol > 0.0 && std::isfinite(*opts.tol), "tol must be positive");
  require(opts.n_max >= 0 && opts.k_max >= 0, "n_max and k_max must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.suite = suite;
  it->second(opts, rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace fjl
