#include "fjl/renorm.hpp"

#include <algorithm>
#include <cmath>

#include "fjl/error.hpp"
#include "json.hpp"

namespace fjl {

double theta_one(const SpectralMeasure& m, double u) {
  require(std::isfinite(u), "theta_one: u must be finite");
  if (u == 0.0) return 1.0;
  const double z = 1.0 / u;
  if (m.in_support(z)) fail(ErrorCode::OutOfDomain, "theta_one: 1/u lies in the support");
  return (cauchy_transform(m, z) / u).real();
}

double theta_two(const SpectralMeasure& m, double u, double v) {
  if (std::abs(u - v) > 1e-3 * std::max(std::abs(u), std::abs(v)))
    return (u * theta_one(m, u) - v * theta_one(m, v)) / (u - v);
  // The partial fractions cancel catastrophically here; integrate the kernel.
  for (double w : {u, v})
    if (w != 0.0 && m.in_support(1.0 / w))
      fail(ErrorCode::OutOfDomain, "theta_two: 1/u lies in the support");
  return m.integrate([u, v](double x) { return 1.0 / ((1.0 - u * x) * (1.0 - v * x)); }, 1e-13);
}

RenormKernel::RenormKernel(SpectralMeasure m, RealFn rho, std::string rho_name)
    : m_(std::move(m)), rho_(std::move(rho)), rho_name_(std::move(rho_name)) {
  require(static_cast<bool>(rho_), "rho must be callable");
  require(rho_(0.0) == 0.0, "rho(0) must vanish");
  constexpr double h = 1e-6;
  require((rho_(h) - rho_(-h)) / (2.0 * h) != 0.0, "rho'(0) must be nonzero");
}

double RenormKernel::Theta(double u, double v) const {
  const double ru = rho_(u);
  const double rv = rho_(v);
  return theta_two(ru, rv) / (theta_one(ru) * theta_one(rv));
}

double rho_trig(double u) { return 2.0 * u / (1.0 + u * u); }

double rho_trig_identity_check(double u, double v) {
  require(std::abs(u) < 1.0 && std::abs(v) < 1.0, "rho_trig_identity_check: need |u|, |v| < 1");
  const double ru = rho_trig(u);
  const double rv = rho_trig(v);
  const double rhs = (1.0 + u * v) / (1.0 - u * v);
  const double den = ru * std::sqrt(1.0 - rv * rv) + rv * std::sqrt(1.0 - ru * ru);
  // u = v = 0 is the removable 0/0; the limit is 1.
  if (den == 0.0) return std::abs(1.0 - rhs);
  return std::abs((ru + rv) / den - rhs);
}

std::vector<ProductPair> default_product_grid() {
  std::vector<ProductPair> grid;
  const double lo = std::log(1e-4);
  const double hi = std::log(0.5);
  constexpr int kProducts = 40;
  for (int i = 0; i < kProducts; ++i) {
    const double p = std::exp(lo + (hi - lo) * i / (kProducts - 1));
    for (double beta : {0.5, 0.4, 0.3, 0.2, 0.1}) {
      const double u = std::pow(p, beta);
      grid.push_back(ProductPair{u, p / u});
    }
  }
  return grid;
}

std::string CertificationReport::to_json() const {
  nlohmann::json j{{"family", family},        {"lambda", lambda},
                   {"theta", theta},          {"rho", rho},
                   {"tol", tol},              {"max_violation", max_violation},
                   {"worst_product", worst_product}, {"verdict", verdict}};
  return j.dump();
}

CertificationReport certify_product_dependence(const RenormKernel& k,
                                               const std::vector<ProductPair>& grid, double tol) {
  struct Entry {
    double product;
    double value;
  };
  std::vector<Entry> entries;
  entries.reserve(grid.size());
  for (const ProductPair& pr : grid) entries.push_back(Entry{pr.u * pr.v, k.Theta(pr.u, pr.v)});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.product < b.product; });

  CertificationReport rep;
  rep.family = k.measure().name();
  rep.rho = k.rho_name();
  rep.tol = tol;
  std::size_t start = 0;
  while (start < entries.size()) {
    std::size_t end = start + 1;
    while (end < entries.size() &&
           entries[end].product - entries[start].product <= 1e-14 * std::abs(entries[end].product))
      ++end;
    double lo = entries[start].value;
    double hi = lo;
    for (std::size_t i = start; i < end; ++i) {
      lo = std::min(lo, entries[i].value);
      hi = std::max(hi, entries[i].value);
    }
    if (!(hi - lo <= rep.max_violation)) {
      rep.max_violation = hi - lo;
      rep.worst_product = entries[start].product;
    }
    start = end;
  }
  rep.verdict = rep.max_violation <= tol;
  return rep;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Q_lambda: return "Q_lambda";
    case Family::P_lambda: return "P_lambda";
    case Family::Q_lambda_theta: return "Q_lambda_theta";
  }
  return "?";
}

double kubo_b(const JacobiParams& p) { return 0.5 * kubo_b_as_printed(p); }

double kubo_b_as_printed(const JacobiParams& p) {
  return std::sqrt(p.lambda / ((1.0 - p.theta) * (1.0 - p.lambda * p.theta))) *
         (2.0 * p.theta - 1.0);
}

double kubo_c(const JacobiParams& p) { return 1.0 / (2.0 * (1.0 - p.lambda * p.theta)); }

namespace {

// c0 U_n + c1 U_{n-1} + c2 U_{n-2}
Poly u_combination(int n, double c0, double c1, double c2) {
  require(n >= 0, "polynomial index must be nonnegative");
  return c0 * chebyshev_U(n) + c1 * chebyshev_U(n - 1) + c2 * chebyshev_U(n - 2);
}

void check_lambda(double lambda) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
}

}  // namespace

Poly build_Q_lambda(double lambda, int n) {
  check_lambda(lambda);
  return u_combination(n, 1.0, 0.0, -lambda / (2.0 - lambda));
}

Poly build_P_lambda(double lambda, int n) { return build_P_with_a(a_of_lambda(lambda), n); }

Poly build_P_with_a(double a, int n) { return u_combination(n, 1.0, -2.0 * a, -1.0); }

Poly build_Q_lambda_theta(const JacobiParams& p, int n) {
  const JacobiParams v = JacobiParams::make(p.lambda, p.theta);
  return build_Q_with_bc(kubo_b(v), kubo_c(v), n);
}

Poly build_Q_with_bc(double b, double c, int n) {
  return u_combination(n, 1.0, -2.0 * b, 1.0 - 2.0 * c);
}

ComplexFn gen_Q_lambda(double lambda, double x) {
  check_lambda(lambda);
  const double k = lambda / (2.0 - lambda);
  return [=](std::complex<double> u) { return (1.0 - k * u * u) / (1.0 - 2.0 * u * x + u * u); };
}

ComplexFn gen_P_lambda(double lambda, double x) {
  const double a = a_of_lambda(lambda);
  return [=](std::complex<double> u) {
    return (1.0 - 2.0 * a * u - u * u) / (1.0 - 2.0 * x * u + u * u);
  };
}

ComplexFn gen_Q_lambda_theta(const JacobiParams& p, double x) {
  const double b = kubo_b(p);
  const double c = kubo_c(p);
  return [=](std::complex<double> u) {
    return (1.0 - 2.0 * b * u + (1.0 - 2.0 * c) * u * u) / (1.0 - 2.0 * u * x + u * u);
  };
}

}  // namespace fjl
