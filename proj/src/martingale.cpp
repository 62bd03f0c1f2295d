#include "fjl/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "fjl/error.hpp"
#include "fjl/renorm.hpp"

namespace fjl {

DriftModel DriftModel::from_measure(const JacobiParams& p, int max_degree) {
  require(max_degree >= 1, "DriftModel: max_degree must be positive");
  return DriftModel(p, fjl::moments(mu_lambda_theta(p), max_degree));
}

DriftModel::DriftModel(const JacobiParams& p, std::vector<double> moments)
    : p_(JacobiParams::make(p.lambda, p.theta)), m_(std::move(moments)) {
  require(!m_.empty(), "DriftModel: need at least m_0");
  require(std::abs(m_[0] - 1.0) < 1e-8, "DriftModel: m_0 must be 1");
  if (m_.size() > 1)
    require(std::abs(m_[1] - p_.theta) < 1e-8, "DriftModel: m_1 must equal theta");
}

Poly DriftModel::drift(const Poly& p) const {
  const int deg = p.degree();
  require(deg < static_cast<int>(m_.size()),
          "drift: polynomial degree exceeds the available moments");
  const double lt = p_.lambda * p_.theta;
  std::vector<double> out(static_cast<std::size_t>(std::max(deg, 0)) + 1, 0.0);
  for (int n = 1; n <= deg; ++n) {
    const double c = p.coeff(n);
    if (c == 0.0) continue;
    out[static_cast<std::size_t>(n - 1)] += c * n * p_.theta * (1.0 - p_.lambda);
    out[static_cast<std::size_t>(n)] -= c * n;
    for (int l = 1; l <= n; ++l) {
      const double a = m_[static_cast<std::size_t>(n - l)];
      const double b = m_[static_cast<std::size_t>(n - l + 1)];
      out[static_cast<std::size_t>(l - 1)] += c * lt * (a + 2.0 * (l - 1) * (a - b));
    }
  }
  return Poly(std::move(out));
}

Poly martingale_candidate(double lambda, int n, MartingaleFamily family) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
  require(n >= 0, "martingale_candidate: n must be nonnegative");
  Poly f;
  switch (family) {
    case MartingaleFamily::P_lambda:
      f = build_P_lambda(lambda, n);
      break;
    case MartingaleFamily::P_lambda_unrooted_a:
      f = build_P_with_a((1.0 - lambda) / (lambda * (2.0 - lambda)), n);
      break;
    case MartingaleFamily::Q_lambda:
      f = build_Q_lambda(lambda, n);
      break;
  }
  const double s = std::sqrt(lambda * (2.0 - lambda));
  return f.compose(Poly{-1.0 / s, 2.0 / s});
}

double martingale_residual(const DriftModel& dm, int n, MartingaleFamily family) {
  require(n >= 1, "martingale_residual: n must be at least 1");
  require(dm.params().theta == 0.5, "martingale_residual: theta must be 1/2");
  const Poly q = martingale_candidate(dm.params().lambda, n, family);
  const Poly r = dm.drift(q) + static_cast<double>(n) * q;
  return r.max_abs_coeff() / q.max_abs_coeff();
}

double martingale_residual(double lambda, int n, MartingaleFamily family) {
  const auto dm = DriftModel::from_measure(JacobiParams::make(lambda, 0.5), std::max(n, 1));
  return martingale_residual(dm, n, family);
}

FlowConstants FlowConstants::make(const JacobiParams& p, double r) {
  const JacobiParams v = JacobiParams::make(p.lambda, p.theta);
  require(v.theta <= 0.5, "flow constants need theta <= 1/2");
  const double rmax = 4.0 * v.lambda * v.theta * v.theta;
  require(std::isfinite(r) && r > 0.0 && r <= rmax, "flow constants need 0 < r <= 4 lambda theta^2");
  FlowConstants fc;
  fc.lambda = v.lambda;
  fc.theta = v.theta;
  fc.c1 = 2.0 * v.theta * (1.0 + v.lambda - 2.0 * v.lambda * v.theta);
  fc.c2 = v.theta * v.theta * (1.0 - v.lambda) * (1.0 - v.lambda);
  fc.c3 = 1.0 - v.theta * (1.0 + v.lambda);
  fc.r = r;
  fc.v0 = 0.5 * (r + fc.c1);
  fc.t0 = -std::log(r / rmax);
  return fc;
}

double FlowConstants::default_r(const JacobiParams& p) {
  return 2.0 * p.lambda * p.theta * p.theta;
}

double flow_Z(const FlowConstants& fc, double t) {
  require(t >= 0.0 && t <= fc.t0 * (1.0 + 1e-14), "flow_Z: t must lie in [0, t0]");
  const double rho = fc.r * std::exp(t);
  return 4.0 * rho / ((rho + fc.c1) * (rho + fc.c1) - 4.0 * fc.c2);
}

double flow_Z_ode_residual(const FlowConstants& fc, double t) {
  constexpr double h = 1e-6;
  require(t - h >= 0.0 && t + h <= fc.t0, "flow_Z_ode_residual: t must be interior");
  const double dz = (flow_Z(fc, t + h) - flow_Z(fc, t - h)) / (2.0 * h);
  const double z = flow_Z(fc, t);
  return std::abs(dz - z * std::sqrt(1.0 - fc.c1 * z + fc.c2 * z * z));
}

double flow_K(const FlowConstants& fc, double t, double C, KForm form, KConvention conv) {
  require(t >= 0.0 && t < fc.t0, "flow_K: t must lie in [0, t0)");
  const double rho = fc.r * std::exp(t);
  const bool printed = conv == KConvention::AsPrinted;
  switch (form) {
    case KForm::General: {
      const double z = flow_Z(fc, t);
      const double sc2 = std::sqrt(fc.c2);
      const double f2 = (rho + fc.c1 + 2.0 * sc2) / (rho + fc.c1 - 2.0 * sc2);
      double f3 = (2.0 - fc.c1 + 2.0 * fc.c3 - rho) / (2.0 - fc.c1 - 2.0 * fc.c3 - rho);
      if (printed) f3 = 1.0 / f3;
      return C * std::sqrt(1.0 - z) * std::sqrt(f2) * std::sqrt(f3);
    }
    case KForm::HalfTheta: {
      require(fc.theta == 0.5, "flow_K: the half-theta form needs theta = 1/2");
      const double l = fc.lambda;
      return printed ? C * (l - rho) / (l + rho) : C * (2.0 - l - rho) / (l + rho);
    }
    case KForm::LambdaOne: {
      require(fc.lambda == 1.0, "flow_K: the lambda = 1 form needs lambda = 1");
      const double th = fc.theta;
      const double s = rho + 4.0 * th * (1.0 - th);
      double f3 = (4.0 * (1.0 - th) * (1.0 - th) - rho) / (4.0 * th * th - rho);
      if (printed) f3 = 1.0 / f3;
      return C * std::sqrt(s * s - 4.0 * rho) / s * std::sqrt(f3);
    }
  }
  return 0.0;
}

double flow_K_ode_residual(const FlowConstants& fc, double t, KForm form, KConvention conv) {
  constexpr double h = 1e-6;
  require(t - h >= 0.0 && t + h < fc.t0, "flow_K_ode_residual: t must be interior");
  const double k = flow_K(fc, t, 1.0, form, conv);
  const double dk = (flow_K(fc, t + h, 1.0, form, conv) - flow_K(fc, t - h, 1.0, form, conv)) / (2.0 * h);
  const double z = flow_Z(fc, t);
  const MuCauchyClosedForm g(JacobiParams{fc.lambda, fc.theta});
  const double gz = g(std::complex<double>(1.0 / z, 0.0)).real();
  const double coef = fc.lambda * fc.theta * gz + fc.theta * (1.0 - fc.lambda) * z;
  return std::abs(dk + k * coef) / std::abs(k);
}

std::complex<double> cauchy_mu_half(double lambda, std::complex<double> z) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "z must be finite");
  if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= 1.0)
    fail(ErrorCode::OutOfDomain, "cauchy_mu_half: z lies in [0, 1]");
  const double s = std::sqrt(lambda * (2.0 - lambda));
  const double xp = 0.5 * (1.0 + s);
  const double xm = 0.5 * (1.0 - s);
  const std::complex<double> root = 2.0 * std::sqrt(z - xp) * std::sqrt(z - xm);
  return ((1.0 - lambda) * (2.0 * z - 1.0) - root) / (2.0 * lambda * z * (1.0 - z));
}

}  // namespace fjl
