#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fjl/measures.hpp"
#include "fjl/poly.hpp"

namespace fjl {

/// theta(u) = integral of 1/(1 - u x), evaluated as (1/u) G(1/u); theta(0) = 1.
/// Throws OutOfDomain when 1/u hits the support.
double theta_one(const SpectralMeasure& m, double u);

/// theta(u, v) = integral of 1/((1 - u x)(1 - v x)) = (u theta(u) - v theta(v))/(u - v).
/// When |u - v| <= 1e-3 max(|u|, |v|), including u == v, the kernel is
/// integrated directly instead.
double theta_two(const SpectralMeasure& m, double u, double v);

using RealFn = std::function<double(double)>;

class RenormKernel {
 public:
  /// Rejects rho with rho(0) != 0 or a vanishing difference quotient at 0.
  RenormKernel(SpectralMeasure m, RealFn rho, std::string rho_name);

  const SpectralMeasure& measure() const noexcept { return m_; }
  const std::string& rho_name() const noexcept { return rho_name_; }
  double rho(double u) const { return rho_(u); }

  double theta_one(double u) const { return fjl::theta_one(m_, u); }
  double theta_two(double u, double v) const { return fjl::theta_two(m_, u, v); }

  /// theta(rho(u), rho(v)) / (theta(rho(u)) theta(rho(v))).
  double Theta(double u, double v) const;

 private:
  SpectralMeasure m_;
  RealFn rho_;
  std::string rho_name_;
};

/// rho(u) = 2u/(1 + u^2).
double rho_trig(double u);

/// |lhs - (1 + uv)/(1 - uv)| with
/// lhs = (rho(u) + rho(v)) / (rho(u) sqrt(1 - rho(v)^2) + rho(v) sqrt(1 - rho(u)^2)).
double rho_trig_identity_check(double u, double v);

struct ProductPair {
  double u = 0.0;
  double v = 0.0;
};

/// 40 log-spaced products p in [1e-4, 0.5], each split as u = p^beta, v = p/u
/// for beta in {0.5, 0.4, 0.3, 0.2, 0.1}.
std::vector<ProductPair> default_product_grid();

struct CertificationReport {
  std::string family;
  double lambda = 0.0;
  double theta = 0.0;
  std::string rho;
  double tol = 0.0;
  double max_violation = 0.0;
  double worst_product = 0.0;
  bool verdict = false;

  std::string to_json() const;
};

/// Groups the pairs by uv (relative 1e-14) and records the largest spread of
/// Theta within a group. verdict = max_violation <= tol.
CertificationReport certify_product_dependence(const RenormKernel& k,
                                               const std::vector<ProductPair>& grid, double tol);

enum class Family { Q_lambda, P_lambda, Q_lambda_theta };

const char* family_name(Family f);

/// Kubo's b as it has to be for Q_n^{lambda,theta} to be orthogonal for
/// nu_lambda_theta: (1/2) sqrt(lambda/((1-theta)(1-lambda theta))) (2 theta - 1),
/// which is also the mean of nu_lambda_theta.
double kubo_b(const JacobiParams& p);
/// The same expression without the factor 1/2.
double kubo_b_as_printed(const JacobiParams& p);
/// c = 1/(2(1 - lambda theta)).
double kubo_c(const JacobiParams& p);

/// U_n - (lambda/(2-lambda)) U_{n-2}
Poly build_Q_lambda(double lambda, int n);
/// U_n - 2a U_{n-1} - U_{n-2} with a = a_of_lambda(lambda).
Poly build_P_lambda(double lambda, int n);
/// Same with an explicit a.
Poly build_P_with_a(double a, int n);
/// U_n - 2b U_{n-1} + (1 - 2c) U_{n-2} with b = kubo_b, c = kubo_c.
Poly build_Q_lambda_theta(const JacobiParams& p, int n);
/// Same with explicit b, c.
Poly build_Q_with_bc(double b, double c, int n);

/// Generating functions in u at fixed x; coefficient n is the n-th polynomial.
ComplexFn gen_Q_lambda(double lambda, double x);
ComplexFn gen_P_lambda(double lambda, double x);
ComplexFn gen_Q_lambda_theta(const JacobiParams& p, double x);

}  // namespace fjl
