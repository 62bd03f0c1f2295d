#pragma once

#include <complex>
#include <vector>

#include "fjl/measures.hpp"
#include "fjl/poly.hpp"

namespace fjl {

/// Finite-variation part of the stationary free Jacobi SDE acting on
/// polynomials in J_t. It needs the moments m_k of mu_lambda_theta.
class DriftModel {
 public:
  /// Moments m_0..m_{max_degree} by quadrature on mu_lambda_theta(p).
  static DriftModel from_measure(const JacobiParams& p, int max_degree = 40);
  /// Caller-supplied moments (e.g. from the Fock realisation).
  DriftModel(const JacobiParams& p, std::vector<double> moments);

  const JacobiParams& params() const noexcept { return p_; }
  const std::vector<double>& moments() const noexcept { return m_; }

  /// Linear; on x^n, n >= 1:
  ///   n theta(1-lambda) x^{n-1} - n x^n
  ///     + lambda theta sum_{l=1}^{n} [m_{n-l} + 2(l-1)(m_{n-l} - m_{n-l+1})] x^{l-1}
  /// and 0 on constants.
  Poly drift(const Poly& p) const;

 private:
  JacobiParams p_;
  std::vector<double> m_;
};

enum class MartingaleFamily {
  /// U_n - 2a U_{n-1} - U_{n-2}, a = (1-lambda)/sqrt(lambda(2-lambda))
  P_lambda,
  /// same with a = (1-lambda)/(lambda(2-lambda))
  P_lambda_unrooted_a,
  /// U_n - (lambda/(2-lambda)) U_{n-2}
  Q_lambda,
};

/// q_n(x) = F_n((2x - 1)/sqrt(lambda(2-lambda))) at theta = 1/2, F chosen by
/// family.
Poly martingale_candidate(double lambda, int n, MartingaleFamily family);

/// max |coefficient of drift(q_n) + n q_n| / max |coefficient of q_n|.
/// Vanishes iff e^{nt} q_n(J_t) has no drift.
double martingale_residual(double lambda, int n,
                           MartingaleFamily family = MartingaleFamily::P_lambda);
double martingale_residual(const DriftModel& dm, int n, MartingaleFamily family);

struct FlowConstants {
  double lambda = 0.0;
  double theta = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double r = 0.0;
  double v0 = 0.0;
  double t0 = 0.0;

  /// Requires theta <= 1/2 and 0 < r <= 4 lambda theta^2.
  static FlowConstants make(const JacobiParams& p, double r);
  /// r = 2 lambda theta^2.
  static double default_r(const JacobiParams& p);
};

/// Z_t = 4 r e^t / ((r e^t + c1)^2 - 4 c2) for 0 <= t <= t0.
double flow_Z(const FlowConstants& fc, double t);

/// |Z'_t - Z_t sqrt(1 - c1 Z_t + c2 Z_t^2)|, Z' by central difference (1e-6).
double flow_Z_ode_residual(const FlowConstants& fc, double t);

enum class KForm { General, HalfTheta, LambdaOne };

/// Which version of the third square-root factor of K_t to use. AsPrinted
/// reproduces the published closed forms, which do not solve the K equation;
/// Corrected inverts that factor.
enum class KConvention { Corrected, AsPrinted };

/// K_t for 0 <= t < t0. The HalfTheta and LambdaOne forms require theta = 1/2
/// and lambda = 1 respectively.
double flow_K(const FlowConstants& fc, double t, double C, KForm form = KForm::General,
              KConvention conv = KConvention::Corrected);

/// |K'_t + K_t (lambda theta G(1/Z_t) + theta(1-lambda) Z_t)| / |K_t| with G the
/// closed-form Cauchy transform of mu_lambda_theta and K' by central
/// difference (step 1e-6).
double flow_K_ode_residual(const FlowConstants& fc, double t, KForm form = KForm::General,
                           KConvention conv = KConvention::Corrected);

/// G of mu_{lambda,1/2}:
///   ((1-lambda)(2z-1) - sqrt(4z^2 - 4z + (1-lambda)^2)) / (2 lambda z (1-z)),
/// square root cut along the support.
std::complex<double> cauchy_mu_half(double lambda, std::complex<double> z);

}  // namespace fjl
