#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "fjl/poly.hpp"

namespace fjl {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// (lambda, theta) of the free Jacobi process: lambda = tau(P)/tau(Q),
/// theta = tau(Q). Construction enforces 0 < lambda <= 1 and
/// 0 < theta <= 1/(lambda + 1), the regime without atoms at 0 and 1.
struct JacobiParams {
  double lambda = 1.0;
  double theta = 0.5;

  static JacobiParams make(double lambda, double theta);

  double x_minus() const noexcept;
  double x_plus() const noexcept;
};

/// Probability measure on the line: an absolutely continuous part on
/// [lo, hi] plus finitely many atoms.
///
/// The a.c. density is stored through its reduced form
///   q(x) = density(x) * sqrt((hi - x)(x - lo)),
/// which is analytic on a neighbourhood of [lo, hi] for every family here.
class SpectralMeasure {
 public:
  SpectralMeasure(std::string name, double lo, double hi, ComplexFn reduced_density,
                  std::vector<Atom> atoms = {});

  const std::string& name() const noexcept { return name_; }
  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  double halfwidth() const noexcept { return 0.5 * (hi_ - lo_); }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

  /// a.c. density; zero outside (lo, hi).
  double density(double x) const;
  std::complex<double> reduced_density(std::complex<double> x) const { return q_(x); }

  /// integral of f against the measure (atoms included); node doubling until two
  /// successive results agree to tol * max(1, |value|).
  double integrate(const std::function<double(double)>& f, double tol = 1e-12) const;
  /// Same for several integrands at once; f(x, out) fills out[0..dim).
  std::vector<double> integrate(const std::function<void(double, std::span<double>)>& f,
                                std::size_t dim, double tol = 1e-12) const;

  double ac_mass() const;
  double total_mass() const;

  /// Positive weights and nodes of an n-point rule for the a.c. part, with
  /// the atoms appended.
  struct Discretization {
    std::vector<double> x;
    std::vector<double> w;
  };
  Discretization discretize(int n) const;

  /// True when z lies on [lo, hi] or on an atom (within tol).
  bool in_support(std::complex<double> z, double tol = 0.0) const;

 private:
  std::string name_;
  double lo_;
  double hi_;
  ComplexFn q_;
  std::vector<Atom> atoms_;
};

/// a(lambda) = (1 - lambda)/sqrt(lambda (2 - lambda)).
double a_of_lambda(double lambda);

SpectralMeasure mu_lambda_theta(const JacobiParams& p);
SpectralMeasure nu_lambda(double lambda);
SpectralMeasure nu_lambda_theta(const JacobiParams& p);
SpectralMeasure xi_lambda(double lambda);

/// Affine map x -> scale x + shift sending mu_lambda_theta(p) onto [-1, 1]:
/// u = (2x - s)/d with s = x_+ + x_-, d = x_+ - x_-.
struct AffineMap {
  double scale = 1.0;
  double shift = 0.0;
};
AffineMap centering_map(const JacobiParams& p);

/// Image of m under x -> scale x + shift.
SpectralMeasure pushforward_affine(const SpectralMeasure& m, double scale, double shift);

/// m_0, ..., m_{n_max}, atoms included. Throws NonConvergence if doubling the
/// node count still moves some moment by more than 1e-10 * max(1, |m_k|).
std::vector<double> moments(const SpectralMeasure& m, int n_max);

/// G(z) = integral of 1/(z - x). z must avoid the support.
std::complex<double> cauchy_transform(const SpectralMeasure& m, std::complex<double> z);

/// Closed-form Cauchy transform of mu_lambda_theta:
///   G(z) = ((2 - 1/(lambda theta)) z + 1/lambda - 1 + sign * sqrt(A z^2 - B z + C)) / (2 z (z - 1))
/// with A = 1/(lambda theta)^2, B = 2((1 + 1/lambda)/(lambda theta) - 2/lambda),
/// C = (1 - 1/lambda)^2. The square root is cut along [x_-, x_+]; sign is
/// fixed once by requiring z G(z) -> 1 at a far probe.
class MuCauchyClosedForm {
 public:
  explicit MuCauchyClosedForm(const JacobiParams& p);
  std::complex<double> operator()(std::complex<double> z) const;
  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double C() const noexcept { return C_; }

 private:
  std::complex<double> eval(std::complex<double> z, double sign) const;
  JacobiParams p_;
  double A_, B_, C_;
  double sign_ = 1.0;
};

std::complex<double> cauchy_closed_form_mu(const JacobiParams& p, std::complex<double> z);

/// -(1/pi) lim Im G(x + iy) as y -> 0+, extrapolated over the descending
/// y_steps. Empty y_steps means y0 * 2^-k, k = 0..5, with
/// y0 = min(1e-2, a quarter of the distance from x to the nearer edge).
double stieltjes_invert(const SpectralMeasure& m, double x, std::span<const double> y_steps = {},
                        double rel_tol = 1e-7);

/// Distribution function m((-inf, x]).
double cdf(const SpectralMeasure& m, double x);

}  // namespace fjl
