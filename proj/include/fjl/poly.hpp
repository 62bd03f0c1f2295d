#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace fjl {

/// Dense real polynomial in one variable; coeffs()[k] multiplies x^k.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients
/// and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly constant(double c);
  static Poly monomial(int degree, double c = 1.0);
  /// The identity polynomial x.
  static Poly x();

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::span<const double> coeffs() const noexcept { return c_; }
  /// Coefficient of x^k, zero beyond the degree.
  double coeff(int k) const noexcept;
  double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }
  double max_abs_coeff() const noexcept;

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;

  /// p(inner(x)), Horner in polynomial arithmetic.
  Poly compose(const Poly& inner) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(double s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(Poly a) { return a *= -1.0; }

 private:
  void trim();
  std::vector<double> c_;
};

/// Coefficientwise comparison with tolerance tol * max(1, largest |coefficient|).
bool approx_equal(const Poly& a, const Poly& b, double tol = 1e-9);

/// Largest |coefficient| of a - b divided by max(1, largest |coefficient| of b).
double scaled_distance(const Poly& a, const Poly& b);

/// Chebyshev polynomial of the second kind. Accepts n >= -2 with
/// U_{-1} = U_{-2} = 0.
Poly chebyshev_U(int n);

/// Chebyshev polynomial of the first kind, n >= 0.
Poly chebyshev_T(int n);

/// Value at x of the monic polynomial P_n defined by
///   P_{k+1} = (x - alpha[k]) P_k - omega[k-1] P_{k-1},  P_{-1} = 0, P_0 = 1,
/// so omega[j] holds the weight omega_{j+1}. Needs alpha.size() >= n and
/// omega.size() >= n - 1; every omega used must be positive.
double eval_three_term(std::span<const double> alpha, std::span<const double> omega,
                       int n, double x);

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

/// First order+1 Taylor coefficients at 0 of a function analytic on
/// |u| <= radius, by trapezoidal averaging on the circle |u| = radius. The node
/// count doubles until coefficient k moves by at most
/// 10 eps max(1, max|f|) / radius^k; throws NonConvergence otherwise.
std::vector<double> taylor_coeffs_in_u(const ComplexFn& f, int order, double radius);

}  // namespace fjl
