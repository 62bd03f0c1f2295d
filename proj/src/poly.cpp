#include "fjl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fjl/error.hpp"

namespace fjl {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Poly Poly::constant(double c) { return Poly({c}); }

Poly Poly::monomial(int degree, double c) {
  require(degree >= 0, "monomial degree must be nonnegative");
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::x() { return Poly({0.0, 1.0}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Poly::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

double Poly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Poly::operator()(std::complex<double> z) const noexcept {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * inner;
    acc += Poly::constant(*it);
  }
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& c : c_) c *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(out));
}

double scaled_distance(const Poly& a, const Poly& b) {
  const int n = std::max(a.degree(), b.degree());
  double diff = 0.0;
  for (int k = 0; k <= n; ++k) diff = std::max(diff, std::abs(a.coeff(k) - b.coeff(k)));
  return diff / std::max(1.0, std::max(a.max_abs_coeff(), b.max_abs_coeff()));
}

bool approx_equal(const Poly& a, const Poly& b, double tol) {
  return scaled_distance(a, b) <= tol;
}

Poly chebyshev_U(int n) {
  require(n >= -2, "chebyshev_U: n must be >= -2");
  if (n < 0) return Poly();
  Poly prev = Poly::constant(1.0);
  if (n == 0) return prev;
  Poly cur({0.0, 2.0});
  const Poly two_x({0.0, 2.0});
  for (int k = 1; k < n; ++k) {
    Poly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly chebyshev_T(int n) {
  require(n >= 0, "chebyshev_T: n must be >= 0");
  Poly prev = Poly::constant(1.0);
  if (n == 0) return prev;
  Poly cur = Poly::x();
  const Poly two_x({0.0, 2.0});
  for (int k = 1; k < n; ++k) {
    Poly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double eval_three_term(std::span<const double> alpha, std::span<const double> omega, int n,
                       double x) {
  require(n >= 0, "eval_three_term: n must be >= 0");
  require(alpha.size() >= static_cast<std::size_t>(n), "eval_three_term: alpha too short");
  require(n == 0 || omega.size() + 1 >= static_cast<std::size_t>(n),
          "eval_three_term: omega too short");
  for (int k = 0; k + 1 < n; ++k)
    require(omega[static_cast<std::size_t>(k)] > 0.0,
            "eval_three_term: omega_" + std::to_string(k + 1) + " must be positive");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double w = k == 0 ? 0.0 : omega[static_cast<std::size_t>(k - 1)];
    const double next = (x - alpha[static_cast<std::size_t>(k)]) * cur - w * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> taylor_coeffs_in_u(const ComplexFn& f, int order, double radius) {
  require(order >= 0, "taylor_coeffs_in_u: order must be >= 0");
  require(radius > 0.0, "taylor_coeffs_in_u: radius must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxNodes = 1 << 16;

  auto estimate = [&](int nodes, double& fmax) {
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(nodes));
    fmax = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / nodes;
      vals[static_cast<std::size_t>(j)] = f(std::polar(radius, phi));
      fmax = std::max(fmax, std::abs(vals[static_cast<std::size_t>(j)]));
    }
    std::vector<double> out(static_cast<std::size_t>(order) + 1);
    double scale = 1.0;
    for (int k = 0; k <= order; ++k) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < nodes; ++j) {
        const double phi = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * k) % nodes) / nodes;
        acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, phi);
      }
      out[static_cast<std::size_t>(k)] = acc.real() / nodes / scale;
      scale *= radius;
    }
    return out;
  };

  int nodes = 32;
  while (nodes < 2 * (order + 1)) nodes *= 2;
  double fmax = 0.0;
  std::vector<double> prev = estimate(nodes, fmax);
  while (nodes < kMaxNodes) {
    nodes *= 2;
    double fmax2 = 0.0;
    std::vector<double> cur = estimate(nodes, fmax2);
    bool converged = true;
    double rk = 1.0;
    for (int k = 0; k <= order; ++k) {
      const double tol = 10.0 * eps * std::max(1.0, fmax2) / rk;
      if (std::abs(cur[static_cast<std::size_t>(k)] - prev[static_cast<std::size_t>(k)]) > tol)
        converged = false;
      rk *= radius;
    }
    if (converged) return cur;
    prev = std::move(cur);
  }
  fail(ErrorCode::NonConvergence, "taylor_coeffs_in_u: contour averaging did not converge");
}

}  // namespace fjl
