#pragma once

#include <span>
#include <vector>

#include "fjl/recurrence.hpp"

namespace fjl {

/// One-mode interacting Fock space truncated to levels Phi_0..Phi_{dim-1}.
/// Vectors are coefficient arrays in the (unnormalised) basis Phi_n, with
/// <Phi_n, Phi_n> = lambda_n = omega_1 ... omega_n and lambda_0 = 1.
class FockSpace {
 public:
  /// Needs alpha_0..alpha_{dim-1} and omega_1..omega_{dim-1}, all omega > 0.
  static FockSpace build(const JacobiSzego& js, int dim);

  int dim() const noexcept { return static_cast<int>(alpha_.size()); }
  /// lambda_n
  double weight(int n) const { return weights_.at(static_cast<std::size_t>(n)); }

  /// a+ Phi_n = Phi_{n+1}; the top level is sent to 0.
  std::vector<double> create(std::span<const double> v) const;
  /// a Phi_{n+1} = omega_{n+1} Phi_n, a Phi_0 = 0.
  std::vector<double> annihilate(std::span<const double> v) const;
  /// alpha_N Phi_n = alpha_n Phi_n.
  std::vector<double> number_alpha(std::span<const double> v) const;

  /// sum_n lambda_n x_n y_n
  double inner(std::span<const double> x, std::span<const double> y) const;

  /// <Phi_0, (a+ + a + alpha_N)^k Phi_0>, k = 0..k_max, by iterated products
  /// with the symmetric tridiagonal matrix (alpha_n, sqrt(omega_{n+1})).
  /// Requires dim >= k_max/2 + 1.
  std::vector<double> vacuum_moments(int k_max) const;

 private:
  std::vector<double> alpha_;
  std::vector<double> omega_;  // omega_[k] = omega_{k+1}
  std::vector<double> weights_;
};

}  // namespace fjl
