#include "fjl/fock.hpp"

#include <cmath>

#include "fjl/error.hpp"

namespace fjl {

FockSpace FockSpace::build(const JacobiSzego& js, int dim) {
  require(dim >= 1, "build_fock: dim must be at least 1");
  const auto n = static_cast<std::size_t>(dim);
  require(js.alpha.size() >= n && js.omega.size() + 1 >= n,
          "build_fock: dim exceeds the available Jacobi-Szego coefficients");
  FockSpace f;
  f.alpha_.assign(js.alpha.begin(), js.alpha.begin() + static_cast<std::ptrdiff_t>(n));
  f.omega_.assign(js.omega.begin(), js.omega.begin() + static_cast<std::ptrdiff_t>(n - 1));
  f.weights_.push_back(1.0);
  for (double w : f.omega_) {
    require(w > 0.0, "build_fock: omega must be positive");
    f.weights_.push_back(f.weights_.back() * w);
  }
  return f;
}

std::vector<double> FockSpace::create(std::span<const double> v) const {
  require(v.size() == alpha_.size(), "create: vector has the wrong dimension");
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t n = 0; n + 1 < v.size(); ++n) out[n + 1] = v[n];
  return out;
}

std::vector<double> FockSpace::annihilate(std::span<const double> v) const {
  require(v.size() == alpha_.size(), "annihilate: vector has the wrong dimension");
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t n = 0; n + 1 < v.size(); ++n) out[n] = omega_[n] * v[n + 1];
  return out;
}

std::vector<double> FockSpace::number_alpha(std::span<const double> v) const {
  require(v.size() == alpha_.size(), "number_alpha: vector has the wrong dimension");
  std::vector<double> out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) out[n] = alpha_[n] * v[n];
  return out;
}

double FockSpace::inner(std::span<const double> x, std::span<const double> y) const {
  require(x.size() == alpha_.size() && y.size() == alpha_.size(),
          "inner: vector has the wrong dimension");
  double s = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) s += weights_[n] * x[n] * y[n];
  return s;
}

std::vector<double> FockSpace::vacuum_moments(int k_max) const {
  require(k_max >= 0, "vacuum_moments: k_max must be nonnegative");
  require(dim() >= k_max / 2 + 1, "vacuum_moments: k_max too large for the truncation");
  const std::size_t n = alpha_.size();
  std::vector<double> off(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) off[k] = std::sqrt(omega_[k]);
  std::vector<double> v(n, 0.0);
  std::vector<double> next(n);
  v[0] = 1.0;
  std::vector<double> out{1.0};
  for (int k = 1; k <= k_max; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = alpha_[i] * v[i];
      if (i > 0) s += off[i - 1] * v[i - 1];
      if (i + 1 < n) s += off[i] * v[i + 1];
      next[i] = s;
    }
    v.swap(next);
    out.push_back(v[0]);
  }
  return out;
}

}  // namespace fjl
