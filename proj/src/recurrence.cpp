#include "fjl/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fjl/error.hpp"

namespace fjl {

std::string JacobiSzego::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "n,alpha,omega\n";
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    os << n << ',' << alpha[n] << ',';
    if (n >= 1 && n - 1 < omega.size()) os << omega[n - 1];
    os << '\n';
  }
  return os.str();
}

JacobiSzego stated_params(Family family, const JacobiParams& p, int n_max) {
  require(n_max >= 0, "stated_params: n_max must be nonnegative");
  JacobiSzego js;
  js.alpha.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  js.omega.assign(static_cast<std::size_t>(n_max), 0.25);
  double alpha0 = 0.0;
  double omega1 = 0.25;
  switch (family) {
    case Family::Q_lambda:
      require(p.lambda > 0.0 && p.lambda <= 1.0, "lambda must lie in (0, 1]");
      omega1 = 1.0 / (2.0 * (2.0 - p.lambda));
      break;
    case Family::P_lambda:
      alpha0 = a_of_lambda(p.lambda);
      omega1 = 0.5;
      break;
    case Family::Q_lambda_theta: {
      const JacobiParams v = JacobiParams::make(p.lambda, p.theta);
      alpha0 = kubo_b(v);
      omega1 = 0.5 * kubo_c(v);
      break;
    }
  }
  js.alpha[0] = alpha0;
  if (n_max >= 1) js.omega[0] = omega1;
  return js;
}

namespace {

JacobiSzego stieltjes(const SpectralMeasure::Discretization& d, int n_max) {
  const std::size_t m = d.x.size();
  std::vector<double> prev(m, 0.0);
  std::vector<double> cur(m, 1.0);
  // Running bound on |p_n(x_j)| accumulated with absolute values. Values of
  // p_n below n eps times that bound are rounding noise, so a norm at that
  // level counts as lost positivity.
  std::vector<double> bprev(m, 0.0);
  std::vector<double> bcur(m, 1.0);
  JacobiSzego js;
  double norm_prev = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    double norm = 0.0;
    double xnorm = 0.0;
    double floor = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double w = d.w[j] * cur[j] * cur[j];
      norm += w;
      xnorm += w * d.x[j];
      floor += d.w[j] * bcur[j] * bcur[j];
    }
    const double noise = 4.0 * (n + 1) * std::numeric_limits<double>::epsilon();
    floor *= noise * noise;
    if (!(norm > floor))
      fail(ErrorCode::PositivityLoss,
           "extract_from_measure: norm of p_" + std::to_string(n) +
               " is not positive; coefficients are reliable up to index " + std::to_string(n - 1));
    if (n >= 1) js.omega.push_back(norm / norm_prev);
    const double alpha = xnorm / norm;
    js.alpha.push_back(alpha);
    const double omega = n >= 1 ? js.omega.back() : 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double next = (d.x[j] - alpha) * cur[j] - omega * prev[j];
      prev[j] = cur[j];
      cur[j] = next;
      const double bnext = (std::abs(d.x[j]) + std::abs(alpha)) * bcur[j] + omega * bprev[j];
      bprev[j] = bcur[j];
      bcur[j] = bnext;
    }
    norm_prev = norm;
  }
  return js;
}

double max_change(const JacobiSzego& a, const JacobiSzego& b) {
  double diff = 0.0;
  for (std::size_t k = 0; k < a.alpha.size(); ++k) diff = std::max(diff, std::abs(a.alpha[k] - b.alpha[k]));
  for (std::size_t k = 0; k < a.omega.size(); ++k) diff = std::max(diff, std::abs(a.omega[k] - b.omega[k]));
  return diff;
}

}  // namespace

JacobiSzego extract_from_measure(const SpectralMeasure& m, int n_max) {
  require(n_max >= 0, "extract_from_measure: n_max must be nonnegative");
  int n = std::max(64, 4 * (n_max + 1));
  JacobiSzego prev = stieltjes(m.discretize(n), n_max);
  constexpr int kMaxNodes = 1 << 14;
  while (n < kMaxNodes) {
    n *= 2;
    JacobiSzego cur = stieltjes(m.discretize(n), n_max);
    if (max_change(cur, prev) <= 1e-13) return cur;
    prev = std::move(cur);
  }
  fail(ErrorCode::NonConvergence, "extract_from_measure: coefficients did not stabilise");
}

MonicFamily monicize(const std::vector<Poly>& family) {
  MonicFamily out;
  for (const Poly& p : family) {
    require(!p.is_zero(), "monicize: zero polynomial");
    const double s = p.leading();
    out.scales.push_back(s);
    out.polys.push_back(p * (1.0 / s));
  }
  return out;
}

std::vector<Poly> monic_family(const JacobiSzego& js, int n_max) {
  require(n_max >= 0, "monic_family: n_max must be nonnegative");
  require(js.alpha.size() >= static_cast<std::size_t>(n_max),
          "monic_family: not enough alpha coefficients");
  require(n_max <= 1 || js.omega.size() + 1 >= static_cast<std::size_t>(n_max),
          "monic_family: not enough omega coefficients");
  std::vector<Poly> out;
  out.push_back(Poly::constant(1.0));
  Poly prev;
  for (int n = 0; n < n_max; ++n) {
    const double w = n == 0 ? 0.0 : js.omega[static_cast<std::size_t>(n - 1)];
    Poly next = Poly{-js.alpha[static_cast<std::size_t>(n)], 1.0} * out.back() - w * prev;
    prev = out.back();
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace fjl
