#pragma once

#include <string>
#include <vector>

#include "fjl/measures.hpp"
#include "fjl/poly.hpp"
#include "fjl/renorm.hpp"

namespace fjl {

/// Monic three-term recurrence
///   p_{n+1} = (x - alpha_n) p_n - omega_n p_{n-1}.
/// alpha holds alpha_0..alpha_N and omega[k] holds omega_{k+1}, so both
/// vectors index from the first coefficient that exists.
struct JacobiSzego {
  std::vector<double> alpha;
  std::vector<double> omega;

  double omega_at(int n) const { return omega.at(static_cast<std::size_t>(n - 1)); }
  /// CSV with header n,alpha,omega; omega is empty for n = 0.
  std::string to_csv() const;
};

/// Closed-form parameters of each family, alpha_0..alpha_{n_max} and
/// omega_1..omega_{n_max}. Q_lambda and P_lambda read only p.lambda.
JacobiSzego stated_params(Family family, const JacobiParams& p, int n_max);

/// Stieltjes procedure on the measure's discretization, alpha_0..alpha_{n_max}
/// and omega_1..omega_{n_max}. Node counts double until every coefficient is
/// stable to 1e-13. A nonpositive norm throws PositivityLoss naming the last
/// index that was still reliable.
JacobiSzego extract_from_measure(const SpectralMeasure& m, int n_max);

struct MonicFamily {
  std::vector<Poly> polys;
  std::vector<double> scales;
};

/// Divides each polynomial by its leading coefficient.
MonicFamily monicize(const std::vector<Poly>& family);

/// p_0..p_{n_max} generated by the recurrence.
std::vector<Poly> monic_family(const JacobiSzego& js, int n_max);

}  // namespace fjl
