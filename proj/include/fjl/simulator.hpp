#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace fjl {

using CMatrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

/// Generator for trial `index` of a run with master seed `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

/// Haar unitary: QR of a complex Ginibre matrix with the phases of diag(R)
/// divided out.
CMatrix sample_haar_unitary(int d, Rng& rng);
CMatrix sample_haar_unitary(int d, std::uint64_t seed);

/// Hermitian Gaussian matrix with E|H_ij|^2 = 1/d.
CMatrix sample_gue(int d, Rng& rng);

/// `steps` steps of Y <- Y exp(i sqrt(dt) H) with fresh H = sample_gue each step.
CMatrix evolve_unitary_bm(const CMatrix& Y, double dt, int steps, Rng& rng);

/// Rows of U Y_t indexed by the range of P; the process only needs these.
/// P's range is {0..p_rank-1} and Q's range is {0..q_rank-1} in the standard
/// basis, so QP = PQ = P whenever p_rank <= q_rank.
struct MatrixProcessState {
  int d = 0;
  int p_rank = 0;
  int q_rank = 0;
  Eigen::MatrixXcd rows;  // p_rank x d

  static MatrixProcessState start(int d, int p_rank, int q_rank, Rng& rng);
  /// Applies `steps` unitary Brownian increments of size dt.
  void evolve(double dt, int steps, Rng& rng);
};

/// Eigenvalues, ascending, of the compression of P U Y Q Y* U* P to the range
/// of P.
std::vector<double> jacobi_spectrum(const MatrixProcessState& s);

struct SeriesPoint {
  double t = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct SimConfig {
  double lambda = 1.0;
  double theta = 0.5;
  int d = 200;
  int trials = 200;
  double dt = 1e-2;
  std::vector<double> times{0.0, 0.2, 0.4};
  std::uint64_t seed = 1;
  /// Martingale series are produced for n = 1..n_max (theta = 1/2 only).
  int n_max = 3;
  int bins = 50;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct SimResult {
  SimConfig config;
  int p_rank = 0;
  int q_rank = 0;
  double lambda_eff = 0.0;
  double theta_eff = 0.0;
  /// Pooled spectra per requested time.
  std::vector<std::vector<double>> spectra;
  /// KS distance of each pooled spectrum to the mu(lambda_eff, theta_eff) CDF;
  /// NaN when those parameters leave the supported regime.
  std::vector<double> ks;
  /// series[n-1] is the trace statistic for degree n; empty unless theta = 1/2.
  std::vector<std::vector<SeriesPoint>> p_series;
  std::vector<std::vector<SeriesPoint>> q_series;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double seconds = 0.0;

  std::string histogram_csv() const;
  std::string series_csv() const;
  std::string manifest_json() const;
};

SimResult simulate(const SimConfig& cfg);

/// sup |F_n - F| over the sorted sample.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace fjl
