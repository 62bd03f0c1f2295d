#include "fjl/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "fjl/error.hpp"
#include "fjl/measures.hpp"
#include "fjl/renorm.hpp"
#include "json.hpp"

namespace fjl {

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix z(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) z(i, j) = std::complex<double>(s * n01(rng), s * n01(rng));
  return z;
}

}  // namespace

CMatrix sample_haar_unitary(int d, Rng& rng) {
  require(d >= 1, "sample_haar_unitary: d must be positive");
  const CMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

CMatrix sample_haar_unitary(int d, std::uint64_t seed) {
  Rng rng = trial_rng(seed, 0);
  return sample_haar_unitary(d, rng);
}

CMatrix sample_gue(int d, Rng& rng) {
  require(d >= 1, "sample_gue: d must be positive");
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix h(d, d);
  const double diag = 1.0 / std::sqrt(static_cast<double>(d));
  const double off = 1.0 / std::sqrt(2.0 * d);
  for (int j = 0; j < d; ++j) {
    h(j, j) = diag * n01(rng);
    for (int i = j + 1; i < d; ++i) {
      const std::complex<double> v(off * n01(rng), off * n01(rng));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

namespace {

// M <- M exp(i sqrt(dt) H) through the eigendecomposition of H.
void right_multiply_step(CMatrix& m, double dt, Rng& rng) {
  const int d = static_cast<int>(m.cols());
  const CMatrix h = sample_gue(d, rng);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NonConvergence, "unitary Brownian step: eigensolver failed");
  const CMatrix& v = es.eigenvectors();
  const double s = std::sqrt(dt);
  Eigen::VectorXcd phase(d);
  for (int k = 0; k < d; ++k) phase(k) = std::polar(1.0, s * es.eigenvalues()(k));
  CMatrix mv = m * v;
  mv = mv * phase.asDiagonal();
  m.noalias() = mv * v.adjoint();
}

}  // namespace

CMatrix evolve_unitary_bm(const CMatrix& Y, double dt, int steps, Rng& rng) {
  require(Y.rows() == Y.cols(), "evolve_unitary_bm: Y must be square");
  require(dt > 0.0, "evolve_unitary_bm: dt must be positive");
  require(steps >= 0, "evolve_unitary_bm: steps must be nonnegative");
  CMatrix y = Y;
  for (int k = 0; k < steps; ++k) right_multiply_step(y, dt, rng);
  return y;
}

MatrixProcessState MatrixProcessState::start(int d, int p_rank, int q_rank, Rng& rng) {
  require(d >= 1, "state: d must be positive");
  require(p_rank >= 1 && p_rank <= q_rank && q_rank <= d, "state: need 1 <= p_rank <= q_rank <= d");
  MatrixProcessState s;
  s.d = d;
  s.p_rank = p_rank;
  s.q_rank = q_rank;
  s.rows = sample_haar_unitary(d, rng).topRows(p_rank);
  return s;
}

void MatrixProcessState::evolve(double dt, int steps, Rng& rng) {
  require(dt > 0.0 && steps >= 0, "evolve: need dt > 0 and steps >= 0");
  for (int k = 0; k < steps; ++k) right_multiply_step(rows, dt, rng);
}

std::vector<double> jacobi_spectrum(const MatrixProcessState& s) {
  const CMatrix a = s.rows.leftCols(s.q_rank);
  const CMatrix j = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(j, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NonConvergence, "jacobi_spectrum: eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), "ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

namespace {

struct TrialOutput {
  std::vector<std::vector<double>> spectra;       // per time
  std::vector<std::vector<double>> p_stat;        // [n-1][time]
  std::vector<std::vector<double>> q_stat;
};

std::vector<SeriesPoint> summarize(const std::vector<TrialOutput>& outs, int n, bool use_p,
                                   const std::vector<double>& times) {
  std::vector<SeriesPoint> series;
  const double trials = static_cast<double>(outs.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    double sum = 0.0;
    double sum2 = 0.0;
    for (const TrialOutput& o : outs) {
      const double v = (use_p ? o.p_stat : o.q_stat)[static_cast<std::size_t>(n - 1)][k];
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / trials;
    const double var = trials > 1 ? std::max(0.0, (sum2 - trials * mean * mean) / (trials - 1)) : 0.0;
    series.push_back(SeriesPoint{times[k], mean, std::sqrt(var / trials)});
  }
  return series;
}

std::string fmt_g(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SimResult simulate(const SimConfig& cfg) {
  require(cfg.lambda > 0.0 && cfg.lambda <= 1.0, "simulate: lambda must lie in (0, 1]");
  require(cfg.theta > 0.0 && cfg.theta <= 1.0, "simulate: theta must lie in (0, 1]");
  require(cfg.d >= 1 && cfg.d <= 4096, "simulate: d must lie in [1, 4096]");
  require(cfg.trials >= 1, "simulate: trials must be positive");
  require(cfg.dt > 0.0 && std::isfinite(cfg.dt), "simulate: dt must be positive");
  require(!cfg.times.empty(), "simulate: need at least one time");
  require(cfg.bins >= 1, "simulate: bins must be positive");
  require(cfg.n_max >= 0 && cfg.n_max <= 40, "simulate: n_max must lie in [0, 40]");
  for (std::size_t k = 0; k < cfg.times.size(); ++k)
    require(cfg.times[k] >= 0.0 && (k == 0 || cfg.times[k] >= cfg.times[k - 1]),
            "simulate: times must be nonnegative and sorted");

  const auto t_start = std::chrono::steady_clock::now();
  SimResult res;
  res.config = cfg;
  res.q_rank = static_cast<int>(std::lround(cfg.theta * cfg.d));
  res.p_rank = static_cast<int>(std::lround(cfg.lambda * cfg.theta * cfg.d));
  require(res.p_rank >= 1, "simulate: lambda theta d rounds to an empty projection");
  res.lambda_eff = static_cast<double>(res.p_rank) / res.q_rank;
  res.theta_eff = static_cast<double>(res.q_rank) / cfg.d;

  const bool series = cfg.theta == 0.5 && cfg.n_max >= 1;
  const double s = std::sqrt(cfg.lambda * (2.0 - cfg.lambda));
  std::vector<Poly> p_polys;
  std::vector<Poly> q_polys;
  if (series)
    for (int n = 1; n <= cfg.n_max; ++n) {
      p_polys.push_back(build_P_lambda(cfg.lambda, n));
      q_polys.push_back(build_Q_lambda(cfg.lambda, n));
    }

  std::vector<TrialOutput> outs(static_cast<std::size_t>(cfg.trials));
  auto run_trial = [&](int index) {
    Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(index));
    MatrixProcessState st = MatrixProcessState::start(cfg.d, res.p_rank, res.q_rank, rng);
    TrialOutput& out = outs[static_cast<std::size_t>(index)];
    out.p_stat.assign(p_polys.size(), {});
    out.q_stat.assign(q_polys.size(), {});
    double t_cur = 0.0;
    for (double t : cfg.times) {
      const int steps = static_cast<int>(std::llround((t - t_cur) / cfg.dt));
      st.evolve(cfg.dt, steps, rng);
      t_cur = t;
      std::vector<double> spec = jacobi_spectrum(st);
      for (std::size_t n = 0; n < p_polys.size(); ++n) {
        double ps = 0.0;
        double qs = 0.0;
        for (double e : spec) {
          const double x = (2.0 * e - 1.0) / s;
          ps += p_polys[n](x);
          qs += q_polys[n](x);
        }
        const double scale = std::exp((n + 1) * t) / static_cast<double>(spec.size());
        out.p_stat[n].push_back(ps * scale);
        out.q_stat[n].push_back(qs * scale);
      }
      out.spectra.push_back(std::move(spec));
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned w) {
    try {
      for (int i = next++; i < cfg.trials; i = next++) run_trial(i);
    } catch (...) {
      errors[w] = std::current_exception();
      next = cfg.trials;
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  res.min_eigenvalue = std::numeric_limits<double>::infinity();
  res.max_eigenvalue = -std::numeric_limits<double>::infinity();
  res.spectra.assign(cfg.times.size(), {});
  for (const TrialOutput& o : outs)
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
      auto& pooled = res.spectra[k];
      pooled.insert(pooled.end(), o.spectra[k].begin(), o.spectra[k].end());
      for (double e : o.spectra[k]) {
        res.min_eigenvalue = std::min(res.min_eigenvalue, e);
        res.max_eigenvalue = std::max(res.max_eigenvalue, e);
      }
    }

  const bool regular = res.lambda_eff <= 1.0 && res.theta_eff <= 1.0 / (res.lambda_eff + 1.0);
  if (regular) {
    const SpectralMeasure mu = mu_lambda_theta(JacobiParams::make(res.lambda_eff, res.theta_eff));
    for (const auto& pooled : res.spectra)
      res.ks.push_back(ks_distance(pooled, [&](double x) { return cdf(mu, x); }));
  } else {
    res.ks.assign(cfg.times.size(), std::numeric_limits<double>::quiet_NaN());
  }

  for (int n = 1; series && n <= cfg.n_max; ++n) {
    res.p_series.push_back(summarize(outs, n, true, cfg.times));
    res.q_series.push_back(summarize(outs, n, false, cfg.times));
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

std::string SimResult::histogram_csv() const {
  std::ostringstream os;
  os << "# schema: fjl.histogram/1\n";
  os << "# lambda=" << fmt_g(config.lambda) << " theta=" << fmt_g(config.theta) << " d=" << config.d
     << " trials=" << config.trials << " dt=" << fmt_g(config.dt) << " seed=" << config.seed << '\n';
  os << "t,bin,bin_lo,bin_hi,count\n";
  const int bins = config.bins;
  for (std::size_t k = 0; k < spectra.size(); ++k) {
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    for (double e : spectra[k]) {
      int b = static_cast<int>(std::floor(e * bins));
      b = std::clamp(b, 0, bins - 1);
      ++counts[static_cast<std::size_t>(b)];
    }
    for (int b = 0; b < bins; ++b)
      os << fmt_g(config.times[k]) << ',' << b << ',' << fmt_g(static_cast<double>(b) / bins) << ','
         << fmt_g(static_cast<double>(b + 1) / bins) << ',' << counts[static_cast<std::size_t>(b)] << '\n';
  }
  return os.str();
}

std::string SimResult::series_csv() const {
  std::ostringstream os;
  os << "# schema: fjl.martingale_series/1\n";
  os << "# statistic: exp(n t) * tr F_n((2J_t - 1)/sqrt(lambda(2-lambda))) / p_rank\n";
  os << "family,n,t,mean,stderr\n";
  auto emit = [&](const char* name, const std::vector<std::vector<SeriesPoint>>& all) {
    for (std::size_t n = 0; n < all.size(); ++n)
      for (const SeriesPoint& sp : all[n])
        os << name << ',' << n + 1 << ',' << fmt_g(sp.t) << ',' << fmt_g(sp.mean) << ','
           << fmt_g(sp.stderr_) << '\n';
  };
  emit("P_lambda", p_series);
  emit("Q_lambda", q_series);
  return os.str();
}

std::string SimResult::manifest_json() const {
  nlohmann::json ks_json = nlohmann::json::array();
  for (double v : ks) ks_json.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
  nlohmann::json j{
      {"schema", "fjl.simulate/1"},
      {"lambda", config.lambda},
      {"theta", config.theta},
      {"d", config.d},
      {"p_rank", p_rank},
      {"q_rank", q_rank},
      {"lambda_eff", lambda_eff},
      {"theta_eff", theta_eff},
      {"dt", config.dt},
      {"trials", config.trials},
      {"times", config.times},
      {"seed", config.seed},
      {"trial_seeding", "seed_seq(seed_lo, seed_hi, trial_lo, trial_hi) -> mt19937_64"},
      {"bins", config.bins},
      {"n_max", config.n_max},
      {"ks", ks_json},
      {"min_eigenvalue", min_eigenvalue},
      {"max_eigenvalue", max_eigenvalue},
  };
  return j.dump(2);
}

}  // namespace fjl
