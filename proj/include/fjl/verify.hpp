#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fjl {

/// Suites: orthogonality, jacobi, fock, renorm, martingale, flows, mass, cauchy.
const std::vector<std::string>& verify_suite_names();

struct VerifyOptions {
  /// Empty means the suite's default grid.
  std::vector<double> lambdas;
  std::vector<double> thetas;
  /// Largest degree or index checked; 0 means the suite default.
  int n_max = 0;
  /// Largest moment order for the fock suite; 0 means 16.
  int k_max = 0;
  std::optional<double> tol;
  /// Suite-specific selector; empty means the suite default.
  ///   orthogonality, jacobi, renorm: nu | xi | nu_theta | all (default all)
  ///   martingale: P | Q | P_unrooted (default P)
  std::string family;
  std::uint64_t seed = 1;
};

struct VerifyEntry {
  std::string label;
  double lambda = 0.0;
  double theta = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  /// Negative controls pass when residual > tol.
  bool expect_violation = false;
  /// Informational entries are reported but do not affect the verdict.
  bool informational = false;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyEntry> entries;
  double seconds = 0.0;

  bool pass() const;
  /// Largest residual over the entries that count and are not controls.
  double max_residual() const;
  std::string to_json() const;
};

/// Throws InvalidArgument for an unknown suite or family and lets
/// NonConvergence from the numerics propagate.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts);

}  // namespace fjl
