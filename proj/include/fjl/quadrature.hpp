#pragma once

#include <vector>

namespace fjl {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, built once per n and shared between threads.
const GaussRule& gauss_legendre(int n);

inline constexpr int kMinQuadratureNodes = 32;
inline constexpr int kMaxQuadratureNodes = 1 << 14;

}  // namespace fjl
