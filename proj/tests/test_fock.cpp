#include <doctest.h>

#include <cmath>
#include <vector>

#include "fjl/error.hpp"
#include "fjl/fock.hpp"
#include "oracles.hpp"

namespace {

std::vector<double> random_vector(oracle::Gen& gen, int dim) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = gen.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("weights are products of omegas") {
  const auto js = fjl::stated_params(fjl::Family::P_lambda, fjl::JacobiParams{0.5, 0.5}, 6);
  const auto f = fjl::FockSpace::build(js, 6);
  CHECK(f.dim() == 6);
  CHECK(f.weight(0) == 1.0);
  CHECK(f.weight(1) == doctest::Approx(0.5));
  CHECK(f.weight(3) == doctest::Approx(0.5 * 0.25 * 0.25));
}

TEST_CASE("creation and annihilation are adjoint for the weighted inner product (property)") {
  oracle::Gen gen(21);
  for (double l : {0.3, 0.7, 1.0}) {
    const auto js = fjl::stated_params(fjl::Family::Q_lambda, fjl::JacobiParams{l, 0.5}, 12);
    const auto f = fjl::FockSpace::build(js, 12);
    for (int i = 0; i < 20; ++i) {
      const auto x = random_vector(gen, 12);
      const auto y = random_vector(gen, 12);
      const double lhs = f.inner(f.create(x), y);
      const double rhs = f.inner(x, f.annihilate(y));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1));
      const double n1 = f.inner(f.number_alpha(x), y);
      const double n2 = f.inner(x, f.number_alpha(y));
      CHECK(n1 == doctest::Approx(n2).epsilon(1e-12).scale(1));
    }
  }
}

TEST_CASE("a a+ on a basis vector gives omega") {
  const auto js = fjl::stated_params(fjl::Family::Q_lambda, fjl::JacobiParams{0.4, 0.5}, 8);
  const auto f = fjl::FockSpace::build(js, 8);
  for (int n = 0; n < 7; ++n) {
    std::vector<double> e(8, 0.0);
    e[static_cast<std::size_t>(n)] = 1.0;
    const auto r = f.annihilate(f.create(e));
    CHECK(r[static_cast<std::size_t>(n)] == doctest::Approx(js.omega_at(n + 1)));
  }
  std::vector<double> vac(8, 0.0);
  vac[0] = 1.0;
  for (double x : f.annihilate(vac)) CHECK(x == 0.0);
}

TEST_CASE("vacuum moments of the arcsine law") {
  const auto js = fjl::stated_params(fjl::Family::Q_lambda, fjl::JacobiParams{1.0, 0.5}, 9);
  const auto mom = fjl::FockSpace::build(js, 9).vacuum_moments(16);
  for (int k = 0; k <= 16; ++k) {
    const double ref = k % 2 ? 0.0 : oracle::arcsine01_moment(k / 2);
    CHECK(mom[static_cast<std::size_t>(k)] == doctest::Approx(ref).epsilon(1e-14).scale(1));
  }
}

TEST_CASE("vacuum moments equal the measure's moments on the grid") {
  for (double l : {0.3, 0.6, 1.0}) {
    for (double t : {0.3, 0.4, 0.5}) {
      if (t > 1.0 / (l + 1.0) + 1e-15) continue;
      const fjl::JacobiParams p{l, t};
      const auto js = fjl::stated_params(fjl::Family::Q_lambda_theta, p, 9);
      const auto mom = fjl::FockSpace::build(js, 9).vacuum_moments(16);
      for (int k = 0; k <= 16; ++k) {
        const double ref = oracle::integrate_pm1(
            [&](double x, double w) { return std::pow(x, k) * oracle::nu_lt_density(l, t, x, w); });
        CHECK(mom[static_cast<std::size_t>(k)] == doctest::Approx(ref).epsilon(1e-10).scale(1));
      }
    }
    const auto js = fjl::stated_params(fjl::Family::P_lambda, fjl::JacobiParams{l, 0.5}, 9);
    const auto mom = fjl::FockSpace::build(js, 9).vacuum_moments(16);
    const double a = oracle::a_of(l);
    const double loc = std::sqrt(a * a + 1);
    for (int k = 0; k <= 16; ++k) {
      double ref = oracle::integrate_pm1([&](double x, double w) { return std::pow(x, k) * oracle::xi_density(l, x, w); });
      if (a > 0) ref += a / loc * std::pow(loc, k);
      CHECK(mom[static_cast<std::size_t>(k)] == doctest::Approx(ref).epsilon(1e-10).scale(1));
    }
  }
}

TEST_CASE("argument checks") {
  auto js = fjl::stated_params(fjl::Family::Q_lambda, fjl::JacobiParams{1.0, 0.5}, 4);
  CHECK_THROWS_AS(fjl::FockSpace::build(js, 6), fjl::Error);
  CHECK_THROWS_AS(fjl::FockSpace::build(js, 5).vacuum_moments(10), fjl::Error);
  js.omega[1] = 0.0;
  CHECK_THROWS_AS(fjl::FockSpace::build(js, 4), fjl::Error);
}
