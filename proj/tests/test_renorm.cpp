#include <doctest.h>

#include <cmath>
#include <vector>

#include "fjl/error.hpp"
#include "fjl/renorm.hpp"
#include "oracles.hpp"

namespace {

struct GridPoint {
  double lambda, theta;
};

std::vector<GridPoint> regime_grid() {
  std::vector<GridPoint> g;
  for (double l : {0.3, 0.6, 1.0})
    for (double t : {0.3, 0.4, 0.5})
      if (t <= 1.0 / (l + 1.0) + 1e-15) g.push_back({l, t});
  return g;
}

// Family members evaluated from the trig form of U_n.
double q_lambda_oracle(double l, int n, double x) {
  return oracle::cheb_u_trig(n, x) - l / (2 - l) * oracle::cheb_u_trig(n - 2, x);
}

double p_lambda_oracle(double l, int n, double x) {
  return oracle::cheb_u_trig(n, x) - 2 * oracle::a_of(l) * oracle::cheb_u_trig(n - 1, x) -
         oracle::cheb_u_trig(n - 2, x);
}

}  // namespace

TEST_CASE("builders agree with the trig form") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double l = gen.uniform(0.05, 1.0);
    const int n = gen.integer(0, 12);
    const double x = gen.uniform(-1.0, 1.0);
    const double scale = std::pow(3.0, n);
    CHECK(std::abs(fjl::build_Q_lambda(l, n)(x) - q_lambda_oracle(l, n, x)) < 1e-11 * scale);
    CHECK(std::abs(fjl::build_P_lambda(l, n)(x) - p_lambda_oracle(l, n, x)) < 1e-11 * scale);
  }
}

TEST_CASE("generating functions expand to the families") {
  const fjl::JacobiParams p = fjl::JacobiParams::make(0.6, 0.4);
  for (double x : {-0.7, 0.1, 0.9}) {
    const auto q = fjl::taylor_coeffs_in_u(fjl::gen_Q_lambda(0.6, x), 10, 0.5);
    const auto pl = fjl::taylor_coeffs_in_u(fjl::gen_P_lambda(0.6, x), 10, 0.5);
    const auto qt = fjl::taylor_coeffs_in_u(fjl::gen_Q_lambda_theta(p, x), 10, 0.5);
    for (int n = 0; n <= 10; ++n) {
      CHECK(q[n] == doctest::Approx(fjl::build_Q_lambda(0.6, n)(x)).epsilon(1e-9).scale(1));
      CHECK(pl[n] == doctest::Approx(fjl::build_P_lambda(0.6, n)(x)).epsilon(1e-9).scale(1));
      CHECK(qt[n] == doctest::Approx(fjl::build_Q_lambda_theta(p, n)(x)).epsilon(1e-9).scale(1));
    }
  }
}

TEST_CASE("Q_lambda is orthogonal for nu_lambda (tanh-sinh oracle)") {
  for (double l : {0.3, 0.6, 1.0})
    for (int m = 0; m <= 8; ++m)
      for (int n = m; n <= 8; ++n) {
        const double ip = oracle::integrate_pm1([&](double x, double w) {
          return q_lambda_oracle(l, m, x) * q_lambda_oracle(l, n, x) * oracle::nu_density(l, x, w);
        });
        if (m == n)
          CHECK(ip > 0.0);
        else
          CHECK(std::abs(ip) < 1e-9);
      }
}

TEST_CASE("P_lambda is orthogonal for xi_lambda including the atom") {
  for (double l : {0.3, 0.6, 1.0}) {
    const double a = oracle::a_of(l);
    const double loc = std::sqrt(a * a + 1);
    const double w = a / loc;
    for (int m = 0; m <= 8; ++m)
      for (int n = m; n <= 8; ++n) {
        double ip = oracle::integrate_pm1([&](double x, double w) {
          return p_lambda_oracle(l, m, x) * p_lambda_oracle(l, n, x) * oracle::xi_density(l, x, w);
        });
        if (a > 0)
          ip += w * fjl::build_P_lambda(l, m)(loc) * fjl::build_P_lambda(l, n)(loc);
        if (m == n)
          CHECK(ip > 0.0);
        else
          CHECK(std::abs(ip) < 1e-9);
      }
  }
}

TEST_CASE("Q_lambda_theta is orthogonal for nu_lambda_theta") {
  for (const auto& g : regime_grid()) {
    const fjl::JacobiParams p = fjl::JacobiParams::make(g.lambda, g.theta);
    std::vector<fjl::Poly> fam;
    for (int n = 0; n <= 8; ++n) fam.push_back(fjl::build_Q_lambda_theta(p, n));
    for (int m = 0; m <= 8; ++m)
      for (int n = m; n <= 8; ++n) {
        const double ip = oracle::integrate_pm1([&](double x, double w) {
          return fam[m](x) * fam[n](x) * oracle::nu_lt_density(g.lambda, g.theta, x, w);
        });
        if (m == n)
          CHECK(ip > 0.0);
        else
          CHECK(std::abs(ip) < 1e-9);
      }
  }
}

TEST_CASE("printed b breaks orthogonality away from theta = 1/2") {
  const fjl::JacobiParams p = fjl::JacobiParams::make(0.6, 0.3);
  const fjl::Poly q1 = fjl::build_Q_with_bc(fjl::kubo_b_as_printed(p), fjl::kubo_c(p), 1);
  const double ip = oracle::integrate([&](double x) { return q1(x) * oracle::nu_lt_density(0.6, 0.3, x); }, -1.0, 1.0);
  CHECK(std::abs(ip) > 1e-2);
}

TEST_CASE("kubo b is the mean of nu_lambda_theta") {
  for (const auto& g : regime_grid()) {
    const fjl::JacobiParams p = fjl::JacobiParams::make(g.lambda, g.theta);
    const double mean =
        oracle::integrate_pm1([&](double x, double w) { return x * oracle::nu_lt_density(g.lambda, g.theta, x, w); });
    CHECK(fjl::kubo_b(p) == doctest::Approx(mean).epsilon(1e-10).scale(1));
  }
  // frozen: b(0.6, 0.3) = 0.5 sqrt(0.6/(0.7*0.82)) * (-0.4)
  CHECK(fjl::kubo_b(fjl::JacobiParams::make(0.6, 0.3)) == doctest::Approx(-0.20447945297729908).epsilon(1e-14));
  CHECK(fjl::kubo_c(fjl::JacobiParams::make(0.6, 0.3)) == doctest::Approx(0.6097560975609756).epsilon(1e-14));
}

TEST_CASE("theta_one matches direct integration") {
  const auto nu = fjl::nu_lambda(0.6);
  for (double u : {-0.9, -0.3, 0.0, 0.2, 0.75, 0.95}) {
    const double ref = oracle::integrate(
        [&](double x) { return oracle::nu_density(0.6, x) / (1 - u * x); }, -1.0, 1.0);
    CHECK(fjl::theta_one(nu, u) == doctest::Approx(ref).epsilon(1e-11));
  }
  CHECK_THROWS_AS(fjl::theta_one(nu, 1.5), fjl::Error);
}

TEST_CASE("theta_two is continuous across the switch to direct integration") {
  const auto xi = fjl::xi_lambda(0.5);
  const double u = 0.4;
  for (double rel : {0.99e-3, 1.01e-3}) {
    const double v = u * (1 + rel);
    const double ref = xi.integrate([&](double x) { return 1 / ((1 - u * x) * (1 - v * x)); });
    CHECK(fjl::theta_two(xi, u, v) == doctest::Approx(ref).epsilon(1e-10));
  }
  const double diag = fjl::theta_two(xi, u, u);
  const double ref = xi.integrate([&](double x) { return 1 / ((1 - u * x) * (1 - u * x)); });
  CHECK(diag == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("rho_trig addition identity (property)") {
  oracle::Gen gen(7);
  for (int i = 0; i < 500; ++i) {
    const double u = gen.uniform(-0.95, 0.95);
    const double v = gen.uniform(0.0, 0.95);
    if (u + v <= 1e-6) continue;  // the identity needs rho(u) + rho(v) away from 0
    CHECK(fjl::rho_trig_identity_check(u, v) < 1e-9 * (1 + std::abs((1 + u * v) / (1 - u * v))));
  }
  CHECK(fjl::rho_trig_identity_check(0.0, 0.0) == 0.0);
}

TEST_CASE("kernel rejects bad rho") {
  CHECK_THROWS_AS(fjl::RenormKernel(fjl::nu_lambda(0.5), [](double u) { return u + 1.0; }, "shift"), fjl::Error);
  CHECK_THROWS_AS(fjl::RenormKernel(fjl::nu_lambda(0.5), [](double u) { return u * u; }, "square"), fjl::Error);
}

TEST_CASE("product grid shape") {
  const auto g = fjl::default_product_grid();
  CHECK(g.size() == 200);
  CHECK(g.front().u * g.front().v == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(g.back().u * g.back().v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("certification passes for rho_trig and fails for the identity") {
  const auto grid = fjl::default_product_grid();
  const fjl::JacobiParams p = fjl::JacobiParams::make(0.6, 0.4);
  const std::vector<fjl::SpectralMeasure> ms{fjl::nu_lambda(0.6), fjl::xi_lambda(0.6), fjl::nu_lambda_theta(p)};
  for (const auto& m : ms) {
    const fjl::RenormKernel good(m, fjl::rho_trig, "2u/(1+u^2)");
    const auto rep = fjl::certify_product_dependence(good, grid, 1e-10);
    CHECK_MESSAGE(rep.verdict, m.name() << " " << rep.max_violation);
    const fjl::RenormKernel bad(m, [](double u) { return u; }, "u");
    const auto ctl = fjl::certify_product_dependence(bad, grid, 1e-10);
    CHECK_FALSE(ctl.verdict);
    CHECK(ctl.max_violation > 1e-4);
  }
}

TEST_CASE("Theta_rho depends on uv only (random pairs)") {
  const fjl::RenormKernel k(fjl::nu_lambda(0.3), fjl::rho_trig, "trig");
  oracle::Gen gen(3);
  for (int i = 0; i < 50; ++i) {
    const double u = gen.uniform(0.01, 0.8);
    const double v = gen.uniform(0.01, 0.8);
    const double w = std::sqrt(u * v);
    CHECK(k.Theta(u, v) == doctest::Approx(k.Theta(w, w)).epsilon(1e-10));
  }
}

TEST_CASE("report json carries the verdict") {
  fjl::CertificationReport r;
  r.family = "f";
  r.verdict = true;
  CHECK(r.to_json().find("\"verdict\":true") != std::string::npos);
}
