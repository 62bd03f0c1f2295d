#include "doctest.h"
#include "fjl/error.hpp"
#include "fjl/measures.hpp"
#include "oracles.hpp"

#include <cmath>

using cplx = std::complex<double>;
using fjl::JacobiParams;

namespace {

std::vector<JacobiParams> grid() {
  std::vector<JacobiParams> out;
  for (double l : {0.3, 0.6, 1.0})
    for (double t : {0.3, 0.4, 0.5}) out.push_back(JacobiParams::make(l, t));
  return out;
}

}  // namespace

TEST_CASE("support endpoints") {
  const auto p = JacobiParams::make(1.0, 0.5);
  CHECK(p.x_minus() == 0.0);
  CHECK(p.x_plus() == 1.0);
  const auto h = JacobiParams::make(0.5, 0.5);
  CHECK(h.x_minus() == doctest::Approx((2.0 - std::sqrt(3.0)) / 4.0).epsilon(1e-14));
  CHECK(h.x_plus() == doctest::Approx((2.0 + std::sqrt(3.0)) / 4.0).epsilon(1e-14));
  CHECK(h.x_minus() == doctest::Approx(0.066987).epsilon(1e-5));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(JacobiParams::make(0.0, 0.3), fjl::Error);
  CHECK_THROWS_AS(JacobiParams::make(1.2, 0.3), fjl::Error);
  CHECK_THROWS_AS(JacobiParams::make(1.0, 0.6), fjl::Error);
  CHECK_THROWS_AS(JacobiParams::make(0.5, std::nan("")), fjl::Error);
  CHECK_NOTHROW(JacobiParams::make(0.5, 2.0 / 3.0));
  CHECK_THROWS_AS(fjl::nu_lambda(0.0), fjl::Error);
  CHECK_THROWS_AS(fjl::pushforward_affine(fjl::nu_lambda(1.0), 0.0, 1.0), fjl::Error);
}

TEST_CASE("densities agree with the direct formulas") {
  oracle::Gen gen(3);
  for (const auto& p : grid()) {
    const auto mu = fjl::mu_lambda_theta(p);
    const auto nu = fjl::nu_lambda_theta(p);
    for (int i = 0; i < 20; ++i) {
      const double x = gen.uniform(mu.support_lo(), mu.support_hi());
      CHECK(mu.density(x) == doctest::Approx(oracle::mu_density(p.lambda, p.theta, x)).epsilon(1e-12));
      const double u = gen.uniform(-1.0, 1.0);
      CHECK(nu.density(u) == doctest::Approx(oracle::nu_lt_density(p.lambda, p.theta, u)).epsilon(1e-11));
    }
  }
  const auto xi = fjl::xi_lambda(0.5);
  CHECK(xi.density(0.2) == doctest::Approx(oracle::xi_density(0.5, 0.2)).epsilon(1e-14));
  CHECK(xi.density(1.5) == 0.0);
}

TEST_CASE("reductions at lambda = 1 and theta = 1/2") {
  const auto mu = fjl::mu_lambda_theta(JacobiParams::make(1.0, 0.5));
  for (double x : {0.01, 0.3, 0.77, 0.999})
    CHECK(mu.density(x) == doctest::Approx(1.0 / (oracle::pi * std::sqrt(x * (1 - x)))).epsilon(1e-13));
  const auto arcsine = fjl::nu_lambda(1.0);
  for (double x : {-0.9, 0.0, 0.5})
    CHECK(arcsine.density(x) == doctest::Approx(1.0 / (oracle::pi * std::sqrt(1 - x * x))).epsilon(1e-13));
  oracle::Gen gen(5);
  for (double l : {0.3, 0.5, 0.8, 1.0}) {
    const auto a = fjl::nu_lambda_theta(JacobiParams::make(l, 0.5));
    const auto b = fjl::nu_lambda(l);
    for (int i = 0; i < 20; ++i) {
      const double x = gen.uniform(-1.0, 1.0);
      CHECK(a.density(x) == doctest::Approx(b.density(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("every family has mass one") {
  for (const auto& p : grid()) {
    CHECK(fjl::mu_lambda_theta(p).total_mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fjl::nu_lambda_theta(p).total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  }
  for (double l : {0.2, 0.5, 0.9, 1.0}) {
    CHECK(fjl::nu_lambda(l).total_mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fjl::xi_lambda(l).total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  }
  // tanh-sinh on the raw densities
  CHECK(oracle::integrate([](double x) { return oracle::nu_density(0.5, x); }, -1, 1) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(oracle::integrate([](double x) { return oracle::nu_lt_density(0.6, 0.4, x); }, -1, 1) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("xi atom and a.c. mass") {
  const auto xi = fjl::xi_lambda(0.5);
  REQUIRE(xi.atoms().size() == 1);
  const double a = 0.5 / std::sqrt(0.75);
  CHECK(a == doctest::Approx(0.57735).epsilon(1e-5));
  CHECK(xi.atoms()[0].weight == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(xi.atoms()[0].location == doctest::Approx(std::sqrt(a * a + 1)).epsilon(1e-14));
  CHECK(fjl::xi_lambda(1.0).atoms().empty());
  for (double l : {0.2, 0.5, 0.9}) {
    const double al = oracle::a_of(l);
    const double expected = 1 - al / std::sqrt(al * al + 1);
    CHECK(fjl::xi_lambda(l).ac_mass() == doctest::Approx(expected).epsilon(1e-9));
    CHECK(oracle::integrate([l](double x) { return oracle::xi_density(l, x); }, -1, 1) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("moments") {
  const auto m = fjl::moments(fjl::mu_lambda_theta(JacobiParams::make(1.0, 0.5)), 30);
  for (int k = 0; k <= 30; ++k)
    CHECK(m[static_cast<std::size_t>(k)] == doctest::Approx(oracle::arcsine01_moment(k)).epsilon(1e-10));
  CHECK(m[1] == doctest::Approx(0.5));
  CHECK(m[2] == doctest::Approx(0.375));

  const auto s = fjl::moments(fjl::nu_lambda(1.0), 15);
  for (int k = 1; k <= 15; k += 2) CHECK(std::abs(s[static_cast<std::size_t>(k)]) < 1e-12);

  for (auto [l, t] : {std::pair{0.5, 0.5}, std::pair{0.8, 0.4}})
    CHECK(fjl::moments(fjl::mu_lambda_theta(JacobiParams::make(l, t)), 1)[1] ==
          doctest::Approx(t).epsilon(1e-12));

  // against tanh-sinh on the raw density; (1, 1/2) is the arcsine case above,
  // where the oracle's rounded x_+ spoils the edge singularity
  for (const auto& p : grid()) {
    if (p.lambda == 1.0 && p.theta == 0.5) continue;
    const auto mm = fjl::moments(fjl::mu_lambda_theta(p), 12);
    const auto [lo, hi] = oracle::mu_support(p.lambda, p.theta);
    for (int k = 0; k <= 12; k += 3) {
      const double ref = oracle::integrate(
          [&](double x) { return std::pow(x, k) * oracle::mu_density(p.lambda, p.theta, x); }, lo, hi);
      CHECK(mm[static_cast<std::size_t>(k)] == doctest::Approx(ref).epsilon(1e-10));
    }
  }
  // atoms contribute
  const double l = 0.5;
  const auto xm = fjl::moments(fjl::xi_lambda(l), 3);
  const double a = oracle::a_of(l);
  const double loc = std::sqrt(a * a + 1);
  const double w = a / loc;
  const double ac3 = oracle::integrate([&](double x) { return x * x * x * oracle::xi_density(l, x); }, -1, 1);
  CHECK(xm[3] == doctest::Approx(ac3 + w * loc * loc * loc).epsilon(1e-10));
}

TEST_CASE("pushforward") {
  const auto mu = fjl::mu_lambda_theta(JacobiParams::make(1.0, 0.5));
  const auto img = fjl::pushforward_affine(mu, 2.0, -1.0);
  CHECK(img.support_lo() == -1.0);
  CHECK(img.support_hi() == 1.0);
  for (double x : {-0.8, 0.1, 0.6})
    CHECK(img.density(x) == doctest::Approx(1.0 / (oracle::pi * std::sqrt(1 - x * x))).epsilon(1e-13));

  const auto h = fjl::mu_lambda_theta(JacobiParams::make(0.5, 0.5));
  const auto hi = fjl::pushforward_affine(h, 2.0, -1.0);
  CHECK(fjl::moments(hi, 1)[1] == doctest::Approx(2.0 * 0.5 - 1.0).epsilon(1e-12));
  const auto id = fjl::pushforward_affine(h, 1.0, 0.0);
  CHECK(id.density(0.4) == doctest::Approx(h.density(0.4)).epsilon(1e-15));

  // reflection sorts the support and moves atoms
  const auto xi = fjl::xi_lambda(0.5);
  const auto r = fjl::pushforward_affine(xi, -1.0, 0.0);
  CHECK(r.support_lo() == -1.0);
  CHECK(r.atoms()[0].location == doctest::Approx(-xi.atoms()[0].location));
  CHECK(r.total_mass() == doctest::Approx(1.0).epsilon(1e-10));

  // nu_lambda is the centred image of mu_{lambda,1/2}
  oracle::Gen gen(8);
  for (double l : {0.3, 0.5, 0.9}) {
    const auto p = JacobiParams::make(l, 0.5);
    const auto map = fjl::centering_map(p);
    CHECK(map.scale == doctest::Approx(2.0 / std::sqrt(l * (2 - l))).epsilon(1e-14));
    const auto pf = fjl::pushforward_affine(fjl::mu_lambda_theta(p), map.scale, map.shift);
    const auto nu = fjl::nu_lambda(l);
    for (int i = 0; i < 50; ++i) {
      const double x = gen.uniform(-0.999, 0.999);
      CHECK(pf.density(x) == doctest::Approx(nu.density(x)).epsilon(1e-10));
    }
    const auto a = fjl::moments(pf, 20);
    const auto b = fjl::moments(nu, 20);
    for (int k = 0; k <= 20; ++k)
      CHECK(std::abs(a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]) < 1e-9);
  }
  // nu_{lambda,theta} is the centred image of mu_{lambda,theta}
  for (const auto& p : grid()) {
    const auto map = fjl::centering_map(p);
    const auto pf = fjl::pushforward_affine(fjl::mu_lambda_theta(p), map.scale, map.shift);
    const auto nu = fjl::nu_lambda_theta(p);
    for (double x : {-0.9, -0.2, 0.35, 0.8})
      CHECK(pf.density(x) == doctest::Approx(nu.density(x)).epsilon(1e-10));
  }
}

TEST_CASE("Cauchy transform") {
  const auto p = JacobiParams::make(1.0, 0.5);
  const auto mu = fjl::mu_lambda_theta(p);
  CHECK(std::abs(fjl::cauchy_transform(mu, 2.0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(fjl::cauchy_closed_form_mu(p, 2.0) - 1.0 / std::sqrt(2.0)) < 1e-14);
  const fjl::MuCauchyClosedForm cf(p);
  CHECK(cf.A() == doctest::Approx(4.0));
  CHECK(cf.B() == doctest::Approx(4.0));
  CHECK(cf.C() == doctest::Approx(0.0));

  std::vector<fjl::SpectralMeasure> all{mu, fjl::mu_lambda_theta(JacobiParams::make(0.5, 0.4)),
                                        fjl::nu_lambda(0.5), fjl::nu_lambda_theta(JacobiParams::make(0.6, 0.4)),
                                        fjl::xi_lambda(0.5), fjl::xi_lambda(0.2)};
  oracle::Gen gen(21);
  for (const auto& m : all) {
    const cplx far(1e6, 0.0);
    CHECK(std::abs(far * fjl::cauchy_transform(m, far) - 1.0) < 1e-5);
    for (int i = 0; i < 100; ++i) {
      const cplx z(gen.uniform(-3.0, 3.0), std::exp(gen.uniform(std::log(1e-6), std::log(3.0))));
      CHECK(fjl::cauchy_transform(m, z).imag() < 0.0);
    }
    CHECK_THROWS_AS(fjl::cauchy_transform(m, m.midpoint()), fjl::Error);
  }

  // quadrature route vs tanh-sinh on the raw density, near and far
  const auto pm = JacobiParams::make(0.5, 0.4);
  const auto [lo, hi] = oracle::mu_support(0.5, 0.4);
  for (cplx z : {cplx(0.5, 0.3), cplx(1.2, 0.0), cplx(-0.4, 0.1), cplx(0.5, 0.02)}) {
    const auto ref = oracle::cauchy([](double x) { return oracle::mu_density(0.5, 0.4, x); }, lo, hi, z);
    CHECK(std::abs(fjl::cauchy_transform(fjl::mu_lambda_theta(pm), z) - ref) < 1e-10);
  }

  // xi closed form (sqrt(u^2-1) + a)/(u^2 - (1 + a^2)) at u = 3
  const double a = oracle::a_of(0.5);
  const cplx u = 3.0;
  const cplx expect = (std::sqrt(u * u - 1.0) + a) / (u * u - (1.0 + a * a));
  CHECK(std::abs(fjl::cauchy_transform(fjl::xi_lambda(0.5), u) - expect) < 1e-9);
  CHECK_THROWS_AS(fjl::cauchy_transform(fjl::xi_lambda(0.5), std::sqrt(1 + a * a)), fjl::Error);
  // pole of the reduced density on the far side is handled
  const cplx mirror = -std::sqrt(1 + a * a);
  CHECK(std::isfinite(std::abs(fjl::cauchy_transform(fjl::xi_lambda(0.5), mirror))));
}

TEST_CASE("closed form against quadrature") {
  oracle::Gen gen(99);
  const std::vector<std::pair<double, double>> params{{0.5, 0.5}, {1.0, 0.5}, {0.3, 0.3}, {0.6, 0.4}, {1.0, 0.3}};
  for (auto [l, t] : params) {
    const auto p = JacobiParams::make(l, t);
    const auto mu = fjl::mu_lambda_theta(p);
    const fjl::MuCauchyClosedForm cf(p);
    for (int i = 0; i < 100; ++i) {
      cplx z(gen.uniform(-1.0, 2.0), gen.uniform(-1.0, 1.0));
      if (i % 10 == 0) z = cplx(gen.uniform(1.05, 3.0), 0.0);
      const cplx a = cf(z);
      const cplx b = fjl::cauchy_transform(mu, z);
      CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(b)));
    }
    CHECK(std::abs(1e6 * cf(1e6) - 1.0) < 1e-5);
    CHECK_THROWS_AS(cf(0.5), fjl::Error);
    CHECK_THROWS_AS(cf(0.0), fjl::Error);
  }
  const auto p = JacobiParams::make(0.5, 0.5);
  CHECK(std::abs(fjl::cauchy_closed_form_mu(p, cplx(2, 1)) -
                 fjl::cauchy_transform(fjl::mu_lambda_theta(p), cplx(2, 1))) < 1e-9);
}

TEST_CASE("Stieltjes inversion recovers densities") {
  CHECK(fjl::stieltjes_invert(fjl::nu_lambda(1.0), 0.0) == doctest::Approx(1.0 / oracle::pi).epsilon(1e-6));
  const auto nu = fjl::nu_lambda(0.5);
  CHECK(fjl::stieltjes_invert(nu, 0.3) == doctest::Approx(nu.density(0.3)).epsilon(1e-5));
  const auto mu = fjl::mu_lambda_theta(JacobiParams::make(0.5, 0.4));
  CHECK(fjl::stieltjes_invert(mu, mu.midpoint()) == doctest::Approx(mu.density(mu.midpoint())).epsilon(1e-5));
  std::vector<fjl::SpectralMeasure> all{mu, nu, fjl::xi_lambda(0.5), fjl::nu_lambda_theta(JacobiParams::make(0.6, 0.4))};
  for (const auto& m : all)
    for (int i = 1; i <= 20; ++i) {
      const double x = m.support_lo() + (m.support_hi() - m.support_lo()) * i / 21.0;
      CHECK(fjl::stieltjes_invert(m, x) == doctest::Approx(m.density(x)).epsilon(1e-4));
    }
  CHECK_THROWS_AS(fjl::stieltjes_invert(nu, 1.5), fjl::Error);
}

TEST_CASE("cdf") {
  const auto mu = fjl::mu_lambda_theta(JacobiParams::make(1.0, 0.5));
  for (double x : {0.1, 0.5, 0.8})
    CHECK(fjl::cdf(mu, x) == doctest::Approx(2.0 / oracle::pi * std::asin(std::sqrt(x))).epsilon(1e-11));
  CHECK(fjl::cdf(mu, -1.0) == 0.0);
  CHECK(fjl::cdf(mu, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  const auto xi = fjl::xi_lambda(0.5);
  CHECK(fjl::cdf(xi, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fjl::cdf(xi, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
}
