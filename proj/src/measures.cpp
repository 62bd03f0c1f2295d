#include "fjl/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fjl/error.hpp"
#include "fjl/quadrature.hpp"

namespace fjl {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kSnap = 1e-14;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Doubles the node count from n0 until close(current, previous) holds.
template <class T, class Eval, class Dist>
T converge(Eval eval, Dist dist, int n0, const char* what) {
  int n = n0;
  T prev = eval(n);
  while (n < kMaxQuadratureNodes) {
    n *= 2;
    T cur = eval(n);
    if (dist(cur, prev)) return cur;
    prev = std::move(cur);
  }
  fail(ErrorCode::NonConvergence, std::string(what) + ": quadrature did not converge");
}

bool on_segment(cplx z, double lo, double hi) {
  return z.imag() == 0.0 && z.real() >= lo && z.real() <= hi;
}

// sqrt((z - m)^2 - h^2) with the cut on [m - h, m + h] and ~ z - m at infinity.
cplx segment_sqrt(cplx z, double m, double h) {
  return std::sqrt(z - (m + h)) * std::sqrt(z - (m - h));
}

}  // namespace

JacobiParams JacobiParams::make(double lambda, double theta) {
  require(std::isfinite(lambda) && std::isfinite(theta), "lambda and theta must be finite");
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1], got " + fmt(lambda));
  require(theta > 0.0, "theta must be positive, got " + fmt(theta));
  require(theta <= 1.0 / (lambda + 1.0) + 1e-15,
          "theta must satisfy theta <= 1/(lambda+1) (injective regime), got lambda=" +
              fmt(lambda) + " theta=" + fmt(theta));
  return JacobiParams{lambda, theta};
}

double JacobiParams::x_minus() const noexcept {
  const double r = std::sqrt(theta * (1.0 - lambda * theta)) -
                   std::sqrt(lambda * theta * (1.0 - theta));
  const double v = r * r;
  return v < kSnap ? 0.0 : v;
}

double JacobiParams::x_plus() const noexcept {
  const double r = std::sqrt(theta * (1.0 - lambda * theta)) +
                   std::sqrt(lambda * theta * (1.0 - theta));
  const double v = r * r;
  return std::abs(v - 1.0) < kSnap ? 1.0 : v;
}

SpectralMeasure::SpectralMeasure(std::string name, double lo, double hi, ComplexFn reduced_density,
                                 std::vector<Atom> atoms)
    : name_(std::move(name)), lo_(lo), hi_(hi), q_(std::move(reduced_density)),
      atoms_(std::move(atoms)) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "support must be a nondegenerate finite interval");
  require(static_cast<bool>(q_), "density must be callable");
  for (const Atom& a : atoms_) {
    require(a.weight >= 0.0 && a.weight <= 1.0, "atom weights must lie in [0, 1]");
    require(!(a.location > lo_ && a.location < hi_),
            "atoms must lie outside the open a.c. support");
  }
}

double SpectralMeasure::density(double x) const {
  if (!(x > lo_ && x < hi_)) return 0.0;
  return q_(cplx(x, 0.0)).real() / std::sqrt((hi_ - x) * (x - lo_));
}

SpectralMeasure::Discretization SpectralMeasure::discretize(int n) const {
  const GaussRule& rule = gauss_legendre(n);
  Discretization d;
  d.x.reserve(static_cast<std::size_t>(n) + atoms_.size());
  d.w.reserve(static_cast<std::size_t>(n) + atoms_.size());
  const double m = midpoint();
  const double h = halfwidth();
  for (int j = 0; j < n; ++j) {
    const double t = 0.5 * kPi * rule.nodes[static_cast<std::size_t>(j)];
    const double x = m + h * std::sin(t);
    d.x.push_back(x);
    d.w.push_back(0.5 * kPi * rule.weights[static_cast<std::size_t>(j)] * q_(cplx(x, 0.0)).real());
  }
  for (const Atom& a : atoms_) {
    if (a.weight == 0.0) continue;
    d.x.push_back(a.location);
    d.w.push_back(a.weight);
  }
  return d;
}

std::vector<double> SpectralMeasure::integrate(
    const std::function<void(double, std::span<double>)>& f, std::size_t dim, double tol) const {
  std::vector<double> scratch(dim);
  auto eval = [&](int n) {
    const Discretization d = discretize(n);
    std::vector<double> acc(dim, 0.0);
    for (std::size_t j = 0; j < d.x.size(); ++j) {
      f(d.x[j], scratch);
      for (std::size_t k = 0; k < dim; ++k) acc[k] += d.w[j] * scratch[k];
    }
    return acc;
  };
  auto close = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t k = 0; k < dim; ++k)
      if (std::abs(a[k] - b[k]) > tol * std::max(1.0, std::abs(a[k]))) return false;
    return true;
  };
  return converge<std::vector<double>>(eval, close, 64, "integrate");
}

double SpectralMeasure::integrate(const std::function<double(double)>& f, double tol) const {
  return integrate([&](double x, std::span<double> out) { out[0] = f(x); }, 1, tol)[0];
}

double SpectralMeasure::ac_mass() const {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.weight;
  return total_mass() - total;
}

double SpectralMeasure::total_mass() const {
  return integrate([](double) { return 1.0; });
}

bool SpectralMeasure::in_support(cplx z, double tol) const {
  if (std::abs(z.imag()) <= tol && z.real() >= lo_ - tol && z.real() <= hi_ + tol) return true;
  for (const Atom& a : atoms_)
    if (a.weight > 0.0 && std::abs(z - a.location) <= tol) return true;
  return false;
}

double a_of_lambda(double lambda) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1], got " + fmt(lambda));
  return (1.0 - lambda) / std::sqrt(lambda * (2.0 - lambda));
}

SpectralMeasure mu_lambda_theta(const JacobiParams& p) {
  const JacobiParams v = JacobiParams::make(p.lambda, p.theta);
  const double xm = v.x_minus();
  const double xp = v.x_plus();
  const double k = 1.0 / (2.0 * kPi * v.lambda * v.theta);
  // Cancel x - x_- against x (and x_+ - x against 1 - x) when they coincide so
  // the edge values stay finite.
  auto q = [=](cplx x) {
    const cplx left = xm == 0.0 ? cplx(1.0) : (x - xm) / x;
    const cplx right = xp == 1.0 ? cplx(1.0) : (xp - x) / (1.0 - x);
    return k * left * right;
  };
  return SpectralMeasure("mu(lambda=" + fmt(v.lambda) + ",theta=" + fmt(v.theta) + ")", xm, xp, q);
}

SpectralMeasure nu_lambda(double lambda) {
  require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1], got " + fmt(lambda));
  const double c = (2.0 - lambda) / kPi;
  const double e = lambda * (2.0 - lambda);
  auto q = [=](cplx x) { return c * (1.0 - x * x) / (1.0 - e * x * x); };
  return SpectralMeasure("nu(lambda=" + fmt(lambda) + ")", -1.0, 1.0, q);
}

AffineMap centering_map(const JacobiParams& p) {
  const double d = p.x_plus() - p.x_minus();
  const double s = p.x_plus() + p.x_minus();
  return AffineMap{2.0 / d, -s / d};
}

SpectralMeasure nu_lambda_theta(const JacobiParams& p) {
  const JacobiParams v = JacobiParams::make(p.lambda, p.theta);
  const double d = 4.0 * v.theta * std::sqrt(v.lambda * (1.0 - v.theta) * (1.0 - v.lambda * v.theta));
  const double s = 2.0 * v.theta * (1.0 + v.lambda - 2.0 * v.lambda * v.theta);
  // s(2-s) + 2d(1-s)u - d^2 u^2 = d^2 (u + s/d)((2-s)/d - u); its roots are the
  // images of 0 and 1 and must not enter (-1, 1).
  const double r0 = s / d;
  const double r1 = (2.0 - s) / d;
  if (r0 < 1.0 - 1e-12 || r1 < 1.0 - 1e-12)
    fail(ErrorCode::OutOfDomain, "nu_lambda_theta: denominator vanishes inside [-1, 1]");
  const double k = 1.0 / (2.0 * kPi * v.lambda * v.theta);
  const bool cancel_lo = std::abs(r0 - 1.0) < 1e-12;
  const bool cancel_hi = std::abs(r1 - 1.0) < 1e-12;
  auto q = [=](cplx u) {
    const cplx left = cancel_lo ? cplx(1.0) : (1.0 + u) / (u + r0);
    const cplx right = cancel_hi ? cplx(1.0) : (1.0 - u) / (r1 - u);
    return k * left * right;
  };
  return SpectralMeasure("nu(lambda=" + fmt(v.lambda) + ",theta=" + fmt(v.theta) + ")", -1.0, 1.0,
                         q);
}

SpectralMeasure xi_lambda(double lambda) {
  const double a = a_of_lambda(lambda);
  const double a2 = a * a;
  auto q = [=](cplx x) { return (1.0 - x * x) / (kPi * (a2 + 1.0 - x * x)); };
  std::vector<Atom> atoms;
  if (a > 0.0) atoms.push_back(Atom{std::sqrt(a2 + 1.0), a / std::sqrt(a2 + 1.0)});
  return SpectralMeasure("xi(lambda=" + fmt(lambda) + ")", -1.0, 1.0, q, std::move(atoms));
}

SpectralMeasure pushforward_affine(const SpectralMeasure& m, double scale, double shift) {
  require(std::isfinite(scale) && std::isfinite(shift), "scale and shift must be finite");
  require(scale != 0.0, "pushforward_affine: scale must be nonzero");
  double lo = scale * m.support_lo() + shift;
  double hi = scale * m.support_hi() + shift;
  if (lo > hi) std::swap(lo, hi);
  std::vector<Atom> atoms;
  for (const Atom& a : m.atoms()) atoms.push_back(Atom{scale * a.location + shift, a.weight});
  auto q = [m, scale, shift](cplx y) { return m.reduced_density((y - shift) / scale); };
  return SpectralMeasure("pushforward(" + m.name() + ")", lo, hi, q, std::move(atoms));
}

std::vector<double> moments(const SpectralMeasure& m, int n_max) {
  require(n_max >= 0, "moments: n_max must be nonnegative");
  return m.integrate(
      [n_max](double x, std::span<double> out) {
        double p = 1.0;
        for (int k = 0; k <= n_max; ++k) {
          out[static_cast<std::size_t>(k)] = p;
          p *= x;
        }
      },
      static_cast<std::size_t>(n_max) + 1, 1e-10);
}

std::complex<double> cauchy_transform(const SpectralMeasure& m, cplx z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "z must be finite");
  if (m.in_support(z))
    fail(ErrorCode::OutOfDomain, "cauchy_transform: z lies in the support");
  cplx atoms = 0.0;
  for (const Atom& a : m.atoms()) atoms += a.weight / (z - a.location);

  const double mid = m.midpoint();
  const double h = m.halfwidth();
  const double x = std::clamp(z.real(), m.support_lo(), m.support_hi());
  const double dist = std::abs(z - x);

  // Subtracting q(z) removes the near-singularity of 1/(z - s); skipped far
  // away and at poles of q.
  cplx qz = dist < h ? m.reduced_density(z) : cplx(0.0);
  if (!std::isfinite(qz.real()) || !std::isfinite(qz.imag())) qz = 0.0;
  const bool near = qz != 0.0;
  auto eval = [&](int n) {
    const GaussRule& rule = gauss_legendre(n);
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = 0.5 * kPi * rule.nodes[static_cast<std::size_t>(j)];
      const double s = mid + h * std::sin(t);
      const cplx qs = m.reduced_density(cplx(s, 0.0));
      acc += rule.weights[static_cast<std::size_t>(j)] * (qs - qz) / (z - s);
    }
    return 0.5 * kPi * acc;
  };
  auto close = [](cplx a, cplx b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
  cplx ac = converge<cplx>(eval, close, 64, "cauchy_transform");
  if (near) ac += qz * kPi / segment_sqrt(z, mid, h);
  return atoms + ac;
}

MuCauchyClosedForm::MuCauchyClosedForm(const JacobiParams& p)
    : p_(JacobiParams::make(p.lambda, p.theta)) {
  const double lt = p_.lambda * p_.theta;
  A_ = 1.0 / (lt * lt);
  B_ = 2.0 * ((1.0 / lt) * (1.0 + 1.0 / p_.lambda) - 2.0 / p_.lambda);
  C_ = (1.0 - 1.0 / p_.lambda) * (1.0 - 1.0 / p_.lambda);
  const cplx probe(1e6, 0.0);
  if (std::abs(probe * eval(probe, 1.0) - 1.0) > 0.5) sign_ = -1.0;
}

cplx MuCauchyClosedForm::eval(cplx z, double sign) const {
  // A z^2 - B z + C = A (z - x_+)(z - x_-); the product of principal roots is
  // analytic off [x_-, x_+].
  const double lt = p_.lambda * p_.theta;
  const cplx root = std::sqrt(A_) * std::sqrt(z - p_.x_plus()) * std::sqrt(z - p_.x_minus());
  const cplx num = (2.0 - 1.0 / lt) * z + (1.0 / p_.lambda - 1.0) + sign * root;
  return num / (2.0 * z * (z - 1.0));
}

cplx MuCauchyClosedForm::operator()(cplx z) const {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "z must be finite");
  if (on_segment(z, 0.0, 1.0))
    fail(ErrorCode::OutOfDomain, "cauchy_closed_form_mu: z lies in [0, 1]");
  return eval(z, sign_);
}

cplx cauchy_closed_form_mu(const JacobiParams& p, cplx z) { return MuCauchyClosedForm(p)(z); }

double stieltjes_invert(const SpectralMeasure& m, double x, std::span<const double> y_steps,
                        double rel_tol) {
  if (!(x > m.support_lo() && x < m.support_hi()))
    fail(ErrorCode::OutOfDomain, "stieltjes_invert: x must lie inside the a.c. support");
  std::vector<double> ys(y_steps.begin(), y_steps.end());
  if (ys.empty()) {
    // The expansion in y is only good for y well below the distance to the edge.
    const double edge = std::min(x - m.support_lo(), m.support_hi() - x);
    const double y0 = std::min(1e-2, 0.25 * edge);
    for (int k = 0; k <= 5; ++k) ys.push_back(y0 * std::ldexp(1.0, -k));
  }
  require(ys.size() >= 2, "stieltjes_invert: need at least two y steps");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    require(ys[i] > 0.0, "stieltjes_invert: y steps must be positive");
    require(i == 0 || ys[i] < ys[i - 1], "stieltjes_invert: y steps must decrease");
  }

  // Neville table extrapolating to y = 0.
  const std::size_t n = ys.size();
  std::vector<std::vector<double>> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i].resize(i + 1);
    r[i][0] = -cauchy_transform(m, cplx(x, ys[i])).imag() / kPi;
    for (std::size_t j = 1; j <= i; ++j) {
      const double y0 = ys[i - j];
      const double y1 = ys[i];
      r[i][j] = (y0 * r[i][j - 1] - y1 * r[i - 1][j - 1]) / (y0 - y1);
    }
  }
  const double best = r[n - 1][n - 1];
  const double resid = std::abs(best - r[n - 2][n - 2]);
  if (resid > rel_tol * std::abs(best))
    fail(ErrorCode::NonConvergence,
         "stieltjes_invert: extrapolation residual " + fmt(resid) + " exceeds tolerance");
  return best;
}

double cdf(const SpectralMeasure& m, double x) {
  double total = 0.0;
  for (const Atom& a : m.atoms())
    if (a.location <= x) total += a.weight;
  if (x <= m.support_lo()) return total;
  if (x >= m.support_hi()) return total + m.ac_mass();
  const double mid = m.midpoint();
  const double h = m.halfwidth();
  const double t0 = -0.5 * kPi;
  const double t1 = std::asin(std::clamp((x - mid) / h, -1.0, 1.0));
  auto eval = [&](int n) {
    const GaussRule& rule = gauss_legendre(n);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = t0 + 0.5 * (t1 - t0) * (rule.nodes[static_cast<std::size_t>(j)] + 1.0);
      acc += rule.weights[static_cast<std::size_t>(j)] *
             m.reduced_density(cplx(mid + h * std::sin(t), 0.0)).real();
    }
    return 0.5 * (t1 - t0) * acc;
  };
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  return total + converge<double>(eval, close, 32, "cdf");
}

}  // namespace fjl
