#include "conespec/greens.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "conespec/bessel.hpp"
#include "conespec/error.hpp"

namespace conespec {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) fail(ErrorCode::kInvalidArgument, "spline needs at least 3 matching samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) fail(ErrorCode::kInvalidArgument, "spline abscissae must be strictly increasing");
  }
  // Tridiagonal solve for the natural spline second derivatives.
  second_.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    const double p = sig * second_[i - 1] + 2.0;
    second_[i] = (sig - 1.0) / p;
    const double slope = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) - (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    u[i] = (6.0 * slope / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
  }
  second_[n - 1] = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) second_[i] = second_[i] * second_[i + 1] + u[i];
}

double CubicSpline::operator()(double t) const {
  auto hi = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(hi - x_.begin()), 1, x_.size() - 1);
  const double h = x_[k] - x_[k - 1];
  const double a = (x_[k] - t) / h, b = (t - x_[k - 1]) / h;
  return a * y_[k - 1] + b * y_[k] + ((a * a * a - a) * second_[k - 1] + (b * b * b - b) * second_[k]) * h * h / 6.0;
}

// ---------------------------------------------------------------------------

Vec2 SampledFunctionPair::operator()(double r) const {
  if (r < a || r > b) return {0.0, 0.0};
  return {plus ? plus(r) : 0.0, minus ? minus(r) : 0.0};
}

void SampledFunctionPair::validate() const {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
    fail(ErrorCode::kInvalidArgument, "support must satisfy 0 < a < b < inf");
  }
}

SampledFunctionPair SampledFunctionPair::zero(double a, double b) {
  SampledFunctionPair g;
  g.a = a;
  g.b = b;
  g.smoothness = "zero";
  g.validate();
  return g;
}

SampledFunctionPair SampledFunctionPair::gaussian(double center, double width, double amp_plus, double amp_minus,
                                                  double floor) {
  if (!(width > 0.0)) fail(ErrorCode::kInvalidArgument, "gaussian width must be positive");
  SampledFunctionPair g;
  g.a = std::max(center - 8.0 * width, floor);
  g.b = center + 8.0 * width;
  auto shape = [center, width](double r) {
    const double t = (r - center) / width;
    return std::exp(-0.5 * t * t);
  };
  g.plus = [shape, amp_plus](double r) { return amp_plus * shape(r); };
  g.minus = [shape, amp_minus](double r) { return amp_minus * shape(r); };
  g.smoothness = "gaussian";
  g.validate();
  return g;
}

SampledFunctionPair SampledFunctionPair::smooth_bump(double a, double b, double amp_plus, double amp_minus) {
  SampledFunctionPair g;
  g.a = a;
  g.b = b;
  g.validate();
  auto shape = [a, b](double r) {
    const double t = (2.0 * r - a - b) / (b - a);
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
  };
  g.plus = [shape, amp_plus](double r) { return amp_plus * shape(r); };
  g.minus = [shape, amp_minus](double r) { return amp_minus * shape(r); };
  g.smoothness = "bump";
  return g;
}

SampledFunctionPair SampledFunctionPair::from_samples(const std::vector<double>& r, const std::vector<double>& g_plus,
                                                      const std::vector<double>& g_minus) {
  if (r.size() != g_plus.size() || r.size() != g_minus.size()) {
    fail(ErrorCode::kDimensionMismatch, "sample arrays differ in length");
  }
  auto sp = std::make_shared<CubicSpline>(r, g_plus);
  auto sm = std::make_shared<CubicSpline>(r, g_minus);
  SampledFunctionPair g;
  g.a = r.front();
  g.b = r.back();
  g.validate();
  g.plus = [sp](double x) { return (*sp)(x); };
  g.minus = [sm](double x) { return (*sm)(x); };
  g.smoothness = "cubic-spline";
  return g;
}

SampledFunctionPair SampledFunctionPair::combine(double alpha, const SampledFunctionPair& x, double beta,
                                                 const SampledFunctionPair& y) {
  SampledFunctionPair g;
  g.a = std::min(x.a, y.a);
  g.b = std::max(x.b, y.b);
  g.plus = [=](double r) { return alpha * x(r)[0] + beta * y(r)[0]; };
  g.minus = [=](double r) { return alpha * x(r)[1] + beta * y(r)[1]; };
  g.smoothness = x.smoothness == y.smoothness ? x.smoothness : "combined";
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------

namespace {

// One column of the variation-of-parameters solution
//   f(r) = phi(r) C(r),  C' = psi . g,
// stored with the exponential weight factored out:
//   phi = col(r) e^{w(r)},  psi = row(xi) e^{-w(xi)}.
struct Term {
  bool from_zero;
  std::function<Vec2(double)> col;
  std::function<Vec2(double)> row;
  std::function<double(double)> w;
};

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

std::array<Term, 2> terms_for(const ModeBlock& block) {
  const double m = block.m;
  switch (classify(block)) {
    case Regime::kPower: {
      const double p = 0.5 * (m - 1) + block.lambda;
      const double q = 0.5 * (m - 1) - block.lambda;
      Term plus{true, [](double) { return Vec2{1.0, 0.0}; }, [](double) { return Vec2{1.0, 0.0}; },
                [p](double r) { return -p * std::log(r); }};
      Term minus{false, [](double) { return Vec2{0.0, 1.0}; }, [](double) { return Vec2{0.0, 1.0}; },
                 [q](double r) { return -q * std::log(r); }};
      return {plus, minus};
    }
    case Regime::kExponential: {
      const double kappa = std::abs(block.mu), sigma = sgn(block.mu);
      const double e = 0.5 * (1 - m);
      Term decay{true, [=](double r) { const double v = std::pow(r, e); return Vec2{v, sigma * v}; },
                 [=](double r) { const double v = 0.5 * std::pow(r, -e); return Vec2{v, sigma * v}; },
                 [kappa](double r) { return -kappa * r; }};
      Term growth{false, [=](double r) { const double v = std::pow(r, e); return Vec2{v, -sigma * v}; },
                  [=](double r) { const double v = 0.5 * std::pow(r, -e); return Vec2{v, -sigma * v}; },
                  [kappa](double r) { return kappa * r; }};
      return {decay, growth};
    }
    case Regime::kBessel: {
      const double kappa = std::abs(block.mu), sigma = sgn(block.mu);
      const auto nu = ModeSolution::bessel_orders(block.lambda);
      const double np = nu[0], nm = nu[1];
      // det [[I_{nu+}, K_{|nu+|}], [-I_{nu-}, K_{|nu-|}]] = 1/x, hence the factor kappa.
      Term i_col{false,
                 [=](double r) {
                   const double x = kappa * r, pre = std::pow(r, 1 - 0.5 * m);
                   return Vec2{pre * modified_bessel_scaled(np, x).i, -sigma * pre * modified_bessel_scaled(nm, x).i};
                 },
                 [=](double r) {
                   const double x = kappa * r, pre = kappa * std::pow(r, 0.5 * m);
                   return Vec2{pre * modified_bessel_scaled(std::abs(nm), x).k,
                               -sigma * pre * modified_bessel_scaled(std::abs(np), x).k};
                 },
                 [kappa](double r) { return kappa * r; }};
      Term k_col{true,
                 [=](double r) {
                   const double x = kappa * r, pre = std::pow(r, 1 - 0.5 * m);
                   return Vec2{pre * modified_bessel_scaled(std::abs(np), x).k,
                               sigma * pre * modified_bessel_scaled(std::abs(nm), x).k};
                 },
                 [=](double r) {
                   const double x = kappa * r, pre = kappa * std::pow(r, 0.5 * m);
                   return Vec2{pre * modified_bessel_scaled(nm, x).i, sigma * pre * modified_bessel_scaled(np, x).i};
                 },
                 [kappa](double r) { return -kappa * r; }};
      return {i_col, k_col};
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown regime");
}

class Integrator {
 public:
  Integrator(const Tolerances& tol, std::size_t& count) : tol_(tol), count_(count) {}

  // int_lo^hi e^{w(target) - w(xi)} row(xi) . g(xi) dxi
  double operator()(const Term& t, const SampledFunctionPair& g, double target, double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    const double wt = t.w(target);
    auto integrand = [&](double xi) {
      const Vec2 gv = g(xi);
      if (gv[0] == 0.0 && gv[1] == 0.0) return 0.0;
      const Vec2 row = t.row(xi);
      return std::exp(wt - t.w(xi)) * (row[0] * gv[0] + row[1] * gv[1]);
    };
    double error = 0.0, l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, lo, hi, 30, 0.1 * tol_.quad_rel, &error, &l1);
    ++count_;
    if (!std::isfinite(value) || error > std::max(tol_.quad_rel * l1, tol_.quad_abs)) {
      fail(ErrorCode::kConvergence, "quadrature did not converge on [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "], error estimate " + std::to_string(error));
    }
    return value;
  }

 private:
  const Tolerances& tol_;
  std::size_t& count_;
};

// Scaled coefficient C~(r) = e^{w(r)} C(r) at every (sorted) point.
std::vector<double> cumulative(const Term& t, const SampledFunctionPair& g, const std::vector<double>& sorted,
                               const Integrator& integrate) {
  const std::size_t n = sorted.size();
  std::vector<double> out(n, 0.0);
  if (t.from_zero) {
    // C(r) = int_a^r
    double prev = g.a, acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = sorted[i];
      if (r <= g.a) continue;
      acc = std::exp(t.w(r) - t.w(prev)) * acc + integrate(t, g, r, prev, std::min(r, g.b));
      out[i] = acc;
      prev = r;
    }
  } else {
    // C(r) = -int_r^b
    double prev = g.b, acc = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      const double r = sorted[i];
      if (r >= g.b) continue;
      acc = std::exp(t.w(r) - t.w(prev)) * acc - integrate(t, g, r, std::max(r, g.a), prev);
      out[i] = acc;
      prev = r;
    }
  }
  return out;
}

}  // namespace

RightInverseResult apply_right_inverse(const ModeBlock& block, const SampledFunctionPair& g,
                                       const std::vector<double>& r_eval, const Tolerances& tol) {
  block.validate();
  g.validate();
  for (double r : r_eval) {
    if (!std::isfinite(r) || r < 1e-6) fail(ErrorCode::kDomain, "right inverse is evaluated at r >= 1e-6");
  }
  RightInverseResult out;
  out.r = r_eval;
  const std::size_t n = r_eval.size();
  out.f_plus.assign(n, 0.0);
  out.f_minus.assign(n, 0.0);
  out.coeff_from_infinity.assign(n, 0.0);
  out.coeff_from_zero.assign(n, 0.0);
  if (n == 0) return out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return r_eval[i] < r_eval[j]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = r_eval[order[i]];

  Integrator integrate(tol, out.quadratures);
  for (const Term& t : terms_for(block)) {
    const std::vector<double> c = cumulative(t, g, sorted, integrate);
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == 0.0) continue;
      const double r = sorted[i];
      const Vec2 col = t.col(r);
      const std::size_t k = order[i];
      out.f_plus[k] += col[0] * c[i];
      out.f_minus[k] += col[1] * c[i];
      (t.from_zero ? out.coeff_from_zero : out.coeff_from_infinity)[k] = c[i] * std::exp(-t.w(r));
    }
  }
  return out;
}

RightInverseResult apply_right_inverse_sum(const std::vector<std::pair<ModeBlock, SampledFunctionPair>>& terms,
                                           const std::vector<double>& r_eval, const Tolerances& tol) {
  RightInverseResult total;
  total.r = r_eval;
  total.f_plus.assign(r_eval.size(), 0.0);
  total.f_minus.assign(r_eval.size(), 0.0);
  for (const auto& [block, g] : terms) {
    const RightInverseResult part = apply_right_inverse(block, g, r_eval, tol);
    for (std::size_t i = 0; i < r_eval.size(); ++i) {
      total.f_plus[i] += part.f_plus[i];
      total.f_minus[i] += part.f_minus[i];
    }
    total.quadratures += part.quadratures;
  }
  // per-block coefficients are not meaningful for a sum
  total.coeff_from_infinity.clear();
  total.coeff_from_zero.clear();
  return total;
}

RightInverseReport verify_right_inverse(const ModeBlock& block, const SampledFunctionPair& g, std::size_t points,
                                        const Tolerances& tol) {
  block.validate();
  g.validate();
  if (points == 0) fail(ErrorCode::kInvalidArgument, "verification needs at least one point");
  RightInverseReport report;
  report.points = points;

  std::vector<double> centers(points);
  for (std::size_t i = 0; i < points; ++i) centers[i] = g.a + (g.b - g.a) * (i + 0.5) / points;

  // Collect the exact stencil abscissae so a single cumulative pass serves all
  // derivatives.
  std::vector<double> all = centers;
  for (double r : centers) {
    finite_difference_derivative([&all](double x) { all.push_back(x); return Vec2{0.0, 0.0}; }, r);
  }
  const RightInverseResult f = apply_right_inverse(block, g, all, tol);
  std::map<double, Vec2> value;
  for (std::size_t i = 0; i < all.size(); ++i) value[all[i]] = {f.f_plus[i], f.f_minus[i]};

  double gg = 0.0, dg = 0.0;
  for (double r : centers) {
    const Vec2 fr = value.at(r);
    const Vec2 df = finite_difference_derivative([&value](double x) { return value.at(x); }, r);
    const Vec2 d = apply_mode_operator(block, r, fr, df);
    const Vec2 gr = g(r);
    report.max_residual = std::max({report.max_residual, std::abs(d[0] - gr[0]), std::abs(d[1] - gr[1])});
    report.max_g = std::max({report.max_g, std::abs(gr[0]), std::abs(gr[1])});
    gg += gr[0] * gr[0] + gr[1] * gr[1];
    dg += d[0] * gr[0] + d[1] * gr[1];
  }
  report.calibration = gg > 0.0 ? dg / gg : 1.0;

  report.boundary_radius = 1e-3 * g.a;
  if (report.boundary_radius >= 1e-6) {
    const RightInverseResult edge = apply_right_inverse(block, g, {report.boundary_radius}, tol);
    report.boundary_coefficient = std::abs(edge.coeff_from_zero[0]);
  }
  return report;
}

}  // namespace conespec
