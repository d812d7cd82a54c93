#include "conespec/cone_modes.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "conespec/bessel.hpp"
#include "conespec/error.hpp"

namespace conespec {

void ModeBlock::validate() const {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "mode block needs m >= 2, got " + std::to_string(m));
  if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(delta)) {
    fail(ErrorCode::kInvalidArgument, "mode block parameters must be finite");
  }
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::kPower: return "mu=0";
    case Regime::kExponential: return "lambda=0";
    case Regime::kBessel: return "general";
  }
  return "?";
}

const char* to_string(Asymptotic a) {
  switch (a) {
    case Asymptotic::kDecay: return "decay";
    case Asymptotic::kGrowth: return "growth";
    case Asymptotic::kBounded: return "bounded";
  }
  return "?";
}

Regime classify(const ModeBlock& block) {
  if (block.mu == 0.0) return Regime::kPower;
  if (block.lambda == 0.0) return Regime::kExponential;
  return Regime::kBessel;
}

ModeOperator mode_operator(const ModeBlock& block, double r) {
  block.validate();
  if (!(r > 0.0)) fail(ErrorCode::kDomain, "mode operator needs r > 0");
  ModeOperator op;
  op.radial_coefficient = 0.5 * (block.m - 1) / r;
  op.potential << block.lambda / r, block.mu, block.mu, -block.lambda / r;
  return op;
}

Vec2 apply_mode_operator(const ModeBlock& block, double r, const Vec2& f, const Vec2& df) {
  const ModeOperator op = mode_operator(block, r);
  const auto& p = op.potential;
  return {df[0] + op.radial_coefficient * f[0] + p(0, 0) * f[0] + p(0, 1) * f[1],
          df[1] + op.radial_coefficient * f[1] + p(1, 0) * f[0] + p(1, 1) * f[1]};
}

Eigencurve mode_eigencurve(double lambda, double mu, const std::vector<double>& r_grid) {
  if (r_grid.empty()) fail(ErrorCode::kInvalidArgument, "eigencurve grid is empty");
  Eigencurve out;
  for (double r : r_grid) {
    if (!(r > 0.0)) fail(ErrorCode::kDomain, "eigencurve grid must be positive");
    // hypot keeps r*mu and lambda well scaled at both ends of the grid
    const double value = std::hypot(r * mu, lambda) / r;
    out.r.push_back(r);
    out.plus.push_back(value);
    out.minus.push_back(-value);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::array<double, 2> ModeSolution::bessel_orders(double lambda) {
  const double s = lambda >= 0.0 ? 1.0 : -1.0;
  return {s * (lambda + 0.5), s * (lambda - 0.5)};
}

namespace {

Asymptotic power_behaviour_at_zero(double exponent) {
  if (exponent < 0) return Asymptotic::kGrowth;
  if (exponent > 0) return Asymptotic::kDecay;
  return Asymptotic::kBounded;
}

Asymptotic power_behaviour_at_infinity(double exponent) {
  if (exponent < 0) return Asymptotic::kDecay;
  if (exponent > 0) return Asymptotic::kGrowth;
  return Asymptotic::kBounded;
}

double sign(double x) { return x < 0 ? -1.0 : 1.0; }

}  // namespace

ModeSolution::ModeSolution(ModeBlock block, Kind kind) : block_(block), kind_(kind), regime_(classify(block)) {
  block_.validate();
  const bool power = kind_ == Kind::kPowerPlus || kind_ == Kind::kPowerMinus;
  const bool exponential = kind_ == Kind::kExponentialDecay || kind_ == Kind::kExponentialGrowth;
  const bool bessel = kind_ == Kind::kBesselI || kind_ == Kind::kBesselK;
  // Bessel forms stay valid at lambda = 0, where they span the exponential pair.
  if ((power && block_.mu != 0.0) || (exponential && regime_ != Regime::kExponential) ||
      (bessel && block_.mu == 0.0)) {
    fail(ErrorCode::kInvalidArgument, "solution kind does not solve a block in the " +
                                          std::string(to_string(regime_)) + " regime");
  }
  const double base = 0.5 * (1 - block_.m) + block_.delta;
  const double abs_lambda = std::abs(block_.lambda);
  switch (kind_) {
    case Kind::kPowerPlus:
    case Kind::kPowerMinus: {
      const double e = base + (kind_ == Kind::kPowerPlus ? -block_.lambda : block_.lambda);
      exponent_zero_ = exponent_infinity_ = e;
      at_zero_ = power_behaviour_at_zero(e);
      at_infinity_ = power_behaviour_at_infinity(e);
      degenerate_ = block_.lambda == 0.0 && block_.mu == 0.0;
      break;
    }
    case Kind::kExponentialDecay:
    case Kind::kExponentialGrowth:
      exponent_zero_ = exponent_infinity_ = base;
      at_zero_ = power_behaviour_at_zero(base);
      at_infinity_ = kind_ == Kind::kExponentialDecay ? Asymptotic::kDecay : Asymptotic::kGrowth;
      break;
    case Kind::kBesselI:
      exponent_zero_ = base + abs_lambda;
      exponent_infinity_ = base;
      at_zero_ = power_behaviour_at_zero(exponent_zero_);
      at_infinity_ = Asymptotic::kGrowth;
      break;
    case Kind::kBesselK:
      exponent_zero_ = base - abs_lambda;
      exponent_infinity_ = base;
      at_zero_ = power_behaviour_at_zero(exponent_zero_);
      at_infinity_ = Asymptotic::kDecay;
      break;
    case Kind::kZero:
      break;
  }
}

std::string ModeSolution::name() const {
  switch (kind_) {
    case Kind::kPowerPlus: return "power_plus";
    case Kind::kPowerMinus: return "power_minus";
    case Kind::kExponentialDecay: return "exp_decay";
    case Kind::kExponentialGrowth: return "exp_growth";
    case Kind::kBesselI: return "bessel_I";
    case Kind::kBesselK: return "bessel_K";
    case Kind::kZero: return "zero";
  }
  return "?";
}

Vec2 ModeSolution::evaluate(double r) const {
  if (!(r > 0.0)) fail(ErrorCode::kDomain, "mode solutions are evaluated at r > 0");
  const double m = block_.m;
  const double kappa = std::abs(block_.mu);
  const double sigma = sign(block_.mu);
  switch (kind_) {
    case Kind::kPowerPlus: return {std::pow(r, 0.5 * (1 - m) - block_.lambda), 0.0};
    case Kind::kPowerMinus: return {0.0, std::pow(r, 0.5 * (1 - m) + block_.lambda)};
    case Kind::kExponentialDecay: {
      const double v = std::pow(r, 0.5 * (1 - m)) * std::exp(-kappa * r);
      return {v, sigma * v};
    }
    case Kind::kExponentialGrowth: {
      const double v = std::pow(r, 0.5 * (1 - m)) * std::exp(kappa * r);
      return {v, -sigma * v};
    }
    case Kind::kBesselI: {
      const auto nu = bessel_orders(block_.lambda);
      const double x = kappa * r;
      const double pre = std::pow(r, 1 - 0.5 * m) * std::exp(x);
      return {pre * modified_bessel_scaled(nu[0], x).i, -sigma * pre * modified_bessel_scaled(nu[1], x).i};
    }
    case Kind::kBesselK: {
      const auto nu = bessel_orders(block_.lambda);
      const double x = kappa * r;
      const double pre = std::pow(r, 1 - 0.5 * m) * std::exp(-x);
      return {pre * modified_bessel_scaled(std::abs(nu[0]), x).k,
              sigma * pre * modified_bessel_scaled(std::abs(nu[1]), x).k};
    }
    case Kind::kZero: return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

Vec2 ModeSolution::derivative(double r) const {
  if (!(r > 0.0)) fail(ErrorCode::kDomain, "mode solutions are evaluated at r > 0");
  const double m = block_.m;
  const double kappa = std::abs(block_.mu);
  const double sigma = sign(block_.mu);
  const Vec2 f = evaluate(r);
  switch (kind_) {
    case Kind::kPowerPlus: return {(0.5 * (1 - m) - block_.lambda) / r * f[0], 0.0};
    case Kind::kPowerMinus: return {0.0, (0.5 * (1 - m) + block_.lambda) / r * f[1]};
    case Kind::kExponentialDecay: {
      const double rate = 0.5 * (1 - m) / r - kappa;
      return {rate * f[0], rate * f[1]};
    }
    case Kind::kExponentialGrowth: {
      const double rate = 0.5 * (1 - m) / r + kappa;
      return {rate * f[0], rate * f[1]};
    }
    case Kind::kBesselI: {
      const auto nu = bessel_orders(block_.lambda);
      const double x = kappa * r;
      const double pre = std::pow(r, 1 - 0.5 * m) * std::exp(x);
      const double b = (1 - 0.5 * m) / r;
      return {b * f[0] + pre * kappa * modified_bessel_scaled(nu[0], x).ip,
              b * f[1] - sigma * pre * kappa * modified_bessel_scaled(nu[1], x).ip};
    }
    case Kind::kBesselK: {
      const auto nu = bessel_orders(block_.lambda);
      const double x = kappa * r;
      const double pre = std::pow(r, 1 - 0.5 * m) * std::exp(-x);
      const double b = (1 - 0.5 * m) / r;
      return {b * f[0] + pre * kappa * modified_bessel_scaled(std::abs(nu[0]), x).kp,
              b * f[1] + sigma * pre * kappa * modified_bessel_scaled(std::abs(nu[1]), x).kp};
    }
    case Kind::kZero: return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

std::vector<ModeSolution> kernel_basis(const ModeBlock& block) {
  block.validate();
  using K = ModeSolution::Kind;
  switch (classify(block)) {
    case Regime::kPower: return {ModeSolution(block, K::kPowerPlus), ModeSolution(block, K::kPowerMinus)};
    case Regime::kExponential:
      return {ModeSolution(block, K::kExponentialDecay), ModeSolution(block, K::kExponentialGrowth)};
    case Regime::kBessel: return {ModeSolution(block, K::kBesselI), ModeSolution(block, K::kBesselK)};
  }
  return {};
}

// ---------------------------------------------------------------------------

double relative_residual(const ModeBlock& block, double r, const Vec2& f, const Vec2& df) {
  const ModeOperator op = mode_operator(block, r);
  const Vec2 d = apply_mode_operator(block, r, f, df);
  const double fnorm = std::max(std::abs(f[0]), std::abs(f[1]));
  const double dfnorm = std::max(std::abs(df[0]), std::abs(df[1]));
  const double pnorm = op.potential.cwiseAbs().rowwise().sum().maxCoeff();
  const double scale = dfnorm + (std::abs(op.radial_coefficient) + pnorm) * fnorm;
  if (scale == 0.0) return 0.0;
  return std::max(std::abs(d[0]), std::abs(d[1])) / scale;
}

namespace {

using State = std::array<double, 2>;

// Integrates from `seed` towards each r in `targets` (all on one side of the
// seed) and returns the worst relative deviation from the closed form.
double integrate_segment(const ModeSolution& sol, double seed, std::vector<double> targets) {
  if (targets.empty()) return 0.0;
  namespace odeint = boost::numeric::odeint;
  const ModeBlock& block = sol.block();
  auto rhs = [&block](const State& f, State& dfdr, double r) {
    const double c = 0.5 * (block.m - 1) / r;
    dfdr[0] = -(c + block.lambda / r) * f[0] - block.mu * f[1];
    dfdr[1] = -block.mu * f[0] - (c - block.lambda / r) * f[1];
  };

  const Vec2 start = sol.evaluate(seed);
  const double norm = std::max(std::abs(start[0]), std::abs(start[1]));
  if (norm == 0.0) return 0.0;
  State state{start[0] / norm, start[1] / norm};

  const bool forward = targets.front() > seed;
  std::sort(targets.begin(), targets.end());
  if (!forward) std::reverse(targets.begin(), targets.end());
  std::vector<double> times{seed};
  times.insert(times.end(), targets.begin(), targets.end());

  double worst = 0.0;
  auto observer = [&](const State& y, double r) {
    if (r == seed) return;
    const Vec2 exact = sol.evaluate(r);
    const double scale = std::max(std::abs(exact[0]), std::abs(exact[1]));
    if (scale == 0.0) return;
    const double dev = std::max(std::abs(y[0] * norm - exact[0]), std::abs(y[1] * norm - exact[1])) / scale;
    worst = std::max(worst, dev);
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-13, odeint::runge_kutta_fehlberg78<State>());
  const double dt = (forward ? 1.0 : -1.0) * 1e-3 * seed;
  odeint::integrate_times(stepper, rhs, state, times.begin(), times.end(), dt, observer);
  return worst;
}

double integrator_deviation(const ModeSolution& sol, const std::vector<double>& grid, double lo, double hi) {
  if (sol.kind() == ModeSolution::Kind::kZero) return 0.0;
  std::vector<double> lower, upper;
  for (double r : grid) {
    if (r < lo || r > hi) continue;
    if (r < 1.0) lower.push_back(r);
    else if (r > 1.0) upper.push_back(r);
  }
  const double pivot = std::clamp(1.0, lo, hi);
  // Dominant direction: solutions growing at infinity are integrated outward,
  // decaying ones inward.
  if (sol.behaviour_at_infinity() == Asymptotic::kDecay) {
    return std::max(integrate_segment(sol, pivot, lower), integrate_segment(sol, hi, upper));
  }
  if (sol.behaviour_at_infinity() == Asymptotic::kGrowth && sol.regime() != Regime::kPower) {
    return std::max(integrate_segment(sol, lo, lower), integrate_segment(sol, pivot, upper));
  }
  return std::max(integrate_segment(sol, pivot, lower), integrate_segment(sol, pivot, upper));
}

}  // namespace

KernelVerification verify_solutions(const ModeBlock& block, const std::vector<ModeSolution>& solutions,
                                    const std::vector<double>& grid, const KernelVerificationOptions& options) {
  block.validate();
  for (double r : grid) {
    if (r < 1e-2 || r > 50.0) fail(ErrorCode::kDomain, "verification grid must lie in [1e-2, 50]");
  }
  KernelVerification report;
  report.points = grid.size();
  for (const auto& sol : solutions) {
    double worst = 0.0;
    for (double r : grid) {
      const Vec2 f = sol.evaluate(r);
      const Vec2 df = finite_difference_derivative([&sol](double x) { return sol.evaluate(x); }, r);
      worst = std::max(worst, relative_residual(block, r, f, df));
    }
    report.residual_per_solution.push_back(worst);
    report.max_residual = std::max(report.max_residual, worst);

    double dev = 0.0;
    if (options.run_integrator) dev = integrator_deviation(sol, grid, options.integrator_lo, options.integrator_hi);
    report.deviation_per_solution.push_back(dev);
    report.max_integrator_deviation = std::max(report.max_integrator_deviation, dev);
  }
  return report;
}

KernelVerification verify_kernel_basis(const ModeBlock& block, const std::vector<double>& grid,
                                       const KernelVerificationOptions& options) {
  return verify_solutions(block, kernel_basis(block), grid, options);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) fail(ErrorCode::kInvalidArgument, "log grid needs 0 < lo < hi, n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_spaced(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n < 2) fail(ErrorCode::kInvalidArgument, "linear grid needs lo < hi, n >= 2");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace conespec
