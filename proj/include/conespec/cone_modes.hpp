#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conespec {

/// One 2x2 spectral block (m, lambda, mu, delta) of the model operator on the
/// cone, acting on (f_+, f_-) as
///   d/dr + (m-1)/(2r) + [[lambda/r, mu], [mu, -lambda/r]].
struct ModeBlock {
  int m = 2;
  double lambda = 0.0;
  double mu = 0.0;
  double delta = 0.0;

  void validate() const;
};

enum class Regime { kPower, kExponential, kBessel };

const char* to_string(Regime r);

/// mu == 0 (power), lambda == 0 and mu != 0 (exponential), otherwise Bessel.
Regime classify(const ModeBlock& block);

using Vec2 = std::array<double, 2>;

struct ModeOperator {
  double radial_coefficient;  // (m-1)/(2r)
  Eigen::Matrix2d potential;  // [[lambda/r, mu], [mu, -lambda/r]]
};

/// Operator data at radius r; throws kDomain for r <= 0.
ModeOperator mode_operator(const ModeBlock& block, double r);

/// Applies the block operator given f and f' at r.
Vec2 apply_mode_operator(const ModeBlock& block, double r, const Vec2& f, const Vec2& df);

struct Eigencurve {
  std::vector<double> r;
  std::vector<double> plus;
  std::vector<double> minus;
};

/// +/- (1/r) sqrt(r^2 mu^2 + lambda^2) sampled on r_grid.
Eigencurve mode_eigencurve(double lambda, double mu, const std::vector<double>& r_grid);

enum class Asymptotic { kDecay, kGrowth, kBounded };

const char* to_string(Asymptotic a);

/// A closed-form element of the kernel of one block.
class ModeSolution {
 public:
  enum class Kind {
    kPowerPlus,        // (r^{(1-m)/2 - lambda}, 0)
    kPowerMinus,       // (0, r^{(1-m)/2 + lambda})
    kExponentialDecay, // r^{(1-m)/2} e^{-|mu| r} (1, sgn mu)
    kExponentialGrowth,// r^{(1-m)/2} e^{+|mu| r} (1, -sgn mu)
    kBesselI,          // r^{1-m/2} (I_{nu+}(|mu| r), -sgn(mu) I_{nu-}(|mu| r))
    kBesselK,          // r^{1-m/2} (K_{|nu+|}(|mu| r), sgn(mu) K_{|nu-|}(|mu| r))
    kZero,
  };

  ModeSolution(ModeBlock block, Kind kind);

  const ModeBlock& block() const noexcept { return block_; }
  Kind kind() const noexcept { return kind_; }
  Regime regime() const noexcept { return regime_; }
  std::string name() const;

  Vec2 evaluate(double r) const;
  /// Closed-form derivative, used by the integrator cross-check.
  Vec2 derivative(double r) const;

  /// Leading power of the pointwise norm r^delta |f| as r -> 0.
  double exponent_at_zero() const noexcept { return exponent_zero_; }
  /// Power prefactor as r -> infinity (the exponential factor is tagged separately).
  double exponent_at_infinity() const noexcept { return exponent_infinity_; }
  Asymptotic behaviour_at_infinity() const noexcept { return at_infinity_; }
  Asymptotic behaviour_at_zero() const noexcept { return at_zero_; }
  bool degenerate() const noexcept { return degenerate_; }

  /// Signed Bessel orders (nu_+, nu_-) of the I branch; K uses absolute values.
  static std::array<double, 2> bessel_orders(double lambda);

 private:
  ModeBlock block_;
  Kind kind_;
  Regime regime_;
  double exponent_zero_ = 0.0;
  double exponent_infinity_ = 0.0;
  Asymptotic at_zero_ = Asymptotic::kBounded;
  Asymptotic at_infinity_ = Asymptotic::kBounded;
  bool degenerate_ = false;
};

/// Two independent kernel solutions of the block.
std::vector<ModeSolution> kernel_basis(const ModeBlock& block);

struct KernelVerification {
  double max_residual = 0.0;             // relative finite-difference residual
  double max_integrator_deviation = 0.0; // relative deviation from numerical integration
  std::vector<double> residual_per_solution;
  std::vector<double> deviation_per_solution;
  std::size_t points = 0;
};

struct KernelVerificationOptions {
  double integrator_lo = 0.5;
  double integrator_hi = 5.0;
  bool run_integrator = true;
};

/// Relative residual |D f| / (|f'| + (|c| + |P|) |f|) at r, with f' from a
/// Richardson-extrapolated 5-point stencil at step 1e-4 r.
template <class F>
Vec2 finite_difference_derivative(const F& f, double r);

double relative_residual(const ModeBlock& block, double r, const Vec2& f, const Vec2& df);

/// Residual of each basis solution on `grid`, plus a cross-check against an
/// adaptive Runge-Kutta-Fehlberg 7(8) integration seeded from the closed
/// form at r = 1. Solutions are integrated in their dominant direction; for
/// the decaying direction the integrator is seeded at the far end of the
/// cross-check interval instead.
KernelVerification verify_kernel_basis(const ModeBlock& block, const std::vector<double>& grid,
                                       const KernelVerificationOptions& options = {});

KernelVerification verify_solutions(const ModeBlock& block, const std::vector<ModeSolution>& solutions,
                                    const std::vector<double>& grid, const KernelVerificationOptions& options = {});

std::vector<double> log_spaced(double lo, double hi, std::size_t n);
std::vector<double> linear_spaced(double lo, double hi, std::size_t n);

// ---------------------------------------------------------------------------

template <class F>
Vec2 finite_difference_derivative(const F& f, double r) {
  auto stencil = [&](double h) {
    const Vec2 a = f(r - 2 * h), b = f(r - h), c = f(r + h), d = f(r + 2 * h);
    return Vec2{(a[0] - 8 * b[0] + 8 * c[0] - d[0]) / (12 * h), (a[1] - 8 * b[1] + 8 * c[1] - d[1]) / (12 * h)};
  };
  const double h = 1e-4 * r;
  const Vec2 coarse = stencil(h);
  const Vec2 fine = stencil(0.5 * h);
  return {(16 * fine[0] - coarse[0]) / 15, (16 * fine[1] - coarse[1]) / 15};
}

}  // namespace conespec
