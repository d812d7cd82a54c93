#pragma once

#include <functional>
#include <utility>
#include <string>
#include <vector>

#include "conespec/cone_modes.hpp"
#include "conespec/tolerances.hpp"

namespace conespec {

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;

 private:
  std::vector<double> x_, y_, second_;
};

/// Compactly supported input (g_+, g_-) for the right inverse of one block.
struct SampledFunctionPair {
  double a = 0.0;  // support is [a, b], 0 < a < b
  double b = 0.0;
  std::function<double(double)> plus;
  std::function<double(double)> minus;
  std::string smoothness = "callback";

  /// Zero outside [a, b].
  Vec2 operator()(double r) const;
  void validate() const;

  static SampledFunctionPair zero(double a, double b);
  /// Gaussian exp(-(r-c)^2 / (2 w^2)) cut to [max(c - 8w, floor), c + 8w].
  static SampledFunctionPair gaussian(double center, double width, double amp_plus, double amp_minus,
                                      double floor = 0.2);
  /// C-infinity bump exp(1 - 1/(1 - t^2)) on [a, b], t the rescaled coordinate.
  static SampledFunctionPair smooth_bump(double a, double b, double amp_plus, double amp_minus);
  /// Natural cubic spline interpolation of dense samples; O(h^4) bias.
  static SampledFunctionPair from_samples(const std::vector<double>& r, const std::vector<double>& g_plus,
                                          const std::vector<double>& g_minus);
  /// alpha * x + beta * y on the union of supports.
  static SampledFunctionPair combine(double alpha, const SampledFunctionPair& x, double beta,
                                     const SampledFunctionPair& y);
};

struct RightInverseResult {
  std::vector<double> r;
  std::vector<double> f_plus;
  std::vector<double> f_minus;
  /// Variation-of-parameters coefficients: `from_infinity` multiplies the
  /// solution integrated down from the right support edge, `from_zero` the one
  /// integrated up from the left edge (the component that vanishes at r -> 0).
  std::vector<double> coeff_from_infinity;
  std::vector<double> coeff_from_zero;
  std::size_t quadratures = 0;
};

/// Explicit right inverse R of the block operator: D (R g) = g.
///
/// Regimes:
///  - mu = 0:       f_+ = r^{-p} int_0^r s^p g_+,  f_- = -r^{-q} int_r^inf s^q g_-,
///                  p = (m-1)/2 + lambda, q = (m-1)/2 - lambda;
///  - lambda = 0:   exponential kernels r^{(1-m)/2} e^{-/+ mu r}, the column decaying
///                  at infinity integrated from 0, the other from infinity;
///  - general:      f = F(r) h(r), F = r^{1-m/2} diag(1, sgn mu) [[I_{nu+}, K_{nu+}], [-I_{nu-}, K_{nu-}]]
///                  at |mu| r, h' = F^{-1} g; the I coefficient from infinity, the K
///                  coefficient from 0. det F0 = 1/x supplies the factor |mu|.
/// Improper limits are truncated at the support edges. Integrals are evaluated
/// cumulatively between sorted evaluation points with exponentially rescaled
/// kernels, so large |mu| r does not overflow.
RightInverseResult apply_right_inverse(const ModeBlock& block, const SampledFunctionPair& g,
                                       const std::vector<double>& r_eval, const Tolerances& tol = {});

/// Applies each block's right inverse to its own input and sums the outputs.
RightInverseResult apply_right_inverse_sum(const std::vector<std::pair<ModeBlock, SampledFunctionPair>>& terms,
                                           const std::vector<double>& r_eval, const Tolerances& tol = {});

struct RightInverseReport {
  double max_residual = 0.0;       // sup |(D R g) - g| over the check grid
  double max_g = 0.0;              // sup |g| over the same grid
  double boundary_coefficient = 0.0;  // |from_zero coefficient| at r = 1e-3 a
  double boundary_radius = 0.0;
  /// Least-squares c with (D R g) ~ c g; 1 when the kernel normalisation is right.
  double calibration = 1.0;
  std::size_t points = 0;
};

/// Applies the block operator (finite differences) to R g on `points` interior
/// points of supp g and compares with g.
RightInverseReport verify_right_inverse(const ModeBlock& block, const SampledFunctionPair& g,
                                        std::size_t points = 64, const Tolerances& tol = {});

}  // namespace conespec
