#pragma once

namespace conespec {

struct BesselValues {
  double i;
  double k;
};

/// Exponentially scaled modified Bessel functions and derivatives:
/// e^{-x} I_nu(x), e^{-x} I_nu'(x), e^{x} K_nu(x), e^{x} K_nu'(x).
struct ScaledBessel {
  double i;
  double ip;
  double k;
  double kp;
};

/// Scaled I, K for any real order nu and x > 0. Negative orders use
/// I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu and K_{-nu} = K_nu.
///
/// Method: continued fraction for I'/I with downward recurrence to
/// |mu| <= 1/2; Temme's series for K_mu (x < 2) or Steed's continued
/// fraction (x >= 2); upward recurrence for K; I from the Wronskian.
ScaledBessel modified_bessel_scaled(double nu, double x);

/// Contract window: 0 <= nu <= 50, 1e-3 <= x <= 50, relative accuracy 1e-9.
/// Throws ErrorCode::kDomain outside the window.
BesselValues modified_bessel(double nu, double x);

}  // namespace conespec
