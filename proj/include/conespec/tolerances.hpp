#pragma once

#include <string_view>

namespace conespec {

/// Numerical thresholds shared across modules.
///
/// Defaults are the documented contract values. `from_env()` applies
/// overrides from `CONE_SPECTRA_TOL`, a comma separated `key=value` list, e.g.
/// `CONE_SPECTRA_TOL="matrix=1e-9,residue=1e-8"`. Unknown keys are an error.
struct Tolerances {
  double matrix = 1e-10;        // orthogonality, closure, Ad(s) == g
  double coefficient = 1e-9;    // multivector coefficient equality
  double residue = 1e-6;        // distance to nearest integer in series rounding
  double imaginary = 1e-9;      // imaginary part of averaged series coefficients
  double rate_collision = 1e-9; // wall-crossing endpoint vs stored rate
  double quad_rel = 1e-8;       // adaptive quadrature, relative
  double quad_abs = 1e-12;      // adaptive quadrature, absolute

  static Tolerances defaults() { return {}; }
  static Tolerances from_env();
  static Tolerances parse(std::string_view spec) { return parse(spec, Tolerances{}); }
  static Tolerances parse(std::string_view spec, Tolerances base);
};

}  // namespace conespec
