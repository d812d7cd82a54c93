#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "conespec/groups.hpp"
#include "conespec/tolerances.hpp"

namespace conespec {

enum class Chirality { kPlus, kMinus };

inline const char* to_string(Chirality c) { return c == Chirality::kPlus ? "+" : "-"; }

/// k -> multiplicity of the Dirac eigenvalue +/-((m-1)/2 + k) on S^{m-1}/Gamma,
/// twisted by a flat rank-r bundle.
struct MultiplicitySeries {
  int m = 0;
  Chirality chirality = Chirality::kPlus;
  int rank = 1;
  int lift_id = -1;  // -1 for the round sphere
  std::vector<std::uint64_t> multiplicities;

  double eigenvalue(std::size_t k) const {
    const double magnitude = 0.5 * (m - 1) + static_cast<double>(k);
    return chirality == Chirality::kPlus ? magnitude : -magnitude;
  }
};

struct SpectrumPair {
  MultiplicitySeries plus;
  MultiplicitySeries minus;
};

/// Exact binomial coefficient; throws kOverflow past 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// r 2^{floor((m-1)/2)} C(k+m-2, k) for both signs, k = 0..k_max.
SpectrumPair dirac_spectrum_round(int m, int rank, int k_max);

struct QuotientDiagnostics {
  double max_residue = 0.0;    // max distance to nearest integer before rounding
  double max_imaginary = 0.0;  // max |Im| of averaged coefficients
};

/// Power-series expansion of the generating functions
///   F_{+/-}(z) = r/|Gamma| sum_g (chi_{-/+}(eps g) - z chi_{+/-}(eps g)) / det(1_m - z g)
/// to order k_max. Coefficients are rounded to integers; a residue above
/// tol.residue or an imaginary part above tol.imaginary throws kTolerance.
SpectrumPair dirac_spectrum_quotient(const SpinLiftTable& lift, int rank, int k_max, const Tolerances& tol = {},
                                     QuotientDiagnostics* diagnostics = nullptr, int lift_id = 0);

/// Raw complex coefficients of F_{+} and F_{-} before rounding.
struct GeneratingSeries {
  std::vector<std::complex<double>> plus;
  std::vector<std::complex<double>> minus;
};
GeneratingSeries generating_series(const SpinLiftTable& lift, int rank, int k_max);

/// One irreducible family in the Laplace spectrum on q-forms of S^{m-1}.
struct FormSpectrumEntry {
  int m = 0;
  int q = 0;            // form degree requested
  int table_q = 0;      // degree used in the table (Hodge dual when q > (m-1)/2)
  int k = 0;
  std::string label;    // Phi^0, Phi^{q,0}, Phi^{q,1}, Psi^{q,0}, Psi^{q,1}, theta^{q,0}, theta^{q,1}
  double eigenvalue = 0.0;
  double printed_eigenvalue = 0.0;  // value exactly as tabulated
  bool hodge_dual = false;
};

/// Eigenvalue entries of the round-sphere Hodge Laplacian on q-forms at mode k.
///
/// Tables for m-1 = 2n and m-1 = 2n-1 are transcribed as printed. The single
/// exception is the function family Phi^0, whose `eigenvalue` uses the
/// standard k(k+m-2); `printed_eigenvalue` keeps the tabulated k(k+n-1).
std::vector<FormSpectrumEntry> laplace_form_spectrum(int m, int q, int k);

/// Dimension of degree-k spherical harmonics on S^{m-1}.
std::uint64_t harmonic_dimension(int m, int k);

}  // namespace conespec
