#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conespec {

inline constexpr int kMaxCliffordDimension = 10;

/// Element of the real Clifford algebra Cl(m) with e_i e_j + e_j e_i = -2 delta_ij.
///
/// Coefficients are stored densely, indexed by blade bitmask: bit i set means
/// e_{i+1} occurs in the (increasing-order) basis product. The scalar part is
/// index 0.
class Multivector {
 public:
  using Blade = std::uint32_t;

  explicit Multivector(int m);

  static Multivector scalar(int m, double value);
  static Multivector basis_vector(int m, int i);  // i is 1-based
  static Multivector blade(int m, Blade mask, double coefficient = 1.0);
  static Multivector from_vector(const Eigen::VectorXd& v);  // sum v_i e_{i+1}

  int dimension() const noexcept { return m_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  double operator[](Blade mask) const { return coeffs_[mask]; }
  double& operator[](Blade mask) { return coeffs_[mask]; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);

  /// Reversal anti-automorphism: reverses the order of each basis product.
  Multivector reverse() const;

  /// Components of a single grade.
  Multivector grade(int k) const;

  /// True when all odd-grade coefficients are below `tol`.
  bool is_even(double tol) const;

  double max_abs() const;

  /// Largest |a - b| over coefficients. Dimensions must agree.
  double distance(const Multivector& other) const;

  std::string to_string(int precision = 6) const;

 private:
  int m_;
  std::vector<double> coeffs_;
};

/// Sign picked up when multiplying two basis blades, including e_i^2 = -1.
int blade_product_sign(Multivector::Blade a, Multivector::Blade b) noexcept;

/// Geometric product. Throws ErrorCode::kDimensionMismatch on differing m.
Multivector clifford_product(const Multivector& a, const Multivector& b);

inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return clifford_product(a, b);
}
Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator*(double s, Multivector a);

/// Twisted adjoint action of an even element, Ad(s)v = s v s^{-1}, written as
/// an m x m matrix acting on coordinate vectors. Requires s rev(s) = 1.
Eigen::MatrixXd adjoint_matrix(const Multivector& s);

/// True when s is even and s rev(s) = 1 to `tol`.
bool is_spin_element(const Multivector& s, double tol);

/// Complex matrix representation of Cl(m), m even, of dimension 2^{m/2},
/// built by iterated 2x2 tensor products (Jordan-Wigner).
class SpinorRepresentation {
 public:
  explicit SpinorRepresentation(int m);

  int dimension() const noexcept { return m_; }
  int spinor_dimension() const noexcept { return static_cast<int>(gammas_.front().rows()); }

  const Eigen::MatrixXcd& gamma(int i) const { return gammas_.at(i - 1); }  // 1-based
  /// gamma = i^{m/2} e_1 ... e_m; squares to the identity.
  const Eigen::MatrixXcd& chirality() const noexcept { return chirality_; }

  Eigen::MatrixXcd represent(const Multivector& a) const;

 private:
  int m_;
  std::vector<Eigen::MatrixXcd> gammas_;
  Eigen::MatrixXcd chirality_;
};

/// Shared, lazily-built representation for dimension m.
const SpinorRepresentation& spinor_representation(int m);

struct HalfSpinCharacters {
  std::complex<double> plus;
  std::complex<double> minus;
};

/// Traces of s on the +1 and -1 eigenspaces of the chirality operator
/// i^{m/2} e_1 ... e_m. Throws when s is not an even unit (s rev(s) = 1).
HalfSpinCharacters half_spin_characters(const Multivector& s, double tol = 1e-9);

}  // namespace conespec
