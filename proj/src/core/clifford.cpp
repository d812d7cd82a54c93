#include "conespec/clifford.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "conespec/error.hpp"

namespace conespec {

namespace {

void check_dimension(int m) {
  if (m < 1 || m > kMaxCliffordDimension) {
    fail(ErrorCode::kDomain, "Clifford dimension must lie in [1, " +
                                 std::to_string(kMaxCliffordDimension) + "], got " + std::to_string(m));
  }
}

void check_same(const Multivector& a, const Multivector& b) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorCode::kDimensionMismatch, "multivectors live in Cl(" + std::to_string(a.dimension()) +
                                            ") and Cl(" + std::to_string(b.dimension()) + ")");
  }
}

}  // namespace

Multivector::Multivector(int m) : m_(m) {
  check_dimension(m);
  coeffs_.assign(std::size_t{1} << m, 0.0);
}

Multivector Multivector::scalar(int m, double value) {
  Multivector r(m);
  r.coeffs_[0] = value;
  return r;
}

Multivector Multivector::basis_vector(int m, int i) {
  if (i < 1 || i > m) fail(ErrorCode::kDomain, "basis index out of range");
  return blade(m, Blade{1} << (i - 1));
}

Multivector Multivector::blade(int m, Blade mask, double coefficient) {
  Multivector r(m);
  if (mask >= r.coeffs_.size()) fail(ErrorCode::kDomain, "blade mask out of range");
  r.coeffs_[mask] = coefficient;
  return r;
}

Multivector Multivector::from_vector(const Eigen::VectorXd& v) {
  Multivector r(static_cast<int>(v.size()));
  for (int i = 0; i < v.size(); ++i) r.coeffs_[Blade{1} << i] = v(i);
  return r;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  check_same(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  check_same(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector Multivector::reverse() const {
  Multivector r = *this;
  for (std::size_t mask = 0; mask < coeffs_.size(); ++mask) {
    int k = std::popcount(static_cast<Blade>(mask));
    // reversing k anticommuting factors costs k(k-1)/2 transpositions
    if ((k * (k - 1) / 2) % 2 == 1) r.coeffs_[mask] = -r.coeffs_[mask];
  }
  return r;
}

Multivector Multivector::grade(int k) const {
  Multivector r(m_);
  for (std::size_t mask = 0; mask < coeffs_.size(); ++mask) {
    if (std::popcount(static_cast<Blade>(mask)) == k) r.coeffs_[mask] = coeffs_[mask];
  }
  return r;
}

bool Multivector::is_even(double tol) const {
  for (std::size_t mask = 0; mask < coeffs_.size(); ++mask) {
    if (std::popcount(static_cast<Blade>(mask)) % 2 == 1 && std::abs(coeffs_[mask]) > tol) return false;
  }
  return true;
}

double Multivector::max_abs() const {
  double best = 0.0;
  for (double c : coeffs_) best = std::max(best, std::abs(c));
  return best;
}

double Multivector::distance(const Multivector& other) const {
  check_same(*this, other);
  double best = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) best = std::max(best, std::abs(coeffs_[i] - other.coeffs_[i]));
  return best;
}

std::string Multivector::to_string(int precision) const {
  std::ostringstream out;
  out.precision(precision);
  bool first = true;
  for (std::size_t mask = 0; mask < coeffs_.size(); ++mask) {
    double c = coeffs_[mask];
    if (std::abs(c) < 1e-15) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << std::abs(c);
    for (int i = 0; i < m_; ++i) {
      if (mask & (Blade{1} << i)) out << "*e" << (i + 1);
    }
  }
  if (first) out << "0";
  return out.str();
}

int blade_product_sign(Multivector::Blade a, Multivector::Blade b) noexcept {
  int swaps = 0;
  for (Multivector::Blade x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  swaps += std::popcount(a & b);  // each repeated generator squares to -1
  return (swaps & 1) ? -1 : 1;
}

Multivector clifford_product(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  Multivector r(a.dimension());
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (Multivector::Blade i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0.0) continue;
    for (Multivector::Blade j = 0; j < cb.size(); ++j) {
      if (cb[j] == 0.0) continue;
      r[i ^ j] += blade_product_sign(i, j) * ca[i] * cb[j];
    }
  }
  return r;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Eigen::MatrixXd adjoint_matrix(const Multivector& s) {
  const int m = s.dimension();
  const Multivector inv = s.reverse();
  Eigen::MatrixXd g(m, m);
  for (int k = 0; k < m; ++k) {
    Multivector image = s * Multivector::basis_vector(m, k + 1) * inv;
    for (int i = 0; i < m; ++i) g(i, k) = image[Multivector::Blade{1} << i];
  }
  return g;
}

bool is_spin_element(const Multivector& s, double tol) {
  if (!s.is_even(tol)) return false;
  return (s * s.reverse()).distance(Multivector::scalar(s.dimension(), 1.0)) <= tol;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

}  // namespace

SpinorRepresentation::SpinorRepresentation(int m) : m_(m) {
  check_dimension(m);
  if (m % 2 != 0) fail(ErrorCode::kDomain, "spinor representation requires even m, got " + std::to_string(m));
  using C = std::complex<double>;
  const C I(0.0, 1.0);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -I, I, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;

  const int n = m / 2;
  for (int j = 0; j < n; ++j) {
    for (const auto* pauli : {&x, &y}) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(1, 1);
      for (int site = 0; site < n; ++site) {
        if (site < j) g = kron(g, z);
        else if (site == j) g = kron(g, *pauli);
        else g = kron(g, id);
      }
      gammas_.push_back(I * g);
    }
  }

  const int dim = 1 << n;
  chirality_ = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : gammas_) chirality_ = chirality_ * g;
  C phase(1.0, 0.0);
  for (int k = 0; k < n; ++k) phase *= I;
  chirality_ *= phase;
}

Eigen::MatrixXcd SpinorRepresentation::represent(const Multivector& a) const {
  if (a.dimension() != m_) fail(ErrorCode::kDimensionMismatch, "multivector dimension differs from representation");
  const int dim = spinor_dimension();
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim, dim);
  for (Multivector::Blade mask = 0; mask < a.size(); ++mask) {
    double c = a[mask];
    if (c == 0.0) continue;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
    for (int i = 0; i < m_; ++i) {
      if (mask & (Multivector::Blade{1} << i)) term = term * gammas_[i];
    }
    result += c * term;
  }
  return result;
}

const SpinorRepresentation& spinor_representation(int m) {
  check_dimension(m);
  static std::array<std::unique_ptr<SpinorRepresentation>, kMaxCliffordDimension + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<SpinorRepresentation>(m);
  return *slot;
}

HalfSpinCharacters half_spin_characters(const Multivector& s, double tol) {
  if (!s.is_even(tol)) fail(ErrorCode::kDomain, "half-spin characters need an even element");
  if (!is_spin_element(s, tol)) fail(ErrorCode::kDomain, "element does not satisfy s rev(s) = 1");
  const auto& rep = spinor_representation(s.dimension());
  const Eigen::MatrixXcd rho = rep.represent(s);
  const Eigen::MatrixXcd& gamma = rep.chirality();
  const std::complex<double> total = rho.trace();
  const std::complex<double> graded = (gamma * rho).trace();
  return {0.5 * (total + graded), 0.5 * (total - graded)};
}

}  // namespace conespec
