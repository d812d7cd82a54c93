#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conespec/clifford.hpp"
#include "conespec/tolerances.hpp"

namespace conespec {

inline constexpr std::size_t kMaxGroupOrder = 10000;

/// Parsed form of the group-descriptor JSON document
/// {"m", "kind": "catalog"|"matrices", "name", "params", "generators"}.
struct GroupDescriptor {
  int m = 0;
  std::string kind = "catalog";
  std::string name;
  std::map<std::string, std::vector<double>> params;  // scalars are length-1 vectors
  std::vector<Eigen::MatrixXd> generators;

  static GroupDescriptor from_json(const std::string& text);
  static GroupDescriptor catalog(int m, std::string name, std::map<std::string, std::vector<double>> params = {});
  static GroupDescriptor matrices(std::vector<Eigen::MatrixXd> generators);
};

/// A finite subgroup of SO(m), stored as its full element list.
///
/// Element 0 is always the identity. `generators()` holds indices into the
/// element list; `product(i, j)` is the index of elements()[i] * elements()[j].
class FiniteOrthogonalGroup {
 public:
  int dimension() const noexcept { return m_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Eigen::MatrixXd>& elements() const noexcept { return elements_; }
  const Eigen::MatrixXd& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  const std::string& name() const noexcept { return name_; }

  /// Index of the element equal to g, if any.
  std::optional<std::size_t> find(const Eigen::MatrixXd& g) const;

  std::size_t product(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;

  /// Full Cayley table, built on first use.
  const std::vector<std::vector<std::size_t>>& multiplication_table() const;

  /// Closure of the given generators. Throws kCapExceeded beyond `cap`.
  static FiniteOrthogonalGroup generate(int m, const std::vector<Eigen::MatrixXd>& generators, std::string name,
                                        double tol = 1e-10, std::size_t cap = kMaxGroupOrder);

 private:
  FiniteOrthogonalGroup() = default;
  struct FuzzyLess {
    bool operator()(const std::vector<double>& a, const std::vector<double>& b) const;
  };

  int m_ = 0;
  double tol_ = 1e-10;
  std::string name_;
  std::vector<Eigen::MatrixXd> elements_;
  std::vector<std::size_t> generators_;
  std::map<std::vector<double>, std::size_t, FuzzyLess> index_;
  mutable std::shared_ptr<std::vector<std::vector<std::size_t>>> table_;
};

/// Realises a descriptor: catalog groups (trivial, cyclic, antipodal,
/// binary_dihedral, quaternion, binary_tetrahedral, binary_octahedral,
/// binary_icosahedral) or the closure of explicit generator matrices.
FiniteOrthogonalGroup build_group(const GroupDescriptor& descriptor, const Tolerances& tol = {});

/// Left multiplication by the quaternion a + b i + c j + d k on R^4 = H.
Eigen::Matrix4d quaternion_left_matrix(double a, double b, double c, double d);

/// Checks ||g^T g - I|| and det g = +1 against `tol`; throws on failure.
void require_special_orthogonal(const Eigen::MatrixXd& g, double tol);

enum class Branch { kPlus = 1, kMinus = -1 };

/// Lift of g in SO(m), m even, to Spin(m) in Cl(m).
///
/// The plus branch is normalised so that the first non-negligible coefficient
/// (lowest blade mask) is positive; the minus branch is its negative.
Multivector spin_lift(const Eigen::MatrixXd& g, Branch branch = Branch::kPlus, const Tolerances& tol = {});

struct ChiralityConvention {
  std::string signature = "e_i^2 = -1";
  std::string chirality_operator = "i^{m/2} e_1...e_m";
  std::string plus_label = "+1 eigenspace of the chirality operator";
};

/// A homomorphism eps: Gamma -> Spin(m) covering the inclusion Gamma in SO(m).
struct SpinLiftTable {
  std::shared_ptr<const FiniteOrthogonalGroup> group;
  std::vector<Multivector> lifts;          // indexed like group->elements()
  std::vector<int> generator_signs;        // branch chosen per generator
  ChiralityConvention convention;

  const Multivector& lift(std::size_t element) const { return lifts.at(element); }
};

struct LiftVerification {
  double max_homomorphism_defect = 0.0;  // max |eps(g)eps(h) - eps(gh)|
  double max_cover_defect = 0.0;         // max |Ad(eps(g)) - g|
  double max_norm_defect = 0.0;          // max |eps(g) rev(eps(g)) - 1|
  bool ok = false;
};

/// Exhaustive check over all |Gamma|^2 products.
LiftVerification verify_lift_table(const SpinLiftTable& table, const Tolerances& tol = {});

/// Every consistent sign assignment on the generators whose induced lift is a
/// homomorphism. Distinct tables only; possibly empty.
std::vector<SpinLiftTable> enumerate_spin_structures(std::shared_ptr<const FiniteOrthogonalGroup> group,
                                                     const Tolerances& tol = {});

}  // namespace conespec
