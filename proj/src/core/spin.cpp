#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "conespec/error.hpp"
#include "conespec/groups.hpp"

namespace conespec {

namespace {

// cos(t/2) + sin(t/2) a b for orthonormal vectors a, b; a b is a unit bivector.
Multivector plane_rotor(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double angle) {
  Multivector rotor = Multivector::from_vector(a) * Multivector::from_vector(b);
  rotor *= std::sin(angle / 2.0);
  rotor[0] += std::cos(angle / 2.0);
  return rotor;
}

void normalise_branch(Multivector& s, double tol) {
  for (Multivector::Blade mask = 0; mask < s.size(); ++mask) {
    if (std::abs(s[mask]) > tol) {
      if (s[mask] < 0) s *= -1.0;
      return;
    }
  }
}

}  // namespace

Multivector spin_lift(const Eigen::MatrixXd& g, Branch branch, const Tolerances& tol) {
  const int m = static_cast<int>(g.rows());
  if (m % 2 != 0) fail(ErrorCode::kDomain, "spin lifts are only built for even m, got " + std::to_string(m));
  if (m > kMaxCliffordDimension) fail(ErrorCode::kDomain, "dimension exceeds Clifford cap");
  require_special_orthogonal(g, tol.matrix);

  // g = U T U^T with T block diagonal (g is normal). A 2x2 block on columns
  // (a, a+1) rotates u_a towards u_{a+1}; -1 eigenvalues on the diagonal are
  // paired in order of appearance into rotations by pi.
  Eigen::RealSchur<Eigen::MatrixXd> schur(g);
  if (schur.info() != Eigen::Success) fail(ErrorCode::kConvergence, "real Schur factorisation failed");
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& u = schur.matrixU();

  Multivector s = Multivector::scalar(m, 1.0);
  std::vector<int> reflected;
  for (int i = 0; i < m;) {
    if (i + 1 < m && std::abs(t(i + 1, i)) > 1e-12) {
      const double angle = std::atan2(t(i + 1, i), t(i, i));
      s = s * plane_rotor(u.col(i), u.col(i + 1), angle);
      i += 2;
      continue;
    }
    if (t(i, i) < 0.0) reflected.push_back(i);
    ++i;
  }
  if (reflected.size() % 2 != 0) fail(ErrorCode::kNotSpecialOrthogonal, "odd number of -1 eigenvalues");
  for (std::size_t p = 0; p < reflected.size(); p += 2) {
    s = s * plane_rotor(u.col(reflected[p]), u.col(reflected[p + 1]), std::numbers::pi);
  }

  normalise_branch(s, 1e-8);
  if (branch == Branch::kMinus) s *= -1.0;

  const double cover = (adjoint_matrix(s) - g).cwiseAbs().maxCoeff();
  if (cover > tol.matrix) {
    fail(ErrorCode::kTolerance, "spin lift does not cover g: |Ad(s) - g| = " + std::to_string(cover));
  }
  return s;
}

LiftVerification verify_lift_table(const SpinLiftTable& table, const Tolerances& tol) {
  LiftVerification report;
  const auto& group = *table.group;
  const auto& mult = group.multiplication_table();
  const int m = group.dimension();
  const Multivector one = Multivector::scalar(m, 1.0);
  for (std::size_t i = 0; i < group.order(); ++i) {
    const Multivector& a = table.lifts[i];
    report.max_norm_defect = std::max(report.max_norm_defect, (a * a.reverse()).distance(one));
    report.max_cover_defect =
        std::max(report.max_cover_defect, (adjoint_matrix(a) - group.element(i)).cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < group.order(); ++j) {
      const double defect = (a * table.lifts[j]).distance(table.lifts[mult[i][j]]);
      report.max_homomorphism_defect = std::max(report.max_homomorphism_defect, defect);
    }
  }
  report.ok = report.max_homomorphism_defect <= tol.coefficient && report.max_cover_defect <= tol.matrix &&
              report.max_norm_defect <= tol.coefficient;
  return report;
}

std::vector<SpinLiftTable> enumerate_spin_structures(std::shared_ptr<const FiniteOrthogonalGroup> group,
                                                     const Tolerances& tol) {
  if (!group) fail(ErrorCode::kInvalidArgument, "null group");
  const int m = group->dimension();
  if (m % 2 != 0) fail(ErrorCode::kDomain, "spin structures are enumerated only for even m");
  const auto& gens = group->generators();
  if (gens.size() > 20) fail(ErrorCode::kInvalidArgument, "too many generators for exhaustive sign search");

  std::vector<Multivector> base;
  for (std::size_t idx : gens) base.push_back(spin_lift(group->element(idx), Branch::kPlus, tol));

  std::vector<SpinLiftTable> found;
  const std::size_t assignments = std::size_t{1} << gens.size();
  for (std::size_t bits = 0; bits < assignments; ++bits) {
    std::vector<int> signs(gens.size());
    std::vector<Multivector> gen_lifts;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      signs[j] = (bits >> j) & 1 ? -1 : 1;
      gen_lifts.push_back(static_cast<double>(signs[j]) * base[j]);
    }

    // Propagate along the Cayley graph; every edge must agree.
    std::vector<std::optional<Multivector>> lifts(group->order());
    lifts[0] = Multivector::scalar(m, 1.0);
    std::vector<std::size_t> frontier{0};
    bool consistent = true;
    for (std::size_t head = 0; head < frontier.size() && consistent; ++head) {
      const std::size_t i = frontier[head];
      for (std::size_t j = 0; j < gens.size() && consistent; ++j) {
        const std::size_t target = group->product(i, gens[j]);
        Multivector value = *lifts[i] * gen_lifts[j];
        if (!lifts[target]) {
          lifts[target] = std::move(value);
          frontier.push_back(target);
        } else if (lifts[target]->distance(value) > tol.coefficient) {
          consistent = false;
        }
      }
    }
    if (!consistent) continue;

    SpinLiftTable table;
    table.group = group;
    table.generator_signs = signs;
    for (auto& l : lifts) table.lifts.push_back(std::move(*l));
    if (!verify_lift_table(table, tol).ok) continue;

    bool duplicate = false;
    for (const auto& other : found) {
      bool same = true;
      for (std::size_t i = 0; i < group->order() && same; ++i) {
        same = other.lifts[i].distance(table.lifts[i]) <= tol.coefficient;
      }
      if (same) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back(std::move(table));
  }
  return found;
}

}  // namespace conespec
