#include "conespec/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>

#include <json.hpp>

#include "conespec/error.hpp"

namespace conespec {

namespace {

using json = nlohmann::json;

constexpr double kLookupTolerance = 1e-9;

std::vector<double> flatten(const Eigen::MatrixXd& g) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(g.size()));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) v.push_back(g(i, j));
  return v;
}

Eigen::MatrixXd rotation_blocks(int m, const std::vector<double>& angles) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(m, m);
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const int a = static_cast<int>(2 * j);
    const double c = std::cos(angles[j]);
    const double s = std::sin(angles[j]);
    g(a, a) = c;
    g(a, a + 1) = -s;
    g(a + 1, a) = s;
    g(a + 1, a + 1) = c;
  }
  return g;
}

double param_scalar(const GroupDescriptor& d, const std::string& key, std::optional<double> fallback = {}) {
  auto it = d.params.find(key);
  if (it == d.params.end() || it->second.empty()) {
    if (fallback) return *fallback;
    fail(ErrorCode::kInvalidArgument, "catalog group '" + d.name + "' needs parameter '" + key + "'");
  }
  return it->second.front();
}

int param_positive_int(const GroupDescriptor& d, const std::string& key) {
  double v = param_scalar(d, key);
  if (v < 1 || v != std::floor(v)) {
    fail(ErrorCode::kInvalidArgument, "parameter '" + key + "' must be a positive integer");
  }
  return static_cast<int>(v);
}

void require_m(const GroupDescriptor& d, int m) {
  if (d.m != m) {
    fail(ErrorCode::kInvalidArgument,
         "catalog group '" + d.name + "' acts on R^" + std::to_string(m) + ", got m = " + std::to_string(d.m));
  }
}

std::vector<Eigen::MatrixXd> catalog_generators(const GroupDescriptor& d) {
  const int m = d.m;
  const double pi = std::numbers::pi;
  const std::string& name = d.name;
  if (name == "trivial") {
    return {Eigen::MatrixXd::Identity(m, m)};
  }
  if (name == "cyclic") {
    const int n = param_positive_int(d, "n");
    const std::size_t planes = static_cast<std::size_t>(m / 2);
    std::vector<double> weights(planes, 1.0);
    if (auto it = d.params.find("weights"); it != d.params.end()) {
      if (it->second.size() != planes) {
        fail(ErrorCode::kInvalidArgument, "cyclic group in R^" + std::to_string(m) + " needs " +
                                              std::to_string(planes) + " rotation weights");
      }
      weights = it->second;
    }
    std::vector<double> angles;
    for (double w : weights) angles.push_back(2.0 * pi * w / n);
    return {rotation_blocks(m, angles)};
  }
  if (name == "antipodal") {
    if (m % 2 != 0) fail(ErrorCode::kInvalidArgument, "-I lies in SO(m) only for even m");
    return {-Eigen::MatrixXd::Identity(m, m)};
  }
  if (name == "quaternion") {
    require_m(d, 4);
    return {quaternion_left_matrix(0, 1, 0, 0), quaternion_left_matrix(0, 0, 1, 0)};
  }
  if (name == "binary_dihedral") {
    require_m(d, 4);
    const int n = param_positive_int(d, "n");
    if (n < 2) fail(ErrorCode::kInvalidArgument, "binary dihedral group needs n >= 2");
    return {quaternion_left_matrix(std::cos(pi / n), std::sin(pi / n), 0, 0), quaternion_left_matrix(0, 0, 1, 0)};
  }
  if (name == "binary_tetrahedral") {
    require_m(d, 4);
    return {quaternion_left_matrix(0, 1, 0, 0), quaternion_left_matrix(0, 0, 1, 0),
            quaternion_left_matrix(0.5, 0.5, 0.5, 0.5)};
  }
  if (name == "binary_octahedral") {
    require_m(d, 4);
    const double h = std::numbers::sqrt2 / 2.0;
    return {quaternion_left_matrix(0, 1, 0, 0), quaternion_left_matrix(0, 0, 1, 0),
            quaternion_left_matrix(0.5, 0.5, 0.5, 0.5), quaternion_left_matrix(h, h, 0, 0)};
  }
  if (name == "binary_icosahedral") {
    require_m(d, 4);
    const double phi = std::numbers::phi;
    return {quaternion_left_matrix(0.5, 0.5, 0.5, 0.5), quaternion_left_matrix(phi / 2, 0.5 / phi, 0.5, 0)};
  }
  fail(ErrorCode::kInvalidArgument, "unknown catalog group '" + name + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

GroupDescriptor GroupDescriptor::catalog(int m, std::string name, std::map<std::string, std::vector<double>> params) {
  GroupDescriptor d;
  d.m = m;
  d.kind = "catalog";
  d.name = std::move(name);
  d.params = std::move(params);
  return d;
}

GroupDescriptor GroupDescriptor::matrices(std::vector<Eigen::MatrixXd> generators) {
  if (generators.empty()) fail(ErrorCode::kInvalidArgument, "explicit group needs at least one generator");
  GroupDescriptor d;
  d.m = static_cast<int>(generators.front().rows());
  d.kind = "matrices";
  d.name = "explicit";
  d.generators = std::move(generators);
  return d;
}

GroupDescriptor GroupDescriptor::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("group descriptor is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kParse, "group descriptor must be a JSON object");
  GroupDescriptor d;
  try {
    d.m = doc.at("m").get<int>();
    d.kind = doc.value("kind", std::string("catalog"));
    d.name = doc.value("name", std::string(d.kind == "matrices" ? "explicit" : ""));
    if (doc.contains("params")) {
      for (const auto& [key, value] : doc.at("params").items()) {
        if (value.is_array()) d.params[key] = value.get<std::vector<double>>();
        else d.params[key] = {value.get<double>()};
      }
    }
    if (d.kind == "matrices") {
      for (const auto& row_major : doc.at("generators")) {
        auto flat = row_major.get<std::vector<double>>();
        if (flat.size() != static_cast<std::size_t>(d.m) * static_cast<std::size_t>(d.m)) {
          fail(ErrorCode::kParse, "generator has " + std::to_string(flat.size()) + " entries, expected m*m");
        }
        Eigen::MatrixXd g(d.m, d.m);
        for (int i = 0; i < d.m; ++i)
          for (int j = 0; j < d.m; ++j) g(i, j) = flat[static_cast<std::size_t>(i * d.m + j)];
        d.generators.push_back(std::move(g));
      }
      if (d.generators.empty()) fail(ErrorCode::kParse, "'generators' must not be empty");
    } else if (d.kind != "catalog") {
      fail(ErrorCode::kParse, "group kind must be 'catalog' or 'matrices', got '" + d.kind + "'");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed group descriptor: ") + e.what());
  }
  if (d.m < 1) fail(ErrorCode::kParse, "group dimension m must be positive");
  return d;
}

// ---------------------------------------------------------------------------
// Groups

Eigen::Matrix4d quaternion_left_matrix(double a, double b, double c, double d) {
  Eigen::Matrix4d q;
  q << a, -b, -c, -d,
       b,  a, -d,  c,
       c,  d,  a, -b,
       d, -c,  b,  a;
  return q;
}

void require_special_orthogonal(const Eigen::MatrixXd& g, double tol) {
  if (g.rows() != g.cols()) fail(ErrorCode::kDimensionMismatch, "matrix is not square");
  const Eigen::Index m = g.rows();
  const double defect = (g.transpose() * g - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (defect > tol) {
    fail(ErrorCode::kNotOrthogonal, "||g^T g - I|| = " + std::to_string(defect) + " exceeds tolerance");
  }
  const double det = g.determinant();
  if (std::abs(det - 1.0) > std::max(tol, 1e-8)) {
    fail(ErrorCode::kNotSpecialOrthogonal, "det g = " + std::to_string(det));
  }
}

bool FiniteOrthogonalGroup::FuzzyLess::operator()(const std::vector<double>& a,
                                                 const std::vector<double>& b) const {
  // Distinct elements differ far above the lookup tolerance in some entry, so
  // this behaves as a strict weak ordering on group elements.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - kLookupTolerance) return true;
    if (a[i] > b[i] + kLookupTolerance) return false;
  }
  return false;
}

std::optional<std::size_t> FiniteOrthogonalGroup::find(const Eigen::MatrixXd& g) const {
  if (g.rows() != m_ || g.cols() != m_) return std::nullopt;
  auto it = index_.find(flatten(g));
  if (it == index_.end()) return std::nullopt;
  if ((elements_[it->second] - g).cwiseAbs().maxCoeff() > tol_) return std::nullopt;
  return it->second;
}

std::size_t FiniteOrthogonalGroup::product(std::size_t i, std::size_t j) const {
  auto idx = find(elements_.at(i) * elements_.at(j));
  if (!idx) fail(ErrorCode::kTolerance, "group is not closed under multiplication");
  return *idx;
}

std::size_t FiniteOrthogonalGroup::inverse(std::size_t i) const {
  auto idx = find(elements_.at(i).transpose());
  if (!idx) fail(ErrorCode::kTolerance, "group is not closed under inversion");
  return *idx;
}

const std::vector<std::vector<std::size_t>>& FiniteOrthogonalGroup::multiplication_table() const {
  if (!table_) {
    auto table = std::make_shared<std::vector<std::vector<std::size_t>>>(order(), std::vector<std::size_t>(order()));
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = 0; j < order(); ++j) (*table)[i][j] = product(i, j);
    table_ = table;
  }
  return *table_;
}

FiniteOrthogonalGroup FiniteOrthogonalGroup::generate(int m, const std::vector<Eigen::MatrixXd>& generators,
                                                      std::string name, double tol, std::size_t cap) {
  if (generators.empty()) fail(ErrorCode::kInvalidArgument, "group needs at least one generator");
  for (const auto& g : generators) {
    if (g.rows() != m || g.cols() != m) {
      fail(ErrorCode::kDimensionMismatch, "generator is not " + std::to_string(m) + "x" + std::to_string(m));
    }
    require_special_orthogonal(g, tol);
  }

  FiniteOrthogonalGroup group;
  group.m_ = m;
  group.tol_ = std::max(tol, kLookupTolerance);
  group.name_ = std::move(name);

  auto insert = [&](const Eigen::MatrixXd& g) -> std::pair<std::size_t, bool> {
    auto [it, inserted] = group.index_.emplace(flatten(g), group.elements_.size());
    if (inserted) {
      if (group.elements_.size() >= cap) {
        group.index_.erase(it);
        fail(ErrorCode::kCapExceeded, "closure exceeds " + std::to_string(cap) + " elements");
      }
      group.elements_.push_back(g);
    }
    return {it->second, inserted};
  };

  insert(Eigen::MatrixXd::Identity(m, m));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      auto [idx, fresh] = insert(group.elements_[i] * gen);
      if (fresh) queue.push_back(idx);
    }
  }
  for (const auto& gen : generators) group.generators_.push_back(*group.find(gen));
  return group;
}

FiniteOrthogonalGroup build_group(const GroupDescriptor& descriptor, const Tolerances& tol) {
  if (descriptor.m < 1 || descriptor.m > kMaxCliffordDimension) {
    fail(ErrorCode::kDomain, "group dimension must lie in [1, " + std::to_string(kMaxCliffordDimension) + "]");
  }
  if (descriptor.kind == "matrices") {
    return FiniteOrthogonalGroup::generate(descriptor.m, descriptor.generators, descriptor.name, tol.matrix);
  }
  std::string label = descriptor.name;
  if (auto it = descriptor.params.find("n"); it != descriptor.params.end() && !it->second.empty()) {
    label += "(" + std::to_string(static_cast<long long>(it->second.front())) + ")";
  }
  return FiniteOrthogonalGroup::generate(descriptor.m, catalog_generators(descriptor), label, tol.matrix);
}

}  // namespace conespec
