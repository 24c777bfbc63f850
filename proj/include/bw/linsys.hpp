#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "bw/tensor.hpp"

namespace bw {

/// Relative singular-value cutoff for every rank decision.
inline constexpr double kRankTolerance = 1e-10;

/// Complex linear system over labeled unknowns at fixed momentum.
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> unknowns);

  void add_row(std::vector<cd> coeffs, std::string provenance);
  void add_row(const RowBuilder& row, std::string provenance) { add_row(row.coeffs(), std::move(provenance)); }
  /// Skips identically zero rows.
  void add_nonzero_row(const RowBuilder& row, std::string provenance);

  [[nodiscard]] const std::vector<std::string>& unknowns() const { return unknowns_; }
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const { return unknowns_.size(); }
  [[nodiscard]] const std::vector<cd>& row(std::size_t i) const { return rows_.at(i); }
  [[nodiscard]] const std::string& provenance(std::size_t i) const { return provenance_.at(i); }
  [[nodiscard]] Eigen::MatrixXcd matrix() const;

  /// Rows of `other` appended; columns matched by label.
  [[nodiscard]] LinearSystem stacked(const LinearSystem& other) const;
  /// Same rows over `labels` (a superset or reordering); missing columns are zero.
  /// Throws if a nonzero column would be dropped.
  [[nodiscard]] LinearSystem embedded(const std::vector<std::string>& labels) const;
  /// Keeps only the listed columns, discarding any others outright.
  [[nodiscard]] LinearSystem restricted(const std::vector<std::string>& labels) const;
  [[nodiscard]] LinearSystem select_rows(const std::vector<std::size_t>& keep) const;
  /// Rows whose provenance differs from `provenance`.
  [[nodiscard]] LinearSystem without_provenance(const std::string& provenance) const;

  [[nodiscard]] std::vector<std::string> provenance_set() const;

 private:
  std::vector<std::string> unknowns_;
  std::vector<std::vector<cd>> rows_;
  std::vector<std::string> provenance_;
};

/// Each row scaled to unit max-norm; zero rows dropped.
Eigen::MatrixXcd normalized_rows(const Eigen::MatrixXcd& m);

std::size_t rank(const Eigen::MatrixXcd& m);
std::size_t rank(const LinearSystem& s);
/// Orthonormal nullspace basis as columns.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd nullspace(const LinearSystem& s);
std::size_t nullity(const LinearSystem& s);

/// rowspace(s1) == rowspace(s2); throws std::invalid_argument on label-set mismatch.
bool equivalent(const LinearSystem& s1, const LinearSystem& s2);
/// rowspace(small) is contained in rowspace(big).
bool contains(const LinearSystem& big, const LinearSystem& small);

struct ImplicationCount {
  std::string provenance;
  std::size_t rows = 0;
  std::size_t implied = 0;
};

/// Per provenance tag of `candidate`, how many rows lie in rowspace(basis).
/// A normalized row counts as implied when its component orthogonal to the
/// rowspace has norm below 1e-8.
std::vector<ImplicationCount> implied_rows(const LinearSystem& basis, const LinearSystem& candidate);

/// max |row . v| over rows normalized to unit max-norm.
double residual(const LinearSystem& s, const Eigen::VectorXcd& v);

struct SpectrumResult {
  std::vector<cd> roots;  // with multiplicity
  int degree = 0;
  bool no_propagating_branch = false;  // nonzero constant polynomial
  bool double_root = false;
  std::array<cd, 3> coefficients{};  // constant, linear, quadratic
};

/// Roots of (d^2-b^2)x^2 - 2(ab-cd)x + (c^2-a^2); throws std::domain_error
/// ("identically degenerate") if every coefficient vanishes.
SpectrumResult mass_spectrum(cd a, cd b, cd c, cd d);
cd spectrum_polynomial(cd a, cd b, cd c, cd d, cd x);

nlohmann::json to_json(const LinearSystem& s);
LinearSystem system_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(cd z);

}  // namespace bw
