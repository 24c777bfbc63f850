#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "bw/clifford.hpp"
#include "bw/tensor.hpp"

namespace bw {

/// Columns: phi, phi_tilde, A[mu], A_tilde[mu], F[pair]; all indices lower.
const Layout& spin1_layout();

struct Spin1Components {
  cd phi{};
  cd phi_tilde{};
  std::array<cd, 4> A{};
  std::array<cd, 4> A_tilde{};
  std::array<cd, 6> F{};  // F_{mu nu} on the pair codec

  /// F_{mu nu} for any ordered pair, antisymmetric by construction.
  [[nodiscard]] cd F_at(int mu, int nu) const;
  [[nodiscard]] Eigen::VectorXcd to_vector() const;
  static Spin1Components from_vector(const Eigen::VectorXcd& v);
};

using Multispinor2 = Eigen::Matrix4cd;

/// The sixteen expansion matrices in column order. The F matrices carry the
/// factor 2 from summing sigma^{lk} R F_{lk} over all ordered pairs.
std::array<Eigen::Matrix4cd, 16> spin1_expansion(const GammaBasis& basis, const RMatrix& R);

Multispinor2 pack_spin1(const Spin1Components& c, const GammaBasis& basis, const RMatrix& R);
/// Trace-Gram inverse of the expansion; throws std::runtime_error if the Gram
/// matrix is singular.
Spin1Components unpack_spin1(const Multispinor2& psi, const GammaBasis& basis, const RMatrix& R);

/// alpha_1..3 and beta_1..9 of the nine-term rank-4 expansion.
struct ModifiedCoeffs {
  std::array<cd, 3> alpha{};
  std::array<cd, 9> beta{};

  /// alpha_3 = beta_3 = beta_6 = beta_9 = 0, all others 1.
  static ModifiedCoeffs standard();
  /// Coefficient product multiplying block `name` (alpha_i beta_j).
  [[nodiscard]] cd product(const std::string& block) const;
  [[nodiscard]] cd a(int i) const { return alpha.at(static_cast<std::size_t>(i - 1)); }
  [[nodiscard]] cd b(int j) const { return beta.at(static_cast<std::size_t>(j - 1)); }
};

/// G, F, F_tilde, T, T_tilde, R, R_tilde, D, D_tilde; stored positions
/// G_k^m, F_{kt}^m, T_k^{mn}, R_{kt}^{mn}.
const Layout& spin2_layout();
/// The untilded blocks G, F, T, R of the standard expansion.
const Layout& spin2_standard_layout();
const std::vector<std::string>& spin2_block_names();

struct Spin2Components {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(256);

  [[nodiscard]] cd get(const std::string& block, const std::vector<int>& idx) const;
  void set(const std::string& block, const std::vector<int>& idx, cd value);
  [[nodiscard]] Eigen::VectorXcd block(const std::string& name) const;
};

/// 16x16 over spinor pairs: row 4*alpha+beta, column 4*gamma+delta.
using Multispinor4 = Eigen::Matrix<cd, 16, 16>;

struct Spin2Unpacked {
  Spin2Components components;
  std::vector<std::string> undetermined;  // blocks whose coefficient product vanishes
};

/// Precomputed linear map components -> rank-4 multispinor.
class Spin2Codec {
 public:
  Spin2Codec(const ModifiedCoeffs& coeffs, const GammaBasis& basis, const RMatrix& R);

  [[nodiscard]] Multispinor4 pack(const Spin2Components& c) const;
  /// Minimum-norm preimage over the determined blocks.
  [[nodiscard]] Spin2Unpacked unpack(const Multispinor4& psi) const;

  /// Column j: vectorized multispinor of unit component j (row-major pairs).
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return map_; }
  [[nodiscard]] const std::vector<std::string>& undetermined() const { return undetermined_; }
  /// Dimension of the image of the expansion.
  [[nodiscard]] std::size_t image_rank() const;

 private:
  Eigen::MatrixXcd map_;
  std::vector<std::string> undetermined_;
  std::vector<Eigen::Index> determined_cols_;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> solver_;
};

Multispinor4 pack_spin2(const Spin2Components& c, const ModifiedCoeffs& coeffs, const GammaBasis& basis,
                        const RMatrix& R);
Spin2Unpacked unpack_spin2(const Multispinor4& psi, const ModifiedCoeffs& coeffs, const GammaBasis& basis,
                           const RMatrix& R);

nlohmann::json to_json(const Spin1Components& c);
Spin1Components spin1_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Spin2Components& c);
Spin2Components spin2_from_json(const nlohmann::json& j);

}  // namespace bw
