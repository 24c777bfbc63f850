#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "bw/exact.hpp"

namespace bw {

/// Minkowski metric diag(+1,-1,-1,-1).
struct Metric {
  static constexpr int g(int mu, int nu) { return mu != nu ? 0 : (mu == 0 ? 1 : -1); }
};

/// The sixteen Dirac-algebra basis matrices in one fixed representation.
struct GammaBasis {
  std::array<SpinMatrix, 4> gamma;  // upper index
  SpinMatrix gamma5;
  std::array<SpinMatrix, 6> sigma;  // sigma^{mu nu}, pairs (01,02,03,12,13,23)
  SpinMatrix identity = SpinMatrix::identity();

  /// Builds gamma5 = i g0 g1 g2 g3 and sigma = (i/2)[g,g] from four gammas.
  static GammaBasis from_gammas(const std::array<SpinMatrix, 4>& gammas);

  [[nodiscard]] SpinMatrix gamma_lower(int mu) const;
  /// sigma^{mu nu} for any ordered pair (zero on the diagonal).
  [[nodiscard]] SpinMatrix sigma_upper(int mu, int nu) const;
  [[nodiscard]] SpinMatrix sigma_lower(int mu, int nu) const;

  /// I, gamma5, gamma^mu, gamma5 gamma^mu, sigma^{mu nu} in that order.
  [[nodiscard]] std::array<SpinMatrix, 16> elements() const;

  /// S gamma S^-1 for every generator; throws if S is singular.
  [[nodiscard]] GammaBasis conjugated(const SpinMatrix& s) const;
};

struct RMatrix {
  SpinMatrix r;
  SpinMatrix r_inverse;
};

enum class Symmetry { symmetric, antisymmetric, neither };

/// Dirac (standard) representation.
GammaBasis build_gamma_basis();

/// Expected transpose behaviour of (B R) for element k of GammaBasis::elements().
Symmetry expected_symmetry(std::size_t element);

/// Dimension of the solution space of the sixteen transpose conditions on R.
std::size_t r_condition_nullity(const GammaBasis& basis);

/// Solves the transpose conditions for R; throws std::runtime_error unless the
/// solution is unique up to scale. The largest-magnitude entry is scaled to 1.
RMatrix find_R(const GammaBasis& basis);

Symmetry classify_symmetry(const SpinMatrix& m);
Symmetry classify_symmetry(const Eigen::Matrix4cd& m, double tol = 1e-12);

const char* to_string(Symmetry s);

Eigen::Matrix4cd to_eigen(const SpinMatrix& m);

/// Floating copy of the Dirac basis and its R, built once.
struct NumericAlgebra {
  GammaBasis exact;
  RMatrix exact_R;
  std::array<Eigen::Matrix4cd, 4> gamma;  // upper index
  Eigen::Matrix4cd gamma5;
  Eigen::Matrix4cd identity;
  Eigen::Matrix4cd R;
  Eigen::Matrix4cd R_inverse;

  /// gamma^mu p_mu
  [[nodiscard]] Eigen::Matrix4cd slash(const std::array<std::complex<double>, 4>& p_lower) const;
};

const NumericAlgebra& dirac_algebra();

}  // namespace bw
