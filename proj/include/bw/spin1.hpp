#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bw/linsys.hpp"
#include "bw/tensor.hpp"

namespace bw {

struct ParameterSet {
  cd a{}, b{}, c{}, d{};
  double m = 1.0;
  double m1 = 1.0;
  double m2 = 1.0;
  std::array<int, 4> eps{1, 1, 1, 1};
};

/// a + b p^2 and c + d p^2, the plane-wave values of the mass operators.
cd shifted_a(const ParameterSet& s, const Momentum& p);
cd shifted_c(const ParameterSet& s, const Momentum& p);

/// gamma^mu p_mu + a' + sign gamma5 c'  (sign = +1 or -1).
Eigen::Matrix4cd bw_operator(const ParameterSet& s, const Momentum& p, int sign);

/// Both multispinor equations applied to the packed expansion: 32 rows over
/// the spin-1 component columns.
LinearSystem multispinor_spin1_system(const ParameterSet& s, const Momentum& p);

/// Proca-like rows and their constraints (16 rows).
LinearSystem derive_spin1_system(const ParameterSet& s, const Momentum& p);
/// Spin-0 sector rows and their constraints (16 rows). Column set is the full
/// spin-1 layout because the axial-vector row also carries A.
LinearSystem derive_duffin_kemmer(const ParameterSet& s, const Momentum& p);

inline constexpr double kDegenerateDivisor = 1e-8;

/// Second-order rows for F alone (6 rows over F[01]..F[23]). Throws
/// std::domain_error("degenerate elimination") when a' and c' both vanish.
LinearSystem eliminate_potentials(const ParameterSet& s, const Momentum& p);

/// p^2 values where the generalized Dirac operator is singular:
/// x + (c + d x)^2 - (a + b x)^2 = 0.
std::vector<cd> spin1_dispersion_roots(const ParameterSet& s);

enum class WeinbergBranch { left, right };

struct WeinbergParams {
  cd A{}, B{};
  WeinbergBranch branch = WeinbergBranch::left;
  int b_sign = 1;  // b = b_sign * d
};

/// Throws std::invalid_argument when neither b = d nor b = -d holds, or m <= 0.
WeinbergParams weinberg_map(const ParameterSet& s, WeinbergBranch branch);

struct WeinbergSolution {
  cd a{}, b{}, c{}, d{};
};

struct WeinbergFamily {
  std::string name;
  std::function<WeinbergSolution(cd)> at;  // free parameter t (t != 0 for "generic")
};

/// Every solution family of the branch equations with b = b_sign * d.
/// Throws std::invalid_argument for m <= 0, non-finite input or b_sign not +-1.
std::vector<WeinbergFamily> weinberg_inverse(cd A, cd B, double m, WeinbergBranch branch, int b_sign);

const char* to_string(WeinbergBranch b);

struct SignVariantCoeffs {
  std::array<int, 4> eps{};
  int A1 = 0, A2 = 0, B1 = 0, B2 = 0;
};

/// Throws std::invalid_argument unless every entry is +1 or -1.
SignVariantCoeffs make_sign_variant(const std::array<int, 4>& eps);
/// All 16 tuples, (+,+,+,+) first and the last slot varying fastest.
std::vector<SignVariantCoeffs> enumerate_sign_variants();

/// Tensor rows of the sign-variant system (16 rows).
LinearSystem derive_sign_variant_system(double m1, double m2, const SignVariantCoeffs& v, const Momentum& p);
/// The expanded multispinor pair with symmetric and antisymmetric parts split.
LinearSystem sign_variant_multispinor_system(double m1, double m2, const SignVariantCoeffs& v,
                                             const Momentum& p);

struct VariantClasses {
  std::vector<std::vector<std::size_t>> classes;  // indices into enumerate_sign_variants()
};

/// Groups the 16 variants by pairwise rowspace equivalence at every momentum.
VariantClasses classify_sign_variants(double m1, double m2, const std::vector<Momentum>& momenta);

}  // namespace bw
