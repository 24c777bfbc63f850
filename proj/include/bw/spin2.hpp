#pragma once

#include <string>
#include <vector>

#include "bw/fields.hpp"
#include "bw/linsys.hpp"
#include "bw/tensor.hpp"

namespace bw {

struct Spin2System {
  LinearSystem dynamical;
  LinearSystem constraints;
  LinearSystem combined;
};

/// Tensor dynamics with divergence and epsilon constraints over {G,F,T,R}
/// (150 rows). Throws std::invalid_argument unless m > 0.
LinearSystem standard_spin2_dynamics(double m, const Momentum& p);
/// The printed algebraic constraints over {G,F,T,R}; momentum independent.
LinearSystem standard_spin2_constraints();
Spin2System standard_spin2_system(double m, const Momentum& p);

/// Contractions of the packed rank-4 function with R^-1, R^-1 gamma5 and
/// R^-1 gamma5 gamma^lambda over the full nine-block layout (96 rows).
LinearSystem contraction_constraints(const ModifiedCoeffs& coeffs);
/// [gamma.p - m] on the first spinor pair (both indices), 512 rows.
LinearSystem first_pair_dirac_system(const ModifiedCoeffs& coeffs, double m, const Momentum& p);
/// All four rank-4 Dirac equations, 1024 rows.
LinearSystem all_pair_dirac_system(const ModifiedCoeffs& coeffs, double m, const Momentum& p);

struct AblationEntry {
  std::string removed;  // provenance of the removed constraint family
  std::size_t removed_rows = 0;
  std::size_t nullspace_dim = 0;
};

struct TrivialityReport {
  std::size_t nullspace_dim = 0;
  std::size_t dynamics_only_dim = 0;
  /// Greedy certifying subset of constraint rows (indices into the
  /// constraint system) that completes the rank together with the dynamics.
  std::vector<std::size_t> witness_rows;
  std::vector<std::string> witness_provenance;
  std::vector<AblationEntry> ablation;
};

/// The per-family ablation costs one rank decision per family; skip it with
/// `ablation = false`.
TrivialityReport verify_triviality(double m, const Momentum& p, bool ablation = true);

/// Dynamical rows of the nine-term formalism over all 256 columns.
LinearSystem modified_spin2_dynamics(const ModifiedCoeffs& coeffs, double m, const Momentum& p);
/// Essential-constraint rows; provenance carries the display and the
/// position in the printed list ("... ess.k").
LinearSystem modified_spin2_constraints(const ModifiedCoeffs& coeffs);
Spin2System modified_spin2_system(const ModifiedCoeffs& coeffs, double m, const Momentum& p);

/// Returns the specialization point; the argument is ignored apart from its type.
ModifiedCoeffs specialize_to_standard(const ModifiedCoeffs& coeffs);

struct RecoveryResult {
  bool recovered = true;
  std::size_t dynamics_mismatches = 0;
  std::size_t combined_mismatches = 0;
};

/// At every momentum: modified dynamics vs standard dynamics and modified
/// combined vs standard combined, both equivalent over the 256 columns.
RecoveryResult recovery_check(const ModifiedCoeffs& coeffs, double m, const std::vector<Momentum>& momenta);

/// Second-order rows for G, plus the divergence pair with an auxiliary
/// vector F_aux. Throws std::invalid_argument unless alpha_1, beta_1 != 0 and m > 0.
LinearSystem derive_G_equation(const ModifiedCoeffs& coeffs, double m, const Momentum& p);

/// Second-order G rows placed on the 256-column layout.
LinearSystem second_order_G_rows(const ModifiedCoeffs& coeffs, double m, const Momentum& p);

/// Max |(1/m^2) p_nu F^nu| over the nullspace of the second-order rows, the
/// trace and antisymmetry rows and the divergence definition.
double divergence_pair_residual(const ModifiedCoeffs& coeffs, double m, const Momentum& p);

/// Max deviation of the second-order rows from ((p^2-m^2)/m^2) G over an
/// orthonormal basis of transverse traceless symmetric G.
double transverse_traceless_deviation(const ModifiedCoeffs& coeffs, double m, const Momentum& p);
/// Max |second-order rows . G| over the same basis (zero on shell).
double transverse_traceless_residual(const ModifiedCoeffs& coeffs, double m, const Momentum& p);

}  // namespace bw
