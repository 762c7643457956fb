#pragma once

#include <array>

#include "mixent/matcore.hpp"
#include "mixent/states.hpp"

namespace mixent {

/// Wootters concurrence together with the lambdas it was computed from.
struct ConcurrenceValue {
  double value = 0.0;
  /// Square roots of the eigenvalues of rho * rho_tilde, descending.
  std::array<double, 4> lambdas{};
};

/// How the Wootters lambdas are extracted. All three agree in exact
/// arithmetic; they differ in how roundoff propagates.
enum class LambdaRoute {
  /// Singular values of tau = W^dagger Y W^*, where rho = W W^dagger and
  /// Y = sigma_y (x) sigma_y. Small lambdas keep absolute accuracy ~1e-16.
  SpinFlipOverlap,
  /// Square roots of the eigenvalues of the non-Hermitian rho * rho_tilde.
  /// Zero lambdas pick up ~sqrt(eps) noise.
  ProductSpectrum,
  /// Eigenvalues of R = sqrt(sqrt(rho) rho_tilde sqrt(rho)). Same sqrt(eps)
  /// sensitivity as ProductSpectrum.
  HermitianRoot,
};

enum class Subsystem { First, Second };

/// rho_tilde = (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y).
ComplexMat4 spin_flip(const DensityMatrix& rho);

/// Wootters lambdas, descending.
std::array<double, 4> wootters_lambdas(const DensityMatrix& rho, LambdaRoute route = LambdaRoute::SpinFlipOverlap);

/// max{0, l1 - l2 - l3 - l4} after sorting the input descending.
double concurrence_from_lambdas(std::array<double, 4> lambdas);

ConcurrenceValue concurrence(const DensityMatrix& rho, LambdaRoute route = LambdaRoute::SpinFlipOverlap);

/// 2 |ad - bc|, clamped to 1 against roundoff.
double concurrence_pure(const PureState& s);

/// Reduced state of a pure state on one qubit.
ComplexMat2 reduced_state(const PureState& s, Subsystem keep);

/// Von Neumann entropy in bits of the reduced state on `keep`.
double reduced_entropy(const PureState& s, Subsystem keep);

/// Entanglement entropy -Tr(rho_A log2 rho_A) of a pure state, 0 log 0 = 0.
double entropy_pure(const PureState& s);

/// Closed-form concurrence of a standalone structured rank-2 state:
/// 2 |sum_i p_i c1_i c2_i e^{i chi_i}|, clamped to 1. Throws WeightsInvalid unless the
/// weights sum to 1.
double concurrence_rank2_closed(const StructuredRank2& r);

/// Closed-form lambdas of the pure-state mixing path
/// c1|uu> + c2|dd> -> (1 - omega) rho + omega I/4, descending.
/// Throws ParamOutOfRange unless c1, c2 >= 0, c1^2 + c2^2 = 1 (1e-9) and
/// omega in [0, 1].
std::array<double, 4> eigs_pure_mix_closed(double c1, double c2, double omega);

/// Closed-form lambdas along the mixing path of a structured rank-4 state,
/// in the order (l1, l2, l3, l4) with l1 >= l2 from the parallel block and
/// l3 >= l4 from the antiparallel block. Not globally sorted.
std::array<double, 4> eigs_rank4_mix_closed(const RankFourStats& stats, double omega);

/// Concurrence along the structured rank-4 mixing path from the closed-form
/// lambdas: whichever of l1, l3 dominates decides the branch.
double concurrence_rank4_closed(const RankFourStats& stats, double omega);

/// Partial transpose over the second qubit.
ComplexMat4 partial_transpose(const ComplexMat4& m);

double ppt_min_eigenvalue(const DensityMatrix& rho);

/// Positive partial transpose, min eigenvalue >= -kClampTol. For two qubits
/// this is equivalent to separability.
bool is_separable_ppt(const DensityMatrix& rho);

/// (U1 (x) U2) rho (U1 (x) U2)^dagger.
DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMat2& u1, const ComplexMat2& u2);

}  // namespace mixent
