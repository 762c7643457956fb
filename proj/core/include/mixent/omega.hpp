#pragma once

// Critical mixing weight omega_c: the smallest omega for which
// (1 - omega) rho0 + omega I/4 is separable.

#include <optional>
#include <string_view>
#include <vector>

#include "mixent/states.hpp"

namespace mixent {

/// Concurrence below this is treated as zero (separable).
inline constexpr double kZeroBand = 1e-12;
/// Closed forms are accepted when they agree with bisection to this.
inline constexpr double kClosedFormAgreement = 1e-6;
/// Accepted range for the bisection tolerance.
inline constexpr double kMinBisectTol = 1e-12;
inline constexpr double kMaxBisectTol = 1e-3;

enum class OmegaMethod { PureClosed, Rank2Closed, Rank4Closed, Bisection };

/// Which Wootters lambda dominates on the structured rank-4 mixing path:
/// the largest parallel-block lambda (l1) or antiparallel-block lambda (l3).
enum class Rank4Branch { Lambda1Dominant, Lambda3Dominant };

std::string_view to_string(OmegaMethod m) noexcept;
std::string_view to_string(Rank4Branch b) noexcept;

struct OmegaResult {
  double omega_c = 0.0;
  OmegaMethod method = OmegaMethod::Bisection;
  std::optional<Rank4Branch> branch;
  /// Concurrence at the reported omega_c (zero up to roundoff or the
  /// bisection bracket width).
  double residual = 0.0;
};

/// C / (C + 1/2). Throws ParamOutOfRange unless 0 <= C <= 1.
OmegaResult omega_c_pure(double concurrence);

/// Pure-state form applied to the closed-form concurrence of a standalone
/// structured rank-2 state.
OmegaResult omega_c_rank2(const StructuredRank2& r);

/// Closed-form critical weight of a structured rank-4 family.
struct Rank4Critical {
  double omega_c = 0.0;
  /// Empty when the omega = 0 state is already separable.
  std::optional<Rank4Branch> branch;
};

/// Closed form only, no numerical cross-check. Returns nullopt when neither
/// branch candidate satisfies its own dominance assumption.
///
/// With gap = F^2 - B^2 (parallel coherence squared minus antiparallel
/// population squared) and Q the antiparallel weight, the l1-dominant root is
///   8 gap / (8 gap + Q + sqrt(Q^2 + 4 gap)),
/// the conjugate-rationalized form of
///   (8 gap + Q - sqrt(Q^2 + 4 gap)) / (8 gap + 2 Q - 1/2),
/// which stays finite where that quotient is 0/0. The l3-dominant branch swaps
/// the roles of the two blocks.
std::optional<Rank4Critical> critical_weight_rank4(const RankFourStats& stats);

/// critical_weight_rank4 checked against omega_c_bisect on the assembled
/// state. Falls back to the bisection value (method Bisection) when the closed
/// form has no consistent branch or disagrees by more than
/// kClosedFormAgreement.
OmegaResult omega_c_rank4(const StructuredRank4& r);

/// Bisection on [0, 1] using concurrence < kZeroBand as the separability
/// predicate. Separable inputs return exactly 0. Otherwise the returned value
/// w satisfies: the path is separable at w + tol and entangled at w - tol.
/// Throws ToleranceOutOfRange unless kMinBisectTol <= tol <= kMaxBisectTol.
OmegaResult omega_c_bisect(const DensityMatrix& rho0, double tol = 1e-9);

struct SweepRow {
  double omega = 0.0;
  double concurrence = 0.0;
  bool separable = false;
};

/// Concurrence and PPT flag on `steps` evenly spaced weights including both
/// endpoints. Throws GridInvalid unless 0 <= from < to <= 1 and steps >= 2.
std::vector<SweepRow> sweep(const DensityMatrix& rho0, double omega_from, double omega_to, int steps);

}  // namespace mixent
