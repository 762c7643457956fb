#include "mixent/omega.hpp"

#include <cmath>
#include <sstream>

#include "mixent/entanglement.hpp"
#include "mixent/error.hpp"

namespace mixent {

namespace {

constexpr int kMaxBisections = 60;
// Tolerance used when omega_c_rank4 double-checks its closed form.
constexpr double kInternalBisectTol = 1e-10;

double path_concurrence(const DensityMatrix& rho0, double omega) {
  return concurrence(mix_with_max_mixed(rho0, omega)).value;
}

// Root of (1 - w) coherence = sqrt((1 - w)^2 pop^2 + (w/4)(1 - w) weight + (w/4)^2)
// in (0, 1), written without the removable 0/0 of the textbook quotient.
std::optional<double> branch_root(double coherence, double population, double weight) {
  const double gap = coherence * coherence - population * population;
  if (!(gap > 0.0)) return std::nullopt;
  return 8.0 * gap / (8.0 * gap + weight + std::sqrt(weight * weight + 4.0 * gap));
}

}  // namespace

std::string_view to_string(OmegaMethod m) noexcept {
  switch (m) {
    case OmegaMethod::PureClosed: return "PureClosed";
    case OmegaMethod::Rank2Closed: return "Rank2Closed";
    case OmegaMethod::Rank4Closed: return "Rank4Closed";
    case OmegaMethod::Bisection: return "Bisection";
  }
  return "Unknown";
}

std::string_view to_string(Rank4Branch b) noexcept {
  return b == Rank4Branch::Lambda1Dominant ? "Lambda1Dominant" : "Lambda3Dominant";
}

OmegaResult omega_c_pure(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
    std::ostringstream os;
    os << "concurrence " << concurrence << " is outside [0, 1]";
    throw Error(ErrorCode::ParamOutOfRange, os.str());
  }
  OmegaResult out;
  out.method = OmegaMethod::PureClosed;
  out.omega_c = concurrence / (concurrence + 0.5);
  // Concurrence of the mixing path at omega_c, linear in omega.
  out.residual = std::max(0.0, (1.0 - out.omega_c) * concurrence - 0.5 * out.omega_c);
  return out;
}

OmegaResult omega_c_rank2(const StructuredRank2& r) {
  OmegaResult out = omega_c_pure(concurrence_rank2_closed(r));
  out.method = OmegaMethod::Rank2Closed;
  out.residual = concurrence(structured_rank2_density(r, out.omega_c)).value;
  return out;
}

std::optional<Rank4Critical> critical_weight_rank4(const RankFourStats& stats) {
  if (concurrence_rank4_closed(stats, 0.0) < kZeroBand) return Rank4Critical{0.0, std::nullopt};

  struct Candidate {
    Rank4Branch branch;
    std::optional<double> omega;
  };
  const Candidate candidates[] = {
      {Rank4Branch::Lambda1Dominant,
       branch_root(stats.parallel_coherence, stats.antiparallel_population, stats.antiparallel_weight)},
      {Rank4Branch::Lambda3Dominant,
       branch_root(stats.antiparallel_coherence, stats.parallel_population, stats.parallel_weight)},
  };
  for (const auto& c : candidates) {
    if (!c.omega || *c.omega < 0.0 || *c.omega > 1.0) continue;
    const auto l = eigs_rank4_mix_closed(stats, *c.omega);
    const bool dominant = c.branch == Rank4Branch::Lambda1Dominant ? l[0] >= l[2] - kZeroBand
                                                                   : l[2] >= l[0] - kZeroBand;
    if (dominant) return Rank4Critical{*c.omega, c.branch};
  }
  return std::nullopt;
}

OmegaResult omega_c_rank4(const StructuredRank4& r) {
  const auto closed = critical_weight_rank4(rank4_stats(r));
  const DensityMatrix rho0 = structured_rank4_density(r, 0.0);
  OmegaResult bisected = omega_c_bisect(rho0, kInternalBisectTol);
  if (!closed || std::abs(closed->omega_c - bisected.omega_c) > kClosedFormAgreement) return bisected;

  OmegaResult out;
  out.omega_c = closed->omega_c;
  out.method = OmegaMethod::Rank4Closed;
  out.branch = closed->branch;
  out.residual = path_concurrence(rho0, out.omega_c);
  return out;
}

OmegaResult omega_c_bisect(const DensityMatrix& rho0, double tol) {
  if (!(tol >= kMinBisectTol && tol <= kMaxBisectTol)) {
    std::ostringstream os;
    os << "tol = " << tol << " is outside [1e-12, 1e-3]";
    throw Error(ErrorCode::ToleranceOutOfRange, os.str());
  }
  OmegaResult out;
  out.method = OmegaMethod::Bisection;
  const double c0 = concurrence(rho0).value;
  if (c0 < kZeroBand) {
    out.residual = c0;
    return out;
  }

  // Invariant: entangled at lo, separable at hi. The separable part of the
  // path is upward closed, so this bracket is valid from the start.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (path_concurrence(rho0, mid) < kZeroBand) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.omega_c = 0.5 * (lo + hi);
  out.residual = path_concurrence(rho0, out.omega_c);
  return out;
}

std::vector<SweepRow> sweep(const DensityMatrix& rho0, double omega_from, double omega_to, int steps) {
  if (!(omega_from >= 0.0 && omega_from < omega_to && omega_to <= 1.0) || steps < 2) {
    std::ostringstream os;
    os << "grid [" << omega_from << ", " << omega_to << "] with " << steps
       << " steps; need 0 <= from < to <= 1 and steps >= 2";
    throw Error(ErrorCode::GridInvalid, os.str());
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  const double span = omega_to - omega_from;
  for (int i = 0; i < steps; ++i) {
    const double omega = i + 1 == steps ? omega_to : omega_from + span * i / (steps - 1);
    const DensityMatrix rho = mix_with_max_mixed(rho0, omega);
    rows.push_back({omega, concurrence(rho).value, is_separable_ppt(rho)});
  }
  return rows;
}

}  // namespace mixent
