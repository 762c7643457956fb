#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "mixent/entanglement.hpp"
#include "mixent/omega.hpp"
#include "mixent_cli/commands.hpp"
#include "mixent_cli/state_document.hpp"

namespace mixent::cli {

namespace {

// Concurrence and PPT may disagree within this distance of the boundary.
constexpr double kBoundaryBand = 1e-9;

struct Trial {
  double deviation = 0.0;
  bool ok = true;
  AnyState state;
};

struct Suite {
  const char* name;
  double limit;
  std::function<Trial(std::uint64_t seed, int index)> run;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Trial within(double deviation, double limit, AnyState state) {
  return {deviation, deviation <= limit, std::move(state)};
}

Trial pure_closed(std::uint64_t seed, int) {
  const auto psi = random_pure(seed);
  const double closed = omega_c_pure(concurrence_pure(psi)).omega_c;
  return within(std::abs(closed - omega_c_bisect(density_of_pure(psi)).omega_c), kClosedFormAgreement, psi);
}

Trial rank2_closed(std::uint64_t seed, int index) {
  const auto r = random_structured_rank2(seed, index % 2 ? Subspace::Antiparallel : Subspace::Parallel, 1.0);
  const double closed = omega_c_rank2(r).omega_c;
  return within(std::abs(closed - omega_c_bisect(structured_rank2_density(r, 0.0)).omega_c), kClosedFormAgreement, r);
}

Trial rank4_closed(std::uint64_t seed, int) {
  const auto r = random_structured_rank4(seed);
  const auto critical = critical_weight_rank4(rank4_stats(r));
  if (!critical) return {std::numeric_limits<double>::infinity(), false, r};
  const double bisected = omega_c_bisect(structured_rank4_density(r, 0.0)).omega_c;
  return within(std::abs(critical->omega_c - bisected), kClosedFormAgreement, r);
}

Trial ppt_agreement(std::uint64_t seed, int index) {
  const auto rho = random_density(seed, 1 + index % 6);
  const double c = concurrence(rho).value;
  const double pt = ppt_min_eigenvalue(rho);
  const bool in_band = (c > 0.0 && c < kBoundaryBand) || std::abs(pt) < kBoundaryBand;
  const bool agree = in_band || (c == 0.0) == is_separable_ppt(rho);
  return {agree ? 0.0 : std::max(c, -pt), agree, rho};
}

Trial local_unitary(std::uint64_t seed, int index) {
  const auto rho = random_density(derive_seed(seed, 0, 0), 1 + index % 6);
  const auto rotated =
      apply_local_unitaries(rho, random_unitary2(derive_seed(seed, 1, 0)), random_unitary2(derive_seed(seed, 2, 0)));
  return within(std::abs(concurrence(rho).value - concurrence(rotated).value), 1e-9, rho);
}

Trial pure_mix_eigenvalues(std::uint64_t seed, int) {
  std::mt19937_64 rng(seed);
  const double c1 = uniform(rng, 0.0, 1.0);
  const double c2 = std::sqrt(1.0 - c1 * c1);
  const double w = uniform(rng, 0.0, 1.0);
  ComplexMat4 m;
  m(0, 0) = (1 - w) * c1 * c1 + w / 4;
  m(0, 3) = (1 - w) * c1 * c2;
  m(3, 0) = m(0, 3);
  m(1, 1) = m(2, 2) = w / 4;
  m(3, 3) = (1 - w) * c2 * c2 + w / 4;
  const auto rho = DensityMatrix::from_matrix(m);

  const auto closed = eigs_pure_mix_closed(c1, c2, w);
  std::array<double, 4> squared;
  std::transform(closed.begin(), closed.end(), squared.begin(), [](double x) { return x * x; });
  std::sort(squared.begin(), squared.end(), std::greater<>());
  const auto product = eig_rho_rhotilde(rho.matrix() * spin_flip(rho));
  const auto lambdas = wootters_lambdas(rho);
  double dev = std::abs(concurrence(rho).value - std::max(0.0, (1 - w) * 2 * c1 * c2 - w / 2));
  for (std::size_t i = 0; i < 4; ++i) {
    dev = std::max({dev, std::abs(squared[i] - product[i]), std::abs(closed[i] - lambdas[i])});
  }
  return within(dev, 1e-10, rho);
}

Trial rank4_eigenvalues(std::uint64_t seed, int) {
  std::mt19937_64 rng(derive_seed(seed, 1, 0));
  const auto r = random_structured_rank4(seed);
  const double w = uniform(rng, 0.0, 1.0);
  auto closed = eigs_rank4_mix_closed(rank4_stats(r), w);
  std::sort(closed.begin(), closed.end(), std::greater<>());
  const auto generic = wootters_lambdas(structured_rank4_density(r, w));
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(closed[i] - generic[i]));
  return within(dev, 1e-8, r);
}

Trial upward_closed(std::uint64_t seed, int index) {
  std::mt19937_64 rng(derive_seed(seed, 1, 0));
  const auto rho = random_density(seed, 1 + index % 6);
  double lo = uniform(rng, 0.0, 1.0), hi = uniform(rng, 0.0, 1.0);
  if (lo > hi) std::swap(lo, hi);
  const double at_lo = concurrence(mix_with_max_mixed(rho, lo)).value;
  const double at_hi = concurrence(mix_with_max_mixed(rho, hi)).value;
  const double dev = at_lo < kZeroBand ? at_hi : 0.0;
  return {dev, dev < kZeroBand, rho};
}

Trial q0_reduction(std::uint64_t seed, int) {
  const auto parallel = random_structured_rank2(seed, Subspace::Parallel, 1.0);
  const auto r = StructuredRank4::make(parallel, StructuredRank2::make(Subspace::Antiparallel, {}));
  const auto critical = critical_weight_rank4(rank4_stats(r));
  if (!critical) return {std::numeric_limits<double>::infinity(), false, r};
  const double expected = omega_c_pure(concurrence_rank2_closed(parallel)).omega_c;
  return within(std::abs(critical->omega_c - expected), 1e-10, r);
}

}  // namespace

int cmd_verify(int trials, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  if (trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kUsage;
  }
  const Suite suites[] = {
      {"pure_closed_vs_bisection", kClosedFormAgreement, pure_closed},
      {"rank2_closed_vs_bisection", kClosedFormAgreement, rank2_closed},
      {"rank4_closed_vs_bisection", kClosedFormAgreement, rank4_closed},
      {"ppt_vs_concurrence", 0.0, ppt_agreement},
      {"local_unitary_invariance", 1e-9, local_unitary},
      {"pure_mix_eigenvalues", 1e-10, pure_mix_eigenvalues},
      {"rank4_eigenvalues", 1e-8, rank4_eigenvalues},
      {"upward_closedness", kZeroBand, upward_closed},
      {"parallel_only_reduction", 1e-10, q0_reduction},
  };

  out << fmt::format("verify: trials = {}, seed = {}\n", trials, seed);
  std::optional<std::string> first_failure;
  bool all_passed = true;
  for (std::size_t s = 0; s < std::size(suites); ++s) {
    const Suite& suite = suites[s];
    int passed = 0;
    double max_dev = 0.0;
    for (int i = 0; i < trials; ++i) {
      const std::uint64_t trial_seed = derive_seed(seed, 100 + s, static_cast<std::uint64_t>(i));
      const Trial t = suite.run(trial_seed, i);
      max_dev = std::max(max_dev, t.deviation);
      if (t.ok) {
        ++passed;
      } else if (!first_failure) {
        first_failure = fmt::format("first failure: {} trial {} (trial seed {}), deviation {:.3e} > {:.0e}\n{}",
                                    suite.name, i, trial_seed, t.deviation, suite.limit, serialize(t.state));
      }
    }
    all_passed = all_passed && passed == trials;
    out << fmt::format("{:<28}{:>8}/{:<8}max_dev = {:.3e}  (limit {:.0e})\n", suite.name, passed, trials, max_dev,
                       suite.limit);
  }
  if (first_failure) {
    out << *first_failure;
    return kVerifyFailed;
  }
  out << "all suites passed\n";
  return kOk;
}

}  // namespace mixent::cli
