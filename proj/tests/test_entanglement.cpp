#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "mixent/entanglement.hpp"
#include "mixent/error.hpp"
#include "test_support.hpp"

namespace mixent {
namespace {

using testing::expect_matrix_near;
using testing::expect_values_near;
using testing::kInvSqrt2;

std::array<double, 4> sorted(std::array<double, 4> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

StructuredRank4 bell_halves(double p) {
  return StructuredRank4::make(StructuredRank2::make(Subspace::Parallel, {{p, kInvSqrt2, kInvSqrt2, 0}}),
                               StructuredRank2::make(Subspace::Antiparallel, {{1 - p, kInvSqrt2, kInvSqrt2, 0}}));
}

TEST(SpinFlip, FixedPoints) {
  expect_matrix_near(spin_flip(max_mixed()), max_mixed().matrix(), 0.0);
  const auto bell = density_of_pure(testing::bell_phi_plus());
  expect_matrix_near(spin_flip(bell), bell.matrix(), 1e-15);
}

TEST(SpinFlip, PureMixSwapsPopulations) {
  const double c1 = 0.6, c2 = 0.8, w = 0.3;
  ComplexMat4 expected;  // populations c1^2 and c2^2 exchanged, coherence kept
  expected(0, 0) = (1 - w) * c2 * c2 + w / 4;
  expected(0, 3) = (1 - w) * c1 * c2;
  expected(1, 1) = w / 4;
  expected(2, 2) = w / 4;
  expected(3, 0) = (1 - w) * c1 * c2;
  expected(3, 3) = (1 - w) * c1 * c1 + w / 4;
  expect_matrix_near(spin_flip(DensityMatrix::from_matrix(testing::pure_mix_matrix(c1, c2, w))), expected, 1e-15);
}

TEST(SpinFlip, PreservesDensityInvariants) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rho = random_density(seed, 1 + static_cast<int>(seed % 6));
    EXPECT_NO_THROW(DensityMatrix::from_matrix(spin_flip(rho)));
  }
}

TEST(Concurrence, BellIsOne) {
  const auto c = concurrence(density_of_pure(testing::bell_phi_plus()));
  EXPECT_NEAR(c.value, 1.0, 1e-15);
  expect_values_near(c.lambdas, {1, 0, 0, 0}, 1e-15);
}

TEST(Concurrence, MaxMixedIsZero) {
  const auto c = concurrence(max_mixed());
  EXPECT_EQ(c.value, 0.0);
  expect_values_near(c.lambdas, {0.25, 0.25, 0.25, 0.25}, 1e-15);
}

TEST(Concurrence, BellPathAtPointTwo) {
  // (1 - w) 2 c1 c2 - w/2 = 0.8 - 0.1
  EXPECT_NEAR(concurrence(DensityMatrix::from_matrix(testing::pure_mix_matrix(kInvSqrt2, kInvSqrt2, 0.2))).value, 0.7,
              1e-14);
}

TEST(Concurrence, RoutesAgree) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto rho = random_density(derive_seed(seed, 21, 0), 1 + static_cast<int>(seed % 6));
    auto overlap = wootters_lambdas(rho, LambdaRoute::SpinFlipOverlap);
    auto product = wootters_lambdas(rho, LambdaRoute::ProductSpectrum);
    auto root = wootters_lambdas(rho, LambdaRoute::HermitianRoot);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(overlap[i] * overlap[i], product[i] * product[i], 1e-8);
      EXPECT_NEAR(overlap[i] * overlap[i], root[i] * root[i], 1e-8);
    }
    EXPECT_NEAR(concurrence(rho).value, concurrence(rho, LambdaRoute::ProductSpectrum).value, 1e-6);
  }
}

TEST(Concurrence, ValueMatchesLambdaFormula) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto c = concurrence(random_density(seed, 1 + static_cast<int>(seed % 3)));
    const auto& l = c.lambdas;
    EXPECT_TRUE(std::is_sorted(l.begin(), l.end(), std::greater<>()));
    EXPECT_NEAR(c.value, std::max(0.0, l[0] - l[1] - l[2] - l[3]), 1e-12);
    EXPECT_GE(c.value, 0.0);
    EXPECT_LE(c.value, 1.0);
  }
}

TEST(ConcurrencePure, Examples) {
  EXPECT_NEAR(concurrence_pure(testing::bell_phi_plus()), 1.0, 1e-15);
  EXPECT_EQ(concurrence_pure(PureState::basis(1)), 0.0);
  EXPECT_NEAR(concurrence_pure(PureState::from_amplitudes({0.5, 0.5, 0.5, 0.5})), 0.0, 1e-16);
}

TEST(ConcurrencePure, MatchesMixedStateFormulaOnHaarStates) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto psi = random_pure(derive_seed(seed, 22, 0));
    EXPECT_NEAR(concurrence_pure(psi), concurrence(density_of_pure(psi)).value, 1e-9) << "seed " << seed;
  }
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(entropy_pure(testing::bell_phi_plus()), 1.0, 1e-14);
  EXPECT_EQ(entropy_pure(PureState::basis(0)), 0.0);
  // Concurrence 0.5: reduced eigenvalues (1 +- sqrt(3)/2)/2. Frozen value from
  // an explicit partial trace and a 30-digit mpmath evaluation.
  const double c1 = std::sqrt((1 + std::sqrt(0.75)) / 2);
  const auto psi = PureState::from_amplitudes({c1, 0, 0, 0.25 / c1});
  EXPECT_NEAR(concurrence_pure(psi), 0.5, 1e-15);
  EXPECT_NEAR(entropy_pure(psi), 0.354578902665269884, 1e-12);
}

TEST(Entropy, SubsystemsAgreeAndMatchSchmidtForm) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto psi = random_pure(derive_seed(seed, 23, 0));
    const double a = reduced_entropy(psi, Subsystem::First);
    EXPECT_NEAR(a, reduced_entropy(psi, Subsystem::Second), 1e-10);
    const auto s = schmidt_coefficients(psi);
    const double p1 = s.c1 * s.c1, p2 = s.c2 * s.c2;
    EXPECT_NEAR(a, -p1 * std::log2(p1) - (p2 > 0 ? p2 * std::log2(p2) : 0.0), 1e-10);
  }
}

TEST(Entropy, StrictlyIncreasingInConcurrence) {
  std::vector<std::pair<double, double>> samples;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto psi = random_pure(derive_seed(seed, 24, 0));
    samples.emplace_back(concurrence_pure(psi), entropy_pure(psi));
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].first - samples[i - 1].first < 1e-9) continue;
    EXPECT_GT(samples[i].second, samples[i - 1].second);
  }
}

TEST(ConcurrenceRank2Closed, Examples) {
  EXPECT_NEAR(concurrence_rank2_closed(
                  StructuredRank2::make_standalone(Subspace::Parallel, {{1.0, kInvSqrt2, kInvSqrt2, 0.4}})),
              1.0, 1e-15);
  EXPECT_NEAR(concurrence_rank2_closed(StructuredRank2::make_standalone(
                  Subspace::Parallel, {{0.5, kInvSqrt2, kInvSqrt2, 0}, {0.5, kInvSqrt2, kInvSqrt2, std::numbers::pi}})),
              0.0, 1e-15);
  EXPECT_NEAR(concurrence_rank2_closed(StructuredRank2::make_standalone(
                  Subspace::Antiparallel, {{0.5, kInvSqrt2, kInvSqrt2, 1.1}, {0.5, kInvSqrt2, kInvSqrt2, 1.1}})),
              1.0, 1e-15);
}

TEST(ConcurrenceRank2Closed, MatchesWoottersRoute) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto subspace = seed % 2 ? Subspace::Antiparallel : Subspace::Parallel;
    const auto r = random_structured_rank2(derive_seed(seed, 25, 0), subspace, 1.0, 4);
    EXPECT_NEAR(concurrence_rank2_closed(r), concurrence(structured_rank2_density(r, 0.0)).value, 1e-9);
  }
}

TEST(ConcurrenceRank2Closed, RequiresUnitWeight) {
  const auto part = StructuredRank2::make(Subspace::Parallel, {{0.5, kInvSqrt2, kInvSqrt2, 0}});
  EXPECT_THROW(concurrence_rank2_closed(part), Error);
}

TEST(ConcurrenceRank4Closed, Examples) {
  const auto single = StructuredRank4::make(
      StructuredRank2::make(Subspace::Parallel, {{1.0, kInvSqrt2, kInvSqrt2, 0}}),
      StructuredRank2::make(Subspace::Antiparallel, {}));
  EXPECT_NEAR(concurrence_rank4_closed(rank4_stats(single), 0.0), 1.0, 1e-15);
  for (double w : {0.0, 0.2, 0.5, 0.9}) EXPECT_EQ(concurrence_rank4_closed(rank4_stats(bell_halves(0.5)), w), 0.0);
  EXPECT_NEAR(concurrence_rank4_closed(rank4_stats(bell_halves(0.75)), 0.0), 0.5, 1e-15);
}

TEST(ConcurrenceRank4Closed, MatchesWoottersRouteAndDominantBranchFormula) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto r = random_structured_rank4(derive_seed(seed, 26, 0), 3);
    const auto s = rank4_stats(r);
    const double w = static_cast<double>(seed % 10) / 10.0;
    const double closed = concurrence_rank4_closed(s, w);
    EXPECT_NEAR(closed, concurrence(structured_rank4_density(r, w)).value, 1e-9) << "seed " << seed;

    const auto l = eigs_rank4_mix_closed(s, w);
    const double q = w / 4, keep = 1 - w;
    if (l[0] >= l[2]) {
      const double rest = std::sqrt(keep * keep * s.antiparallel_population * s.antiparallel_population +
                                    q * keep * s.antiparallel_weight + q * q);
      EXPECT_NEAR(closed, std::max(0.0, 2 * keep * s.parallel_coherence - 2 * rest), 1e-12);
    } else {
      const double rest = std::sqrt(keep * keep * s.parallel_population * s.parallel_population +
                                    q * keep * s.parallel_weight + q * q);
      EXPECT_NEAR(closed, std::max(0.0, 2 * keep * s.antiparallel_coherence - 2 * rest), 1e-12);
    }
  }
}

TEST(EigsPureMixClosed, Examples) {
  expect_values_near(eigs_pure_mix_closed(kInvSqrt2, kInvSqrt2, 0.0), {1, 0, 0, 0}, 1e-15);
  expect_values_near(eigs_pure_mix_closed(kInvSqrt2, kInvSqrt2, 2.0 / 3), {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}, 1e-15);
  expect_values_near(eigs_pure_mix_closed(0.6, 0.8, 1.0), {0.25, 0.25, 0.25, 0.25}, 1e-15);
  EXPECT_THROW(eigs_pure_mix_closed(0.6, 0.6, 0.1), Error);
  EXPECT_THROW(eigs_pure_mix_closed(0.6, 0.8, 1.5), Error);
}

TEST(EigsPureMixClosed, GridMatchesGenericRoutes) {
  for (int i = 0; i < 20; ++i) {
    const double c1 = i / 19.0;
    const double c2 = std::sqrt(1 - c1 * c1);
    for (int j = 0; j < 20; ++j) {
      const double w = j / 19.0;
      const auto rho = DensityMatrix::from_matrix(testing::pure_mix_matrix(c1, c2, w));
      const auto closed = eigs_pure_mix_closed(c1, c2, w);
      auto squared = closed;
      for (auto& v : squared) v *= v;
      expect_values_near(sorted(squared), eig_rho_rhotilde(rho.matrix() * spin_flip(rho)), 1e-10);
      expect_values_near(closed, wootters_lambdas(rho), 1e-10);
      EXPECT_NEAR(concurrence(rho).value, std::max(0.0, (1 - w) * 2 * c1 * c2 - w / 2), 1e-10);
    }
  }
}

TEST(EigsRank4MixClosed, ParallelOnlyReducesToPureMix) {
  for (double theta : {0.1, 0.5, 0.785, 1.2}) {
    const double c1 = std::cos(theta), c2 = std::sin(theta);
    const auto r = StructuredRank4::make(StructuredRank2::make(Subspace::Parallel, {{1.0, c1, c2, 0.7}}),
                                         StructuredRank2::make(Subspace::Antiparallel, {}));
    for (double w : {0.0, 0.3, 0.8}) {
      expect_values_near(sorted(eigs_rank4_mix_closed(rank4_stats(r), w)), eigs_pure_mix_closed(c1, c2, w), 1e-14);
    }
  }
}

TEST(EigsRank4MixClosed, Examples) {
  expect_values_near(eigs_rank4_mix_closed(rank4_stats(bell_halves(0.3)), 1.0), {0.25, 0.25, 0.25, 0.25}, 1e-15);
  expect_values_near(eigs_rank4_mix_closed(rank4_stats(bell_halves(0.75)), 0.0), {0.75, 0, 0.25, 0}, 1e-15);
  EXPECT_THROW(eigs_rank4_mix_closed(rank4_stats(bell_halves(0.75)), -0.5), Error);
}

TEST(EigsRank4MixClosed, MatchesGenericRouteOnRandomFamilies) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = random_structured_rank4(derive_seed(seed, 27, 0), 3);
    for (double w : {0.0, static_cast<double>(seed % 13) / 12.0}) {
      expect_values_near(sorted(eigs_rank4_mix_closed(rank4_stats(r), w)),
                         wootters_lambdas(structured_rank4_density(r, w)), 1e-8);
    }
  }
}

TEST(Ppt, Examples) {
  EXPECT_TRUE(is_separable_ppt(max_mixed()));
  const auto bell = density_of_pure(testing::bell_phi_plus());
  EXPECT_FALSE(is_separable_ppt(bell));
  EXPECT_NEAR(ppt_min_eigenvalue(bell), -0.5, 1e-15);
  const auto boundary = DensityMatrix::from_matrix(testing::pure_mix_matrix(kInvSqrt2, kInvSqrt2, 2.0 / 3));
  EXPECT_TRUE(is_separable_ppt(boundary));
  EXPECT_NEAR(ppt_min_eigenvalue(boundary), 0.0, 1e-15);
}

TEST(Ppt, PartialTransposeIsInvolutionAndSwapsBlocks) {
  std::mt19937_64 rng(3);
  const auto m = testing::random_hermitian<4>(rng);
  EXPECT_EQ(partial_transpose(partial_transpose(m)), m);
  const auto pt = partial_transpose(m);
  EXPECT_EQ(pt(0, 1), m(1, 0));
  EXPECT_EQ(pt(0, 3), m(1, 2));
  EXPECT_EQ(pt(2, 3), m(3, 2));
  EXPECT_EQ(pt(0, 2), m(0, 2));
}

TEST(Ppt, AgreesWithConcurrenceOutsideBoundaryBand) {
  int entangled = 0, separable = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto rho = random_density(derive_seed(seed, 28, 0), 1 + static_cast<int>(seed % 6));
    const double c = concurrence(rho).value;
    if (c > 0.0 && c < 1e-9) continue;
    EXPECT_EQ(c == 0.0, is_separable_ppt(rho)) << "seed " << seed << " C = " << c;
    (c == 0.0 ? separable : entangled)++;
  }
  EXPECT_GT(entangled, 100);
  EXPECT_GT(separable, 100);
}

TEST(LocalUnitaries, LeaveConcurrenceInvariant) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto rho = density_of_pure(random_pure(derive_seed(seed, 29, 0)));
    const auto rotated =
        apply_local_unitaries(rho, random_unitary2(derive_seed(seed, 29, 1)), random_unitary2(derive_seed(seed, 29, 2)));
    EXPECT_NEAR(concurrence(rho).value, concurrence(rotated).value, 1e-9);
  }
}

}  // namespace
}  // namespace mixent
