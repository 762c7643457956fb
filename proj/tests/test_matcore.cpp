#include <gtest/gtest.h>

#include <random>

#include "mixent/entanglement.hpp"
#include "mixent/error.hpp"
#include "mixent/matcore.hpp"
#include "test_support.hpp"

namespace mixent {
namespace {

using testing::expect_matrix_near;
using testing::expect_values_near;

TEST(Matmul, IdentityAndZero) {
  std::mt19937_64 rng(7);
  const auto m = testing::random_hermitian<4>(rng);
  EXPECT_EQ(ComplexMat4::identity() * m, m);
  EXPECT_EQ(m * ComplexMat4::zero(), ComplexMat4::zero());
}

TEST(Matmul, SpinFlipIsInvolutory) {
  const ComplexMat4& yy = spin_flip_operator();
  expect_matrix_near(yy * yy, ComplexMat4::identity(), 0.0);
}

TEST(Kron, IdentityTensorIdentity) {
  EXPECT_EQ(kron(ComplexMat2::identity(), ComplexMat2::identity()), ComplexMat4::identity());
}

TEST(Kron, SigmaYTensorSigmaYIsAntidiagonal) {
  ComplexMat4 expected;
  expected(0, 3) = -1.0;
  expected(1, 2) = 1.0;
  expected(2, 1) = 1.0;
  expected(3, 0) = -1.0;
  EXPECT_EQ(kron(pauli_y(), pauli_y()), expected);
}

TEST(Kron, SigmaZTensorIdentity) {
  EXPECT_EQ(kron(pauli_z(), ComplexMat2::identity()), ComplexMat4::diagonal({1, 1, -1, -1}));
}

TEST(Kron, BilinearInScalars) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_hermitian<2>(rng);
    const auto b = testing::random_hermitian<2>(rng);
    const Complex s(normal(rng), normal(rng));
    expect_matrix_near(kron(a * s, b), kron(a, b) * s, 1e-14);
    expect_matrix_near(kron(a, b * s), kron(a, b) * s, 1e-14);
  }
}

TEST(EigHermitian, DiagonalIsSortedDescending) {
  expect_values_near(eig_hermitian(ComplexMat4::diagonal({2, 4, 1, 3})), {4, 3, 2, 1}, 1e-15);
}

TEST(EigHermitian, MaxMixed) {
  expect_values_near(eig_hermitian(ComplexMat4::identity() * Complex(0.25)), {0.25, 0.25, 0.25, 0.25}, 1e-15);
}

TEST(EigHermitian, BellProjector) {
  const auto rho = density_of_pure(testing::bell_phi_plus());
  expect_values_near(eig_hermitian(rho.matrix()), {1, 0, 0, 0}, 1e-15);
}

TEST(EigHermitian, RejectsNonHermitian) {
  ComplexMat4 m = ComplexMat4::identity();
  m(0, 1) = 1e-6;
  try {
    eig_hermitian(m);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(EigHermitian, AcceptsDeviationWithinTolerance) {
  ComplexMat4 m = ComplexMat4::identity();
  m(0, 1) = 5e-11;
  EXPECT_NO_THROW(eig_hermitian(m));
}

TEST(EigHermitian, RandomEigenpairsReconstructAndTraceMatches) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = testing::random_hermitian<4>(rng);
    const auto eig = eig_hermitian_decompose(h);
    const double norm = frobenius_norm(h);
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      sum += eig.values[k];
      if (k > 0) EXPECT_GE(eig.values[k - 1], eig.values[k]);
      double residual = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        Complex hv = 0.0;
        for (std::size_t j = 0; j < 4; ++j) hv += h(i, j) * eig.vectors(j, k);
        residual += std::norm(hv - eig.values[k] * eig.vectors(i, k));
      }
      EXPECT_LE(std::sqrt(residual), 1e-10 * norm);
    }
    EXPECT_NEAR(sum, trace(h).real(), 1e-10);
    expect_matrix_near(adjoint(eig.vectors) * eig.vectors, ComplexMat4::identity(), 1e-12);
  }
}

TEST(EigHermitian, TwoByTwoMatchesClosedForm) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = testing::random_hermitian<2>(rng);
    const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double half = std::hypot(0.5 * (h(0, 0).real() - h(1, 1).real()), std::abs(h(0, 1)));
    expect_values_near(eig_hermitian(h), {mean + half, mean - half}, 1e-13);
  }
}

TEST(SingularValues, DiagonalWithPhasesAndUnitaryMixing) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMat4 u = kron(random_unitary2(rng()), random_unitary2(rng()));
    const ComplexMat4 v = kron(random_unitary2(rng()), random_unitary2(rng()));
    ComplexMat4 d = ComplexMat4::diagonal({0.9, 0.0, 0.3, 1e-9});
    d(0, 0) *= std::polar(1.0, 0.7);
    d(2, 2) *= std::polar(1.0, -2.1);
    // Forming u * d * v already perturbs entries by a few ulps of 0.9.
    expect_values_near(singular_values(u * d * v), {0.9, 0.3, 1e-9, 0.0}, 1e-14);
  }
}

TEST(EigRhoRhoTilde, MaxMixed) {
  const ComplexMat4 rho = ComplexMat4::identity() * Complex(0.25);
  expect_values_near(eig_rho_rhotilde(rho * rho), {1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16}, 1e-15);
}

TEST(EigRhoRhoTilde, BellState) {
  const auto rho = density_of_pure(testing::bell_phi_plus());
  expect_values_near(eig_rho_rhotilde(rho.matrix() * spin_flip(rho)), {1, 0, 0, 0}, 1e-14);
}

TEST(EigRhoRhoTilde, PureMixAtBoundary) {
  // Squares of (1/2, 1/6, 1/6, 1/6); cross-checked with numpy.linalg.eigvals
  // in tests/oracles/derive_expected.py.
  const auto rho = DensityMatrix::from_matrix(testing::pure_mix_matrix(testing::kInvSqrt2, testing::kInvSqrt2, 2.0 / 3));
  expect_values_near(eig_rho_rhotilde(rho.matrix() * spin_flip(rho)), {0.25, 1.0 / 36, 1.0 / 36, 1.0 / 36},
                     1e-14);
}

TEST(EigRhoRhoTilde, RejectsComplexSpectrum) {
  ComplexMat4 m;
  m(0, 1) = -1.0;
  m(1, 0) = 1.0;  // eigenvalues +-i
  try {
    eig_rho_rhotilde(m);
    FAIL() << "expected SpectrumNotReal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpectrumNotReal);
  }
}

TEST(EigRhoRhoTilde, RejectsNegativeSpectrumButClampsRoundoff) {
  EXPECT_THROW(eig_rho_rhotilde(ComplexMat4::diagonal({1, 0, 0, -1e-6})), Error);
  expect_values_near(eig_rho_rhotilde(ComplexMat4::diagonal({1, 0, 0, -1e-11})), {1, 0, 0, 0}, 0.0);
}

TEST(PsdSqrt, KnownRoots) {
  expect_matrix_near(psd_sqrt(ComplexMat4::identity()), ComplexMat4::identity(), 1e-15);
  expect_matrix_near(psd_sqrt(ComplexMat4::diagonal({4, 1, 0, 0})), ComplexMat4::diagonal({2, 1, 0, 0}), 1e-15);
  expect_matrix_near(psd_sqrt(max_mixed().matrix()), ComplexMat4::identity() * Complex(0.5), 1e-15);
}

TEST(PsdSqrt, SquareReproducesInput) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rho = random_density(seed, 1 + static_cast<int>(seed % 6));
    const auto root = psd_sqrt(rho.matrix());
    expect_matrix_near(root * root, rho.matrix(), 1e-9);
    EXPECT_LE(hermitian_deviation(root), 1e-14);
  }
}

TEST(PsdSqrt, RejectsNegativeEigenvalue) {
  try {
    psd_sqrt(ComplexMat4::diagonal({1, 0.5, 0, -1e-6}));
    FAIL() << "expected NotPSD";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPSD);
  }
  EXPECT_NO_THROW(psd_sqrt(ComplexMat4::diagonal({1, 0.5, 0, -1e-11})));
}

// The non-Hermitian product spectrum equals the squared spectrum of
// R = sqrt(sqrt(rho) rho_tilde sqrt(rho)).
TEST(SpectralRoutes, ProductSpectrumMatchesSquaredHermitianRoot) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto rho = random_density(derive_seed(seed, 17, 0), 1 + static_cast<int>(seed % 6));
    const auto product = eig_rho_rhotilde(rho.matrix() * spin_flip(rho));
    const auto root = psd_sqrt(rho.matrix());
    const ComplexMat4 inner = root * spin_flip(rho) * root;
    auto r_values = eig_hermitian(psd_sqrt((inner + adjoint(inner)) * Complex(0.5)));
    for (auto& v : r_values) v = v * v;
    expect_values_near(product, r_values, 1e-8);
  }
}

}  // namespace
}  // namespace mixent
