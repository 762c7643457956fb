#pragma once

// Small dense complex linear algebra on fixed dimensions 2 and 4.
//
// Matrices are stored row-major. Two-qubit operators use the computational
// basis |up,up>, |up,down>, |down,up>, |down,down> at indices 0..3, i.e. the
// first qubit is the most significant bit of the index.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace mixent {

using Complex = std::complex<double>;

/// Absolute Hermiticity tolerance, max |h - h^dagger|.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues in [-kClampTol, 0) are roundoff and are clamped to zero.
inline constexpr double kClampTol = 1e-10;
/// Eigenvalues below -kRejectTol (or imaginary parts above it) are contract
/// violations rather than roundoff.
inline constexpr double kRejectTol = 1e-8;

template <std::size_t N>
struct SquareMatrix {
  static constexpr std::size_t dim = N;

  std::array<Complex, N * N> entries{};

  constexpr Complex& operator()(std::size_t row, std::size_t col) { return entries[row * N + col]; }
  constexpr const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries[row * N + col];
  }

  static constexpr SquareMatrix zero() { return {}; }

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr SquareMatrix diagonal(const std::array<double, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  SquareMatrix& operator+=(const SquareMatrix& rhs) {
    for (std::size_t i = 0; i < N * N; ++i) entries[i] += rhs.entries[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& rhs) {
    for (std::size_t i = 0; i < N * N; ++i) entries[i] -= rhs.entries[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& e : entries) e *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs += rhs; }
  friend SquareMatrix operator-(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs -= rhs; }
  friend SquareMatrix operator*(SquareMatrix m, Complex s) { return m *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix m) { return m *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using ComplexMat2 = SquareMatrix<2>;
using ComplexMat4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> adjoint(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

/// Entrywise complex conjugate (not the adjoint).
template <std::size_t N>
SquareMatrix<N> conjugate(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.entries[i] = std::conj(m.entries[i]);
  return out;
}

template <std::size_t N>
Complex trace(const SquareMatrix<N>& m) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <std::size_t N>
double max_abs(const SquareMatrix<N>& m) {
  double best = 0.0;
  for (const auto& e : m.entries) best = std::max(best, std::abs(e));
  return best;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) best = std::max(best, std::abs(a.entries[i] - b.entries[i]));
  return best;
}

/// max |m - m^dagger| over all entries.
template <std::size_t N>
double hermitian_deviation(const SquareMatrix<N>& m) {
  return max_abs_diff(m, adjoint(m));
}

template <std::size_t N>
bool is_finite(const SquareMatrix<N>& m) {
  return std::all_of(m.entries.begin(), m.entries.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

template <std::size_t N>
double frobenius_norm(const SquareMatrix<N>& m) {
  double s = 0.0;
  for (const auto& e : m.entries) s += std::norm(e);
  return std::sqrt(s);
}

/// Tensor product a (x) b; the index of a is the most significant.
ComplexMat4 kron(const ComplexMat2& a, const ComplexMat2& b);

ComplexMat2 pauli_x();
ComplexMat2 pauli_y();
ComplexMat2 pauli_z();

/// sigma_y (x) sigma_y, the two-qubit spin-flip operator.
const ComplexMat4& spin_flip_operator();

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are descending and
/// column k of `vectors` is the unit eigenvector of `values[k]`.
template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};
  SquareMatrix<N> vectors;
};

/// Cyclic complex Jacobi. Throws NotHermitian when max |h - h^dagger| exceeds
/// kHermitianTol, NonFinite on NaN/Inf input.
template <std::size_t N>
HermitianEigen<N> eig_hermitian_decompose(const SquareMatrix<N>& h);

/// Real eigenvalues of a Hermitian matrix, descending.
template <std::size_t N>
std::array<double, N> eig_hermitian(const SquareMatrix<N>& h) {
  return eig_hermitian_decompose(h).values;
}

/// Singular values, descending, by one-sided (Hestenes) Jacobi. Small
/// singular values come out with absolute error ~ eps * max singular value,
/// unlike the square roots of eigenvalues of m^dagger m.
template <std::size_t N>
std::array<double, N> singular_values(const SquareMatrix<N>& m);

/// Eigenvalues of the non-Hermitian product rho * rho_tilde, which are the
/// squared Wootters lambdas. Uses a general complex eigensolver. Values in
/// [-kRejectTol, 0) are clamped to 0; throws SpectrumNotReal if any
/// eigenvalue has |imag| > kRejectTol or real part < -kRejectTol.
std::array<double, 4> eig_rho_rhotilde(const ComplexMat4& m);

/// Hermitian positive semidefinite square root. Eigenvalues down to
/// -kRejectTol are clamped to zero; below that throws NotPSD.
ComplexMat4 psd_sqrt(const ComplexMat4& h);

extern template HermitianEigen<2> eig_hermitian_decompose<2>(const SquareMatrix<2>&);
extern template HermitianEigen<4> eig_hermitian_decompose<4>(const SquareMatrix<4>&);
extern template std::array<double, 2> singular_values<2>(const SquareMatrix<2>&);
extern template std::array<double, 4> singular_values<4>(const SquareMatrix<4>&);

}  // namespace mixent
