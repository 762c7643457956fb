#include "mixent/matcore.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>
#include <sstream>

#include "mixent/error.hpp"

namespace mixent {

namespace {

constexpr int kMaxSweeps = 60;

// Unitary 2x2 block that diagonalizes [[a, b], [conj(b), d]] with b != 0:
// G = diag(1, conj(b)/|b|) * [[c, s], [-s, c]]. Columns p and q of a matrix X
// become X*G.
struct Rotation {
  Complex pp, pq, qp, qq;
};

Rotation jacobi_rotation(double a, Complex b, double d) {
  const double mag = std::abs(b);
  const Complex phase = std::conj(b) / mag;
  const double theta = (d - a) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * phase, c * phase};
}

template <std::size_t N>
void rotate_columns(SquareMatrix<N>& x, std::size_t p, std::size_t q, const Rotation& g) {
  for (std::size_t k = 0; k < N; ++k) {
    const Complex xp = x(k, p);
    const Complex xq = x(k, q);
    x(k, p) = xp * g.pp + xq * g.qp;
    x(k, q) = xp * g.pq + xq * g.qq;
  }
}

template <std::size_t N>
void rotate_rows_adjoint(SquareMatrix<N>& x, std::size_t p, std::size_t q, const Rotation& g) {
  for (std::size_t k = 0; k < N; ++k) {
    const Complex xp = x(p, k);
    const Complex xq = x(q, k);
    x(p, k) = std::conj(g.pp) * xp + std::conj(g.qp) * xq;
    x(q, k) = std::conj(g.pq) * xp + std::conj(g.qq) * xq;
  }
}

std::string describe(double value) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << value;
  return os.str();
}

}  // namespace

ComplexMat4 kron(const ComplexMat2& a, const ComplexMat2& b) {
  ComplexMat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMat2 pauli_x() {
  ComplexMat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMat2 pauli_y() {
  ComplexMat2 m;
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

ComplexMat2 pauli_z() {
  ComplexMat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

const ComplexMat4& spin_flip_operator() {
  static const ComplexMat4 yy = kron(pauli_y(), pauli_y());
  return yy;
}

template <std::size_t N>
HermitianEigen<N> eig_hermitian_decompose(const SquareMatrix<N>& h) {
  if (!is_finite(h)) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  const double dev = hermitian_deviation(h);
  if (dev > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian, "max |h - h^dagger| = " + describe(dev) + " exceeds 1e-10");
  }

  // Work on the exactly Hermitian part.
  SquareMatrix<N> a = (h + adjoint(h)) * Complex(0.5);
  SquareMatrix<N> v = SquareMatrix<N>::identity();
  const double scale = frobenius_norm(a);
  const double floor = 1e-20 * scale;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const Complex b = a(p, q);
        const double mag = std::abs(b);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mag == 0.0 || mag <= floor || mag <= 1e-17 * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Rotation g = jacobi_rotation(app, b, aqq);
        rotate_columns(a, p, q, g);
        rotate_rows_adjoint(a, p, q, g);
        rotate_columns(v, p, q, g);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEigen<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

template <std::size_t N>
std::array<double, N> singular_values(const SquareMatrix<N>& m) {
  if (!is_finite(m)) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  SquareMatrix<N> x = m;

  auto column_dot = [&x](std::size_t p, std::size_t q) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += std::conj(x(k, p)) * x(k, q);
    return s;
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const Complex gamma = column_dot(p, q);
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotate_columns(x, p, q, jacobi_rotation(alpha, gamma, beta));
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::array<double, N> sv{};
  for (std::size_t k = 0; k < N; ++k) sv[k] = std::sqrt(column_dot(k, k).real());
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::array<double, 4> eig_rho_rhotilde(const ComplexMat4& m) {
  if (!is_finite(m)) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
  Eigen::Matrix4cd em;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(em, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::SpectrumNotReal, "general eigensolver did not converge");
  }

  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    const Complex ev = solver.eigenvalues()(k);
    if (std::abs(ev.imag()) > kRejectTol || ev.real() < -kRejectTol) {
      throw Error(ErrorCode::SpectrumNotReal, "eigenvalue (" + describe(ev.real()) + ", " +
                                                  describe(ev.imag()) + ") of rho*rho_tilde");
    }
    out[static_cast<std::size_t>(k)] = std::max(ev.real(), 0.0);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ComplexMat4 psd_sqrt(const ComplexMat4& h) {
  const auto eig = eig_hermitian_decompose(h);
  ComplexMat4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    const double mu = eig.values[k];
    if (mu < -kRejectTol) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + describe(mu) + " below -1e-8");
    }
    const double root = std::sqrt(std::max(mu, 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        out(i, j) += root * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

template HermitianEigen<2> eig_hermitian_decompose<2>(const SquareMatrix<2>&);
template HermitianEigen<4> eig_hermitian_decompose<4>(const SquareMatrix<4>&);
template std::array<double, 2> singular_values<2>(const SquareMatrix<2>&);
template std::array<double, 4> singular_values<4>(const SquareMatrix<4>&);

}  // namespace mixent
