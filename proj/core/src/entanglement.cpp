#include "mixent/entanglement.hpp"

#include <algorithm>
#include <sstream>

#include "mixent/error.hpp"

namespace mixent {

namespace {

// Eigenvalues of rho below this fraction of the largest are below the
// resolution of double-precision entries and are treated as exact zeros.
constexpr double kRankCutoff = 1e-15;

std::array<double, 4> sorted_descending(std::array<double, 4> v) {
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::array<double, 4> lambdas_from_overlap(const DensityMatrix& rho) {
  const auto eig = eig_hermitian_decompose(rho.matrix());
  const double cutoff = kRankCutoff * std::max(eig.values[0], 0.0);
  ComplexMat4 w;
  for (std::size_t k = 0; k < 4; ++k) {
    const double mu = eig.values[k];
    if (mu <= cutoff) continue;
    const double root = std::sqrt(mu);
    for (std::size_t r = 0; r < 4; ++r) w(r, k) = root * eig.vectors(r, k);
  }
  const ComplexMat4 tau = adjoint(w) * spin_flip_operator() * conjugate(w);
  return singular_values(tau);
}

std::array<double, 4> lambdas_from_product(const DensityMatrix& rho) {
  auto sq = eig_rho_rhotilde(rho.matrix() * spin_flip(rho));
  for (auto& v : sq) v = std::sqrt(v);
  return sq;
}

std::array<double, 4> lambdas_from_root(const DensityMatrix& rho) {
  const ComplexMat4 root = psd_sqrt(rho.matrix());
  ComplexMat4 inner = root * spin_flip(rho) * root;
  inner = (inner + adjoint(inner)) * Complex(0.5);
  auto values = eig_hermitian(psd_sqrt(inner));
  for (auto& v : values) v = std::max(v, 0.0);
  return sorted_descending(values);
}

double binary_entropy_bits(const std::array<double, 2>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

void check_unit_interval(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    std::ostringstream os;
    os << "omega = " << omega << " is outside [0, 1]";
    throw Error(ErrorCode::ParamOutOfRange, os.str());
  }
}

}  // namespace

ComplexMat4 spin_flip(const DensityMatrix& rho) {
  const ComplexMat4& yy = spin_flip_operator();
  return yy * conjugate(rho.matrix()) * yy;
}

std::array<double, 4> wootters_lambdas(const DensityMatrix& rho, LambdaRoute route) {
  switch (route) {
    case LambdaRoute::SpinFlipOverlap: return lambdas_from_overlap(rho);
    case LambdaRoute::ProductSpectrum: return lambdas_from_product(rho);
    case LambdaRoute::HermitianRoot: return lambdas_from_root(rho);
  }
  return lambdas_from_overlap(rho);
}

double concurrence_from_lambdas(std::array<double, 4> lambdas) {
  lambdas = sorted_descending(lambdas);
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

ConcurrenceValue concurrence(const DensityMatrix& rho, LambdaRoute route) {
  ConcurrenceValue out;
  out.lambdas = wootters_lambdas(rho, route);
  out.value = std::min(1.0, concurrence_from_lambdas(out.lambdas));
  return out;
}

double concurrence_pure(const PureState& s) {
  return std::min(1.0, 2.0 * std::abs(s[0] * s[3] - s[1] * s[2]));
}

ComplexMat2 reduced_state(const PureState& s, Subsystem keep) {
  // psi_{ij}: i = first qubit, j = second qubit.
  auto amp = [&s](std::size_t i, std::size_t j) { return s[2 * i + j]; };
  ComplexMat2 out;
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < 2; ++t) {
        sum += keep == Subsystem::First ? amp(x, t) * std::conj(amp(y, t)) : amp(t, x) * std::conj(amp(t, y));
      }
      out(x, y) = sum;
    }
  }
  return out;
}

double reduced_entropy(const PureState& s, Subsystem keep) {
  auto probs = eig_hermitian(reduced_state(s, keep));
  for (auto& p : probs) p = std::clamp(p, 0.0, 1.0);
  return binary_entropy_bits(probs);
}

double entropy_pure(const PureState& s) {
  return reduced_entropy(s, Subsystem::First);
}

double concurrence_rank2_closed(const StructuredRank2& r) {
  const double total = r.total_weight();
  if (std::abs(total - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "standalone rank-2 weights sum to " << total << ", not 1";
    throw Error(ErrorCode::WeightsInvalid, os.str());
  }
  double re = 0.0, im = 0.0;
  for (const auto& m : r.members()) {
    re += m.weight * m.c1 * m.c2 * std::cos(m.phase);
    im += m.weight * m.c1 * m.c2 * std::sin(m.phase);
  }
  return std::min(1.0, 2.0 * std::hypot(re, im));
}

std::array<double, 4> eigs_pure_mix_closed(double c1, double c2, double omega) {
  if (!(c1 >= 0.0 && c2 >= 0.0) || std::abs(c1 * c1 + c2 * c2 - 1.0) > kNormTol) {
    throw Error(ErrorCode::ParamOutOfRange, "Schmidt coefficients must be nonnegative with c1^2 + c2^2 = 1");
  }
  check_unit_interval(omega);
  const double q = 0.25 * omega;
  const double coh = (1.0 - omega) * c1 * c2;
  const double root = std::sqrt(coh * coh + q - 3.0 * q * q);
  return sorted_descending({root + coh, std::max(0.0, root - coh), q, q});
}

std::array<double, 4> eigs_rank4_mix_closed(const RankFourStats& stats, double omega) {
  check_unit_interval(omega);
  const double q = 0.25 * omega;
  const double keep = 1.0 - omega;
  auto pair = [&](double population, double weight, double coherence) {
    const double root = std::sqrt(keep * keep * population * population + q * keep * weight + q * q);
    return std::pair{root + keep * coherence, std::max(0.0, root - keep * coherence)};
  };
  const auto [l1, l2] = pair(stats.parallel_population, stats.parallel_weight, stats.parallel_coherence);
  const auto [l3, l4] =
      pair(stats.antiparallel_population, stats.antiparallel_weight, stats.antiparallel_coherence);
  return {l1, l2, l3, l4};
}

double concurrence_rank4_closed(const RankFourStats& stats, double omega) {
  return concurrence_from_lambdas(eigs_rank4_mix_closed(stats, omega));
}

ComplexMat4 partial_transpose(const ComplexMat4& m) {
  ComplexMat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  return out;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  return eig_hermitian(partial_transpose(rho.matrix()))[3];
}

bool is_separable_ppt(const DensityMatrix& rho) {
  return ppt_min_eigenvalue(rho) >= -kClampTol;
}

DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMat2& u1, const ComplexMat2& u2) {
  const ComplexMat4 u = kron(u1, u2);
  return DensityMatrix::from_matrix(u * rho.matrix() * adjoint(u));
}

}  // namespace mixent
