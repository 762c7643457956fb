#include "mixent/states.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include "mixent/error.hpp"

namespace mixent {

namespace {

std::string fmt_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Basis indices of the two vectors spanning a structured subspace.
std::pair<std::size_t, std::size_t> subspace_indices(Subspace s) {
  return s == Subspace::Parallel ? std::pair<std::size_t, std::size_t>{0, 3}
                                 : std::pair<std::size_t, std::size_t>{1, 2};
}

// Adds scale * (sum_i p_i |psi_i><psi_i|) of a structured part to m.
void add_structured_block(ComplexMat4& m, const StructuredRank2& r, double scale) {
  const auto [lo, hi] = subspace_indices(r.subspace());
  for (const auto& mem : r.members()) {
    const double w = scale * mem.weight;
    m(lo, lo) += w * mem.c1 * mem.c1;
    m(hi, hi) += w * mem.c2 * mem.c2;
    const Complex coh = w * mem.c1 * mem.c2 * std::polar(1.0, -mem.phase);
    m(lo, hi) += coh;
    m(hi, lo) += std::conj(coh);
  }
}

void check_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw Error(ErrorCode::OmegaOutOfRange, "omega = " + fmt_value(omega) + " is outside [0, 1]");
  }
}

std::vector<double> simplex_weights(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> cuts(static_cast<std::size_t>(k - 1));
  for (auto& c : cuts) c = uniform(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> w;
  double prev = 0.0;
  for (double c : cuts) {
    w.push_back(c - prev);
    prev = c;
  }
  w.push_back(1.0 - prev);
  return w;
}

std::array<Complex, 4> gaussian_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<Complex, 4> v;
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return v;
}

std::array<Complex, 4> normalized(std::array<Complex, 4> v) {
  double n = 0.0;
  for (const auto& z : v) n += std::norm(z);
  n = std::sqrt(n);
  for (auto& z : v) z /= n;
  return v;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Phase-normalized single-qubit basis parameter: v = e^{i theta} (1, p)/n.
struct LocalFrame {
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::optional<Complex> param;
};

LocalFrame local_frame(const std::array<Complex, 2>& first, const std::array<Complex, 2>& second) {
  LocalFrame f;
  if (std::abs(first[0]) > 1e-14) {
    f.theta1 = std::arg(first[0]);
    f.param = first[1] / first[0];
    // |x2> = (conj(p)|u> - |d>)/n has a real negative |d> component.
    f.theta2 = std::arg(-second[1]);
  } else {
    // |x1> = |d>, |x2> = |u> limit.
    f.theta1 = std::arg(first[1]);
    f.theta2 = std::arg(second[0]);
  }
  return f;
}

std::pair<std::array<Complex, 2>, std::array<Complex, 2>> local_basis(const std::optional<Complex>& p) {
  if (!p) return {{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(0.0)}};
  const double n = std::sqrt(1.0 + std::norm(*p));
  return {{Complex(1.0 / n), *p / n}, {std::conj(*p) / n, Complex(-1.0 / n)}};
}

double wrap_phase(double x) {
  x = std::remainder(x, 2.0 * std::numbers::pi);
  return x <= -std::numbers::pi ? x + 2.0 * std::numbers::pi : x;
}

}  // namespace

// ---------------------------------------------------------------------------

PureState PureState::from_amplitudes(const std::array<Complex, 4>& amplitudes) {
  double n2 = 0.0;
  for (const auto& z : amplitudes) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::NonFinite, "pure-state amplitude is NaN or Inf");
    }
    n2 += std::norm(z);
  }
  if (std::abs(n2 - 1.0) > kRenormalizeSlack) {
    throw Error(ErrorCode::NotNormalized,
                "|a|^2 + |b|^2 + |c|^2 + |d|^2 = " + fmt_value(n2) + " differs from 1 by more than 1e-6");
  }
  std::array<Complex, 4> amps = amplitudes;
  const double n = std::sqrt(n2);
  for (auto& z : amps) z /= n;
  return PureState(amps);
}

PureState PureState::basis(std::size_t index) {
  if (index > 3) throw Error(ErrorCode::ParamOutOfRange, "basis index must be in 0..3");
  std::array<Complex, 4> amps{};
  amps[index] = 1.0;
  return PureState(amps);
}

ComplexMat2 PureState::amplitude_matrix() const {
  ComplexMat2 m;
  m(0, 0) = amps_[0];
  m(0, 1) = amps_[1];
  m(1, 0) = amps_[2];
  m(1, 1) = amps_[3];
  return m;
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMat4& m) {
  if (!is_finite(m)) throw Error(ErrorCode::NonFinite, "density matrix has NaN or Inf entries");
  const double dev = hermitian_deviation(m);
  if (dev > kDensityTol) {
    throw Error(ErrorCode::NotDensityMatrix, "not Hermitian: max |rho - rho^dagger| = " + fmt_value(dev));
  }
  const Complex tr = trace(m);
  if (std::abs(tr - 1.0) > kDensityTol) {
    throw Error(ErrorCode::NotDensityMatrix, "trace = " + fmt_value(tr.real()) + " is not 1");
  }
  const ComplexMat4 herm = (m + adjoint(m)) * Complex(0.5);
  const double min_eig = eig_hermitian(herm)[3];
  if (min_eig < -kDensityTol) {
    throw Error(ErrorCode::NotDensityMatrix, "not positive semidefinite: eigenvalue " + fmt_value(min_eig));
  }
  return DensityMatrix(herm);
}

Ensemble Ensemble::from_members(std::vector<EnsembleMember> members) {
  if (members.empty()) throw Error(ErrorCode::WeightsInvalid, "ensemble has no members");
  double total = 0.0;
  for (const auto& m : members) {
    if (!(m.weight > 0.0 && m.weight <= 1.0)) {
      throw Error(ErrorCode::WeightsInvalid, "weight " + fmt_value(m.weight) + " is outside (0, 1]");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kRenormalizeSlack) {
    throw Error(ErrorCode::WeightsInvalid, "weights sum to " + fmt_value(total) + ", not 1");
  }
  for (auto& m : members) m.weight /= total;
  return Ensemble(std::move(members));
}

// ---------------------------------------------------------------------------

StructuredRank2 StructuredRank2::make(Subspace subspace, std::vector<SubspaceMember> members) {
  for (auto& m : members) {
    if (!(m.weight > 0.0 && m.weight <= 1.0)) {
      throw Error(ErrorCode::WeightsInvalid, "weight " + fmt_value(m.weight) + " is outside (0, 1]");
    }
    if (!std::isfinite(m.c1) || !std::isfinite(m.c2) || !std::isfinite(m.phase)) {
      throw Error(ErrorCode::NonFinite, "structured member has NaN or Inf parameters");
    }
    if (m.c1 < 0.0 || m.c2 < 0.0) {
      throw Error(ErrorCode::NotNormalized, "coefficients c1, c2 must be nonnegative");
    }
    const double n2 = m.c1 * m.c1 + m.c2 * m.c2;
    if (std::abs(n2 - 1.0) > kRenormalizeSlack) {
      throw Error(ErrorCode::NotNormalized, "c1^2 + c2^2 = " + fmt_value(n2) + " differs from 1");
    }
    const double n = std::sqrt(n2);
    m.c1 /= n;
    m.c2 /= n;
  }
  return StructuredRank2(subspace, std::move(members));
}

StructuredRank2 StructuredRank2::make_standalone(Subspace subspace, std::vector<SubspaceMember> members) {
  auto r = make(subspace, std::move(members));
  const double total = r.total_weight();
  if (std::abs(total - 1.0) > kRenormalizeSlack) {
    throw Error(ErrorCode::WeightsInvalid, "weights sum to " + fmt_value(total) + ", not 1");
  }
  for (auto& m : r.members_) m.weight /= total;
  return r;
}

double StructuredRank2::total_weight() const {
  double t = 0.0;
  for (const auto& m : members_) t += m.weight;
  return t;
}

std::vector<EnsembleMember> StructuredRank2::expand() const {
  const auto [lo, hi] = subspace_indices(subspace_);
  std::vector<EnsembleMember> out;
  out.reserve(members_.size());
  for (const auto& m : members_) {
    std::array<Complex, 4> amps{};
    amps[lo] = m.c1;
    amps[hi] = m.c2 * std::polar(1.0, m.phase);
    out.push_back({m.weight, PureState::from_amplitudes(amps)});
  }
  return out;
}

StructuredRank4 StructuredRank4::make(StructuredRank2 parallel, StructuredRank2 antiparallel) {
  if (parallel.subspace() != Subspace::Parallel || antiparallel.subspace() != Subspace::Antiparallel) {
    throw Error(ErrorCode::ParamOutOfRange, "rank-4 parts must be (parallel, antiparallel)");
  }
  const double total = parallel.total_weight() + antiparallel.total_weight();
  if (std::abs(total - 1.0) > kRenormalizeSlack) {
    throw Error(ErrorCode::WeightsInvalid, "sum p_i + sum q_i = " + fmt_value(total) + ", not 1");
  }
  for (auto* part : {&parallel, &antiparallel}) {
    auto members = part->members();
    for (auto& m : members) m.weight /= total;
    *part = StructuredRank2::make(part->subspace(), std::move(members));
  }
  return StructuredRank4(std::move(parallel), std::move(antiparallel));
}

// ---------------------------------------------------------------------------

DensityMatrix density_of_pure(const PureState& s) {
  ComplexMat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = s[i] * std::conj(s[j]);
  return DensityMatrix::from_matrix(m);
}

DensityMatrix density_of_ensemble(const Ensemble& e) {
  ComplexMat4 m;
  for (const auto& mem : e.members()) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) += mem.weight * mem.state[i] * std::conj(mem.state[j]);
  }
  return DensityMatrix::from_matrix(m);
}

DensityMatrix max_mixed() {
  return DensityMatrix::from_matrix(ComplexMat4::identity() * Complex(0.25));
}

DensityMatrix mix_with_max_mixed(const DensityMatrix& rho0, double omega) {
  check_omega(omega);
  ComplexMat4 m = rho0.matrix() * Complex(1.0 - omega);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += 0.25 * omega;
  return DensityMatrix::from_matrix(m);
}

SchmidtData schmidt_coefficients(const PureState& s) {
  const ComplexMat2 amp = s.amplitude_matrix();
  const double det = std::abs(amp(0, 0) * amp(1, 1) - amp(0, 1) * amp(1, 0));

  SchmidtData out;
  out.c1 = std::sqrt(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det * det))));
  out.c2 = det / out.c1;

  // Left singular vectors from amp * amp^dagger; the second-qubit factors are
  // w_k = amp^T conj(u_k) / c_k so that psi = sum_k c_k u_k (x) w_k.
  const auto left = eig_hermitian_decompose(amp * adjoint(amp));
  const std::array<Complex, 2> u1{left.vectors(0, 0), left.vectors(1, 0)};
  const std::array<Complex, 2> u2{left.vectors(0, 1), left.vectors(1, 1)};

  auto right_factor = [&amp](const std::array<Complex, 2>& u, double c) {
    return std::array<Complex, 2>{(amp(0, 0) * std::conj(u[0]) + amp(1, 0) * std::conj(u[1])) / c,
                                  (amp(0, 1) * std::conj(u[0]) + amp(1, 1) * std::conj(u[1])) / c};
  };
  const std::array<Complex, 2> w1 = right_factor(u1, out.c1);
  const std::array<Complex, 2> w2 = out.c2 > 1e-12 ? right_factor(u2, out.c2)
                                                   : std::array<Complex, 2>{-std::conj(w1[1]), std::conj(w1[0])};

  const LocalFrame first = local_frame(u1, u2);
  const LocalFrame second = local_frame(w1, w2);
  out.alpha = first.param;
  out.beta = second.param;
  out.chi = wrap_phase(first.theta2 + second.theta2 - first.theta1 - second.theta1);
  return out;
}

PureState from_schmidt(const SchmidtData& data) {
  const auto [a1, a2] = local_basis(data.alpha);
  const auto [b1, b2] = local_basis(data.beta);
  const Complex second = data.c2 * std::polar(1.0, data.chi);
  std::array<Complex, 4> amps{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) amps[2 * i + j] = data.c1 * a1[i] * b1[j] + second * a2[i] * b2[j];
  return PureState::from_amplitudes(amps);
}

DensityMatrix structured_rank2_density(const StructuredRank2& r, double omega) {
  check_omega(omega);
  const double total = r.total_weight();
  if (std::abs(total - 1.0) > kNormTol) {
    throw Error(ErrorCode::WeightsInvalid, "standalone rank-2 weights sum to " + fmt_value(total));
  }
  ComplexMat4 m = ComplexMat4::identity() * Complex(0.25 * omega);
  add_structured_block(m, r, 1.0 - omega);
  return DensityMatrix::from_matrix(m);
}

DensityMatrix structured_rank4_density(const StructuredRank4& r, double omega) {
  check_omega(omega);
  ComplexMat4 m = ComplexMat4::identity() * Complex(0.25 * omega);
  add_structured_block(m, r.parallel(), 1.0 - omega);
  add_structured_block(m, r.antiparallel(), 1.0 - omega);
  return DensityMatrix::from_matrix(m);
}

RankFourStats rank4_stats(const StructuredRank4& r) {
  struct PartStats {
    double population, coherence, weight;
  };
  auto part = [](const StructuredRank2& s) {
    double first = 0.0, second = 0.0, weight = 0.0;
    Complex coherence = 0.0;
    for (const auto& m : s.members()) {
      first += m.weight * m.c1 * m.c1;
      second += m.weight * m.c2 * m.c2;
      weight += m.weight;
      coherence += m.weight * m.c1 * m.c2 * std::polar(1.0, m.phase);
    }
    return PartStats{std::sqrt(first * second), std::abs(coherence), weight};
  };
  const PartStats par = part(r.parallel());
  const PartStats anti = part(r.antiparallel());
  return {par.population, anti.population, par.coherence, anti.coherence, par.weight, anti.weight};
}

// ---------------------------------------------------------------------------

PureState random_pure(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PureState::from_amplitudes(normalized(gaussian_vector(rng)));
}

DensityMatrix random_density(std::uint64_t seed, int k) {
  if (k < 1 || k > 6) throw Error(ErrorCode::ParamOutOfRange, "k must be in [1, 6]");
  std::mt19937_64 rng(seed);
  const auto weights = simplex_weights(rng, k);
  ComplexMat4 m;
  for (int i = 0; i < k; ++i) {
    const auto psi = normalized(gaussian_vector(rng));
    const double w = weights[static_cast<std::size_t>(i)];
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) += w * psi[r] * std::conj(psi[c]);
  }
  return DensityMatrix::from_matrix(m);
}

ComplexMat2 random_unitary2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<Complex, 2> g1, g2;
  for (auto* g : {&g1, &g2}) {
    for (auto& z : *g) {
      const double re = normal(rng);
      const double im = normal(rng);
      z = Complex(re, im);
    }
  }
  // Gram-Schmidt keeps the diagonal of R positive, so the result is Haar.
  const double n1 = std::sqrt(std::norm(g1[0]) + std::norm(g1[1]));
  const std::array<Complex, 2> q1{g1[0] / n1, g1[1] / n1};
  const Complex proj = std::conj(q1[0]) * g2[0] + std::conj(q1[1]) * g2[1];
  std::array<Complex, 2> q2{g2[0] - proj * q1[0], g2[1] - proj * q1[1]};
  const double n2 = std::sqrt(std::norm(q2[0]) + std::norm(q2[1]));
  q2 = {q2[0] / n2, q2[1] / n2};

  ComplexMat2 u;
  u(0, 0) = q1[0];
  u(1, 0) = q1[1];
  u(0, 1) = q2[0];
  u(1, 1) = q2[1];
  return u;
}

StructuredRank2 random_structured_rank2(std::uint64_t seed, Subspace subspace, double total_weight,
                                        int max_members) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, std::max(1, max_members));
  std::uniform_real_distribution<double> angle(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int k = count(rng);
  const auto weights = simplex_weights(rng, k);
  std::vector<SubspaceMember> members;
  for (int i = 0; i < k; ++i) {
    const double w = weights[static_cast<std::size_t>(i)] * total_weight;
    if (w <= 0.0) continue;
    const double theta = angle(rng);
    members.push_back({w, std::cos(theta), std::sin(theta), phase(rng)});
  }
  return StructuredRank2::make(subspace, std::move(members));
}

StructuredRank4 random_structured_rank4(std::uint64_t seed, int max_members) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> split(0.02, 0.98);
  const double p = split(rng);
  return StructuredRank4::make(
      random_structured_rank2(derive_seed(seed, 1, 0), Subspace::Parallel, p, max_members),
      random_structured_rank2(derive_seed(seed, 2, 0), Subspace::Antiparallel, 1.0 - p, max_members));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index);
}

}  // namespace mixent
