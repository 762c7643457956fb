#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mixent/matcore.hpp"

namespace mixent {

/// Inputs whose norm (or weight sum) is off by at most this much are
/// renormalized silently; anything further off is rejected.
inline constexpr double kRenormalizeSlack = 1e-6;
/// Tolerance of the stored normalization invariants.
inline constexpr double kNormTol = 1e-9;
/// Density-matrix invariants: Hermitian, unit trace, spectrum >= -kDensityTol.
inline constexpr double kDensityTol = 1e-10;

/// Normalized two-qubit vector a|uu> + b|ud> + c|du> + d|dd>.
class PureState {
 public:
  /// Throws NotNormalized when | |psi|^2 - 1 | > kRenormalizeSlack.
  static PureState from_amplitudes(const std::array<Complex, 4>& amplitudes);
  /// Computational basis vector |index>, index in 0..3.
  static PureState basis(std::size_t index);

  const std::array<Complex, 4>& amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  /// Amplitudes reshaped as [[a, b], [c, d]]: row = first qubit.
  ComplexMat2 amplitude_matrix() const;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  explicit PureState(const std::array<Complex, 4>& amps) : amps_(amps) {}
  std::array<Complex, 4> amps_;
};

/// Schmidt form c1 |alpha1>|beta1> + c2 e^{i chi} |alpha2>|beta2> with
///   |alpha1> = (|u> + alpha|d>) / sqrt(1 + |alpha|^2),
///   |alpha2> = (conj(alpha)|u> - |d>) / sqrt(1 + |alpha|^2),
/// and the same for beta on the second qubit, up to a global phase.
///
/// An empty alpha (beta) is the |alpha1> = |d> limit. When c1 == c2 the local
/// bases are not unique; the singular vectors of the amplitude matrix that the
/// decomposition happens to produce are reported.
struct SchmidtData {
  double c1 = 1.0;
  double c2 = 0.0;
  double chi = 0.0;
  std::optional<Complex> alpha;
  std::optional<Complex> beta;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (all within
  /// kDensityTol); throws NotDensityMatrix (or NonFinite) otherwise. The
  /// stored matrix is the exactly Hermitian part of the input.
  static DensityMatrix from_matrix(const ComplexMat4& m);

  const ComplexMat4& matrix() const { return mat_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

 private:
  explicit DensityMatrix(const ComplexMat4& m) : mat_(m) {}
  ComplexMat4 mat_;
};

struct EnsembleMember {
  double weight = 0.0;
  PureState state;
};

class Ensemble {
 public:
  /// Each weight in (0, 1]; the sum is renormalized within kRenormalizeSlack
  /// and rejected with WeightsInvalid beyond it.
  static Ensemble from_members(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }

 private:
  explicit Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {}
  std::vector<EnsembleMember> members_;
};

/// Two-dimensional subspace carrying a structured mixed state.
enum class Subspace {
  Parallel,      ///< span{|uu>, |dd>}
  Antiparallel,  ///< span{|ud>, |du>}
};

/// One pure component c1|first> + c2 e^{i phase}|second> of a structured
/// state, where (first, second) is (|uu>, |dd>) or (|ud>, |du>).
struct SubspaceMember {
  double weight = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;
  double phase = 0.0;

  friend bool operator==(const SubspaceMember&, const SubspaceMember&) = default;
};

/// Mixture of pure states living in one two-dimensional subspace. Weights need
/// not sum to one when the family is a part of a StructuredRank4.
class StructuredRank2 {
 public:
  /// Validates each member: weight in (0, 1], c1, c2 >= 0 and
  /// c1^2 + c2^2 = 1 (renormalized within kRenormalizeSlack).
  static StructuredRank2 make(Subspace subspace, std::vector<SubspaceMember> members);
  /// As make(), and additionally requires total weight 1 (renormalized within
  /// kRenormalizeSlack, WeightsInvalid beyond).
  static StructuredRank2 make_standalone(Subspace subspace, std::vector<SubspaceMember> members);

  Subspace subspace() const { return subspace_; }
  const std::vector<SubspaceMember>& members() const { return members_; }
  double total_weight() const;

  /// The members as computational-basis pure states.
  std::vector<EnsembleMember> expand() const;

 private:
  StructuredRank2(Subspace s, std::vector<SubspaceMember> m) : subspace_(s), members_(std::move(m)) {}
  Subspace subspace_;
  std::vector<SubspaceMember> members_;
};

/// Mixture of a parallel and an antiparallel structured part. Either part may
/// be empty, which covers rank-2 and rank-3 special cases.
class StructuredRank4 {
 public:
  /// Requires the subspace tags to match their slots and the combined weight
  /// to be 1 (renormalized within kRenormalizeSlack).
  static StructuredRank4 make(StructuredRank2 parallel, StructuredRank2 antiparallel);

  const StructuredRank2& parallel() const { return parallel_; }
  const StructuredRank2& antiparallel() const { return antiparallel_; }

 private:
  StructuredRank4(StructuredRank2 p, StructuredRank2 a) : parallel_(std::move(p)), antiparallel_(std::move(a)) {}
  StructuredRank2 parallel_;
  StructuredRank2 antiparallel_;
};

/// Summary statistics of a StructuredRank4 that fully determine the Wootters
/// lambdas along its mixing path.
struct RankFourStats {
  /// sqrt(sum_i p_i c1_i^2 * sum_j p_j c2_j^2)
  double parallel_population = 0.0;
  /// Same with the antiparallel weights and coefficients.
  double antiparallel_population = 0.0;
  /// |sum_i p_i c1_i c2_i e^{i chi_i}|
  double parallel_coherence = 0.0;
  double antiparallel_coherence = 0.0;
  /// Total weight of each part.
  double parallel_weight = 0.0;
  double antiparallel_weight = 0.0;
};

DensityMatrix density_of_pure(const PureState& s);
DensityMatrix density_of_ensemble(const Ensemble& e);

/// I/4.
DensityMatrix max_mixed();

/// (1 - omega) rho0 + omega I/4. Throws OmegaOutOfRange unless 0 <= omega <= 1.
DensityMatrix mix_with_max_mixed(const DensityMatrix& rho0, double omega);

/// c1 >= c2 are the singular values of amplitude_matrix(); c1 * c2 = |ad - bc|.
SchmidtData schmidt_coefficients(const PureState& s);

/// Rebuilds the state described by SchmidtData (up to a global phase).
PureState from_schmidt(const SchmidtData& data);

/// Mixing path of a structured rank-2 state assembled directly from the
/// closed matrix form. Requires total weight 1 (WeightsInvalid otherwise).
DensityMatrix structured_rank2_density(const StructuredRank2& r, double omega);
DensityMatrix structured_rank4_density(const StructuredRank4& r, double omega);

RankFourStats rank4_stats(const StructuredRank4& r);

/// Haar-distributed pure state from four standard complex Gaussians.
PureState random_pure(std::uint64_t seed);

/// Mixture of k in [1, 6] Haar-random pure states with weights uniform on the
/// simplex (sorted-uniform spacings). Throws ParamOutOfRange for other k.
DensityMatrix random_density(std::uint64_t seed, int k);

/// Haar-random single-qubit unitary.
ComplexMat2 random_unitary2(std::uint64_t seed);

/// Random structured family on `subspace` with 1..max_members members,
/// Schmidt angle uniform in [0, pi/2], phases uniform in [0, 2 pi) and
/// weights uniform on the simplex scaled to total_weight.
StructuredRank2 random_structured_rank2(std::uint64_t seed, Subspace subspace, double total_weight,
                                        int max_members = 3);

/// Random parallel weight P in (0, 1) and random parts on both subspaces.
StructuredRank4 random_structured_rank4(std::uint64_t seed, int max_members = 3);

/// Independent sub-seed for stream `stream`, item `index` of a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

}  // namespace mixent
