#pragma once

#include "permsim/core/types.hpp"
#include "permsim/evolution/eigen.hpp"
#include "permsim/evolution/state.hpp"
#include "permsim/ops/block_operator.hpp"
#include "permsim/schur/irreps.hpp"
#include "permsim/shadows/philox.hpp"

#include <Eigen/LU>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

/// Permutation-invariant classical shadows, simulated classically.
///
/// Deep protocol: measure the irrep label, apply a Haar-random unitary to the
/// d-dimensional register and measure it. Symmetrized protocol: rotate every
/// qubit by the same Haar-random W in SU(2), measure the Hamming weight and
/// invert the measurement channel in the orthonormal symmetrized Pauli basis
/// B_k = S_k / sqrt(2^n N_k), where S_k sums the N_k distinct strings with
/// Pauli counts k.
namespace permsim::shadows {

/// W = exp(-i t3 Z/2) exp(-i t2 Y/2) exp(-i t1 Z/2).
struct EulerAngles {
    double theta1{};
    double theta2{};
    double theta3{};
};

/// theta1, theta3 uniform on [0, 2 pi); theta2 = arccos(1 - 2u).
EulerAngles sample_euler(Philox4x32 &rng);

Eigen::Matrix2cd single_qubit_unitary(const EulerAngles &angles);

/// Unit vector n with W^dagger Z W = n_x X + n_y Y + n_z Z.
std::array<double, 3> rotated_axis(const EulerAngles &angles);

/// Per-irrep W^(x)n, reused across snapshots.
class RotatedMeasurement {
  public:
    explicit RotatedMeasurement(int n);
    [[nodiscard]] int n() const { return n_; }
    /// Block of W^(x)n on irrep m.
    [[nodiscard]] MatrixC rotation_block(int m, const EulerAngles &angles) const;
    /// p(h) = <Pi_h> after applying W^(x)n. Throws NumericalError on
    /// probabilities below -1e-10 or a total off by more than 1e-10.
    [[nodiscard]] VectorR hamming_distribution(const evolution::SchurState &state, const EulerAngles &angles) const;

  private:
    int                                        n_;
    std::vector<evolution::EigenFactorization> spin_y_; ///< sum_i Y_i per irrep
};

VectorR rotated_hamming_distribution(const evolution::SchurState &state, const EulerAngles &angles);

/// a(h, m) = sum_l C(m, l) C(n - m, h - l) (-1)^l, exact.
schur::BigInt a_coeff(int h, int m, int n);

/// alpha(h, m) = tr(B^m Pi_h) = 2^(-n/2) C(n, m)^(1/2) a(h, m), B^m the basis
/// element with m Z's.
double alpha_coeff(int h, int m, int n);

/// Closed-form entry c(k, k') of the symmetrized channel in the basis B_k.
double channel_entry(int n, const schur::WeightVector &k, const schur::WeightVector &kp);

/// Parity class 4 (k_X mod 2) + 2 (k_Y mod 2) + (k_Z mod 2).
int parity_class(const schur::WeightVector &k);

inline constexpr int kMaxChannelQubits = 36;

/// The channel matrix over all weight vectors with |k| <= n, ordered as
/// schur::enumerate_weight_vectors(n, n). Stored and LU-factorized per parity
/// block; entries across blocks vanish.
class ChannelMatrix {
  public:
    /// Throws ResourceGuard above kMaxChannelQubits and NumericalError when a
    /// parity block is numerically singular.
    explicit ChannelMatrix(int n);

    struct ParityBlock {
        int                          parity{};
        std::vector<std::size_t>     indices;
        MatrixR                      matrix;
        Eigen::PartialPivLU<MatrixR> lu;
    };

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return basis_.size(); }
    [[nodiscard]] const std::vector<schur::WeightVector> &basis() const { return basis_; }
    [[nodiscard]] const std::vector<ParityBlock> &blocks() const { return blocks_; }
    [[nodiscard]] double entry(std::size_t i, std::size_t j) const;
    /// Full matrix, for inspection and tests.
    [[nodiscard]] MatrixR dense() const;
    [[nodiscard]] VectorR apply(const VectorR &x) const;
    /// C^-1 rhs via the block factorizations.
    [[nodiscard]] VectorR solve(const VectorR &rhs) const;

  private:
    int                              n_;
    std::vector<schur::WeightVector> basis_;
    std::vector<int>                 block_of_;
    std::vector<std::size_t>         slot_of_;
    std::vector<ParityBlock>         blocks_;
};

/// tr(B_k O) for every k in the channel ordering, from Algorithm 1 blocks.
/// Throws NumericalError when O is not Hermitian.
VectorR observable_coordinates(const ops::BlockOperator &obs);

struct SymmetrizedSnapshot {
    std::uint64_t seed{};  ///< run seed
    std::uint64_t index{}; ///< substream Philox4x32(seed, index)
    EulerAngles   angles;
    int           hamming{};
};

/// tr(B_k W^dagger(x)n Pi_h W(x)n) for every k in the channel ordering.
VectorR measurement_vector(int n, const EulerAngles &angles, int hamming);

/// Per-snapshot estimate <<v| C^-1 |O>> with C^-1 |O>> solved once.
class SymmetrizedEstimator {
  public:
    SymmetrizedEstimator(const ChannelMatrix &channel, const ops::BlockOperator &obs);
    [[nodiscard]] double operator()(const SymmetrizedSnapshot &snapshot) const;
    [[nodiscard]] const VectorR &weights() const { return weights_; }

  private:
    int                              n_;
    std::vector<schur::WeightVector> basis_;
    VectorR                          weights_;
    std::vector<std::vector<double>> a_table_; ///< a(h, k) for h, k in 0..n
    std::vector<double>              log_norm_; ///< log sqrt(n!/(2^n k! (n-k)!)) per basis index
};

double estimator_symmetrized(const SymmetrizedSnapshot &snapshot, const ops::BlockOperator &obs, const ChannelMatrix &channel);

/// Fills angles and outcome; seed and index are left to the caller.
SymmetrizedSnapshot symmetrized_sample(const RotatedMeasurement &measurement, const evolution::SchurState &state, Philox4x32 &rng);

struct DeepSnapshot {
    std::uint64_t seed{};
    std::uint64_t index{};
    int           irrep_m{};
    std::uint64_t register_seed{};
    int           outcome{};
};

/// Haar-random d x d unitary determined by the seed.
MatrixC haar_unitary(int d, std::uint64_t seed);

DeepSnapshot deep_pics_sample(const evolution::SchurState &state, Philox4x32 &rng);

/// (d + 1) <q|V O_m V^dagger|q> - tr(O_m).
double estimator_deep(const DeepSnapshot &snapshot, const ops::BlockOperator &obs);

/// Snapshot i uses Philox4x32(seed, i); the output does not depend on threads.
std::vector<SymmetrizedSnapshot> acquire_symmetrized(const evolution::SchurState &state, std::size_t count, std::uint64_t seed, int threads = 1);
std::vector<DeepSnapshot>        acquire_deep(const evolution::SchurState &state, std::size_t count, std::uint64_t seed, int threads = 1);

enum class Aggregation { Mean, MedianOfMeans };

struct Estimate {
    double      value{};
    double      std_error{};
    double      variance{}; ///< sample variance of the individual estimates
    std::size_t count{};
};

/// Mean with standard error s/sqrt(N), or the median of `batches` batch means
/// with standard error sqrt(pi/2) s_batch/sqrt(batches). One batch is the mean.
Estimate aggregate(std::span<const double> estimates, Aggregation strategy = Aggregation::Mean, int batches = 1);

/// 3 (n^2 + 2n + 2) ||O||_inf^2.
double deep_variance_bound(const ops::BlockOperator &obs);

/// (2n + 1) ||O||_F^2.
double symmetrized_variance_bound(const ops::BlockOperator &obs);

using Snapshot = std::variant<SymmetrizedSnapshot, DeepSnapshot>;

/// One record per line:
///   sym  <seed> <index> <theta1> <theta2> <theta3> <hamming>
///   deep <seed> <index> <m> <register_seed> <outcome>
/// Angles use 17 significant digits.
void write_snapshots(std::ostream &out, std::span<const Snapshot> snapshots);
/// Throws InvalidArgument on malformed lines.
std::vector<Snapshot> read_snapshots(std::istream &in);

} // namespace permsim::shadows
