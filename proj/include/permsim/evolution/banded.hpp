#pragma once

#include "permsim/core/types.hpp"

#include <vector>

/// Eigensystems of real symmetric banded matrices kept as Givens rotations.
///
/// The band is reduced to tridiagonal form by adjacent-plane rotations with
/// bulge chasing, then diagonalized by implicit-shift QL. Every rotation is
/// recorded, so W with A = W^T diag(lambda) W is available as a product of
/// O(d^2) plane rotations and can be applied to a vector in O(d^2) time
/// without ever forming the d x d eigenvector matrix.
namespace permsim::evolution {

/// Plane rotation on coordinates (index, index + 1):
/// x_p' = c x_p + s x_{p+1},  x_{p+1}' = -s x_p + c x_{p+1}.
struct Rotation {
    int    index;
    double c;
    double s;
};

/// Lower band of a real symmetric matrix: entry (i, j), 0 <= i - j <= b, at
/// lower[(i - j) + (b + 1) j].
struct SymmetricBand {
    int                 d{};
    int                 b{};
    std::vector<double> lower;

    SymmetricBand() = default;
    SymmetricBand(int dim, int bandwidth);

    /// Reads the band of a dense symmetric matrix; entries outside it are ignored.
    static SymmetricBand from_dense(const MatrixR &a, int bandwidth);

    [[nodiscard]] double at(int i, int j) const;
    double &lower_at(int i, int j) { return lower[static_cast<std::size_t>((i - j) + (b + 1) * j)]; }
    [[nodiscard]] MatrixR dense() const;

    /// this += alpha * other (other.b <= b, same d).
    void axpy(double alpha, const SymmetricBand &other);
};

class BandedEigensystem {
  public:
    BandedEigensystem() = default;
    explicit BandedEigensystem(const SymmetricBand &a) { compute(a); }

    /// Recomputes in place; buffers are reused across calls. Throws
    /// NumericalError if QL does not converge.
    void compute(const SymmetricBand &a);

    /// Eigenvalues in the order defined by W (not sorted).
    [[nodiscard]] const VectorR &eigenvalues() const { return lambda_; }
    [[nodiscard]] int dim() const { return static_cast<int>(lambda_.size()); }
    [[nodiscard]] std::size_t rotation_count() const { return rotations_.size(); }

    /// x <- W x (components in the eigenbasis).
    void forward(VectorC &x) const;
    /// y <- W^T y.
    void backward(VectorC &y) const;
    /// psi <- exp(-i t A) psi.
    void propagate(VectorC &psi, double t) const;

    /// Columns are eigenvectors, matching eigenvalues().
    [[nodiscard]] MatrixR eigenvectors() const;

  private:
    VectorR               lambda_;
    std::vector<Rotation> rotations_;
    std::vector<double>   work_band_;
    std::vector<double>   off_;
};

} // namespace permsim::evolution
