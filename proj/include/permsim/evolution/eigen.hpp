#pragma once

#include "permsim/core/types.hpp"
#include "permsim/ops/block_operator.hpp"

namespace permsim::evolution {

/// Block = Q diag(lambda) Q^dagger with lambda ascending.
struct EigenFactorization {
    schur::IrrepLabel irrep;
    MatrixC           Q;
    VectorR           lambda;
};

enum class EigenMethod {
    Auto,            ///< real banded blocks via rotations, everything else dense
    Dense,           ///< Eigen's self-adjoint solver on the full block
    BandedRotations, ///< requires a real block; bandwidth taken from the entries
};

/// Hermiticity tolerance applied before factorizing.
inline constexpr double kHermitianTolerance = 1e-10;

/// Throws NumericalError for non-Hermitian input or solver failure.
EigenFactorization eigendecompose(const ops::BlockMatrix &block, EigenMethod method = EigenMethod::Auto);

/// exp(-i t block) = Q exp(-i t Lambda) Q^dagger.
ops::BlockMatrix unitary_block(const EigenFactorization &fact, double t);

/// Largest |entry| of Q diag(lambda) Q^dagger - block.
double reconstruction_error(const EigenFactorization &fact, const ops::BlockMatrix &block);

} // namespace permsim::evolution
