#pragma once

#include "permsim/core/types.hpp"
#include "permsim/ops/generator.hpp"
#include "permsim/schur/irreps.hpp"

#include <Eigen/Core>

#include <vector>

/// Brute-force reference on the full 2^n space.
///
/// Qubit 1 is the most significant bit of a basis index, so |i_1 ... i_n> has
/// index sum_j i_j 2^(n-j). Everything here is deliberately naive and is
/// capped at kMaxOracleQubits.
namespace permsim::oracle {

inline constexpr int kMaxOracleQubits = 8;

/// Raises the qubit cap for the current thread while alive.
class UnsafeOracleScope {
  public:
    explicit UnsafeOracleScope(int max_qubits);
    ~UnsafeOracleScope();
    UnsafeOracleScope(const UnsafeOracleScope &)            = delete;
    UnsafeOracleScope &operator=(const UnsafeOracleScope &) = delete;

  private:
    int previous_;
};

/// Throws ResourceGuard above the active cap, InvalidArgument below 1.
void guard(int n);

using Permutation = std::vector<int>; ///< sigma[i] = image of i, zero-based

/// R(sigma)|i_1 ... i_n> = |i_{sigma^-1(1)} ... i_{sigma^-1(n)}>.
MatrixC permutation_matrix(const Permutation &sigma, int n);

/// R(sigma) A R(sigma)^dagger without forming R.
MatrixC conjugate_by_permutation(const MatrixC &a, const Permutation &sigma, int n);

/// (1/n!) sum_sigma R(sigma) A R(sigma)^dagger.
MatrixC twirl(const MatrixC &a, int n);

/// Tensor product of single-qubit Paulis, qubit 1 first.
MatrixC pauli_string(const std::vector<ops::Pauli> &paulis);

/// k_X! k_Y! k_Z! (n-k)!/n! times the sum of every distinct string with the
/// given Pauli counts.
MatrixC symmetrized_pauli(const schur::WeightVector &kvec, int n);

/// Named kinds from their defining Pauli sums (1/n sum_i X_i, ...).
MatrixC dense_operator(const ops::GeneratorKind &kind, int n);

VectorC basis_state(int n, std::size_t index);
VectorC dicke_state(int n, int weight);
VectorC plus_state(int n);

/// Singlets on qubit pairs (1,2), (3,4), ... followed by the Dicke state of
/// weight q on the remaining n - 2m qubits.
VectorC canonical_schur_vector(int n, int m, int q);

/// Columns are canonical_schur_vector(n, m, q) for q = 0 .. n-2m.
MatrixC canonical_schur_basis(int n, int m);

/// sum_q psi_q |Dicke_q>, the 2^n image of a symmetric-irrep vector.
VectorC symmetric_to_dense(int n, const VectorC &psi);

/// (A_lambda)_{q,q'} = <lambda,p0,q| A |lambda,p0,q'>.
MatrixC project_block(const MatrixC &a, int n, int m);

/// tau_lambda = mult_lambda * block of twirl(rho), one entry per m. Valid for
/// any density matrix because expectations of equivariant observables only
/// see the twirled state.
std::vector<MatrixC> block_state(const MatrixC &rho, int n);

struct DenseLayer {
    MatrixC hamiltonian;
    double  time{};
};

/// exp(-i t H) for Hermitian H via eigendecomposition.
MatrixC exp_hermitian(const MatrixC &h, double t);

/// U = U_L ... U_1 with U_l = exp(-i t_l H_l); layer 1 acts first.
MatrixC circuit_unitary(const std::vector<DenseLayer> &layers, int n);

/// Tr[U rho U^dagger O].
double dense_expectation(const std::vector<DenseLayer> &layers, const MatrixC &rho, const MatrixC &obs);

/// Reduced state of qubits 1 and 2.
MatrixC partial_trace_two(const MatrixC &rho, int n);

/// W^(x)n.
MatrixC tensor_power(const Eigen::Matrix2cd &w, int n);

/// Projector onto computational basis states of Hamming weight h.
MatrixC hamming_projector(int n, int h);

/// Sum of the distinct strings with counts k divided by sqrt(2^n * count),
/// an orthonormal element in the Hilbert-Schmidt inner product.
MatrixC normalized_symmetrized_pauli(const schur::WeightVector &kvec, int n);

/// E_W sum_h tr(B_k M_h) tr(B_k' M_h) with M_h = W^dagger(x)n Pi_h W(x)n and
/// W Haar on SU(2), by product quadrature over Euler angles that is exact for
/// the polynomial integrand.
MatrixR shadow_channel_quadrature(int n, const std::vector<schur::WeightVector> &basis);

/// Uniformly random permutation from a 64-bit seed.
Permutation random_permutation(int n, std::uint64_t seed);

} // namespace permsim::oracle
