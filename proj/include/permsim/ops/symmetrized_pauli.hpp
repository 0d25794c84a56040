#pragma once

#include "permsim/ops/block_operator.hpp"
#include "permsim/schur/irreps.hpp"

#include <utility>
#include <vector>

/// Matrix elements of twirled Pauli strings T(P_k) in the canonical Schur basis.
///
/// T(P_k) = k_X! k_Y! k_Z! (n-k)! / n! times the sum of all distinct Pauli
/// strings with k_X X's, k_Y Y's and k_Z Z's. Each column is obtained by
/// enumerating how many Pauli pairs land on singlets (a) and how many single
/// Paulis land on |1> qubits of the Dicke register (s). Weights are evaluated
/// in log space, so cost per column is independent of n.
namespace permsim::ops {

/// Sparse column: pairs (q', <q'|T(P_k)|q>) with nonzero value, q' ascending.
using SparseColumn = std::vector<std::pair<int, cplx>>;

SparseColumn algorithm1_column(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep, int q);

/// Band storage of one block: entry (q', q) lives at data[(q' - q + b) + (2b + 1) q].
struct BandedBlock {
    schur::IrrepLabel irrep;
    int               bandwidth{};
    std::vector<cplx> data;

    [[nodiscard]] cplx at(int row, int col) const;
    [[nodiscard]] MatrixC dense() const;
};

/// All columns of one irrep in band storage; O(d) work for fixed k.
BandedBlock symmetrized_pauli_banded(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep);

/// Band storage for every irrep; O(n^2) total for fixed k.
std::vector<BandedBlock> symmetrized_pauli_all_banded(int n, const schur::WeightVector &kvec);

BlockMatrix symmetrized_pauli_block(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep);

BlockOperator symmetrized_pauli_operator(int n, const schur::WeightVector &kvec);

} // namespace permsim::ops
