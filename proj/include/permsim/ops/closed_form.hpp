#pragma once

#include "permsim/ops/block_operator.hpp"
#include "permsim/ops/generator.hpp"

namespace permsim::ops {

/// Ladder coefficient sqrt(q (N - q + 1)) of the symmetric register with N qubits.
double alpha_minus(int sym_qubits, int q);
/// Ladder coefficient sqrt((q + 1)(N - q)).
double alpha_plus(int sym_qubits, int q);

/// Exact block of a named kind in the canonical Schur basis. TwoLocal kinds are
/// delegated to the symmetrized-Pauli routine; KLocal is rejected.
BlockMatrix closed_form_block(const GeneratorKind &kind, int n, const schur::IrrepLabel &irrep);

/// Block operator over all irreps. Routes KLocal to the symmetrized-Pauli
/// routine, everything else to closed_form_block().
BlockOperator make_operator(const GeneratorKind &kind, int n);

} // namespace permsim::ops
