#pragma once

#include "permsim/core/types.hpp"
#include "permsim/schur/irreps.hpp"

#include <string>
#include <utility>
#include <vector>

namespace permsim::ops {

enum class Structure { Diagonal, AntiDiagonal, Banded, Dense };

enum class Provenance { ClosedForm, Algorithm1, Composite };

std::string to_string(Structure s);
std::string to_string(Provenance p);

/// Block A_lambda of an equivariant operator in the canonical Schur basis.
/// Entry (q, q') is <lambda, p0, q| A |lambda, p0, q'>.
struct BlockMatrix {
    schur::IrrepLabel irrep;
    MatrixC           entries;
    Structure         structure{Structure::Dense};
    int               bandwidth{0}; ///< meaningful for Diagonal (0) and Banded

    [[nodiscard]] int dim() const { return irrep.d; }
    [[nodiscard]] bool is_real(double tol = 0.0) const;
    [[nodiscard]] double hermiticity_defect() const;
};

/// Smallest b with |A(i,j)| <= tol whenever |i-j| > b.
int numerical_bandwidth(const MatrixC &a, double tol = 0.0);

/// Fills structure/bandwidth from the entries.
void classify(BlockMatrix &block, double tol = 0.0);

/// O = sum over irreps of 1_{mult} (x) O_lambda. Blocks are indexed by m.
struct BlockOperator {
    int                      n{};
    std::vector<BlockMatrix> blocks;
    Provenance               provenance{Provenance::Composite};
    std::string              label;
    /// Multiply by this to obtain the twirl-normalized symmetrized Pauli of the
    /// same weight vector (1 for every built-in kind).
    double                   twirl_ratio{1.0};

    [[nodiscard]] const BlockMatrix &block(int m) const;
    [[nodiscard]] BlockMatrix &block(int m);
    [[nodiscard]] std::size_t size() const { return blocks.size(); }
    [[nodiscard]] double hermiticity_defect() const;
    [[nodiscard]] int max_bandwidth() const;
};

/// Identity on all irreps.
BlockOperator identity_operator(int n);

/// Zero on all irreps.
BlockOperator zero_operator(int n);

/// Entrywise real linear combination. Throws InvalidArgument on mismatched n or
/// an empty term list.
BlockOperator compose(const std::vector<std::pair<double, const BlockOperator *>> &terms);
BlockOperator compose(std::initializer_list<std::pair<double, const BlockOperator *>> terms);

/// Blockwise product A*B.
BlockOperator multiply(const BlockOperator &a, const BlockOperator &b);

/// sum_lambda mult_lambda * tr(A_lambda^dagger B_lambda), the Hilbert-Schmidt
/// inner product on the full 2^n space.
cplx hs_inner(const BlockOperator &a, const BlockOperator &b);

/// Full-space Frobenius norm squared, sum_lambda mult_lambda ||A_lambda||_F^2.
double frobenius_norm_sq(const BlockOperator &a);

/// Full-space operator norm, max over irreps of the block spectral norm.
double operator_norm(const BlockOperator &a);

/// Throws InvalidArgument unless the block count and dimensions match n.
void validate(const BlockOperator &op);

} // namespace permsim::ops
