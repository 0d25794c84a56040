#pragma once

#include "permsim/core/types.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace permsim::evolution {

/// A permutation-invariant description of a state.
///
/// Pure: a vector psi in the m = 0 (fully symmetric) irrep, length n + 1.
/// Mixed: tau_lambda = sum over multiplicity copies of the lambda block of rho,
/// one Hermitian PSD matrix per m, with traces summing to 1.
class SchurState {
  public:
    static SchurState pure(int n, VectorC psi);
    static SchurState mixed(int n, std::vector<MatrixC> tau);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] bool is_pure() const { return std::holds_alternative<VectorC>(data_); }
    [[nodiscard]] const VectorC &psi() const;
    [[nodiscard]] VectorC &psi();
    [[nodiscard]] const std::vector<MatrixC> &tau() const;

    /// Mixed view of any state (pure states become |psi><psi| in m = 0).
    [[nodiscard]] std::vector<MatrixC> to_blocks() const;

  private:
    friend SchurState from_blocks(int n, std::vector<MatrixC> tau);
    SchurState(int n, std::variant<VectorC, std::vector<MatrixC>> data) : n_(n), data_(std::move(data)) {}

    int                                          n_{};
    std::variant<VectorC, std::vector<MatrixC>> data_;
};

enum class StateKind { AllZero, AllPlus, Dicke };

/// |0...0>, |+...+> or the Dicke state of weight w, all in the symmetric irrep.
SchurState prepare_state(StateKind kind, int n, int weight = 0);

/// Validates the blocks (shape, Hermitian, PSD, unit total trace) and wraps them.
SchurState from_blocks(int n, std::vector<MatrixC> tau);

inline constexpr double kNormTolerance  = 1e-12;
inline constexpr double kBlockTolerance = 1e-10;

} // namespace permsim::evolution
