#pragma once

#include "permsim/evolution/eigen.hpp"
#include "permsim/evolution/state.hpp"
#include "permsim/ops/block_operator.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace permsim::evolution {

/// One gate exp(-i time H). Layers with a non-empty id share factorizations
/// through a FactorizationCache; the id must then identify H uniquely.
struct CircuitLayer {
    ops::BlockOperator hamiltonian;
    double             time{};
    std::string        id;
};

/// U = U_L ... U_1: layer 0 of the vector acts on states first.
using Circuit = std::vector<CircuitLayer>;

/// Factorizations keyed by (layer id, m). Safe for concurrent lookups of
/// distinct keys.
class FactorizationCache {
  public:
    /// Returns the cached factorization or computes and stores it.
    const EigenFactorization &get(const std::string &id, const ops::BlockMatrix &block);

    [[nodiscard]] std::size_t size() const;
    void clear();

  private:
    mutable std::mutex                                           mutex_;
    std::map<std::pair<std::string, int>, EigenFactorization> entries_;
};

/// O_lambda <- U_lambda^dagger O_lambda U_lambda for every irrep, computed
/// irrep-parallel on up to `threads` workers.
ops::BlockOperator heisenberg_evolve(const Circuit &circuit, const ops::BlockOperator &obs, FactorizationCache *cache = nullptr, int threads = 1);

/// psi <- U_{m=0} psi, layer by layer. Real blocks with bandwidth <= 4 use the
/// rotation-based propagator; others are factorized densely.
SchurState schrodinger_evolve_symmetric(const Circuit &circuit, const SchurState &state, FactorizationCache *cache = nullptr);

/// Pure states go through schrodinger_evolve_symmetric(); mixed states evolve
/// as tau_lambda <- U_lambda tau_lambda U_lambda^dagger.
SchurState schrodinger_evolve(const Circuit &circuit, const SchurState &state, FactorizationCache *cache = nullptr, int threads = 1);

/// Imaginary parts above this abort an expectation value.
inline constexpr double kImaginaryTolerance = 1e-10;

/// f = sum_lambda tr(tau_lambda O_lambda). Throws NumericalError when the
/// imaginary residue exceeds kImaginaryTolerance.
double expectation(const SchurState &state, const ops::BlockOperator &obs);

/// Same as expectation() for a symmetric vector and only the m = 0 block.
double expectation_symmetric(const VectorC &psi, const MatrixC &block0);

} // namespace permsim::evolution
