#include "permsim/evolution/circuit.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/core/parallel.hpp"
#include "permsim/evolution/banded.hpp"

#include <fmt/format.h>

namespace permsim::evolution {

namespace {

constexpr int kPropagatorMaxBandwidth = 4;

void check_circuit(const Circuit &circuit, int n) {
    for(std::size_t l = 0; l < circuit.size(); ++l) {
        const auto &h = circuit[l].hamiltonian;
        if(h.n != n) throw InvalidArgument(fmt::format("layer {} acts on n={}, expected n={}", l, h.n, n));
        ops::validate(h);
    }
}

EigenFactorization factor_layer(const CircuitLayer &layer, int m, FactorizationCache *cache) {
    const auto &block = layer.hamiltonian.block(m);
    if(cache != nullptr && !layer.id.empty()) return cache->get(layer.id, block);
    return eigendecompose(block);
}

MatrixC layer_unitary(const CircuitLayer &layer, int m, FactorizationCache *cache) {
    if(layer.time == 0.0) {
        const int d = layer.hamiltonian.block(m).dim();
        return MatrixC::Identity(d, d);
    }
    return unitary_block(factor_layer(layer, m, cache), layer.time).entries;
}

/// U^dagger O U with U = Q exp(-i t Lambda) Q^dagger, applied in the eigenbasis.
/// Real eigenvectors keep every product real.
void heisenberg_layer(MatrixC &o, const EigenFactorization &fact, double t) {
    const auto d = fact.lambda.size();
    VectorC    p(d);
    for(Eigen::Index i = 0; i < d; ++i) p(i) = std::polar(1.0, -t * fact.lambda(i));
    if(fact.Q.imag().cwiseAbs().maxCoeff() == 0.0) {
        const MatrixR q = fact.Q.real();
        MatrixR       re = q.transpose() * (o.real() * q);
        MatrixR       im = q.transpose() * (o.imag() * q);
        for(Eigen::Index j = 0; j < d; ++j)
            for(Eigen::Index i = 0; i < d; ++i) {
                const cplx x = std::conj(p(i)) * cplx{re(i, j), im(i, j)} * p(j);
                re(i, j)     = x.real();
                im(i, j)     = x.imag();
            }
        o.real() = q * (re * q.transpose());
        o.imag() = q * (im * q.transpose());
        return;
    }
    MatrixC x = fact.Q.adjoint() * (o * fact.Q);
    x         = p.conjugate().asDiagonal() * x * p.asDiagonal();
    o.noalias() = fact.Q * (x * fact.Q.adjoint());
}

} // namespace

const EigenFactorization &FactorizationCache::get(const std::string &id, const ops::BlockMatrix &block) {
    const auto key = std::make_pair(id, block.irrep.m);
    {
        std::lock_guard lock(mutex_);
        if(auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    EigenFactorization fact = eigendecompose(block);
    std::lock_guard    lock(mutex_);
    return entries_.try_emplace(key, std::move(fact)).first->second;
}

std::size_t FactorizationCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

void FactorizationCache::clear() {
    std::lock_guard lock(mutex_);
    entries_.clear();
}

ops::BlockOperator heisenberg_evolve(const Circuit &circuit, const ops::BlockOperator &obs, FactorizationCache *cache, int threads) {
    ops::validate(obs);
    check_circuit(circuit, obs.n);
    ops::BlockOperator out = obs;
    out.provenance         = ops::Provenance::Composite;
    parallel_for(out.blocks.size(), threads, [&](std::size_t mi) {
        const int m = static_cast<int>(mi);
        MatrixC   o = obs.blocks[mi].entries;
        for(auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
            if(it->time == 0.0) continue;
            if(o.size() != 0) heisenberg_layer(o, factor_layer(*it, m, cache), it->time);
        }
        auto &dst     = out.blocks[mi];
        dst.entries   = std::move(o);
        dst.structure = ops::Structure::Dense;
        dst.bandwidth = dst.dim() - 1;
    });
    return out;
}

SchurState schrodinger_evolve_symmetric(const Circuit &circuit, const SchurState &state, FactorizationCache *cache) {
    if(!state.is_pure()) throw InvalidArgument("symmetric fast path needs a pure symmetric state");
    check_circuit(circuit, state.n());
    VectorC           psi = state.psi();
    BandedEigensystem sys;
    for(const auto &layer : circuit) {
        if(layer.time == 0.0) continue;
        const auto &block = layer.hamiltonian.block(0);
        const int   bw    = (block.structure == ops::Structure::Diagonal) ? 0 : ops::numerical_bandwidth(block.entries);
        const bool  cached = cache != nullptr && !layer.id.empty();
        if(!cached && bw <= kPropagatorMaxBandwidth && block.is_real(0.0)) {
            if(block.hermiticity_defect() > kHermitianTolerance) throw NumericalError("layer block m=0 is not Hermitian");
            sys.compute(SymmetricBand::from_dense(block.entries.real(), bw));
            sys.propagate(psi, layer.time);
        } else {
            const auto   &fact = cached ? cache->get(layer.id, block) : eigendecompose(block);
            const VectorC coeff = fact.Q.adjoint() * psi;
            VectorC       rotated(coeff.size());
            for(Eigen::Index i = 0; i < coeff.size(); ++i) rotated(i) = std::polar(1.0, -layer.time * fact.lambda(i)) * coeff(i);
            psi = fact.Q * rotated;
        }
    }
    const double norm = psi.norm();
    if(std::abs(norm - 1.0) > 1e-10) throw NumericalError(fmt::format("norm drifted to {:.15g} during evolution", norm));
    psi /= norm;
    return SchurState::pure(state.n(), std::move(psi));
}

SchurState schrodinger_evolve(const Circuit &circuit, const SchurState &state, FactorizationCache *cache, int threads) {
    if(state.is_pure()) return schrodinger_evolve_symmetric(circuit, state, cache);
    check_circuit(circuit, state.n());
    std::vector<MatrixC> tau = state.tau();
    parallel_for(tau.size(), threads, [&](std::size_t mi) {
        for(const auto &layer : circuit) {
            if(layer.time == 0.0) continue;
            const MatrixC u = layer_unitary(layer, static_cast<int>(mi), cache);
            tau[mi]         = u * tau[mi] * u.adjoint();
        }
    });
    for(auto &t : tau) t = 0.5 * (t + t.adjoint()).eval();
    return from_blocks(state.n(), std::move(tau));
}

double expectation(const SchurState &state, const ops::BlockOperator &obs) {
    if(state.n() != obs.n) throw InvalidArgument(fmt::format("state has n={}, observable n={}", state.n(), obs.n));
    ops::validate(obs);
    cplx acc{0.0, 0.0};
    if(state.is_pure()) {
        const auto &psi = state.psi();
        acc             = psi.dot(obs.blocks[0].entries * psi);
    } else {
        const auto &tau = state.tau();
        for(std::size_t m = 0; m < tau.size(); ++m) acc += (tau[m] * obs.blocks[m].entries).trace();
    }
    if(std::abs(acc.imag()) > kImaginaryTolerance)
        throw NumericalError(fmt::format("expectation has imaginary residue {:.3e}; observable is not Hermitian", acc.imag()));
    return acc.real();
}

double expectation_symmetric(const VectorC &psi, const MatrixC &block0) {
    if(psi.size() != block0.rows()) throw InvalidArgument("vector and block sizes differ");
    const cplx acc = psi.dot(block0 * psi);
    if(std::abs(acc.imag()) > kImaginaryTolerance)
        throw NumericalError(fmt::format("expectation has imaginary residue {:.3e}; observable is not Hermitian", acc.imag()));
    return acc.real();
}

} // namespace permsim::evolution
