#include "permsim/evolution/state.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/schur/irreps.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>

namespace permsim::evolution {

SchurState SchurState::pure(int n, VectorC psi) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    if(psi.size() != n + 1) throw InvalidArgument(fmt::format("symmetric state needs {} amplitudes, got {}", n + 1, psi.size()));
    if(std::abs(psi.norm() - 1.0) > kNormTolerance) throw InvalidArgument(fmt::format("symmetric state is not normalized (norm {:.15g})", psi.norm()));
    return {n, std::move(psi)};
}

SchurState SchurState::mixed(int n, std::vector<MatrixC> tau) { return from_blocks(n, std::move(tau)); }

const VectorC &SchurState::psi() const {
    if(!is_pure()) throw InvalidArgument("state is not a pure symmetric vector");
    return std::get<VectorC>(data_);
}

VectorC &SchurState::psi() {
    if(!is_pure()) throw InvalidArgument("state is not a pure symmetric vector");
    return std::get<VectorC>(data_);
}

const std::vector<MatrixC> &SchurState::tau() const {
    if(is_pure()) throw InvalidArgument("state is a pure symmetric vector; use to_blocks()");
    return std::get<std::vector<MatrixC>>(data_);
}

std::vector<MatrixC> SchurState::to_blocks() const {
    if(!is_pure()) return tau();
    std::vector<MatrixC> out;
    for(int m = 0; 2 * m <= n_; ++m) {
        const int d = n_ - 2 * m + 1;
        out.push_back(MatrixC::Zero(d, d));
    }
    const auto &v = psi();
    out[0]        = v * v.adjoint();
    return out;
}

SchurState prepare_state(StateKind kind, int n, int weight) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    VectorC psi = VectorC::Zero(n + 1);
    switch(kind) {
        case StateKind::AllZero: psi(0) = 1.0; break;
        case StateKind::Dicke:
            if(weight < 0 || weight > n) throw InvalidArgument(fmt::format("Dicke weight {} out of range for n={}", weight, n));
            psi(weight) = 1.0;
            break;
        case StateKind::AllPlus:
            // sqrt(C(n,q)) / 2^(n/2), in log space for large n
            for(int q = 0; q <= n; ++q) psi(q) = std::exp(0.5 * schur::log_binomial(n, q) - 0.5 * n * std::log(2.0));
            psi /= psi.norm();
            break;
    }
    return SchurState::pure(n, std::move(psi));
}

SchurState from_blocks(int n, std::vector<MatrixC> tau) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    if(tau.size() != static_cast<std::size_t>(n / 2 + 1)) throw InvalidArgument(fmt::format("expected {} blocks, got {}", n / 2 + 1, tau.size()));
    double total = 0.0;
    for(std::size_t m = 0; m < tau.size(); ++m) {
        const auto &t = tau[m];
        const int   d = n - 2 * static_cast<int>(m) + 1;
        if(t.rows() != d || t.cols() != d) throw InvalidArgument(fmt::format("block m={} is {}x{}, expected {}x{}", m, t.rows(), t.cols(), d, d));
        const double defect = (t - t.adjoint()).cwiseAbs().maxCoeff();
        if(defect > kBlockTolerance) throw InvalidArgument(fmt::format("block m={} is not Hermitian (defect {:.3e})", m, defect));
        Eigen::SelfAdjointEigenSolver<MatrixC> es(0.5 * (t + t.adjoint()), Eigen::EigenvaluesOnly);
        if(es.eigenvalues().minCoeff() < -kBlockTolerance) throw InvalidArgument(fmt::format("block m={} is not positive semidefinite", m));
        total += t.trace().real();
    }
    if(std::abs(total - 1.0) > kBlockTolerance) throw InvalidArgument(fmt::format("block traces sum to {:.15g}, expected 1", total));
    return SchurState(n, std::move(tau));
}

} // namespace permsim::evolution
