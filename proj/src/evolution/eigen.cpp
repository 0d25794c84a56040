#include "permsim/evolution/eigen.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/evolution/banded.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace permsim::evolution {

namespace {

constexpr int kBandedPathMaxBandwidth = 4;

EigenFactorization sorted_factorization(const schur::IrrepLabel &irrep, const MatrixC &q, const VectorR &lambda) {
    const auto          d = lambda.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return lambda(a) < lambda(b); });
    EigenFactorization out;
    out.irrep = irrep;
    out.Q.resize(d, d);
    out.lambda.resize(d);
    for(Eigen::Index k = 0; k < d; ++k) {
        out.Q.col(k)  = q.col(order[static_cast<std::size_t>(k)]);
        out.lambda(k) = lambda(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

/// Connected components of the nonzero pattern, each listed in increasing order.
std::vector<std::vector<Eigen::Index>> decoupled_components(const MatrixC &a) {
    const auto                d = a.rows();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    auto find = [&](Eigen::Index i) {
        while(parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        return i;
    };
    for(Eigen::Index j = 0; j < d; ++j)
        for(Eigen::Index i = j + 1; i < d; ++i)
            if(a(i, j) != cplx{0.0, 0.0} || a(j, i) != cplx{0.0, 0.0}) parent[static_cast<std::size_t>(find(i))] = find(j);
    std::vector<std::vector<Eigen::Index>> out;
    std::vector<Eigen::Index>              slot(static_cast<std::size_t>(d), -1);
    for(Eigen::Index i = 0; i < d; ++i) {
        auto &s = slot[static_cast<std::size_t>(find(i))];
        if(s < 0) {
            s = static_cast<Eigen::Index>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(s)].push_back(i);
    }
    return out;
}

} // namespace

EigenFactorization eigendecompose(const ops::BlockMatrix &block, EigenMethod method) {
    const auto parts = block.entries.rows() == block.irrep.d && block.entries.cols() == block.irrep.d ? decoupled_components(block.entries)
                                                                                                       : std::vector<std::vector<Eigen::Index>>{};
    if(parts.size() > 1) {
        if(block.hermiticity_defect() > kHermitianTolerance) throw NumericalError(fmt::format("block m={} is not Hermitian", block.irrep.m));
        const auto d = block.entries.rows();
        MatrixC    q = MatrixC::Zero(d, d);
        VectorR    lambda(d);
        Eigen::Index col = 0;
        for(const auto &idx : parts) {
            const auto       k = static_cast<Eigen::Index>(idx.size());
            ops::BlockMatrix sub;
            sub.irrep.d = static_cast<int>(k);
            sub.entries = block.entries(idx, idx);
            const auto f = eigendecompose(sub, method);
            for(Eigen::Index c = 0; c < k; ++c, ++col) {
                for(Eigen::Index r = 0; r < k; ++r) q(idx[static_cast<std::size_t>(r)], col) = f.Q(r, c);
                lambda(col) = f.lambda(c);
            }
        }
        return sorted_factorization(block.irrep, q, lambda);
    }

    const auto &a = block.entries;
    if(a.rows() != a.cols() || a.rows() != block.irrep.d)
        throw InvalidArgument(fmt::format("block is {}x{}, irrep expects d={}", a.rows(), a.cols(), block.irrep.d));
    const double defect = block.hermiticity_defect();
    if(defect > kHermitianTolerance) throw NumericalError(fmt::format("block m={} is not Hermitian (defect {:.3e})", block.irrep.m, defect));

    const bool real = block.is_real(0.0);
    if(method == EigenMethod::Auto)
        method = (real && ops::numerical_bandwidth(a) <= kBandedPathMaxBandwidth) ? EigenMethod::BandedRotations : EigenMethod::Dense;

    if(method == EigenMethod::BandedRotations) {
        if(!real) throw InvalidArgument("banded rotation path needs a real block");
        const MatrixR     re = a.real();
        const int         bw = ops::numerical_bandwidth(a);
        BandedEigensystem sys(SymmetricBand::from_dense(0.5 * (re + re.transpose()), bw));
        return sorted_factorization(block.irrep, sys.eigenvectors().cast<cplx>(), sys.eigenvalues());
    }

    if(real) {
        const MatrixR                          re = a.real();
        Eigen::SelfAdjointEigenSolver<MatrixR> es(0.5 * (re + re.transpose()));
        if(es.info() != Eigen::Success) throw NumericalError(fmt::format("eigensolver failed on block m={}", block.irrep.m));
        return {block.irrep, es.eigenvectors().cast<cplx>(), es.eigenvalues()};
    }
    Eigen::SelfAdjointEigenSolver<MatrixC> es(0.5 * (a + a.adjoint()));
    if(es.info() != Eigen::Success) throw NumericalError(fmt::format("eigensolver failed on block m={}", block.irrep.m));
    return {block.irrep, es.eigenvectors(), es.eigenvalues()};
}

ops::BlockMatrix unitary_block(const EigenFactorization &fact, double t) {
    const auto d = fact.lambda.size();
    VectorC    phases(d);
    for(Eigen::Index i = 0; i < d; ++i) phases(i) = std::polar(1.0, -t * fact.lambda(i));
    ops::BlockMatrix out;
    out.irrep     = fact.irrep;
    out.entries   = fact.Q * phases.asDiagonal() * fact.Q.adjoint();
    out.structure = ops::Structure::Dense;
    out.bandwidth = static_cast<int>(d) - 1;
    return out;
}

double reconstruction_error(const EigenFactorization &fact, const ops::BlockMatrix &block) {
    if(block.entries.size() == 0) return 0.0;
    const MatrixC rebuilt = fact.Q * fact.lambda.cast<cplx>().asDiagonal() * fact.Q.adjoint();
    return (rebuilt - block.entries).cwiseAbs().maxCoeff();
}

} // namespace permsim::evolution
