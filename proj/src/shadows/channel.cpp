#include "permsim/core/errors.hpp"
#include "permsim/ops/symmetrized_pauli.hpp"
#include "permsim/shadows/shadows.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace permsim::shadows {

using schur::WeightVector;

namespace {

constexpr double kMinReciprocalCondition = 1e-13;

double lf(int k) { return schur::log_factorial(k); }

/// log N_k with N_k = n!/(k_X! k_Y! k_Z! (n-k)!), the number of distinct strings.
double log_string_count(int n, const WeightVector &k) { return lf(n) - lf(k.x) - lf(k.y) - lf(k.z) - lf(n - k.total()); }

} // namespace

schur::BigInt a_coeff(int h, int m, int n) {
    if(n < 0 || h < 0 || h > n || m < 0 || m > n) throw InvalidArgument(fmt::format("a({}, {}) undefined for n={}", h, m, n));
    schur::BigInt acc = 0;
    for(int l = 0; l <= std::min(h, m); ++l) {
        if(h - l > n - m) continue;
        const schur::BigInt term = schur::binomial(m, l) * schur::binomial(n - m, h - l);
        if(l % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

double alpha_coeff(int h, int m, int n) {
    const schur::BigInt a = a_coeff(h, m, n);
    if(a == 0) return 0.0;
    const double mag = std::exp(0.5 * (schur::log_binomial(n, m) - n * std::log(2.0)) + std::log(std::abs(a.convert_to<double>())));
    return a < 0 ? -mag : mag;
}

int parity_class(const WeightVector &k) { return 4 * (k.x % 2) + 2 * (k.y % 2) + (k.z % 2); }

double channel_entry(int n, const WeightVector &k, const WeightVector &kp) {
    const int sx = k.x + kp.x, sy = k.y + kp.y, sz = k.z + kp.z;
    if(sx % 2 != 0 || sy % 2 != 0 || sz % 2 != 0) return 0.0;
    const int    kt = k.total(), kpt = kp.total();
    const int    s  = sx + sy + sz;
    const double log_mag = -n * std::log(2.0) - std::log(s + 1.0)
                           - 0.5 * (lf(k.x) + lf(k.y) + lf(k.z) + lf(kp.x) + lf(kp.y) + lf(kp.z) + lf(n - kt) + lf(n - kpt))
                           + (lf(sx) - lf(sx / 2)) + (lf(sy) - lf(sy / 2)) + (lf(sz) - lf(sz / 2)) + lf(2 * n - s) - lf((2 * n - s) / 2);
    const double mag = std::exp(log_mag);
    return (std::abs(kt - kpt) / 2) % 2 == 0 ? mag : -mag;
}

ChannelMatrix::ChannelMatrix(int n) : n_(n) {
    if(n < 1) throw InvalidArgument(fmt::format("channel needs n >= 1, got {}", n));
    if(n > kMaxChannelQubits) throw ResourceGuard(fmt::format("channel matrix at n={} exceeds the limit of {} qubits", n, kMaxChannelQubits));
    basis_ = schur::enumerate_weight_vectors(n, n);
    block_of_.resize(basis_.size());
    slot_of_.resize(basis_.size());
    std::array<int, 8> position;
    position.fill(-1);
    for(std::size_t i = 0; i < basis_.size(); ++i) {
        const int p = parity_class(basis_[i]);
        if(position[static_cast<std::size_t>(p)] < 0) {
            position[static_cast<std::size_t>(p)] = static_cast<int>(blocks_.size());
            blocks_.push_back({});
            blocks_.back().parity = p;
        }
        auto &blk    = blocks_[static_cast<std::size_t>(position[static_cast<std::size_t>(p)])];
        block_of_[i] = position[static_cast<std::size_t>(p)];
        slot_of_[i]  = blk.indices.size();
        blk.indices.push_back(i);
    }
    for(auto &blk : blocks_) {
        const auto size = static_cast<Eigen::Index>(blk.indices.size());
        blk.matrix.resize(size, size);
        for(Eigen::Index a = 0; a < size; ++a)
            for(Eigen::Index b = 0; b <= a; ++b)
                blk.matrix(a, b) = blk.matrix(b, a) = channel_entry(n, basis_[blk.indices[static_cast<std::size_t>(a)]], basis_[blk.indices[static_cast<std::size_t>(b)]]);
        blk.lu.compute(blk.matrix);
        const double rcond = blk.lu.rcond();
        if(!(rcond > kMinReciprocalCondition))
            throw NumericalError(fmt::format("channel block with parity {} is singular at n={} (rcond {:.3e})", blk.parity, n, rcond));
    }
}

double ChannelMatrix::entry(std::size_t i, std::size_t j) const {
    if(block_of_.at(i) != block_of_.at(j)) return 0.0;
    const auto &blk = blocks_[static_cast<std::size_t>(block_of_[i])];
    return blk.matrix(static_cast<Eigen::Index>(slot_of_[i]), static_cast<Eigen::Index>(slot_of_[j]));
}

MatrixR ChannelMatrix::dense() const {
    const auto d   = static_cast<Eigen::Index>(dim());
    MatrixR    out = MatrixR::Zero(d, d);
    for(const auto &blk : blocks_)
        for(std::size_t a = 0; a < blk.indices.size(); ++a)
            for(std::size_t b = 0; b < blk.indices.size(); ++b)
                out(static_cast<Eigen::Index>(blk.indices[a]), static_cast<Eigen::Index>(blk.indices[b])) = blk.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    return out;
}

VectorR ChannelMatrix::apply(const VectorR &x) const {
    if(x.size() != static_cast<Eigen::Index>(dim())) throw InvalidArgument("channel apply: wrong vector size");
    VectorR out = VectorR::Zero(x.size());
    for(const auto &blk : blocks_) {
        VectorR sub(static_cast<Eigen::Index>(blk.indices.size()));
        for(std::size_t a = 0; a < blk.indices.size(); ++a) sub(static_cast<Eigen::Index>(a)) = x(static_cast<Eigen::Index>(blk.indices[a]));
        const VectorR img = blk.matrix * sub;
        for(std::size_t a = 0; a < blk.indices.size(); ++a) out(static_cast<Eigen::Index>(blk.indices[a])) = img(static_cast<Eigen::Index>(a));
    }
    return out;
}

VectorR ChannelMatrix::solve(const VectorR &rhs) const {
    if(rhs.size() != static_cast<Eigen::Index>(dim())) throw InvalidArgument("channel solve: wrong vector size");
    VectorR out = VectorR::Zero(rhs.size());
    for(const auto &blk : blocks_) {
        VectorR sub(static_cast<Eigen::Index>(blk.indices.size()));
        for(std::size_t a = 0; a < blk.indices.size(); ++a) sub(static_cast<Eigen::Index>(a)) = rhs(static_cast<Eigen::Index>(blk.indices[a]));
        const VectorR x = blk.lu.solve(sub);
        for(std::size_t a = 0; a < blk.indices.size(); ++a) out(static_cast<Eigen::Index>(blk.indices[a])) = x(static_cast<Eigen::Index>(a));
    }
    return out;
}

VectorR observable_coordinates(const ops::BlockOperator &obs) {
    ops::validate(obs);
    const int  n     = obs.n;
    const auto basis = schur::enumerate_weight_vectors(n, n);
    VectorR    out(static_cast<Eigen::Index>(basis.size()));
    for(std::size_t i = 0; i < basis.size(); ++i) {
        const auto  &k      = basis[i];
        const auto   banded = ops::symmetrized_pauli_all_banded(n, k);
        // B_k = sqrt(N_k / 2^n) T(P_k)
        const double log_scale = 0.5 * (log_string_count(n, k) - n * std::log(2.0));
        cplx         acc{0.0, 0.0};
        for(const auto &blk : banded) {
            const auto &o = obs.blocks[static_cast<std::size_t>(blk.irrep.m)].entries;
            const int   b = blk.bandwidth;
            const int   d = blk.irrep.d;
            cplx        tr{0.0, 0.0};
            for(int q = 0; q < d; ++q)
                for(int qp = std::max(0, q - b); qp <= std::min(d - 1, q + b); ++qp) tr += blk.at(qp, q) * o(q, qp);
            acc += std::exp(blk.irrep.log_mult() + log_scale) * tr;
        }
        if(std::abs(acc.imag()) > 1e-9 * std::max(1.0, std::abs(acc.real())))
            throw NumericalError(fmt::format("observable coordinate {} has imaginary part {:.3e}; observable is not Hermitian", schur::to_string(k), acc.imag()));
        out(static_cast<Eigen::Index>(i)) = acc.real();
    }
    return out;
}

} // namespace permsim::shadows
