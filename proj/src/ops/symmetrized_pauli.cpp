#include "permsim/ops/symmetrized_pauli.hpp"

#include "permsim/core/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace permsim::ops {

namespace {

void check_inputs(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    if(kvec.x < 0 || kvec.y < 0 || kvec.z < 0) throw InvalidArgument("weight vector components must be non-negative");
    if(kvec.total() > n) throw InvalidArgument(fmt::format("weight vector {} has locality above n={}", schur::to_string(kvec), n));
    if(irrep.n != n || irrep.m < 0 || 2 * irrep.m > n) throw InvalidArgument(fmt::format("irrep m={} (n={}) does not belong to n={}", irrep.m, irrep.n, n));
    if(2 * n > schur::kMaxLogFactorial) throw ResourceGuard(fmt::format("n={} exceeds the log-factorial table", n));
}

/// Accumulates column q into acc[q' - q + reach], reach = k_X + k_Y.
void accumulate_column(int n, const schur::WeightVector &kv, int m, int q, const double *lf, double log_prefactor, cplx *acc) {
    const int ns    = n - 2 * m;
    const int k     = kv.total();
    const int reach = kv.x + kv.y;
    const double log_q_side = lf[q] + lf[ns - q];
    for(int ax = 0; ax <= std::min(m, kv.x / 2); ++ax)
        for(int ay = 0; ay <= std::min(m - ax, kv.y / 2); ++ay)
            for(int az = 0; az <= std::min(m - ax - ay, kv.z / 2); ++az) {
                const int    a_sum  = ax + ay + az;
                const double log_wa = lf[m] - lf[ax] - lf[ay] - lf[az] - lf[m - a_sum];
                const int    kx     = kv.x - 2 * ax;
                const int    ky     = kv.y - 2 * ay;
                const int    kz     = kv.z - 2 * az;
                for(int sx = 0; sx <= std::min(q, kx); ++sx)
                    for(int sy = 0; sy <= std::min(q - sx, ky); ++sy)
                        for(int sz = 0; sz <= std::min(q - sx - sy, kz); ++sz) {
                            const int s_sum = sx + sy + sz;
                            const int rest  = ns - q - k + 2 * a_sum + s_sum;
                            if(rest < 0) continue;
                            const int qp = q + kv.x + kv.y - 2 * (ax + ay + sx + sy);
                            if(qp < 0 || qp > ns) continue;
                            const double log_w = log_wa + lf[q] - lf[sx] - lf[sy] - lf[sz] - lf[q - s_sum] + lf[ns - q] - lf[kx - sx] - lf[ky - sy] -
                                                 lf[kz - sz] - lf[rest];
                            const double log_norm = 0.5 * (lf[qp] + lf[ns - qp] - log_q_side);
                            const double value    = std::exp(log_prefactor + log_w + log_norm);
                            const bool   negative = ((ax + az + sy + sz) & 1) != 0;
                            acc[qp - q + reach] += negative ? -value : value;
                        }
            }
}

double log_prefactor(int n, const schur::WeightVector &kv, const double *lf) {
    return lf[kv.x] + lf[kv.y] + lf[kv.z] + lf[n - kv.total()] - lf[n];
}

} // namespace

SparseColumn algorithm1_column(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep, int q) {
    check_inputs(n, kvec, irrep);
    if(q < 0 || q >= irrep.d) throw InvalidArgument(fmt::format("dimension label q={} out of range for d={}", q, irrep.d));
    const double     *lf    = schur::log_factorials().data();
    const int         reach = kvec.x + kvec.y;
    std::vector<cplx> acc(static_cast<std::size_t>(2 * reach + 1), cplx{0.0, 0.0});
    accumulate_column(n, kvec, irrep.m, q, lf, log_prefactor(n, kvec, lf), acc.data());
    const cplx   phase = i_power(kvec.y);
    SparseColumn out;
    for(int j = 0; j < 2 * reach + 1; ++j) {
        const cplx v = acc[static_cast<std::size_t>(j)];
        if(v != cplx{0.0, 0.0}) out.emplace_back(q + j - reach, phase * v);
    }
    return out;
}

cplx BandedBlock::at(int row, int col) const {
    if(std::abs(row - col) > bandwidth) return {0.0, 0.0};
    return data[static_cast<std::size_t>((row - col + bandwidth) + (2 * bandwidth + 1) * col)];
}

MatrixC BandedBlock::dense() const {
    const int d = irrep.d;
    MatrixC   out = MatrixC::Zero(d, d);
    for(int col = 0; col < d; ++col)
        for(int row = std::max(0, col - bandwidth); row <= std::min(d - 1, col + bandwidth); ++row) out(row, col) = at(row, col);
    return out;
}

BandedBlock symmetrized_pauli_banded(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep) {
    check_inputs(n, kvec, irrep);
    const double *lf     = schur::log_factorials().data();
    const double  log_pf = log_prefactor(n, kvec, lf);
    const int     reach  = kvec.x + kvec.y;
    const int     width  = 2 * reach + 1;
    BandedBlock   out;
    out.irrep     = irrep;
    out.bandwidth = reach;
    out.data.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(irrep.d), cplx{0.0, 0.0});
    for(int q = 0; q < irrep.d; ++q) accumulate_column(n, kvec, irrep.m, q, lf, log_pf, out.data.data() + static_cast<std::ptrdiff_t>(width) * q);
    const cplx phase = i_power(kvec.y);
    if(phase != cplx{1.0, 0.0})
        for(auto &v : out.data) v *= phase;
    return out;
}

std::vector<BandedBlock> symmetrized_pauli_all_banded(int n, const schur::WeightVector &kvec) {
    std::vector<BandedBlock> out;
    for(const auto &irrep : schur::enumerate_irreps(n)) out.push_back(symmetrized_pauli_banded(n, kvec, irrep));
    return out;
}

BlockMatrix symmetrized_pauli_block(int n, const schur::WeightVector &kvec, const schur::IrrepLabel &irrep) {
    BlockMatrix b;
    b.irrep   = irrep;
    b.entries = symmetrized_pauli_banded(n, kvec, irrep).dense();
    classify(b);
    return b;
}

BlockOperator symmetrized_pauli_operator(int n, const schur::WeightVector &kvec) {
    BlockOperator op;
    op.n          = n;
    op.provenance = Provenance::Algorithm1;
    op.label      = fmt::format("kvec:{},{},{}", kvec.x, kvec.y, kvec.z);
    for(const auto &irrep : schur::enumerate_irreps(n)) op.blocks.push_back(symmetrized_pauli_block(n, kvec, irrep));
    return op;
}

} // namespace permsim::ops
