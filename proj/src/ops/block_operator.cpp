#include "permsim/ops/block_operator.hpp"

#include "permsim/core/errors.hpp"

#include <Eigen/SVD>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace permsim::ops {

std::string to_string(Structure s) {
    switch(s) {
        case Structure::Diagonal: return "diagonal";
        case Structure::AntiDiagonal: return "anti-diagonal";
        case Structure::Banded: return "banded";
        case Structure::Dense: return "dense";
    }
    return "unknown";
}

std::string to_string(Provenance p) {
    switch(p) {
        case Provenance::ClosedForm: return "closed-form";
        case Provenance::Algorithm1: return "algorithm1";
        case Provenance::Composite: return "composite";
    }
    return "unknown";
}

bool BlockMatrix::is_real(double tol) const { return entries.imag().cwiseAbs().maxCoeff() <= tol; }

double BlockMatrix::hermiticity_defect() const {
    if(entries.size() == 0) return 0.0;
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

int numerical_bandwidth(const MatrixC &a, double tol) {
    int b = 0;
    for(Eigen::Index j = 0; j < a.cols(); ++j)
        for(Eigen::Index i = 0; i < a.rows(); ++i)
            if(std::abs(a(i, j)) > tol) b = std::max(b, static_cast<int>(std::abs(i - j)));
    return b;
}

void classify(BlockMatrix &block, double tol) {
    const auto &a = block.entries;
    const auto  d = a.rows();
    block.bandwidth = numerical_bandwidth(a, tol);
    if(block.bandwidth == 0) {
        block.structure = Structure::Diagonal;
        return;
    }
    bool anti = true;
    for(Eigen::Index j = 0; j < d && anti; ++j)
        for(Eigen::Index i = 0; i < d; ++i)
            if(i + j != d - 1 && std::abs(a(i, j)) > tol) {
                anti = false;
                break;
            }
    if(anti) {
        block.structure = Structure::AntiDiagonal;
        return;
    }
    block.structure = (block.bandwidth < d - 1) ? Structure::Banded : Structure::Dense;
}

const BlockMatrix &BlockOperator::block(int m) const {
    if(m < 0 || static_cast<std::size_t>(m) >= blocks.size()) throw InvalidArgument(fmt::format("no block for m={} at n={}", m, n));
    return blocks[static_cast<std::size_t>(m)];
}

BlockMatrix &BlockOperator::block(int m) {
    if(m < 0 || static_cast<std::size_t>(m) >= blocks.size()) throw InvalidArgument(fmt::format("no block for m={} at n={}", m, n));
    return blocks[static_cast<std::size_t>(m)];
}

double BlockOperator::hermiticity_defect() const {
    double worst = 0.0;
    for(const auto &b : blocks) worst = std::max(worst, b.hermiticity_defect());
    return worst;
}

int BlockOperator::max_bandwidth() const {
    int b = 0;
    for(const auto &blk : blocks) b = std::max(b, blk.bandwidth);
    return b;
}

namespace {

BlockOperator filled_operator(int n, bool identity) {
    BlockOperator op;
    op.n          = n;
    op.provenance = Provenance::ClosedForm;
    op.label      = identity ? "identity" : "zero";
    for(auto &irrep : schur::enumerate_irreps(n)) {
        BlockMatrix b;
        b.entries   = identity ? MatrixC(MatrixC::Identity(irrep.d, irrep.d)) : MatrixC(MatrixC::Zero(irrep.d, irrep.d));
        b.irrep     = std::move(irrep);
        b.structure = Structure::Diagonal;
        op.blocks.push_back(std::move(b));
    }
    return op;
}

} // namespace

BlockOperator identity_operator(int n) { return filled_operator(n, true); }

BlockOperator zero_operator(int n) { return filled_operator(n, false); }

void validate(const BlockOperator &op) {
    if(op.n < 1) throw InvalidArgument(fmt::format("operator has invalid qubit count {}", op.n));
    if(op.blocks.size() != static_cast<std::size_t>(op.n / 2 + 1))
        throw InvalidArgument(fmt::format("operator at n={} has {} blocks, expected {}", op.n, op.blocks.size(), op.n / 2 + 1));
    for(std::size_t m = 0; m < op.blocks.size(); ++m) {
        const auto &b = op.blocks[m];
        const int   d = op.n - 2 * static_cast<int>(m) + 1;
        if(b.irrep.m != static_cast<int>(m) || b.entries.rows() != d || b.entries.cols() != d)
            throw InvalidArgument(fmt::format("block m={} has shape {}x{}, expected {}x{}", m, b.entries.rows(), b.entries.cols(), d, d));
    }
}

BlockOperator compose(const std::vector<std::pair<double, const BlockOperator *>> &terms) {
    if(terms.empty()) throw InvalidArgument("compose needs at least one term");
    const int n = terms.front().second->n;
    for(const auto &[c, op] : terms) {
        if(op->n != n) throw InvalidArgument(fmt::format("compose: mismatched qubit counts {} and {}", n, op->n));
        validate(*op);
    }
    BlockOperator out = zero_operator(n);
    out.provenance    = Provenance::Composite;
    out.label         = "composite";
    for(std::size_t m = 0; m < out.blocks.size(); ++m) {
        auto &dst = out.blocks[m];
        for(const auto &[c, op] : terms) {
            if(c == 0.0) continue;
            dst.entries.noalias() += c * op->blocks[m].entries;
        }
        int bw = 0;
        bool all_diag = true;
        for(const auto &[c, op] : terms) {
            if(c == 0.0) continue;
            const auto &src = op->blocks[m];
            bw       = std::max(bw, src.structure == Structure::AntiDiagonal ? src.dim() - 1 : src.bandwidth);
            all_diag = all_diag && src.structure == Structure::Diagonal;
        }
        dst.bandwidth = bw;
        dst.structure = all_diag ? Structure::Diagonal : (bw < dst.dim() - 1 ? Structure::Banded : Structure::Dense);
    }
    if(terms.size() == 1 && terms.front().first == 1.0) {
        out.label       = terms.front().second->label;
        out.provenance  = terms.front().second->provenance;
        out.twirl_ratio = terms.front().second->twirl_ratio;
    }
    return out;
}

BlockOperator compose(std::initializer_list<std::pair<double, const BlockOperator *>> terms) {
    return compose(std::vector<std::pair<double, const BlockOperator *>>(terms));
}

BlockOperator multiply(const BlockOperator &a, const BlockOperator &b) {
    if(a.n != b.n) throw InvalidArgument(fmt::format("multiply: mismatched qubit counts {} and {}", a.n, b.n));
    validate(a);
    validate(b);
    BlockOperator out = zero_operator(a.n);
    out.provenance    = Provenance::Composite;
    out.label         = "product";
    for(std::size_t m = 0; m < out.blocks.size(); ++m) {
        out.blocks[m].entries.noalias() = a.blocks[m].entries * b.blocks[m].entries;
        classify(out.blocks[m]);
    }
    return out;
}

cplx hs_inner(const BlockOperator &a, const BlockOperator &b) {
    if(a.n != b.n) throw InvalidArgument(fmt::format("hs_inner: mismatched qubit counts {} and {}", a.n, b.n));
    cplx acc{0.0, 0.0};
    for(std::size_t m = 0; m < a.blocks.size(); ++m)
        acc += a.blocks[m].irrep.mult_double() * (a.blocks[m].entries.adjoint() * b.blocks[m].entries).trace();
    return acc;
}

double frobenius_norm_sq(const BlockOperator &a) {
    double acc = 0.0;
    for(const auto &b : a.blocks) acc += b.irrep.mult_double() * b.entries.squaredNorm();
    return acc;
}

double operator_norm(const BlockOperator &a) {
    double worst = 0.0;
    for(const auto &b : a.blocks) {
        if(b.entries.size() == 0) continue;
        Eigen::JacobiSVD<MatrixC> svd(b.entries);
        worst = std::max(worst, svd.singularValues()(0));
    }
    return worst;
}

} // namespace permsim::ops
