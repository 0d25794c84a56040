#include "permsim/ops/closed_form.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/ops/symmetrized_pauli.hpp"

#include <fmt/format.h>

#include <cmath>

namespace permsim::ops {

double alpha_minus(int sym_qubits, int q) { return std::sqrt(static_cast<double>(q) * (sym_qubits - q + 1)); }

double alpha_plus(int sym_qubits, int q) { return std::sqrt(static_cast<double>(q + 1) * (sym_qubits - q)); }

namespace {

double parity_sign(int k) { return (k & 1) ? -1.0 : 1.0; }

} // namespace

BlockMatrix closed_form_block(const GeneratorKind &kind, int n, const schur::IrrepLabel &irrep) {
    if(irrep.n != n || irrep.d != n - 2 * irrep.m + 1) throw InvalidArgument(fmt::format("irrep (n={}, m={}, d={}) does not match n={}", irrep.n, irrep.m, irrep.d, n));
    if(kind.tag == Kind::KLocal) throw InvalidArgument("KLocal has no closed form; use symmetrized_pauli_block");
    if(n < min_qubits(kind)) throw InvalidArgument(fmt::format("{} needs at least {} qubits, got n={}", name(kind), min_qubits(kind), n));
    if(kind.tag == Kind::TwoLocal) return symmetrized_pauli_block(n, twirl_weight(kind, n), irrep);

    const int    m  = irrep.m;
    const int    ns = n - 2 * m; // qubits in the symmetric register
    const int    d  = irrep.d;
    const double nn = n;
    const double pair_norm = (n >= 2) ? 1.0 / (nn * (nn - 1.0)) : 0.0;

    BlockMatrix b;
    b.irrep   = irrep;
    b.entries = MatrixC::Zero(d, d);
    auto &a   = b.entries;

    switch(kind.tag) {
        case Kind::SumZ:
            for(int q = 0; q < d; ++q) a(q, q) = 1.0 - 2.0 * (q + m) / nn;
            break;
        case Kind::SumZZ:
            for(int q = 0; q < d; ++q) {
                const double h = q + m;
                a(q, q)        = (nn * nn - nn - 4.0 * nn * h + 4.0 * h * h) * pair_norm;
            }
            break;
        case Kind::GlobalZ:
            for(int q = 0; q < d; ++q) a(q, q) = parity_sign(q + m);
            break;
        case Kind::SumX:
        case Kind::SumY: {
            const cplx up   = (kind.tag == Kind::SumX) ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
            const cplx down = std::conj(up);
            for(int q = 0; q < d; ++q) {
                if(q > 0) a(q, q - 1) = up * alpha_minus(ns, q) / nn;
                if(q + 1 < d) a(q, q + 1) = down * alpha_plus(ns, q) / nn;
            }
            break;
        }
        case Kind::SumXX:
        case Kind::SumYY: {
            const double off = (kind.tag == Kind::SumXX) ? 1.0 : -1.0;
            for(int q = 0; q < d; ++q) {
                a(q, q) = 2.0 * (static_cast<double>(q) * (ns - q) - m) * pair_norm;
                if(q >= 2) a(q, q - 2) = off * alpha_minus(ns, q) * alpha_minus(ns, q - 1) * pair_norm;
                if(q + 2 < d) a(q, q + 2) = off * alpha_plus(ns, q) * alpha_plus(ns, q + 1) * pair_norm;
            }
            break;
        }
        case Kind::GlobalX:
            for(int q = 0; q < d; ++q) a(q, ns - q) = parity_sign(m);
            break;
        case Kind::GlobalY: {
            const cplx in = i_power(n);
            for(int q = 0; q < d; ++q) a(q, ns - q) = in * parity_sign(n - q);
            break;
        }
        default: throw InvalidArgument(fmt::format("unsupported kind {}", name(kind)));
    }
    classify(b);
    return b;
}

BlockOperator make_operator(const GeneratorKind &kind, int n) {
    if(kind.tag == Kind::KLocal) return symmetrized_pauli_operator(n, kind.kvec);
    BlockOperator op;
    op.n           = n;
    op.provenance  = (kind.tag == Kind::TwoLocal) ? Provenance::Algorithm1 : Provenance::ClosedForm;
    op.label       = name(kind);
    op.twirl_ratio = twirl_ratio(kind, n);
    for(const auto &irrep : schur::enumerate_irreps(n)) op.blocks.push_back(closed_form_block(kind, n, irrep));
    return op;
}

} // namespace permsim::ops
