#include "permsim/lmg/lmg.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/evolution/banded.hpp"
#include "permsim/ops/closed_form.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace permsim::lmg {

using evolution::SchurState;
using ops::GeneratorKind;
using ops::Pauli;

namespace {

constexpr double kClipRenormalize = 1e-9;
constexpr double kClipAbort       = 1e-6;
constexpr int    kAqcBandwidth    = 2;

void check_qubits(int n) {
    if(n < 2) throw InvalidArgument(fmt::format("the LMG model needs n >= 2, got {}", n));
}

/// <kind> using only the m = 0 block for pure states.
double kind_expectation(const SchurState &state, const GeneratorKind &kind) {
    const int n = state.n();
    if(state.is_pure()) return evolution::expectation_symmetric(state.psi(), ops::closed_form_block(kind, n, schur::make_irrep(n, 0)).entries);
    return evolution::expectation(state, ops::make_operator(kind, n));
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd s;
    switch(p) {
        case Pauli::I: s << 1, 0, 0, 1; break;
        case Pauli::X: s << 0, 1, 1, 0; break;
        case Pauli::Y: s << 0, cplx{0, -1}, cplx{0, 1}, 0; break;
        case Pauli::Z: s << 1, 0, 0, -1; break;
    }
    return s;
}

Matrix4c kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Matrix4c out;
    for(int i = 0; i < 2; ++i)
        for(int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

evolution::SymmetricBand symmetric_band(const ops::BlockOperator &op) {
    const auto &block = op.block(0);
    if(!block.is_real(0.0)) throw NumericalError("symmetric LMG block is not real");
    return evolution::SymmetricBand::from_dense(block.entries.real(), kAqcBandwidth);
}

/// The m = 0 part of an operator built from named kinds without touching the
/// other irreps.
ops::BlockOperator symmetric_only(const std::vector<std::pair<double, GeneratorKind>> &terms, int n) {
    ops::BlockOperator op;
    op.n = n;
    ops::BlockMatrix acc;
    acc.irrep   = schur::make_irrep(n, 0);
    acc.entries = MatrixC::Zero(n + 1, n + 1);
    for(const auto &[c, kind] : terms) acc.entries += c * ops::closed_form_block(kind, n, acc.irrep).entries;
    ops::classify(acc);
    op.blocks.push_back(std::move(acc));
    return op;
}

std::vector<std::pair<double, GeneratorKind>> lmg_terms(const LmgParams &p, int n) {
    return {{-p.J * (n - 1) / 2.0, GeneratorKind::sum_xx()}, {-p.J * p.gamma * (n - 1) / 2.0, GeneratorKind::sum_yy()}, {p.hz * n, GeneratorKind::sum_z()}};
}

ops::BlockOperator compose_terms(const std::vector<std::pair<double, GeneratorKind>> &terms, int n, const std::string &label) {
    std::vector<ops::BlockOperator>                            parts;
    std::vector<std::pair<double, const ops::BlockOperator *>> weighted;
    parts.reserve(terms.size());
    for(const auto &[c, kind] : terms) parts.push_back(ops::make_operator(kind, n));
    for(std::size_t i = 0; i < terms.size(); ++i) weighted.emplace_back(terms[i].first, &parts[i]);
    auto op  = ops::compose(weighted);
    op.label = label;
    return op;
}

} // namespace

ScheduleParams ScheduleParams::defaults(int n) { return {10.0 * n, 4 * n, Schedule::Linear}; }

double ScheduleParams::s(double t) const {
    switch(schedule) {
        case Schedule::Linear: return std::clamp(t / T, 0.0, 1.0);
    }
    return 0.0;
}

void ScheduleParams::validate() const {
    if(!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument(fmt::format("anneal time must be positive, got {}", T));
    if(L < 1) throw InvalidArgument(fmt::format("step count must be positive, got {}", L));
}

ops::BlockOperator lmg_hamiltonian(const LmgParams &params, int n) {
    check_qubits(n);
    return compose_terms(lmg_terms(params, n), n, "lmg");
}

ops::BlockOperator initial_hamiltonian(int n) {
    check_qubits(n);
    return compose_terms({{-static_cast<double>(n), GeneratorKind::sum_x()}}, n, "initial");
}

evolution::Circuit aqc_circuit(const LmgParams &params, const ScheduleParams &sched, int n) {
    sched.validate();
    const auto         h0 = initial_hamiltonian(n);
    const auto         h1 = lmg_hamiltonian(params, n);
    evolution::Circuit circuit;
    circuit.reserve(static_cast<std::size_t>(sched.L));
    for(int j = 1; j <= sched.L; ++j) {
        const double s = sched.s(j * sched.dt());
        circuit.push_back({ops::compose({{1.0 - s, &h0}, {s, &h1}}), sched.dt(), ""});
    }
    return circuit;
}

SchurState aqc_run(const LmgParams &params, const ScheduleParams &sched, int n) {
    check_qubits(n);
    sched.validate();
    const auto h0 = symmetric_band(symmetric_only({{-static_cast<double>(n), GeneratorKind::sum_x()}}, n));
    const auto h1 = symmetric_band(symmetric_only(lmg_terms(params, n), n));

    VectorC                      psi = evolution::prepare_state(evolution::StateKind::AllPlus, n).psi();
    evolution::SymmetricBand     h(n + 1, kAqcBandwidth);
    evolution::BandedEigensystem sys;
    for(int j = 1; j <= sched.L; ++j) {
        const double s = sched.s(j * sched.dt());
        std::fill(h.lower.begin(), h.lower.end(), 0.0);
        h.axpy(1.0 - s, h0);
        h.axpy(s, h1);
        sys.compute(h);
        sys.propagate(psi, sched.dt());
    }
    const double norm = psi.norm();
    if(std::abs(norm - 1.0) > 1e-10) throw NumericalError(fmt::format("norm drifted to {:.15g} during the anneal", norm));
    psi /= norm;
    return SchurState::pure(n, std::move(psi));
}

double energy(const SchurState &state, const LmgParams &params) {
    const int n   = state.n();
    double    acc = 0.0;
    for(const auto &[c, kind] : lmg_terms(params, n)) acc += c * kind_expectation(state, kind);
    return acc;
}

double order_parameter(const SchurState &state) {
    const double n = state.n();
    // (sum_i Z_i)^2 = n + n(n-1) SumZZ
    const double zz      = n < 2 ? 0.0 : kind_expectation(state, GeneratorKind::sum_zz());
    const double squared = n + n * (n - 1.0) * zz;
    return 1.0 - squared / (n * n);
}

TwoQubitRdm two_qubit_rdm(const SchurState &state) {
    check_qubits(state.n());
    constexpr std::array<Pauli, 4> paulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    Matrix4c                       rho = Matrix4c::Zero();
    for(std::size_t a = 0; a < 4; ++a)
        for(std::size_t b = a; b < 4; ++b) {
            const double v = (a == 0 && b == 0) ? 1.0 : kind_expectation(state, GeneratorKind::two_local(paulis[a], paulis[b]));
            rho += v * kron(pauli_matrix(paulis[a]), pauli_matrix(paulis[b]));
            if(a != b) rho += v * kron(pauli_matrix(paulis[b]), pauli_matrix(paulis[a]));
        }
    rho /= 4.0;
    rho = (0.5 * (rho + rho.adjoint())).eval();

    Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
    Eigen::Vector4d                         lambda  = es.eigenvalues();
    double                                  clipped = 0.0;
    for(int i = 0; i < 4; ++i)
        if(lambda(i) < 0.0) {
            clipped += -lambda(i);
            lambda(i) = 0.0;
        }
    if(clipped > kClipAbort) throw NumericalError(fmt::format("two-qubit state has {:.3e} negative weight", clipped));
    if(clipped > 0.0) {
        if(clipped > kClipRenormalize) lambda /= lambda.sum();
        rho = es.eigenvectors() * lambda.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    }
    return {rho};
}

double concurrence(const TwoQubitRdm &rdm) {
    const Matrix4c yy    = kron(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y));
    const Matrix4c tilde = yy * rdm.rho.conjugate() * yy;
    // R = rho tilde has the spectrum of sqrt(rho) tilde sqrt(rho), which is Hermitian.
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(rdm.rho);
    const Eigen::Vector4d                   root_vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix4c                          root      = es.eigenvectors() * root_vals.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    const Matrix4c                          r         = root * tilde * root;
    Eigen::SelfAdjointEigenSolver<Matrix4c> rs(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
    Eigen::Vector4d                         nu = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(nu.data(), nu.data() + 4, std::greater<>());
    return std::clamp(nu(0) - nu(1) - nu(2) - nu(3), 0.0, 1.0);
}

LmgObservables measure(const SchurState &state) {
    LmgObservables out{};
    out.order_param          = order_parameter(state);
    out.rdm                  = two_qubit_rdm(state);
    out.concurrence          = concurrence(out.rdm);
    out.rescaled_concurrence = rescaled_concurrence(state.n(), out.concurrence);
    return out;
}

ThermodynamicLimit thermodynamic_references(double gamma, double hz) {
    if(!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument(fmt::format("anisotropy must lie in [0,1], got {}", gamma));
    if(!std::isfinite(hz)) throw InvalidArgument("field must be finite");
    const double h = std::abs(hz);
    ThermodynamicLimit out{};
    out.order_param = h < 1.0 ? 1.0 - h * h : 0.0;
    if(h >= 1.0)
        out.rescaled_concurrence = (h == gamma) ? 1.0 : 1.0 - std::sqrt((h - 1.0) / (h - gamma));
    else if(h >= std::sqrt(gamma))
        out.rescaled_concurrence = 1.0 - std::sqrt((1.0 - h * h) / (1.0 - gamma));
    else
        out.rescaled_concurrence = 1.0 - std::sqrt((1.0 - gamma) / (1.0 - h * h));
    return out;
}

} // namespace permsim::lmg
