#pragma once

#include "permsim/core/types.hpp"
#include "permsim/evolution/circuit.hpp"
#include "permsim/evolution/state.hpp"
#include "permsim/ops/block_operator.hpp"

#include <Eigen/Core>

/// Digitized adiabatic preparation of Lipkin-Meshkov-Glick ground states.
///
/// H_LMG = -(J/n) sum_{i<j} (X_i X_j + gamma Y_i Y_j) + h_z sum_i Z_i,
/// reached from H_0 = -sum_i X_i and |+>^n along H(t) = (1 - s) H_0 + s H_LMG.
namespace permsim::lmg {

struct LmgParams {
    double J{1.0};
    double gamma{0.5};
    double hz{1.0};
};

enum class Schedule { Linear };

/// L steps of length T/L at t_j = j T / L, j = 1 .. L.
struct ScheduleParams {
    double   T{1.0};
    int      L{1};
    Schedule schedule{Schedule::Linear};

    /// L = 4n, T = 10n.
    static ScheduleParams defaults(int n);
    [[nodiscard]] double s(double t) const;
    [[nodiscard]] double dt() const { return T / L; }
    void validate() const;
};

using Matrix4c = Eigen::Matrix<cplx, 4, 4>;

/// Reduced state of any two qubits, qubit 1 as the first tensor factor.
struct TwoQubitRdm {
    Matrix4c rho;
};

struct ThermodynamicLimit {
    double order_param;
    double rescaled_concurrence;
};

struct LmgObservables {
    double      order_param;
    TwoQubitRdm rdm;
    double      concurrence;
    double      rescaled_concurrence;
};

ops::BlockOperator lmg_hamiltonian(const LmgParams &params, int n);

/// -sum_i X_i.
ops::BlockOperator initial_hamiltonian(int n);

/// The AQC steps as an explicit circuit over all irreps. Memory grows as
/// L n^3, so this is meant for small n and cross-checks.
evolution::Circuit aqc_circuit(const LmgParams &params, const ScheduleParams &sched, int n);

/// Runs the AQC on the symmetric irrep only. Each step exponentiates the
/// real pentadiagonal block of H(t_j) through the banded eigensystem.
evolution::SchurState aqc_run(const LmgParams &params, const ScheduleParams &sched, int n);

/// <H_LMG> in the given state.
double energy(const evolution::SchurState &state, const LmgParams &params);

/// 1 - <(sum_i Z_i)^2>/n^2, which is 0 for fully polarized states and
/// 1 - h_z^2 below the transition.
double order_parameter(const evolution::SchurState &state);

/// rho_12 = 1/4 sum_{P,Q} <P_1 Q_2> P (x) Q from the ten symmetrized two-local
/// expectations. Throws NumericalError if more than 1e-6 of negative weight
/// has to be clipped.
TwoQubitRdm two_qubit_rdm(const evolution::SchurState &state);

/// Wootters concurrence.
double concurrence(const TwoQubitRdm &rdm);

inline double rescaled_concurrence(int n, double c) { return (n - 1) * c; }

LmgObservables measure(const evolution::SchurState &state);

/// Limits of the order parameter and of (n-1) C as n -> infinity, J = 1.
ThermodynamicLimit thermodynamic_references(double gamma, double hz);

} // namespace permsim::lmg
