#pragma once

#include "permsim/schur/irreps.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace permsim::ops {

enum class Pauli { I, X, Y, Z };

enum class Kind { SumX, SumY, SumZ, SumXX, SumYY, SumZZ, GlobalX, GlobalY, GlobalZ, TwoLocal, KLocal };

/// A named S_n-equivariant operator.
///
/// Normalizations: one-body sums carry 1/n, two-body sums 2/(n(n-1)), global
/// strings 1, and KLocal(k) is the twirl of a single Pauli string with weight
/// vector k. TwoLocal(P, Q) is the twirl of P on qubit 1 and Q on qubit 2.
/// Under these conventions every named kind coincides with the twirl of a
/// representative Pauli string (see twirl_weight()).
struct GeneratorKind {
    Kind                 tag{Kind::SumZ};
    Pauli                p{Pauli::I};
    Pauli                q{Pauli::I};
    schur::WeightVector  kvec{};

    static GeneratorKind sum_x() { return {Kind::SumX}; }
    static GeneratorKind sum_y() { return {Kind::SumY}; }
    static GeneratorKind sum_z() { return {Kind::SumZ}; }
    static GeneratorKind sum_xx() { return {Kind::SumXX}; }
    static GeneratorKind sum_yy() { return {Kind::SumYY}; }
    static GeneratorKind sum_zz() { return {Kind::SumZZ}; }
    static GeneratorKind global_x() { return {Kind::GlobalX}; }
    static GeneratorKind global_y() { return {Kind::GlobalY}; }
    static GeneratorKind global_z() { return {Kind::GlobalZ}; }
    static GeneratorKind two_local(Pauli a, Pauli b) { return {Kind::TwoLocal, a, b}; }
    static GeneratorKind k_local(schur::WeightVector k) { return {Kind::KLocal, Pauli::I, Pauli::I, k}; }

    bool operator==(const GeneratorKind &) const = default;
};

/// Stable identifier, e.g. "sum-xx", "global-y", "two-local:XZ", "kvec:1,1,0".
std::string name(const GeneratorKind &kind);

/// Inverse of name(). Throws InvalidArgument on unknown input.
GeneratorKind parse_kind(std::string_view text);

schur::WeightVector parse_kvec(std::string_view text);

char to_char(Pauli p);
Pauli parse_pauli(char c);

/// Weight vector of the Pauli string whose twirl equals this kind at n qubits.
schur::WeightVector twirl_weight(const GeneratorKind &kind, int n);

/// Coefficient multiplying the plain sum over distinct Pauli strings:
/// 1/n, 2/(n(n-1)), 1, or k_X!k_Y!k_Z!(n-k)!/n!.
double normalization(const GeneratorKind &kind, int n);

/// Factor converting this kind's normalization into the twirl normalization of
/// twirl_weight(). Equal to 1 for every kind with the conventions above; the
/// value is computed, not assumed.
double twirl_ratio(const GeneratorKind &kind, int n);

/// The generating set {SumX, SumY, SumZ, SumXX, SumYY, SumZZ}.
std::vector<GeneratorKind> generator_set();

/// The generating set plus the three global strings.
std::vector<GeneratorKind> observable_set();

/// All sixteen TwoLocal(P, Q).
std::vector<GeneratorKind> two_local_set();

/// Smallest n for which the kind is defined.
int min_qubits(const GeneratorKind &kind);

} // namespace permsim::ops
