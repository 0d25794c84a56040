#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

/// Irrep bookkeeping for the commutant of the qubit-permuting representation.
///
/// For n qubits the irreps are two-row partitions (n - m, m) with
/// 0 <= m <= floor(n/2). Equivariant operators act on each irrep through a
/// block of size d = n - 2m + 1 repeated `mult` times.
namespace permsim::schur {

using BigInt = boost::multiprecision::cpp_int;

/// Largest argument supported by log_factorial(). Blocks are built for n up to
/// half of this.
inline constexpr int kMaxLogFactorial = 4096;

struct IrrepLabel {
    int    n{};
    int    m{};
    int    d{};    ///< block dimension n - 2m + 1
    BigInt mult{}; ///< multiplicity of the block (number of standard tableaux)

    /// Spin of the symmetric register, n/2 - m.
    [[nodiscard]] double spin() const { return 0.5 * n - m; }
    /// Row lengths (n - m, m).
    [[nodiscard]] std::pair<int, int> partition() const { return {n - m, m}; }
    /// Multiplicity as a double; exact for n <= 56, rounded above.
    [[nodiscard]] double mult_double() const;
    [[nodiscard]] double log_mult() const;
};

struct WeightVector {
    int x{};
    int y{};
    int z{};

    [[nodiscard]] int total() const { return x + y + z; }
    auto operator<=>(const WeightVector &) const = default;
};

std::string to_string(const WeightVector &k);

/// Canonical Schur basis label |lambda, p0, q>. Hamming weight is q + m.
struct SchurIndex {
    IrrepLabel irrep;
    int        q{};

    [[nodiscard]] int hamming() const { return q + irrep.m; }
};

IrrepLabel make_irrep(int n, int m);

/// floor(n/2)+1 labels, m ascending. Throws InvalidArgument for n < 1.
std::vector<IrrepLabel> enumerate_irreps(int n);

/// dim comm(S_n) = C(n+3, 3).
std::uint64_t commutant_dim(int n);

/// All (kx, ky, kz) with kx+ky+kz <= k_max, ordered by (k, kx, ky) ascending.
std::vector<WeightVector> enumerate_weight_vectors(int n, int k_max);

/// Position of `k` in enumerate_weight_vectors(n, k_max) for any k_max >= k.total().
std::size_t weight_vector_index(const WeightVector &k);

BigInt binomial(int n, int k);
BigInt factorial(int n);

/// log(k!) from a table built once per process.
double log_factorial(int k);

/// The whole table, entries 0..kMaxLogFactorial, for hot loops.
std::span<const double> log_factorials();

/// log C(n, k); -inf when k is out of range.
double log_binomial(int n, int k);

} // namespace permsim::schur
