#include "permsim/oracle/dense.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/schur/irreps.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace permsim::oracle {

namespace {

thread_local int active_cap = kMaxOracleQubits;

std::size_t dim_of(int n) { return std::size_t{1} << n; }

int bit_of(std::size_t x, int qubit, int n) { return static_cast<int>((x >> (n - 1 - qubit)) & 1U); }

std::size_t permuted_index(std::size_t x, const Permutation &sigma, int n) {
    std::size_t out = 0;
    for(int i = 0; i < n; ++i)
        if(bit_of(x, i, n)) out |= std::size_t{1} << (n - 1 - sigma[static_cast<std::size_t>(i)]);
    return out;
}

void check_permutation(const Permutation &sigma, int n) {
    if(sigma.size() != static_cast<std::size_t>(n)) throw InvalidArgument(fmt::format("permutation has {} entries, expected {}", sigma.size(), n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for(int s : sigma) {
        if(s < 0 || s >= n || seen[static_cast<std::size_t>(s)]) throw InvalidArgument("not a permutation");
        seen[static_cast<std::size_t>(s)] = true;
    }
}

/// Adds coeff * P to `out` where P is a Pauli string given per qubit.
void add_pauli_string(MatrixC &out, const std::vector<ops::Pauli> &paulis, cplx coeff) {
    const int   n    = static_cast<int>(paulis.size());
    std::size_t mask = 0;
    for(int j = 0; j < n; ++j) {
        const auto p = paulis[static_cast<std::size_t>(j)];
        if(p == ops::Pauli::X || p == ops::Pauli::Y) mask |= std::size_t{1} << (n - 1 - j);
    }
    for(std::size_t x = 0; x < dim_of(n); ++x) {
        cplx phase = coeff;
        for(int j = 0; j < n; ++j) {
            const int b = bit_of(x, j, n);
            switch(paulis[static_cast<std::size_t>(j)]) {
                case ops::Pauli::Y: phase *= b ? cplx{0.0, -1.0} : cplx{0.0, 1.0}; break;
                case ops::Pauli::Z:
                    if(b) phase = -phase;
                    break;
                default: break;
            }
        }
        out(static_cast<Eigen::Index>(x ^ mask), static_cast<Eigen::Index>(x)) += phase;
    }
}

void enumerate_strings(std::vector<ops::Pauli> &current, int pos, int kx, int ky, int kz, MatrixC &out, cplx coeff) {
    const int n    = static_cast<int>(current.size());
    const int left = n - pos;
    if(pos == n) {
        add_pauli_string(out, current, coeff);
        return;
    }
    if(left > kx + ky + kz) {
        current[static_cast<std::size_t>(pos)] = ops::Pauli::I;
        enumerate_strings(current, pos + 1, kx, ky, kz, out, coeff);
    }
    if(kx > 0) {
        current[static_cast<std::size_t>(pos)] = ops::Pauli::X;
        enumerate_strings(current, pos + 1, kx - 1, ky, kz, out, coeff);
    }
    if(ky > 0) {
        current[static_cast<std::size_t>(pos)] = ops::Pauli::Y;
        enumerate_strings(current, pos + 1, kx, ky - 1, kz, out, coeff);
    }
    if(kz > 0) {
        current[static_cast<std::size_t>(pos)] = ops::Pauli::Z;
        enumerate_strings(current, pos + 1, kx, ky, kz - 1, out, coeff);
    }
}

VectorC kron(const VectorC &a, const VectorC &b) {
    VectorC out(a.size() * b.size());
    for(Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

} // namespace

UnsafeOracleScope::UnsafeOracleScope(int max_qubits) : previous_(active_cap) { active_cap = max_qubits; }

UnsafeOracleScope::~UnsafeOracleScope() { active_cap = previous_; }

void guard(int n) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    if(n > active_cap) throw ResourceGuard(fmt::format("dense oracle is capped at {} qubits, got n={}", active_cap, n));
}

MatrixC permutation_matrix(const Permutation &sigma, int n) {
    guard(n);
    check_permutation(sigma, n);
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    MatrixC    r   = MatrixC::Zero(dim, dim);
    for(std::size_t x = 0; x < dim_of(n); ++x) r(static_cast<Eigen::Index>(permuted_index(x, sigma, n)), static_cast<Eigen::Index>(x)) = 1.0;
    return r;
}

MatrixC conjugate_by_permutation(const MatrixC &a, const Permutation &sigma, int n) {
    guard(n);
    check_permutation(sigma, n);
    const std::size_t        dim = dim_of(n);
    std::vector<Eigen::Index> pi(dim);
    for(std::size_t x = 0; x < dim; ++x) pi[x] = static_cast<Eigen::Index>(permuted_index(x, sigma, n));
    MatrixC out(a.rows(), a.cols());
    for(std::size_t b = 0; b < dim; ++b)
        for(std::size_t r = 0; r < dim; ++r) out(pi[r], pi[b]) = a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b));
    return out;
}

MatrixC twirl(const MatrixC &a, int n) {
    guard(n);
    const std::size_t dim = dim_of(n);
    if(a.rows() != static_cast<Eigen::Index>(dim) || a.cols() != static_cast<Eigen::Index>(dim))
        throw InvalidArgument(fmt::format("operator is {}x{}, expected {}x{}", a.rows(), a.cols(), dim, dim));
    Permutation sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    MatrixC                   acc = MatrixC::Zero(a.rows(), a.cols());
    std::vector<Eigen::Index> pi(dim);
    double                    count = 0.0;
    do {
        for(std::size_t x = 0; x < dim; ++x) pi[x] = static_cast<Eigen::Index>(permuted_index(x, sigma, n));
        for(std::size_t b = 0; b < dim; ++b)
            for(std::size_t r = 0; r < dim; ++r) acc(pi[r], pi[b]) += a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b));
        count += 1.0;
    } while(std::next_permutation(sigma.begin(), sigma.end()));
    return acc / count;
}

MatrixC pauli_string(const std::vector<ops::Pauli> &paulis) {
    const int n = static_cast<int>(paulis.size());
    guard(n);
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    MatrixC    out = MatrixC::Zero(dim, dim);
    add_pauli_string(out, paulis, 1.0);
    return out;
}

MatrixC symmetrized_pauli(const schur::WeightVector &kvec, int n) {
    guard(n);
    if(kvec.x < 0 || kvec.y < 0 || kvec.z < 0 || kvec.total() > n) throw InvalidArgument(fmt::format("invalid weight vector {} for n={}", schur::to_string(kvec), n));
    const double pref = std::exp(schur::log_factorial(kvec.x) + schur::log_factorial(kvec.y) + schur::log_factorial(kvec.z) +
                                 schur::log_factorial(n - kvec.total()) - schur::log_factorial(n));
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    MatrixC    out = MatrixC::Zero(dim, dim);
    std::vector<ops::Pauli> current(static_cast<std::size_t>(n), ops::Pauli::I);
    enumerate_strings(current, 0, kvec.x, kvec.y, kvec.z, out, pref);
    return out;
}

MatrixC dense_operator(const ops::GeneratorKind &kind, int n) {
    guard(n);
    using ops::Kind;
    using ops::Pauli;
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    MatrixC    out = MatrixC::Zero(dim, dim);
    auto one_body = [&](Pauli p) {
        for(int i = 0; i < n; ++i) {
            std::vector<Pauli> s(static_cast<std::size_t>(n), Pauli::I);
            s[static_cast<std::size_t>(i)] = p;
            add_pauli_string(out, s, 1.0 / n);
        }
    };
    auto two_body = [&](Pauli p, Pauli q, bool ordered) {
        if(n < 2) throw InvalidArgument("two-body operators need n >= 2");
        const double pairs = ordered ? n * (n - 1.0) : n * (n - 1.0) / 2.0;
        for(int i = 0; i < n; ++i)
            for(int j = 0; j < n; ++j) {
                if(i == j || (!ordered && j < i)) continue;
                std::vector<Pauli> s(static_cast<std::size_t>(n), Pauli::I);
                s[static_cast<std::size_t>(i)] = p;
                s[static_cast<std::size_t>(j)] = q;
                add_pauli_string(out, s, 1.0 / pairs);
            }
    };
    switch(kind.tag) {
        case Kind::SumX: one_body(Pauli::X); break;
        case Kind::SumY: one_body(Pauli::Y); break;
        case Kind::SumZ: one_body(Pauli::Z); break;
        case Kind::SumXX: two_body(Pauli::X, Pauli::X, false); break;
        case Kind::SumYY: two_body(Pauli::Y, Pauli::Y, false); break;
        case Kind::SumZZ: two_body(Pauli::Z, Pauli::Z, false); break;
        case Kind::GlobalX: add_pauli_string(out, std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::X), 1.0); break;
        case Kind::GlobalY: add_pauli_string(out, std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::Y), 1.0); break;
        case Kind::GlobalZ: add_pauli_string(out, std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::Z), 1.0); break;
        case Kind::TwoLocal: two_body(kind.p, kind.q, true); break;
        case Kind::KLocal: return symmetrized_pauli(kind.kvec, n);
    }
    return out;
}

VectorC basis_state(int n, std::size_t index) {
    guard(n);
    if(index >= dim_of(n)) throw InvalidArgument(fmt::format("basis index {} out of range for n={}", index, n));
    VectorC v = VectorC::Zero(static_cast<Eigen::Index>(dim_of(n)));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

VectorC dicke_state(int n, int weight) {
    if(n == 0) return VectorC::Ones(1);
    guard(n);
    if(weight < 0 || weight > n) throw InvalidArgument(fmt::format("Dicke weight {} out of range for n={}", weight, n));
    VectorC v = VectorC::Zero(static_cast<Eigen::Index>(dim_of(n)));
    for(std::size_t x = 0; x < dim_of(n); ++x)
        if(std::popcount(x) == weight) v(static_cast<Eigen::Index>(x)) = 1.0;
    return v / v.norm();
}

VectorC plus_state(int n) {
    guard(n);
    return VectorC::Constant(static_cast<Eigen::Index>(dim_of(n)), 1.0 / std::sqrt(static_cast<double>(dim_of(n))));
}

VectorC canonical_schur_vector(int n, int m, int q) {
    guard(n);
    if(m < 0 || 2 * m > n || q < 0 || q > n - 2 * m) throw InvalidArgument(fmt::format("invalid Schur label (m={}, q={}) for n={}", m, q, n));
    VectorC singlet(4);
    singlet << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    VectorC out = VectorC::Ones(1);
    for(int i = 0; i < m; ++i) out = kron(out, singlet);
    return kron(out, dicke_state(n - 2 * m, q));
}

MatrixC canonical_schur_basis(int n, int m) {
    guard(n);
    const int d = n - 2 * m + 1;
    MatrixC   v(static_cast<Eigen::Index>(dim_of(n)), d);
    for(int q = 0; q < d; ++q) v.col(q) = canonical_schur_vector(n, m, q);
    return v;
}

VectorC symmetric_to_dense(int n, const VectorC &psi) {
    if(psi.size() != n + 1) throw InvalidArgument(fmt::format("symmetric vector needs {} entries, got {}", n + 1, psi.size()));
    return canonical_schur_basis(n, 0) * psi;
}

MatrixC project_block(const MatrixC &a, int n, int m) {
    const MatrixC v = canonical_schur_basis(n, m);
    return v.adjoint() * a * v;
}

std::vector<MatrixC> block_state(const MatrixC &rho, int n) {
    const MatrixC        sym = twirl(rho, n);
    std::vector<MatrixC> out;
    for(const auto &irrep : schur::enumerate_irreps(n)) out.push_back(irrep.mult_double() * project_block(sym, n, irrep.m));
    return out;
}

MatrixC exp_hermitian(const MatrixC &h, double t) {
    Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
    if(es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    const VectorC phases = (es.eigenvalues().cast<cplx>() * cplx{0.0, -t}).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixC circuit_unitary(const std::vector<DenseLayer> &layers, int n) {
    guard(n);
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    MatrixC    u   = MatrixC::Identity(dim, dim);
    for(const auto &layer : layers) u = exp_hermitian(layer.hamiltonian, layer.time) * u;
    return u;
}

double dense_expectation(const std::vector<DenseLayer> &layers, const MatrixC &rho, const MatrixC &obs) {
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(rho.rows()))));
    const MatrixC u   = circuit_unitary(layers, n);
    const cplx    val = (u * rho * u.adjoint() * obs).trace();
    return val.real();
}

MatrixC partial_trace_two(const MatrixC &rho, int n) {
    guard(n);
    if(n < 2) throw InvalidArgument("partial trace to two qubits needs n >= 2");
    const Eigen::Index rest = static_cast<Eigen::Index>(dim_of(n - 2));
    MatrixC            out  = MatrixC::Zero(4, 4);
    for(Eigen::Index a = 0; a < 4; ++a)
        for(Eigen::Index b = 0; b < 4; ++b)
            for(Eigen::Index r = 0; r < rest; ++r) out(a, b) += rho(a * rest + r, b * rest + r);
    return out;
}

MatrixC tensor_power(const Eigen::Matrix2cd &w, int n) {
    guard(n);
    MatrixC out = MatrixC::Identity(1, 1);
    for(int i = 0; i < n; ++i) {
        MatrixC next(out.rows() * 2, out.cols() * 2);
        for(int a = 0; a < 2; ++a)
            for(int b = 0; b < 2; ++b) next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = w(a, b) * out;
        out = std::move(next);
    }
    return out;
}

MatrixC hamming_projector(int n, int h) {
    guard(n);
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    MatrixC    out = MatrixC::Zero(dim, dim);
    for(std::size_t x = 0; x < dim_of(n); ++x)
        if(std::popcount(x) == h) out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
    return out;
}

MatrixC normalized_symmetrized_pauli(const schur::WeightVector &kvec, int n) {
    const double log_count = schur::log_factorial(n) - schur::log_factorial(kvec.x) - schur::log_factorial(kvec.y) - schur::log_factorial(kvec.z) -
                             schur::log_factorial(n - kvec.total());
    // average times count, over sqrt(2^n count)
    return symmetrized_pauli(kvec, n) * std::exp(0.5 * log_count - 0.5 * n * std::log(2.0));
}

MatrixR shadow_channel_quadrature(int n, const std::vector<schur::WeightVector> &basis) {
    guard(n);
    if(n > 9) throw ResourceGuard("quadrature nodes only cover n <= 9");
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    std::vector<double> zs, wz;
    for(std::size_t i = 0; i < Gauss::abscissa().size(); ++i) {
        zs.push_back(Gauss::abscissa()[i]);
        wz.push_back(Gauss::weights()[i]);
        if(Gauss::abscissa()[i] != 0.0) {
            zs.push_back(-Gauss::abscissa()[i]);
            wz.push_back(Gauss::weights()[i]);
        }
    }
    const int            phases = 2 * n + 2;
    std::vector<MatrixC> elements;
    for(const auto &k : basis) elements.push_back(normalized_symmetrized_pauli(k, n));
    std::vector<MatrixC> projectors;
    for(int h = 0; h <= n; ++h) projectors.push_back(hamming_projector(n, h));
    const auto size = static_cast<Eigen::Index>(basis.size());
    MatrixR    out  = MatrixR::Zero(size, size);
    VectorR    v(size);
    for(std::size_t iz = 0; iz < zs.size(); ++iz) {
        const double t2 = std::acos(zs[iz]);
        for(int i1 = 0; i1 < phases; ++i1)
            for(int i3 = 0; i3 < phases; ++i3) {
                const double t1 = 2.0 * std::numbers::pi * i1 / phases, t3 = 2.0 * std::numbers::pi * i3 / phases;
                Eigen::Matrix2cd z1 = Eigen::Matrix2cd::Zero(), z3 = Eigen::Matrix2cd::Zero(), y;
                z1(0, 0) = std::polar(1.0, -t1 / 2);
                z1(1, 1) = std::polar(1.0, t1 / 2);
                z3(0, 0) = std::polar(1.0, -t3 / 2);
                z3(1, 1) = std::polar(1.0, t3 / 2);
                y << std::cos(t2 / 2), -std::sin(t2 / 2), std::sin(t2 / 2), std::cos(t2 / 2);
                const MatrixC w      = tensor_power(z3 * y * z1, n);
                // uniform measure: dz/2 dt1/2pi dt3/2pi
                const double  weight = 0.5 * wz[iz] / (phases * phases);
                for(int h = 0; h <= n; ++h) {
                    const MatrixC mh = w.adjoint() * projectors[static_cast<std::size_t>(h)] * w;
                    for(Eigen::Index a = 0; a < size; ++a) v(a) = (elements[static_cast<std::size_t>(a)] * mh).trace().real();
                    out += weight * v * v.transpose();
                }
            }
    }
    return out;
}

Permutation random_permutation(int n, std::uint64_t seed) {
    Permutation sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::mt19937_64 gen(seed);
    for(int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(pick(gen))]);
    }
    return sigma;
}

} // namespace permsim::oracle
