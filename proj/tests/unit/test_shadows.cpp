#include "catch_amalgamated.hpp"

#include "permsim/oracle/models.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/evolution/circuit.hpp"
#include "permsim/ops/closed_form.hpp"
#include "permsim/ops/symmetrized_pauli.hpp"
#include "permsim/oracle/dense.hpp"
#include "permsim/shadows/shadows.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace permsim;
using namespace permsim::shadows;
using evolution::SchurState;
using schur::WeightVector;

namespace {

MatrixC dense_unitary(const EulerAngles &a, int n) { return oracle::tensor_power(single_qubit_unitary(a), n); }

EulerAngles random_angles(std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    return {u(gen), std::acos(c(gen)), u(gen)};
}

/// Random permutation-invariant state: evolve |0...0> or a random mixed state
/// through a random circuit, with its dense twin.
struct PairedState {
    SchurState state;
    MatrixC    rho;
};

PairedState random_pure(int n, std::mt19937_64 &gen) {
    const auto circuit = testing::random_circuit(n, 3, gen);
    auto       state   = evolution::schrodinger_evolve(circuit.blocks, evolution::prepare_state(evolution::StateKind::AllZero, n));
    const MatrixC u   = oracle::circuit_unitary(circuit.dense, n);
    const VectorC psi = u * oracle::basis_state(n, 0);
    return {std::move(state), psi * psi.adjoint()};
}

PairedState random_mixed(int n, std::mt19937_64 &gen) {
    const MatrixC rho = testing::random_density(n, gen);
    return {evolution::from_blocks(n, oracle::block_state(rho, n)), oracle::twirl(rho, n)};
}

/// Random Hermitian combination of generator kinds with its dense twin.
std::pair<ops::BlockOperator, MatrixC> random_observable(int n, std::mt19937_64 &gen) {
    std::uniform_real_distribution<double>                     c(-1.0, 1.0);
    std::vector<ops::BlockOperator>                            parts;
    MatrixC                                                    dense = MatrixC::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    const auto                                                 kinds = ops::generator_set();
    for(const auto &k : kinds) parts.push_back(ops::make_operator(k, n));
    std::vector<std::pair<double, const ops::BlockOperator *>> terms;
    for(std::size_t i = 0; i < kinds.size(); ++i) {
        const double w = c(gen);
        terms.emplace_back(w, &parts[i]);
        dense += w * oracle::dense_operator(kinds[i], n);
    }
    return {ops::compose(terms), dense};
}

/// Sphere moment E[n_x^a n_y^b n_z^c] for uniform unit n.
double sphere_moment(int a, int b, int c) {
    if(a % 2 || b % 2 || c % 2) return 0.0;
    const int p = a / 2, q = b / 2, r = c / 2, s = p + q + r;
    auto      lf = schur::log_factorial;
    return std::exp(lf(a) - lf(p) + lf(b) - lf(q) + lf(c) - lf(r) + lf(s) - lf(2 * s + 1));
}

/// c(k, k') = sum_h E[v_k v_k'] from the factorized form of the measurement
/// vector; krawtchouk(|k|, |k'|) = sum_h a(h, |k|) a(h, |k'|).
double moment_channel_entry(int n, const MatrixR &krawtchouk, const WeightVector &k, const WeightVector &kp) {
    auto lf = schur::log_factorial;
    auto f  = [&](const WeightVector &w) { return std::exp(0.5 * (lf(n) - n * std::log(2.0) - lf(w.x) - lf(w.y) - lf(w.z) - lf(n - w.total()))); };
    return f(k) * f(kp) * krawtchouk(k.total(), kp.total()) * sphere_moment(k.x + kp.x, k.y + kp.y, k.z + kp.z);
}

MatrixR krawtchouk_gram(int n) {
    MatrixR out = MatrixR::Zero(n + 1, n + 1);
    for(int m = 0; m <= n; ++m)
        for(int mp = 0; mp <= n; ++mp) {
            schur::BigInt sum = 0;
            for(int h = 0; h <= n; ++h) sum += a_coeff(h, m, n) * a_coeff(h, mp, n);
            out(m, mp) = sum.convert_to<double>();
        }
    return out;
}

/// Exact average of f(angles) over Haar SU(2) by product quadrature, valid for
/// trigonometric polynomials of degree <= 2n in each half angle.
template <class F> double haar_average(int n, F &&f) {
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const int phases = 2 * n + 2;
    double    acc    = 0.0;
    for(std::size_t i = 0; i < Gauss::abscissa().size(); ++i)
        for(double sign : {1.0, -1.0}) {
            if(sign < 0 && Gauss::abscissa()[i] == 0.0) continue;
            const double t2 = std::acos(sign * Gauss::abscissa()[i]);
            for(int a = 0; a < phases; ++a)
                for(int b = 0; b < phases; ++b)
                    acc += 0.5 * Gauss::weights()[i] / (phases * phases) *
                           f(EulerAngles{2.0 * std::numbers::pi * a / phases, t2, 2.0 * std::numbers::pi * b / phases});
        }
    return acc;
}

} // namespace

TEST_CASE("Philox4x32-10 matches the published known-answer vectors", "[shadows][rng]") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::block({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) == C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("Philox substreams are reproducible and distinct", "[shadows][rng]") {
    Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for(int i = 0; i < 10; ++i) {
        const auto x = a();
        CHECK(x == b());
        CHECK(x != c());
        CHECK(x != d());
    }
    Philox4x32 u(1);
    for(int i = 0; i < 10000; ++i) {
        const double v = u.uniform();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("Euler angles sample the Haar measure on SU(2)", "[shadows][rng]") {
    Philox4x32 rng(2024);
    const int  count = 200000;
    double     z1 = 0, z2 = 0, c1 = 0;
    for(int i = 0; i < count; ++i) {
        const auto a    = sample_euler(rng);
        const auto axis = rotated_axis(a);
        z1 += axis[2];
        z2 += axis[2] * axis[2];
        c1 += axis[0];
        REQUIRE(a.theta1 >= 0.0);
        REQUIRE(a.theta1 < 2.0 * std::numbers::pi);
        REQUIRE(a.theta2 >= 0.0);
        REQUIRE(a.theta2 <= std::numbers::pi);
    }
    const double se = 1.0 / std::sqrt(3.0 * count);
    CHECK(std::abs(z1 / count) < 5 * se);
    CHECK(std::abs(c1 / count) < 5 * se);
    CHECK(std::abs(z2 / count - 1.0 / 3.0) < 5 * std::sqrt(4.0 / 45.0 / count));
}

TEST_CASE("Rotated axis describes W^dagger Z W", "[shadows]") {
    std::mt19937_64 gen(3);
    for(int t = 0; t < 20; ++t) {
        const auto             a = random_angles(gen);
        const Eigen::Matrix2cd w = single_qubit_unitary(a);
        CHECK((w * w.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
        CHECK(std::abs(w.determinant() - 1.0) < 1e-14);
        const auto axis = rotated_axis(a);
        CHECK(std::abs(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2] - 1.0) < 1e-14);
        CHECK(std::abs(axis[2] - std::cos(a.theta2)) < 1e-14);
        Eigen::Matrix2cd x, y, z;
        x << 0, 1, 1, 0;
        y << 0, cplx(0, -1), cplx(0, 1), 0;
        z << 1, 0, 0, -1;
        CHECK((w.adjoint() * z * w - (axis[0] * x + axis[1] * y + axis[2] * z)).norm() < 1e-14);
    }
}

TEST_CASE("Rotation blocks match the projected tensor power", "[shadows]") {
    std::mt19937_64 gen(5);
    for(int n : {1, 4, 5}) {
        const RotatedMeasurement meas(n);
        for(int t = 0; t < 3; ++t) {
            const auto    a = random_angles(gen);
            const MatrixC w = dense_unitary(a, n);
            for(const auto &irrep : schur::enumerate_irreps(n)) {
                const MatrixC expected = oracle::project_block(w, n, irrep.m);
                CHECK((meas.rotation_block(irrep.m, a) - expected).norm() < 1e-12);
            }
        }
    }
}

TEST_CASE("Hamming distributions match dense Born probabilities", "[shadows]") {
    std::mt19937_64 gen(7);
    const int       n = 4;
    for(bool mixed : {false, true}) {
        const auto paired = mixed ? random_mixed(n, gen) : random_pure(n, gen);
        for(int t = 0; t < 4; ++t) {
            const auto    a = random_angles(gen);
            const MatrixC w = dense_unitary(a, n);
            const VectorR p = rotated_hamming_distribution(paired.state, a);
            for(int h = 0; h <= n; ++h) {
                const double expected = (oracle::hamming_projector(n, h) * w * paired.rho * w.adjoint()).trace().real();
                CHECK(std::abs(p(h) - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("a(h, m) coefficients", "[shadows]") {
    CHECK(a_coeff(0, 0, 5) == 1);
    CHECK(a_coeff(2, 0, 5) == 10);
    CHECK(a_coeff(1, 1, 2) == 0);
    CHECK(a_coeff(2, 2, 2) == 1);
    CHECK(a_coeff(1, 2, 2) == -2);
    for(int n : {1, 6, 11})
        for(int m = 0; m <= n; ++m) {
            schur::BigInt sum = 0;
            for(int h = 0; h <= n; ++h) sum += a_coeff(h, m, n);
            CHECK(sum == (m == 0 ? schur::BigInt(1) << n : schur::BigInt(0)));
            CHECK(a_coeff(0, m, n) == 1);
        }
    CHECK_THROWS_AS(a_coeff(6, 0, 5), InvalidArgument);
    // a(h, m) = tr((Z^(x)m (x) 1) Pi_h) and alpha(h, m) = tr(B^m Pi_h)
    const int n = 5;
    for(int m = 0; m <= n; ++m) {
        std::vector<ops::Pauli> s(static_cast<std::size_t>(n), ops::Pauli::I);
        for(int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = ops::Pauli::Z;
        const MatrixC zs = oracle::pauli_string(s);
        const MatrixC bm = oracle::normalized_symmetrized_pauli({0, 0, m}, n);
        for(int h = 0; h <= n; ++h) {
            const MatrixC pi = oracle::hamming_projector(n, h);
            CHECK((zs * pi).trace().real() == Catch::Approx(a_coeff(h, m, n).convert_to<double>()).margin(1e-12));
            CHECK((bm * pi).trace().real() == Catch::Approx(alpha_coeff(h, m, n)).margin(1e-12));
        }
    }
}

TEST_CASE("Normalized symmetrized Paulis are orthonormal", "[shadows][oracle]") {
    const int  n     = 3;
    const auto basis = schur::enumerate_weight_vectors(n, n);
    for(std::size_t i = 0; i < basis.size(); ++i)
        for(std::size_t j = 0; j < basis.size(); ++j) {
            const cplx ip = (oracle::normalized_symmetrized_pauli(basis[i], n).adjoint() * oracle::normalized_symmetrized_pauli(basis[j], n)).trace();
            CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("Observable coordinates match dense traces", "[shadows]") {
    std::mt19937_64 gen(11);
    for(int n : {2, 4, 5}) {
        const auto [obs, dense] = random_observable(n, gen);
        const auto    basis     = schur::enumerate_weight_vectors(n, n);
        const VectorR coords    = observable_coordinates(obs);
        REQUIRE(coords.size() == static_cast<Eigen::Index>(basis.size()));
        for(std::size_t i = 0; i < basis.size(); ++i) {
            const cplx expected = (oracle::normalized_symmetrized_pauli(basis[i], n) * dense).trace();
            CHECK(std::abs(coords(static_cast<Eigen::Index>(i)) - expected.real()) < 1e-11);
        }
    }
    ops::BlockOperator skew = ops::make_operator(ops::GeneratorKind::sum_x(), 3);
    for(auto &b : skew.blocks) b.entries *= cplx(0.0, 1.0);
    CHECK_THROWS_AS(observable_coordinates(skew), NumericalError);
}

TEST_CASE("Measurement vectors match dense traces", "[shadows]") {
    std::mt19937_64 gen(13);
    for(int n : {1, 3, 4}) {
        const auto basis = schur::enumerate_weight_vectors(n, n);
        for(int t = 0; t < 3; ++t) {
            const auto    a = random_angles(gen);
            const MatrixC w = dense_unitary(a, n);
            for(int h = 0; h <= n; ++h) {
                const MatrixC mh = w.adjoint() * oracle::hamming_projector(n, h) * w;
                const VectorR v  = measurement_vector(n, a, h);
                for(std::size_t i = 0; i < basis.size(); ++i)
                    CHECK(std::abs(v(static_cast<Eigen::Index>(i)) - (oracle::normalized_symmetrized_pauli(basis[i], n) * mh).trace().real()) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(measurement_vector(3, {}, 4), InvalidArgument);
}

TEST_CASE("Channel matrix structure", "[shadows][channel]") {
    for(int n : {3, 6, 9}) {
        const ChannelMatrix c(n);
        CHECK(c.blocks().size() == 8);
        CHECK(c.dim() == schur::commutant_dim(n));
        const MatrixR dense = c.dense();
        CHECK((dense - dense.transpose()).norm() == 0.0);
        for(std::size_t i = 0; i < c.dim(); ++i)
            for(std::size_t j = 0; j < c.dim(); ++j)
                if(parity_class(c.basis()[i]) != parity_class(c.basis()[j])) REQUIRE(dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0.0);
        Eigen::SelfAdjointEigenSolver<MatrixR> es(dense);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        VectorR x = VectorR::LinSpaced(static_cast<Eigen::Index>(c.dim()), -1.0, 2.0);
        CHECK((c.apply(x) - dense * x).norm() < 1e-13 * x.norm());
        CHECK((c.apply(c.solve(x)) - x).norm() < 1e-9 * x.norm());
    }
    CHECK(ChannelMatrix(1).blocks().size() == 4);
    CHECK_THROWS_AS(ChannelMatrix(kMaxChannelQubits + 1), ResourceGuard);
    CHECK(ChannelMatrix(kMaxChannelQubits).dim() == schur::commutant_dim(kMaxChannelQubits));
    CHECK_THROWS_AS(ChannelMatrix(0), InvalidArgument);
}

TEST_CASE("Channel closed form matches dense quadrature", "[shadows][channel][oracle]") {
    for(int n = 1; n <= 4; ++n) {
        const ChannelMatrix c(n);
        const MatrixR       expected = oracle::shadow_channel_quadrature(n, c.basis());
        INFO("n = " << n);
        CHECK((c.dense() - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Channel closed form matches the sphere-moment formula", "[shadows][channel]") {
    for(int n : {5, 8, 12, 20}) {
        const ChannelMatrix c(n);
        const MatrixR       gram  = krawtchouk_gram(n);
        double              worst = 0.0;
        for(std::size_t i = 0; i < c.dim(); ++i)
            for(std::size_t j = 0; j <= i; ++j) {
                const double e = moment_channel_entry(n, gram, c.basis()[i], c.basis()[j]);
                worst          = std::max(worst, std::abs(c.entry(i, j) - e) / std::max(1.0, std::abs(e)));
            }
        INFO("n = " << n);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("Channel matches Monte Carlo over sampled rotations at n = 2", "[shadows][channel]") {
    const int           n = 2;
    const ChannelMatrix c(n);
    const auto          d = static_cast<Eigen::Index>(c.dim());
    MatrixR             acc = MatrixR::Zero(d, d);
    Philox4x32          rng(99);
    const int           count = 1000000;
    for(int s = 0; s < count; ++s) {
        const auto a = sample_euler(rng);
        for(int h = 0; h <= n; ++h) {
            const VectorR v = measurement_vector(n, a, h);
            acc += v * v.transpose();
        }
    }
    acc /= count;
    // entries are bounded by 1, so 5/sqrt(count) covers five standard errors
    CHECK((acc - c.dense()).cwiseAbs().maxCoeff() < 5.0 / std::sqrt(static_cast<double>(count)));
}

TEST_CASE("Symmetrized estimator is exactly unbiased under Haar averaging", "[shadows]") {
    std::mt19937_64 gen(17);
    for(int n : {2, 3, 4}) {
        const ChannelMatrix      channel(n);
        const RotatedMeasurement meas(n);
        for(bool mixed : {false, true}) {
            const auto paired       = mixed ? random_mixed(n, gen) : random_pure(n, gen);
            const auto [obs, dense] = random_observable(n, gen);
            const SymmetrizedEstimator est(channel, obs);
            const double mean = haar_average(n, [&](const EulerAngles &a) {
                const VectorR p   = meas.hamming_distribution(paired.state, a);
                double        acc = 0.0;
                for(int h = 0; h <= n; ++h) acc += p(h) * est({0, 0, a, h});
                return acc;
            });
            const double exact = (paired.rho * dense).trace().real();
            INFO("n = " << n << " mixed = " << mixed);
            CHECK(mean == Catch::Approx(exact).margin(1e-10));
            CHECK(exact == Catch::Approx(evolution::expectation(paired.state, obs)).margin(1e-12));
        }
    }
}

TEST_CASE("Estimator weights agree with the dense channel inverse", "[shadows]") {
    std::mt19937_64 gen(19);
    const int       n       = 5;
    const ChannelMatrix channel(n);
    const auto [obs, dense] = random_observable(n, gen);
    const SymmetrizedEstimator est(channel, obs);
    const VectorR              w = channel.dense().ldlt().solve(observable_coordinates(obs));
    CHECK((est.weights() - w).norm() < 1e-9 * w.norm());
    const auto a = random_angles(gen);
    CHECK(est({0, 0, a, 2}) == Catch::Approx(measurement_vector(n, a, 2).dot(w)).epsilon(1e-9));
    CHECK(estimator_symmetrized({0, 0, a, 2}, obs, channel) == Catch::Approx(est({0, 0, a, 2})).epsilon(1e-12));
    CHECK_THROWS_AS(SymmetrizedEstimator(ChannelMatrix(4), obs), InvalidArgument);
}

TEST_CASE("Haar register unitaries", "[shadows]") {
    for(int d : {1, 2, 7}) {
        const MatrixC v = haar_unitary(d, 5);
        CHECK((v * v.adjoint() - MatrixC::Identity(d, d)).norm() < 1e-12);
        CHECK((haar_unitary(d, 5) - v).norm() == 0.0);
    }
    CHECK((haar_unitary(4, 5) - haar_unitary(4, 6)).norm() > 0.1);
    const int d = 3, count = 20000;
    double    m2 = 0.0, m4 = 0.0;
    for(int s = 0; s < count; ++s) {
        const double p = std::norm(haar_unitary(d, static_cast<std::uint64_t>(s))(0, 1));
        m2 += p;
        m4 += p * p;
    }
    // |V_ij|^2 is Beta(1, d - 1): mean 1/d, second moment 2/(d(d+1))
    CHECK(std::abs(m2 / count - 1.0 / d) < 5 * std::sqrt(1.0 / 18.0 / count));
    CHECK(std::abs(m4 / count - 2.0 / (d * (d + 1))) < 0.01);
    CHECK_THROWS_AS(haar_unitary(0, 1), InvalidArgument);
}

TEST_CASE("Both protocols are unbiased on sampled snapshots", "[shadows]") {
    std::mt19937_64 gen(23);
    const int       n = 4;
    const ChannelMatrix channel(n);
    for(bool mixed : {false, true}) {
        const auto paired       = mixed ? random_mixed(n, gen) : random_pure(n, gen);
        const auto [obs, dense] = random_observable(n, gen);
        const double exact      = (paired.rho * dense).trace().real();
        const SymmetrizedEstimator est(channel, obs);
        const auto  sym = acquire_symmetrized(paired.state, 100000, 1234, 2);
        std::vector<double> es, ed;
        for(const auto &s : sym) es.push_back(est(s));
        const auto deep = acquire_deep(paired.state, 40000, 4321, 2);
        for(const auto &s : deep) ed.push_back(estimator_deep(s, obs));
        const Estimate rs = aggregate(es), rd = aggregate(ed);
        INFO("mixed = " << mixed << " exact " << exact << " sym " << rs.value << " +- " << rs.std_error << " deep " << rd.value << " +- " << rd.std_error);
        CHECK(std::abs(rs.value - exact) < 5 * rs.std_error);
        CHECK(std::abs(rd.value - exact) < 5 * rd.std_error);
        CHECK(rs.variance <= symmetrized_variance_bound(obs));
        CHECK(rd.variance <= deep_variance_bound(obs));
    }
}

TEST_CASE("Deep snapshots sample irreps by their weight", "[shadows]") {
    std::mt19937_64 gen(29);
    const int       n      = 4;
    const auto      paired = random_mixed(n, gen);
    const auto      snaps  = acquire_deep(paired.state, 30000, 77);
    std::vector<double> counts(static_cast<std::size_t>(n / 2 + 1), 0.0);
    for(const auto &s : snaps) {
        REQUIRE(s.outcome >= 0);
        REQUIRE(s.outcome < n - 2 * s.irrep_m + 1);
        counts[static_cast<std::size_t>(s.irrep_m)] += 1.0;
    }
    for(std::size_t m = 0; m < counts.size(); ++m) {
        const double p = paired.state.tau()[m].trace().real();
        CHECK(std::abs(counts[m] / snaps.size() - p) < 5 * std::sqrt(p * (1 - p) / snaps.size()) + 1e-12);
    }
    const auto pure = acquire_deep(evolution::prepare_state(evolution::StateKind::AllPlus, n), 100, 1);
    for(const auto &s : pure) CHECK(s.irrep_m == 0);
}

TEST_CASE("Variance bounds", "[shadows]") {
    const int  n   = 6;
    const auto obs = ops::make_operator(ops::GeneratorKind::sum_zz(), n);
    CHECK(deep_variance_bound(obs) == Catch::Approx(3.0 * (36 + 12 + 2) * std::pow(ops::operator_norm(obs), 2)));
    CHECK(symmetrized_variance_bound(obs) == Catch::Approx(13.0 * ops::frobenius_norm_sq(obs)));
}

TEST_CASE("Aggregation", "[shadows]") {
    const std::vector<double> v{1, 2, 3, 4};
    const Estimate            mean = aggregate(v);
    CHECK(mean.value == 2.5);
    CHECK(mean.variance == Catch::Approx(5.0 / 3.0));
    CHECK(mean.std_error == Catch::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(mean.count == 4);
    const std::vector<double> w{1, 2, 3, 100, 5, 6};
    const Estimate            mom = aggregate(w, Aggregation::MedianOfMeans, 3);
    CHECK(mom.value == 5.5);
    CHECK(aggregate(w, Aggregation::MedianOfMeans, 2).value == Catch::Approx((2.0 + 37.0) / 2.0));
    CHECK(aggregate(w, Aggregation::MedianOfMeans, 1).value == aggregate(w).value);
    CHECK_THROWS_AS(aggregate(std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(aggregate(v, Aggregation::MedianOfMeans, 5), InvalidArgument);
    CHECK(aggregate(std::vector<double>{7.0}).std_error == 0.0);
}

TEST_CASE("Snapshot records round-trip", "[shadows][io]") {
    const auto sym  = acquire_symmetrized(evolution::prepare_state(evolution::StateKind::AllPlus, 5), 20, 31);
    const auto deep = acquire_deep(evolution::prepare_state(evolution::StateKind::Dicke, 5, 2), 20, 32);
    std::vector<Snapshot> all(sym.begin(), sym.end());
    all.insert(all.end(), deep.begin(), deep.end());
    std::stringstream io;
    write_snapshots(io, all);
    const auto back = read_snapshots(io);
    REQUIRE(back.size() == all.size());
    for(std::size_t i = 0; i < sym.size(); ++i) {
        const auto &s = std::get<SymmetrizedSnapshot>(back[i]);
        CHECK(s.seed == 31);
        CHECK(s.index == i);
        CHECK(s.angles.theta1 == sym[i].angles.theta1);
        CHECK(s.angles.theta2 == sym[i].angles.theta2);
        CHECK(s.angles.theta3 == sym[i].angles.theta3);
        CHECK(s.hamming == sym[i].hamming);
    }
    for(std::size_t i = 0; i < deep.size(); ++i) {
        const auto &s = std::get<DeepSnapshot>(back[sym.size() + i]);
        CHECK(s.register_seed == deep[i].register_seed);
        CHECK(s.irrep_m == deep[i].irrep_m);
        CHECK(s.outcome == deep[i].outcome);
    }
    for(const char *bad : {"sym 1 2 0.1 0.2\n", "deep 1 2 0 5 1 extra\n", "shadow 1 2 3\n"}) {
        std::istringstream in(bad);
        CHECK_THROWS_AS(read_snapshots(in), InvalidArgument);
    }
    std::istringstream blank("\n  \n");
    CHECK(read_snapshots(blank).empty());
}

TEST_CASE("Acquisition does not depend on the thread count", "[shadows]") {
    std::mt19937_64 gen(37);
    const auto      paired = random_mixed(4, gen);
    const auto      a      = acquire_symmetrized(paired.state, 500, 9, 1);
    const auto      b      = acquire_symmetrized(paired.state, 500, 9, 3);
    const auto      c      = acquire_deep(paired.state, 500, 9, 1);
    const auto      d      = acquire_deep(paired.state, 500, 9, 4);
    for(std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].hamming == b[i].hamming);
        REQUIRE(a[i].angles.theta1 == b[i].angles.theta1);
        REQUIRE(c[i].register_seed == d[i].register_seed);
        REQUIRE(c[i].outcome == d[i].outcome);
    }
}

TEST_CASE("Identity observable gives a constant symmetrized estimate", "[shadows]") {
    for(int n : {1, 2, 5, 8}) {
        const ChannelMatrix        channel(n);
        const SymmetrizedEstimator est(channel, ops::identity_operator(n));
        Philox4x32                 rng(static_cast<std::uint64_t>(n));
        for(int t = 0; t < 50; ++t) {
            const auto a = sample_euler(rng);
            for(int h = 0; h <= n; ++h) REQUIRE(std::abs(est({0, 0, a, h}) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("Rotated Hamming distribution boundary cases", "[shadows]") {
    const int  n    = 6;
    const auto zero = evolution::prepare_state(evolution::StateKind::AllZero, n);
    CHECK(rotated_hamming_distribution(zero, {0, 0, 0})(0) == Catch::Approx(1.0).margin(1e-14));
    CHECK(rotated_hamming_distribution(zero, {0.4, std::numbers::pi, 1.3})(n) == Catch::Approx(1.0).margin(1e-14));
    Philox4x32 rng(8);
    std::mt19937_64 gen(8);
    const auto      mixed = random_mixed(4, gen);
    for(int t = 0; t < 100; ++t) {
        const VectorR p = rotated_hamming_distribution(mixed.state, sample_euler(rng));
        REQUIRE(std::abs(p.sum() - 1.0) < 1e-10);
        REQUIRE(p.minCoeff() >= 0.0);
    }
}
