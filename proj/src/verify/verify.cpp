#include "permsim/verify/verify.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/evolution/circuit.hpp"
#include "permsim/lmg/lmg.hpp"
#include "permsim/ops/closed_form.hpp"
#include "permsim/ops/symmetrized_pauli.hpp"
#include "permsim/oracle/dense.hpp"
#include "permsim/oracle/models.hpp"
#include "permsim/shadows/shadows.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace permsim::verify {

namespace {

using ops::BlockOperator;

constexpr double kExact      = 1e-12;
constexpr double kBlocks     = 1e-10;
constexpr double kDynamics   = 1e-8;
constexpr double kSpectrum   = 1e-10;
constexpr int    kMaxSweepN  = 64;
constexpr int    kRandomKvec = 25;

double max_abs(const MatrixC &a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// Runs body, turning exceptions into a failed result.
void record(VerifyReport &report, std::string name, int n, double tolerance, const std::function<double(std::string &)> &body) {
    CheckResult r;
    r.name      = std::move(name);
    r.n         = n;
    r.tolerance = tolerance;
    try {
        r.residual = body(r.detail);
        r.passed   = std::isfinite(r.residual) && r.residual <= tolerance;
    } catch(const std::exception &e) {
        r.residual = std::numeric_limits<double>::infinity();
        r.passed   = false;
        r.detail   = fmt::format("exception: {}", e.what());
    }
    report.checks.push_back(std::move(r));
}

BlockOperator operator_under_test(const ops::GeneratorKind &kind, int n, Fault fault) {
    BlockOperator op = ops::make_operator(kind, n);
    if(fault == Fault::GlobalYSignFlip && kind.tag == ops::Kind::GlobalY)
        for(auto &b : op.blocks) b.entries = -b.entries;
    return op;
}

double block_residual(const BlockOperator &op, const MatrixC &dense, int n) {
    double worst = 0.0;
    for(const auto &b : op.blocks) worst = std::max(worst, max_abs(b.entries - oracle::project_block(dense, n, b.irrep.m)));
    return worst;
}

void sweep_checks(VerifyReport &report) {
    record(report, "dimension-sum", 0, 0.0, [](std::string &detail) {
        int bad = 0;
        for(int n = 1; n <= kMaxSweepN; ++n) {
            schur::BigInt total = 0;
            for(const auto &irrep : schur::enumerate_irreps(n)) total += irrep.mult * irrep.d;
            if(total != (schur::BigInt(1) << n)) {
                ++bad;
                detail += fmt::format("n={} ", n);
            }
        }
        return static_cast<double>(bad);
    });
    record(report, "commutant-dim", 0, 0.0, [](std::string &detail) {
        int bad = 0;
        for(int n = 1; n <= kMaxSweepN; ++n) {
            std::uint64_t squares = 0;
            for(const auto &irrep : schur::enumerate_irreps(n)) squares += static_cast<std::uint64_t>(irrep.d) * static_cast<std::uint64_t>(irrep.d);
            const auto binom = schur::binomial(n + 3, 3).convert_to<std::uint64_t>();
            const auto kvecs = schur::enumerate_weight_vectors(n, n).size();
            if(squares != schur::commutant_dim(n) || binom != schur::commutant_dim(n) || kvecs != binom) {
                ++bad;
                detail += fmt::format("n={} ", n);
            }
        }
        return static_cast<double>(bad);
    });
}

void schur_checks(VerifyReport &report, int n, std::mt19937_64 &gen) {
    record(report, "schur-orthonormality", n, kExact, [n](std::string &) {
        std::vector<VectorC> vectors;
        for(const auto &irrep : schur::enumerate_irreps(n))
            for(int q = 0; q < irrep.d; ++q) vectors.push_back(oracle::canonical_schur_vector(n, irrep.m, q));
        double worst = 0.0;
        for(std::size_t i = 0; i < vectors.size(); ++i)
            for(std::size_t j = 0; j <= i; ++j) worst = std::max(worst, std::abs(vectors[i].dot(vectors[j]) - (i == j ? 1.0 : 0.0)));
        return worst;
    });
    record(report, "twirl-idempotence", n, kExact, [n, &gen](std::string &) {
        const MatrixC a  = testing::random_hermitian(1 << n, gen);
        const MatrixC t  = oracle::twirl(a, n);
        double        r  = max_abs(oracle::twirl(t, n) - t);
        const auto    s  = oracle::random_permutation(n, gen());
        r                = std::max(r, max_abs(oracle::conjugate_by_permutation(t, s, n) - t));
        r                = std::max(r, std::abs(t.trace() - a.trace()) / static_cast<double>(1 << n));
        return std::max(r, max_abs(t - t.adjoint()));
    });
}

void block_checks(VerifyReport &report, int n, Fault fault, std::mt19937_64 &gen) {
    auto kinds = ops::observable_set();
    for(const auto &k : ops::two_local_set()) kinds.push_back(k);
    for(const auto &kind : kinds) {
        if(n < ops::min_qubits(kind)) continue;
        record(report, "blocks:" + ops::name(kind), n, kBlocks,
               [&](std::string &) { return block_residual(operator_under_test(kind, n, fault), oracle::dense_operator(kind, n), n); });
    }
    record(report, "blocks:random-kvec", n, kBlocks, [n, &gen](std::string &detail) {
        std::uniform_int_distribution<int> pick(0, std::min(4, n));
        double                             worst = 0.0;
        for(int t = 0; t < kRandomKvec; ++t) {
            schur::WeightVector k;
            do {
                k = {pick(gen), pick(gen), pick(gen)};
            } while(k.total() > std::min(4, n));
            const double r = block_residual(ops::symmetrized_pauli_operator(n, k), oracle::symmetrized_pauli(k, n), n);
            if(r > worst) {
                worst  = r;
                detail = "worst " + schur::to_string(k);
            }
        }
        return worst;
    });
}

void evolution_checks(VerifyReport &report, int n, int threads, std::mt19937_64 &gen) {
    const auto circuit = testing::random_circuit(n, 4, gen);
    record(report, "unitarity", n, kExact, [&](std::string &) {
        double worst = 0.0;
        for(const auto &layer : circuit.blocks)
            for(const auto &b : layer.hamiltonian.blocks) {
                const MatrixC u = evolution::unitary_block(evolution::eigendecompose(b), layer.time).entries;
                worst           = std::max(worst, max_abs(u * u.adjoint() - MatrixC::Identity(u.rows(), u.cols())));
            }
        return worst;
    });
    record(report, "trace-spectrum-preservation", n, kSpectrum, [&](std::string &) {
        const auto [obs, dense] = testing::random_observable(n, gen);
        const auto   evolved    = evolution::heisenberg_evolve(circuit.blocks, obs, nullptr, threads);
        const double scale      = std::max(1.0, ops::operator_norm(obs));
        double       worst      = 0.0;
        for(std::size_t m = 0; m < obs.blocks.size(); ++m) {
            const MatrixC &a = obs.blocks[m].entries;
            const MatrixC &b = evolved.blocks[m].entries;
            worst            = std::max(worst, std::abs(a.trace() - b.trace()) / scale);
            const VectorR ea = Eigen::SelfAdjointEigenSolver<MatrixC>(a, Eigen::EigenvaluesOnly).eigenvalues();
            const VectorR eb = Eigen::SelfAdjointEigenSolver<MatrixC>(b, Eigen::EigenvaluesOnly).eigenvalues();
            worst            = std::max(worst, (ea - eb).cwiseAbs().maxCoeff() / scale);
        }
        return worst;
    });
    record(report, "dynamics", n, kDynamics, [&](std::string &detail) {
        const auto [obs, dense] = testing::random_observable(n, gen);
        const MatrixC rho_mixed = testing::random_density(n, gen);
        struct Case {
            const char           *label;
            evolution::SchurState state;
            MatrixC               rho;
        };
        const std::vector<Case> cases{
            {"zero", evolution::prepare_state(evolution::StateKind::AllZero, n), testing::dense_state(oracle::basis_state(n, 0))},
            {"plus", evolution::prepare_state(evolution::StateKind::AllPlus, n), testing::dense_state(oracle::plus_state(n))},
            {"mixed", evolution::from_blocks(n, oracle::block_state(rho_mixed, n)), rho_mixed},
        };
        double worst = 0.0;
        for(const auto &c : cases) {
            const double exact = oracle::dense_expectation(circuit.dense, c.rho, dense);
            const double heis  = evolution::expectation(c.state, evolution::heisenberg_evolve(circuit.blocks, obs, nullptr, threads));
            const double schr  = evolution::expectation(evolution::schrodinger_evolve(circuit.blocks, c.state, nullptr, threads), obs);
            const double r     = std::max(std::abs(heis - exact), std::abs(schr - exact));
            if(r > worst) {
                worst  = r;
                detail = fmt::format("worst state {}", c.label);
            }
        }
        return worst;
    });
}

void lmg_checks(VerifyReport &report, int n) {
    if(n < 2) return;
    record(report, "lmg-point", n, kDynamics, [n](std::string &) {
        const lmg::LmgParams params{1.0, 0.5, 0.5};
        const auto           sched = lmg::ScheduleParams::defaults(n);
        const auto           state = lmg::aqc_run(params, sched, n);
        const auto           obs   = lmg::measure(state);
        using ops::GeneratorKind;
        const double  nn = n;
        const MatrixC h1 = -params.J * (nn - 1) / 2 * oracle::dense_operator(GeneratorKind::sum_xx(), n) -
                           params.J * params.gamma * (nn - 1) / 2 * oracle::dense_operator(GeneratorKind::sum_yy(), n) +
                           params.hz * nn * oracle::dense_operator(GeneratorKind::sum_z(), n);
        const MatrixC h0 = -nn * oracle::dense_operator(GeneratorKind::sum_x(), n);
        std::vector<oracle::DenseLayer> layers;
        for(int j = 1; j <= sched.L; ++j) {
            const double s = sched.s(j * sched.dt());
            layers.push_back({(1.0 - s) * h0 + s * h1, sched.dt()});
        }
        const VectorC psi = oracle::circuit_unitary(layers, n) * oracle::plus_state(n);
        const MatrixC rho = testing::dense_state(psi);
        const MatrixC sz  = nn * oracle::dense_operator(GeneratorKind::sum_z(), n);
        const double  m   = 1.0 - (rho * sz * sz).trace().real() / (nn * nn);
        double        r   = std::abs(m - obs.order_param);
        r                 = std::max(r, max_abs(oracle::partial_trace_two(rho, n) - obs.rdm.rho));
        return r;
    });
}

void shadow_checks(VerifyReport &report, int n) {
    record(report, "channel-parity-blocks", n, 0.0, [n](std::string &detail) {
        const shadows::ChannelMatrix c(n);
        std::vector<bool>            present(8, false);
        for(const auto &k : c.basis()) present[static_cast<std::size_t>(shadows::parity_class(k))] = true;
        const auto expected = static_cast<std::size_t>(std::count(present.begin(), present.end(), true));
        const MatrixR dense = c.dense();
        double        worst = max_abs(dense - dense.transpose());
        for(std::size_t i = 0; i < c.dim(); ++i)
            for(std::size_t j = 0; j < c.dim(); ++j)
                if(shadows::parity_class(c.basis()[i]) != shadows::parity_class(c.basis()[j]))
                    worst = std::max(worst, std::abs(dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        if(c.blocks().size() != expected || (n >= 3 && expected != 8)) {
            detail = fmt::format("{} parity blocks, expected {}", c.blocks().size(), n >= 3 ? 8 : expected);
            return std::numeric_limits<double>::infinity();
        }
        return worst;
    });
    if(n <= 6)
        record(report, "symmetrized-basis-orthonormality", n, kExact, [n](std::string &) {
            std::vector<MatrixC> basis;
            for(const auto &k : schur::enumerate_weight_vectors(n, n)) basis.push_back(oracle::normalized_symmetrized_pauli(k, n));
            double worst = 0.0;
            for(std::size_t i = 0; i < basis.size(); ++i)
                for(std::size_t j = 0; j <= i; ++j)
                    worst = std::max(worst, std::abs((basis[i].adjoint().cwiseProduct(basis[j].transpose())).sum() - (i == j ? 1.0 : 0.0)));
            return worst;
        });
    if(n <= 4)
        record(report, "channel-quadrature", n, kExact, [n](std::string &) {
            const shadows::ChannelMatrix c(n);
            return (c.dense() - oracle::shadow_channel_quadrature(n, c.basis())).cwiseAbs().maxCoeff();
        });
}

} // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult &c) { return !c.passed; }));
}

VerifyReport run_verify(const VerifyOptions &options) {
    for(int n : options.ns)
        if(n < 1 || n > oracle::kMaxOracleQubits) throw InvalidArgument(fmt::format("verify supports 1 <= n <= {}, got {}", oracle::kMaxOracleQubits, n));
    VerifyReport report;
    sweep_checks(report);
    for(int n : options.ns) {
        std::mt19937_64 gen(options.seed + static_cast<std::uint64_t>(n));
        schur_checks(report, n, gen);
        block_checks(report, n, options.fault, gen);
        evolution_checks(report, n, options.threads, gen);
        lmg_checks(report, n);
        shadow_checks(report, n);
    }
    return report;
}

} // namespace permsim::verify
