// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. `--criterion k` runs a single criterion.

#include "permsim/cli/cli.hpp"
#include "permsim/core/parallel.hpp"
#include "permsim/evolution/circuit.hpp"
#include "permsim/lmg/lmg.hpp"
#include "permsim/ops/closed_form.hpp"
#include "permsim/ops/symmetrized_pauli.hpp"
#include "permsim/oracle/dense.hpp"
#include "permsim/oracle/models.hpp"
#include "permsim/shadows/shadows.hpp"
#include "permsim/verify/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace permsim;

namespace {

// Criterion 1
constexpr double kBlockTol = 1e-10;
constexpr int    kRandomKvecs = 25;
constexpr double kBlocksBudget = 300.0;
// Criterion 2
constexpr double kDynamicsTol = 1e-8;
constexpr int    kCircuits = 50;
constexpr double kDynamicsBudget = 600.0;
// Criteria 3 and 4
constexpr int    kLmgN = 512;
constexpr double kOrderTol = 0.02;
constexpr double kConcurrenceTol = 0.03;
constexpr double kCriticalHalfWidth = 0.2;
constexpr double kCrLow = 0.1535, kCrHigh = 0.2135;
// Criterion 5
constexpr double kRuntimeBudget = 120.0;
// Criterion 6
constexpr double kAlgorithm1Exponent = 2.5;
constexpr double kHeisenbergExponent = 4.0;
// Criterion 7
constexpr std::size_t kSnapshots = 100000;
constexpr double      kStandardErrors = 5.0;
constexpr double      kShadowsBudget = 600.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool        pass;
    std::string summary;
};

double max_abs(const MatrixC &a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double block_residual(const ops::BlockOperator &op, const MatrixC &dense, int n) {
    double worst = 0.0;
    for(const auto &b : op.blocks) worst = std::max(worst, max_abs(b.entries - oracle::project_block(dense, n, b.irrep.m)));
    return worst;
}

Outcome criterion_blocks() {
    const auto start = Clock::now();
    double     worst = 0.0;
    std::string where;
    std::size_t compared = 0;
    std::mt19937_64 gen(101);
    for(int n = 2; n <= 8; ++n) {
        auto kinds = ops::observable_set();
        for(const auto &k : ops::two_local_set()) kinds.push_back(k);
        std::uniform_int_distribution<int> pick(0, std::min(4, n));
        for(int t = 0; t < kRandomKvecs; ++t) {
            schur::WeightVector k;
            do {
                k = {pick(gen), pick(gen), pick(gen)};
            } while(k.total() > std::min(4, n));
            kinds.push_back(ops::GeneratorKind::k_local(k));
        }
        for(const auto &kind : kinds) {
            if(n < ops::min_qubits(kind)) continue;
            const double r = block_residual(ops::make_operator(kind, n), oracle::dense_operator(kind, n), n);
            ++compared;
            if(r > worst) {
                worst = r;
                where = fmt::format("{} at n={}", ops::name(kind), n);
            }
        }
    }
    const double wall = since(start);
    return {worst <= kBlockTol && wall <= kBlocksBudget,
            fmt::format("{} operators over n=2..8, max entry error {:.2e} ({}; tol {:.0e}), {:.1f} s (budget {:.0f} s)", compared, worst, where, kBlockTol, wall,
                        kBlocksBudget)};
}

Outcome criterion_dynamics() {
    const auto      start = Clock::now();
    std::mt19937_64 gen(202);
    double          worst = 0.0;
    std::size_t     evaluated = 0;
    for(int n : {4, 6}) {
        std::uniform_int_distribution<int> layers(1, 5);
        for(int c = 0; c < kCircuits; ++c) {
            const auto circuit      = testing::random_circuit(n, layers(gen), gen);
            const auto [obs, dense] = testing::random_observable(n, gen);
            const MatrixC mixed     = testing::random_density(n, gen);
            const auto    heis      = evolution::heisenberg_evolve(circuit.blocks, obs);
            const std::vector<std::pair<evolution::SchurState, MatrixC>> states{
                {evolution::prepare_state(evolution::StateKind::AllZero, n), testing::dense_state(oracle::basis_state(n, 0))},
                {evolution::prepare_state(evolution::StateKind::AllPlus, n), testing::dense_state(oracle::plus_state(n))},
                {evolution::from_blocks(n, oracle::block_state(mixed, n)), mixed},
            };
            for(const auto &[state, rho] : states) {
                const double exact = oracle::dense_expectation(circuit.dense, rho, dense);
                worst              = std::max(worst, std::abs(evolution::expectation(state, heis) - exact));
                worst              = std::max(worst, std::abs(evolution::expectation(evolution::schrodinger_evolve(circuit.blocks, state), obs) - exact));
                ++evaluated;
            }
        }
    }
    const double wall = since(start);
    return {worst <= kDynamicsTol && wall <= kDynamicsBudget,
            fmt::format("{} circuit/state pairs at n=4,6 (Heisenberg and Schrodinger), max |f - f_dense| {:.2e} (tol {:.0e}), {:.1f} s (budget {:.0f} s)",
                        evaluated, worst, kDynamicsTol, wall, kDynamicsBudget)};
}

struct SweepPoint {
    double hz;
    double m, m_limit, cr, cr_limit;
};

/// hz = 0, 0.1, ..., 2 minus the critical window, built from integer tenths.
std::vector<double> off_critical_grid() {
    std::vector<double> out;
    for(int i = 0; i <= 20; ++i)
        if(std::abs(i - 10) >= static_cast<int>(std::lround(kCriticalHalfWidth * 10))) out.push_back(i / 10.0);
    return out;
}

const std::vector<SweepPoint> &sweep(int n, double gamma) {
    static std::map<std::pair<int, double>, std::vector<SweepPoint>> cache;
    auto                                                             it = cache.find({n, gamma});
    if(it != cache.end()) return it->second;
    const auto              grid = off_critical_grid();
    std::vector<SweepPoint> points(grid.size());
    parallel_for(grid.size(), default_threads(), [&](std::size_t i) {
        const auto state = lmg::aqc_run({1.0, gamma, grid[i]}, lmg::ScheduleParams::defaults(n), n);
        const auto obs   = lmg::measure(state);
        const auto ref   = lmg::thermodynamic_references(gamma, grid[i]);
        points[i]        = {grid[i], obs.order_param, ref.order_param, obs.rescaled_concurrence, ref.rescaled_concurrence};
    });
    return cache.emplace(std::make_pair(n, gamma), std::move(points)).first->second;
}

double max_order_deviation(const std::vector<SweepPoint> &pts) {
    double worst = 0.0;
    for(const auto &p : pts) worst = std::max(worst, std::abs(p.m - p.m_limit));
    return worst;
}

Outcome criterion_order_parameter() {
    std::vector<double> devs;
    for(int n : {64, 128, 256, kLmgN}) devs.push_back(max_order_deviation(sweep(n, 0.5)));
    bool monotone = true;
    for(std::size_t i = 1; i < devs.size(); ++i) monotone = monotone && devs[i] <= devs[i - 1];
    return {devs.back() <= kOrderTol && monotone,
            fmt::format("gamma=0.5, |hz-1|>={}: n=512 max |m - limit| {:.4f} (tol {}); max deviation for n=64,128,256,512: {:.4f} {:.4f} {:.4f} {:.4f} ({})",
                        kCriticalHalfWidth, devs.back(), kOrderTol, devs[0], devs[1], devs[2], devs[3], monotone ? "non-increasing" : "NOT non-increasing")};
}

Outcome criterion_concurrence() {
    bool        pass = true;
    std::string text;
    double      cr_at_2 = std::nan("");
    for(double gamma : {0.5, 0.8}) {
        double worst = 0.0;
        for(const auto &p : sweep(kLmgN, gamma)) {
            worst = std::max(worst, std::abs(p.cr - p.cr_limit));
            if(gamma == 0.5 && std::abs(p.hz - 2.0) < 1e-12) cr_at_2 = p.cr;
        }
        pass = pass && worst <= kConcurrenceTol;
        text += fmt::format("gamma={} max |C_R - limit| {:.4f}, ", gamma, worst);
    }
    const bool window = cr_at_2 >= kCrLow && cr_at_2 <= kCrHigh;
    return {pass && window, fmt::format("n=512, |hz-1|>={}: {}tol {}; C_R(gamma=0.5, hz=2) = {:.5f} in [{}, {}]: {}", kCriticalHalfWidth, text, kConcurrenceTol,
                                        cr_at_2, kCrLow, kCrHigh, window ? "yes" : "no")};
}

Outcome criterion_runtime() {
    const auto start = Clock::now();
    const auto state = lmg::aqc_run({1.0, 0.5, 0.5}, lmg::ScheduleParams::defaults(kLmgN), kLmgN);
    const auto obs   = lmg::measure(state);
    const double wall = since(start);
    return {wall < kRuntimeBudget && std::isfinite(obs.rescaled_concurrence),
            fmt::format("n=512 AQC (L=4n={}) plus concurrence in {:.1f} s (budget {:.0f} s), C_R={:.5f}", 4 * kLmgN, wall, kRuntimeBudget, obs.rescaled_concurrence)};
}

/// Median over three trials of the mean time per call, each trial repeating
/// the call until at least 0.2 s have passed.
template <class F> double time_call(F &&f) {
    std::vector<double> trials;
    for(int t = 0; t < 3; ++t) {
        const auto start = Clock::now();
        int        calls = 0;
        do {
            f();
            ++calls;
        } while(since(start) < 0.2);
        trials.push_back(since(start) / calls);
    }
    std::sort(trials.begin(), trials.end());
    return trials[1];
}

Outcome criterion_scaling() {
    const schur::WeightVector k{1, 1, 1};
    std::vector<int>          na{64, 128, 256, 512, 1024};
    std::vector<double>       ta;
    for(int n : na) ta.push_back(time_call([&] { (void)ops::symmetrized_pauli_all_banded(n, k); }));
    std::vector<int>    nh{64, 128, 256, 512};
    std::vector<double> th;
    for(int n : nh) {
        const auto               xx = ops::make_operator(ops::GeneratorKind::sum_xx(), n);
        const auto               z  = ops::make_operator(ops::GeneratorKind::sum_z(), n);
        const auto               zz = ops::make_operator(ops::GeneratorKind::sum_zz(), n);
        const evolution::Circuit circuit{{ops::compose({{1.0, &xx}, {0.5, &z}}), 0.7, ""}};
        th.push_back(time_call([&] { (void)evolution::heisenberg_evolve(circuit, zz, nullptr, default_threads()); }));
    }
    const double ea = cli::fit_exponent(na, ta), eh = cli::fit_exponent(nh, th);
    return {ea <= kAlgorithm1Exponent && eh <= kHeisenbergExponent,
            fmt::format("banded k-local assembly over all irreps, k=(1,1,1), n=64..1024: exponent {:.2f} (max {}); single-layer Heisenberg, n=64..512: exponent {:.2f} "
                        "(max {}); n=512 layer {:.2f} s",
                        ea, kAlgorithm1Exponent, eh, kHeisenbergExponent, th.back())};
}

Outcome criterion_shadows() {
    const auto      start = Clock::now();
    std::mt19937_64 gen(707);
    double          worst_z = 0.0, worst_ratio = 0.0;
    std::string     worst_where;
    std::size_t     cases = 0;
    for(int n : {2, 4}) {
        const shadows::ChannelMatrix channel(n);
        const std::vector<std::pair<std::string, evolution::SchurState>> states{
            {"zero", evolution::prepare_state(evolution::StateKind::AllZero, n)},
            {"plus", evolution::prepare_state(evolution::StateKind::AllPlus, n)},
            {"twirled random", evolution::from_blocks(n, oracle::block_state(testing::random_density(n, gen), n))},
        };
        for(std::size_t s = 0; s < states.size(); ++s) {
            const auto &[label, state] = states[s];
            const std::uint64_t seed   = 1000 * static_cast<std::uint64_t>(n) + s;
            const auto          sym    = shadows::acquire_symmetrized(state, kSnapshots, seed, default_threads());
            const auto          deep   = shadows::acquire_deep(state, kSnapshots, seed + 500, default_threads());
            for(const auto &kind : ops::observable_set()) {
                const auto   obs   = ops::make_operator(kind, n);
                const double truth = evolution::expectation(state, obs);
                const shadows::SymmetrizedEstimator estimator(channel, obs);
                std::vector<double>                 es(kSnapshots), ed(kSnapshots);
                parallel_for(kSnapshots, default_threads(), [&](std::size_t i) {
                    es[i] = estimator(sym[i]);
                    ed[i] = shadows::estimator_deep(deep[i], obs);
                });
                const std::array<std::pair<shadows::Estimate, double>, 2> results{
                    std::make_pair(shadows::aggregate(es), shadows::symmetrized_variance_bound(obs)),
                    std::make_pair(shadows::aggregate(ed), shadows::deep_variance_bound(obs)),
                };
                for(std::size_t p = 0; p < results.size(); ++p) {
                    const auto &[e, bound] = results[p];
                    const double err       = std::abs(e.value - truth);
                    const double z         = e.std_error > 0 ? err / e.std_error : (err <= 1e-12 ? 0.0 : INFINITY);
                    if(z > worst_z) {
                        worst_z     = z;
                        worst_where = fmt::format("{} {} n={} {}", p == 0 ? "symmetrized" : "deep", ops::name(kind), n, label);
                    }
                    worst_ratio = std::max(worst_ratio, e.variance / bound);
                    ++cases;
                }
            }
        }
    }
    const double wall = since(start);
    return {worst_z <= kStandardErrors && worst_ratio <= 1.0 && wall <= kShadowsBudget,
            fmt::format("{} protocol/observable/state cases at n=2,4 with {} snapshots: max |mean - truth|/SE {:.2f} ({}; max {}), max variance/bound {:.3f} "
                        "(max 1), {:.1f} s (budget {:.0f} s)",
                        cases, kSnapshots, worst_z, worst_where, kStandardErrors, worst_ratio, wall, kShadowsBudget)};
}

Outcome criterion_invariants() {
    verify::VerifyOptions options;
    options.ns      = {2, 3, 4, 5, 6, 7, 8};
    options.threads = default_threads();
    const auto  report = verify::run_verify(options);
    std::string failed;
    for(const auto &c : report.checks)
        if(!c.passed) failed += fmt::format(" {}(n={}, residual {:.2e})", c.name, c.n, c.residual);
    return {report.passed(), fmt::format("{} checks for n=2..8 plus n<=64 sweeps, {} failed{}", report.checks.size(), report.failures(), failed)};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance criteria"};
    int      only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    using Fn = Outcome (*)();
    const std::array<Fn, 8> criteria{criterion_blocks,  criterion_dynamics, criterion_order_parameter, criterion_concurrence,
                                     criterion_runtime, criterion_scaling,  criterion_shadows,         criterion_invariants};
    bool all = true;
    for(int c = 1; c <= 8; ++c) {
        if(only != 0 && c != only) continue;
        Outcome out;
        try {
            out = criteria[static_cast<std::size_t>(c - 1)]();
        } catch(const std::exception &e) {
            out = {false, fmt::format("exception: {}", e.what())};
        }
        all = all && out.pass;
        std::printf("criterion %d: %s  %s\n", c, out.pass ? "PASS" : "FAIL", out.summary.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
