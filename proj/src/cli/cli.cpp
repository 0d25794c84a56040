#include "permsim/cli/cli.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/core/parallel.hpp"
#include "permsim/evolution/circuit.hpp"
#include "permsim/lmg/lmg.hpp"
#include "permsim/ops/closed_form.hpp"
#include "permsim/ops/symmetrized_pauli.hpp"
#include "permsim/shadows/shadows.hpp"
#include "permsim/verify/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace permsim::cli {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

/// Config problems that should map to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

json block_json_dense(const ops::BlockMatrix &b) {
    json real = json::array(), imag = json::array();
    for(Eigen::Index i = 0; i < b.entries.rows(); ++i) {
        json rr = json::array(), ri = json::array();
        for(Eigen::Index j = 0; j < b.entries.cols(); ++j) {
            rr.push_back(b.entries(i, j).real());
            ri.push_back(b.entries(i, j).imag());
        }
        real.push_back(std::move(rr));
        imag.push_back(std::move(ri));
    }
    return {{"m", b.irrep.m}, {"d", b.irrep.d}, {"real", std::move(real)}, {"imag", std::move(imag)}};
}

json block_json_banded(const ops::BandedBlock &b) {
    json real = json::array(), imag = json::array();
    for(int q = 0; q < b.irrep.d; ++q) {
        json rr = json::array(), ri = json::array();
        for(int off = -b.bandwidth; off <= b.bandwidth; ++off) {
            const int  row = q + off;
            const cplx v   = row >= 0 && row < b.irrep.d ? b.at(row, q) : cplx{};
            rr.push_back(v.real());
            ri.push_back(v.imag());
        }
        real.push_back(std::move(rr));
        imag.push_back(std::move(ri));
    }
    return {{"m", b.irrep.m}, {"d", b.irrep.d}, {"bandwidth", b.bandwidth}, {"real", std::move(real)}, {"imag", std::move(imag)}};
}

evolution::SchurState make_state(const ShadowsConfig &c) {
    using evolution::StateKind;
    if(c.state == "zero") return evolution::prepare_state(StateKind::AllZero, c.n);
    if(c.state == "plus") return evolution::prepare_state(StateKind::AllPlus, c.n);
    if(c.state.starts_with("dicke:")) {
        int w = 0;
        try {
            w = std::stoi(c.state.substr(6));
        } catch(const std::exception &) {
            throw InvalidArgument(fmt::format("bad Dicke weight in '{}'", c.state));
        }
        return evolution::prepare_state(StateKind::Dicke, c.n, w);
    }
    if(c.state == "lmg") return lmg::aqc_run({1.0, c.gamma, c.hz}, lmg::ScheduleParams::defaults(c.n), c.n);
    throw InvalidArgument(fmt::format("unknown state '{}' (expected zero, plus, dicke:<w> or lmg)", c.state));
}

ops::BlockOperator make_observable(const std::string &name, int n) {
    if(name == "identity") return ops::identity_operator(n);
    return ops::make_operator(ops::parse_kind(name), n);
}

/// Fills options that were not given on the command line from a JSON object
/// keyed by long option names.
void apply_json_config(CLI::App &app, const std::string &path) {
    std::ifstream in(path);
    if(!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
    json doc;
    try {
        doc = json::parse(in);
    } catch(const json::exception &e) {
        throw ConfigError(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
    }
    if(!doc.is_object()) throw ConfigError(fmt::format("config file '{}' must hold a JSON object", path));
    for(const auto &[key, value] : doc.items()) {
        CLI::Option *opt = nullptr;
        try {
            opt = app.get_option("--" + key);
        } catch(const CLI::OptionNotFound &) {
            throw ConfigError(fmt::format("unknown key '{}' in config file '{}'", key, path));
        }
        if(key == "config") throw ConfigError("config files cannot nest");
        if(opt->count() > 0) continue;
        auto as_text = [](const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        opt->clear();
        if(value.is_array())
            for(const auto &v : value) opt->add_result(as_text(v));
        else
            opt->add_result(as_text(value));
        try {
            opt->run_callback();
        } catch(const CLI::Error &e) {
            throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
        }
    }
}

void write_output(const std::string &path, std::ostream &fallback, const std::string &text) {
    if(path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if(!f) throw ConfigError(fmt::format("cannot open output file '{}'", path));
    f << text;
}

} // namespace

std::string format_double(double x) {
    if(std::isnan(x)) return "nan";
    return fmt::format("{:.17g}", x);
}

void cmd_blocks(const BlocksConfig &config, std::ostream &out) {
    if(config.n < 1) throw InvalidArgument("--n must be positive");
    if(config.kind.has_value() == config.kvec.has_value()) throw InvalidArgument("give exactly one of --kind and --kvec");
    std::string format = config.format;
    if(format.empty()) format = config.kvec ? "banded" : "dense";
    if(format != "dense" && format != "banded") throw InvalidArgument(fmt::format("unknown format '{}'", format));
    json doc{{"n", config.n}, {"format", format}};
    json blocks = json::array();
    if(config.kvec) {
        const auto k = ops::parse_kvec(*config.kvec);
        if(k.total() > config.n) throw InvalidArgument(fmt::format("weight vector {} exceeds n={}", *config.kvec, config.n));
        doc["kvec"] = {k.x, k.y, k.z};
        if(format == "banded")
            for(const auto &b : ops::symmetrized_pauli_all_banded(config.n, k)) blocks.push_back(block_json_banded(b));
        else
            for(const auto &b : ops::symmetrized_pauli_operator(config.n, k).blocks) blocks.push_back(block_json_dense(b));
    } else {
        if(format == "banded") throw InvalidArgument("banded output is only available for --kvec");
        const auto kind = ops::parse_kind(*config.kind);
        doc["kind"]     = ops::name(kind);
        for(const auto &b : ops::make_operator(kind, config.n).blocks) blocks.push_back(block_json_dense(b));
    }
    doc["blocks"] = std::move(blocks);
    out << doc.dump() << '\n';
}

std::vector<double> hz_grid(double lo, double hi, double step) {
    if(!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("hz grid needs step > 0 and max >= min");
    const auto          count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    for(std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

int cmd_lmg_sweep(const SweepConfig &config, std::ostream &out, std::ostream &err) {
    if(config.ns.empty()) throw InvalidArgument("--n needs at least one qubit count");
    if(config.hz.empty()) throw InvalidArgument("empty hz grid");
    for(int n : config.ns)
        if(n < 2) throw InvalidArgument(fmt::format("LMG sweeps need n >= 2, got {}", n));
    struct Point {
        int                 n;
        double              hz;
        lmg::ScheduleParams sched;
        std::string         row;
        std::string         error;
        bool                guard{false};
    };
    std::vector<Point> points;
    for(int n : config.ns)
        for(double hz : config.hz) {
            auto sched = lmg::ScheduleParams::defaults(n);
            if(config.L) sched.L = *config.L;
            if(config.T) sched.T = *config.T;
            sched.validate();
            points.push_back({n, hz, sched, {}, {}});
        }
    lmg::thermodynamic_references(config.gamma, 0.0);
    parallel_for(points.size(), config.threads, [&](std::size_t i) {
        auto        &p     = points[i];
        const auto   ref   = lmg::thermodynamic_references(config.gamma, p.hz);
        const auto   start = Clock::now();
        std::string  head  = fmt::format("{},{},{},{},{},{}", p.n, format_double(config.J), format_double(config.gamma), format_double(p.hz), p.sched.L,
                                         format_double(p.sched.T));
        try {
            const auto state = lmg::aqc_run({config.J, config.gamma, p.hz}, p.sched, p.n);
            const auto obs   = lmg::measure(state);
            const double wall = seconds_since(start);
            p.row = fmt::format("{},{},{},{},{},{},{}\n", head, format_double(obs.order_param), format_double(ref.order_param), format_double(obs.concurrence),
                                format_double(obs.rescaled_concurrence), format_double(ref.rescaled_concurrence), config.omit_timing ? "" : format_double(wall));
        } catch(const std::exception &e) {
            p.guard = dynamic_cast<const ResourceGuard *>(&e) != nullptr;
            p.error = e.what();
            p.row   = fmt::format("{},,{},,,{},\n", head, format_double(ref.order_param), format_double(ref.rescaled_concurrence));
        }
    });
    out << "n,J,gamma,hz,L,T,order_param,order_param_limit,concurrence,rescaled_concurrence,CR_limit,wall_seconds\n";
    int code = kSuccess;
    for(const auto &p : points) {
        out << p.row;
        if(!p.error.empty()) {
            err << fmt::format("point n={} hz={} failed: {}\n", p.n, format_double(p.hz), p.error);
            code = std::max(code, p.guard ? int{kResourceGuardTripped} : int{kRuntimeError});
        }
    }
    return code;
}

double fit_exponent(const std::vector<int> &ns, const std::vector<double> &seconds) {
    if(ns.size() != seconds.size() || ns.size() < 2) throw InvalidArgument("an exponent fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto count = static_cast<double>(ns.size());
    for(std::size_t i = 0; i < ns.size(); ++i) {
        if(!(seconds[i] > 0.0)) throw InvalidArgument("timings must be positive for a log-log fit");
        const double x = std::log(static_cast<double>(ns[i])), y = std::log(seconds[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    if(denom == 0.0) throw InvalidArgument("an exponent fit needs distinct qubit counts");
    return (count * sxy - sx * sy) / denom;
}

void cmd_bench(const BenchConfig &config, std::ostream &out) {
    if(config.repetitions < 1) throw InvalidArgument("--repetitions must be positive");
    if(config.ns.empty()) throw InvalidArgument("--n needs at least one qubit count");
    std::function<void(int)> task;
    if(config.task == "aqc") {
        task = [](int n) {
            const auto state = lmg::aqc_run({1.0, 0.5, 0.5}, lmg::ScheduleParams::defaults(n), n);
            const auto obs   = lmg::measure(state);
            if(!std::isfinite(obs.rescaled_concurrence)) throw NumericalError("non-finite concurrence");
        };
    } else if(config.task == "algorithm1") {
        const auto k = ops::parse_kvec(config.kvec);
        task         = [k](int n) {
            if(k.total() > n) throw InvalidArgument("weight vector exceeds n");
            const auto blocks = ops::symmetrized_pauli_all_banded(n, k);
            if(blocks.empty()) throw NumericalError("no blocks");
        };
    } else if(config.task == "heisenberg") {
        const int threads = config.threads;
        task              = [threads](int n) {
            const auto xx = ops::make_operator(ops::GeneratorKind::sum_xx(), n);
            const auto z  = ops::make_operator(ops::GeneratorKind::sum_z(), n);
            const evolution::Circuit circuit{{ops::compose({{1.0, &xx}, {0.5, &z}}), 0.7, ""}};
            const auto               evolved = evolution::heisenberg_evolve(circuit, ops::make_operator(ops::GeneratorKind::sum_zz(), n), nullptr, threads);
            if(evolved.blocks.empty()) throw NumericalError("no blocks");
        };
    } else {
        throw InvalidArgument(fmt::format("unknown bench task '{}' (expected aqc, algorithm1 or heisenberg)", config.task));
    }
    out << "task,n,repetitions,median_seconds,fitted_exponent\n";
    std::vector<double> medians;
    for(int n : config.ns) {
        std::vector<double> times;
        for(int r = 0; r < config.repetitions; ++r) {
            const auto start = Clock::now();
            task(n);
            times.push_back(seconds_since(start));
        }
        medians.push_back(median(times));
        out << fmt::format("{},{},{},{},\n", config.task, n, config.repetitions, format_double(medians.back())) << std::flush;
    }
    if(config.ns.size() >= 2)
        out << fmt::format("{},all,{},,{}\n", config.task, config.repetitions, format_double(fit_exponent(config.ns, medians)));
}

void cmd_shadows(const ShadowsConfig &config, std::ostream &out) {
    using namespace shadows;
    if(config.protocol != "deep" && config.protocol != "symmetrized") throw InvalidArgument(fmt::format("unknown protocol '{}'", config.protocol));
    if(config.n < 1) throw InvalidArgument("--n must be positive");
    const bool from_file = !config.read_snapshots.empty();
    if(!from_file && !config.seed) throw InvalidArgument("--seed is required when acquiring snapshots");
    if(!from_file && config.snapshots == 0) throw InvalidArgument("--snapshots must be positive");
    Aggregation strategy;
    if(config.aggregation == "mean")
        strategy = Aggregation::Mean;
    else if(config.aggregation == "median-of-means")
        strategy = Aggregation::MedianOfMeans;
    else
        throw InvalidArgument(fmt::format("unknown aggregation '{}'", config.aggregation));

    const auto state = make_state(config);
    std::vector<std::string> names = config.observables;
    if(names.empty())
        for(const auto &k : ops::observable_set()) names.push_back(ops::name(k));
    std::vector<ops::BlockOperator> observables;
    for(const auto &name : names) observables.push_back(make_observable(name, config.n));

    std::vector<Snapshot> snaps;
    if(from_file) {
        std::ifstream in(config.read_snapshots);
        if(!in) throw InvalidArgument(fmt::format("cannot open snapshot file '{}'", config.read_snapshots));
        snaps = read_snapshots(in);
        if(snaps.empty()) throw InvalidArgument("snapshot file holds no records");
    } else if(config.protocol == "deep") {
        for(auto &s : acquire_deep(state, config.snapshots, *config.seed, config.threads)) snaps.emplace_back(s);
    } else {
        for(auto &s : acquire_symmetrized(state, config.snapshots, *config.seed, config.threads)) snaps.emplace_back(s);
    }
    for(const auto &s : snaps)
        if(std::holds_alternative<DeepSnapshot>(s) != (config.protocol == "deep")) throw InvalidArgument("snapshot records do not match --protocol");
    if(!config.write_snapshots.empty()) {
        std::ofstream f(config.write_snapshots, std::ios::binary);
        if(!f) throw InvalidArgument(fmt::format("cannot open '{}' for writing", config.write_snapshots));
        write_snapshots(f, snaps);
    }

    std::optional<ChannelMatrix> channel;
    if(config.protocol == "symmetrized") channel.emplace(config.n);
    out << "protocol,observable,truth,estimate,std_error,n_snapshots,variance,variance_bound\n";
    for(std::size_t o = 0; o < observables.size(); ++o) {
        const auto         &obs = observables[o];
        std::vector<double> est(snaps.size());
        if(channel) {
            const SymmetrizedEstimator estimator(*channel, obs);
            parallel_for(snaps.size(), config.threads, [&](std::size_t i) { est[i] = estimator(std::get<SymmetrizedSnapshot>(snaps[i])); });
        } else {
            parallel_for(snaps.size(), config.threads, [&](std::size_t i) { est[i] = estimator_deep(std::get<DeepSnapshot>(snaps[i]), obs); });
        }
        const Estimate e     = aggregate(est, strategy, config.batches);
        const double   truth = evolution::expectation(state, obs);
        const double   bound = channel ? symmetrized_variance_bound(obs) : deep_variance_bound(obs);
        out << fmt::format("{},{},{},{},{},{},{},{}\n", config.protocol, names[o], format_double(truth), format_double(e.value), format_double(e.std_error), e.count,
                           format_double(e.variance), format_double(bound));
    }
}

int cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err) {
    verify::VerifyOptions options;
    options.ns      = config.ns;
    options.threads = config.threads;
    if(config.fault == "none")
        options.fault = verify::Fault::None;
    else if(config.fault == "global-y-sign-flip")
        options.fault = verify::Fault::GlobalYSignFlip;
    else
        throw InvalidArgument(fmt::format("unknown fault '{}'", config.fault));
    const auto report = verify::run_verify(options);
    json       checks = json::array();
    for(const auto &c : report.checks) {
        err << fmt::format("{} {} n={} residual={:.3e} tolerance={:.1e}{}\n", c.passed ? "PASS" : "FAIL", c.name, c.n, c.residual, c.tolerance,
                           c.detail.empty() ? "" : " (" + c.detail + ")");
        json entry{{"name", c.name}, {"n", c.n}, {"passed", c.passed}, {"tolerance", c.tolerance}, {"detail", c.detail}};
        entry["residual"] = std::isfinite(c.residual) ? json(c.residual) : json(nullptr);
        checks.push_back(std::move(entry));
    }
    const json doc{{"passed", report.passed()}, {"failures", report.failures()}, {"checks", std::move(checks)}};
    write_output(config.report, out, doc.dump(2) + "\n");
    return report.passed() ? kSuccess : kVerificationFailure;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Permutation-equivariant quantum circuit simulator", "permsim"};
    app.require_subcommand(1);
    int         threads = default_threads();
    std::string config_path;
    std::string output_path;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON file with option values; flags given explicitly win");
        sub->add_option("--threads", threads, fmt::format("Worker count (default from {})", kThreadsEnv))->check(CLI::PositiveNumber);
    };

    BlocksConfig blocks;
    auto        *blocks_cmd = app.add_subcommand("blocks", "Dump per-irrep blocks of an operator as JSON");
    common(blocks_cmd);
    blocks_cmd->add_option("--n", blocks.n, "Qubit count");
    blocks_cmd->add_option("--kind", blocks.kind, "Named operator, e.g. sum-z, global-y, two-local:XZ");
    blocks_cmd->add_option("--kvec", blocks.kvec, "Symmetrized Pauli weight vector kx,ky,kz");
    blocks_cmd->add_option("--format", blocks.format, "dense or banded");
    blocks_cmd->add_option("--output", output_path, "Output file (default stdout)");

    SweepConfig sweep;
    double      hz_min = 0.0, hz_max = 2.0, hz_step = 0.1;
    auto       *sweep_cmd = app.add_subcommand("lmg-sweep", "Digitized adiabatic LMG sweep over n and hz");
    common(sweep_cmd);
    sweep_cmd->add_option("--n", sweep.ns, "Qubit counts")->delimiter(',');
    sweep_cmd->add_option("--J", sweep.J, "Coupling J");
    sweep_cmd->add_option("--gamma", sweep.gamma, "Anisotropy in [0,1]");
    auto *hz_list = sweep_cmd->add_option("--hz", sweep.hz, "Explicit field values")->delimiter(',');
    sweep_cmd->add_option("--hz-min", hz_min, "Grid start")->excludes(hz_list);
    sweep_cmd->add_option("--hz-max", hz_max, "Grid end")->excludes(hz_list);
    sweep_cmd->add_option("--hz-step", hz_step, "Grid step")->excludes(hz_list);
    sweep_cmd->add_option("--L", sweep.L, "Trotter steps (default 4n)");
    sweep_cmd->add_option("--T", sweep.T, "Anneal time (default 10n)");
    sweep_cmd->add_flag("--omit-timing", sweep.omit_timing, "Leave wall_seconds empty for byte-identical output");
    sweep_cmd->add_option("--output", output_path, "Output file (default stdout)");

    BenchConfig bench;
    auto       *bench_cmd = app.add_subcommand("bench", "Time a task over qubit counts and fit a log-log exponent");
    common(bench_cmd);
    bench_cmd->add_option("--task", bench.task, "aqc, algorithm1 or heisenberg");
    bench_cmd->add_option("--n", bench.ns, "Qubit counts")->delimiter(',');
    bench_cmd->add_option("--repetitions", bench.repetitions, "Runs per point; the median is reported");
    bench_cmd->add_option("--kvec", bench.kvec, "Weight vector for the algorithm1 task");
    std::uint64_t bench_seed = 0;
    bench_cmd->add_option("--seed", bench_seed, "Accepted for uniformity; every task is deterministic");
    bench_cmd->add_option("--output", output_path, "Output file (default stdout)");

    ShadowsConfig shadow;
    auto         *shadow_cmd = app.add_subcommand("shadows", "Simulate classical-shadow acquisition and estimation");
    common(shadow_cmd);
    shadow_cmd->add_option("--protocol", shadow.protocol, "deep or symmetrized");
    shadow_cmd->add_option("--n", shadow.n, "Qubit count");
    shadow_cmd->add_option("--snapshots", shadow.snapshots, "Number of snapshots");
    shadow_cmd->add_option("--observables", shadow.observables, "Observable names or 'identity' (default: the observable set)")->delimiter(',');
    shadow_cmd->add_option("--state", shadow.state, "zero, plus, dicke:<w> or lmg");
    shadow_cmd->add_option("--hz", shadow.hz, "Field for --state lmg");
    shadow_cmd->add_option("--gamma", shadow.gamma, "Anisotropy for --state lmg");
    shadow_cmd->add_option("--seed", shadow.seed, "Run seed (required when acquiring)");
    shadow_cmd->add_option("--aggregation", shadow.aggregation, "mean or median-of-means");
    shadow_cmd->add_option("--batches", shadow.batches, "Batches for median-of-means");
    shadow_cmd->add_option("--write-snapshots", shadow.write_snapshots, "Write snapshot records to this file");
    shadow_cmd->add_option("--read-snapshots", shadow.read_snapshots, "Estimate from recorded snapshots instead of sampling");
    shadow_cmd->add_option("--output", output_path, "Output file (default stdout)");

    VerifyConfig verify_cfg;
    auto        *verify_cmd = app.add_subcommand("verify", "Run the structural invariant and oracle suite");
    common(verify_cmd);
    verify_cmd->add_option("--n", verify_cfg.ns, "Qubit counts, each in 1..8")->delimiter(',');
    verify_cmd->add_option("--fault", verify_cfg.fault, "none or global-y-sign-flip (suite self-test)");
    verify_cmd->add_option("--report", verify_cfg.report, "JSON report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch(const CLI::ParseError &e) {
        std::ostringstream o, e_out;
        const int          code = app.exit(e, o, e_out);
        out << o.str();
        err << e_out.str();
        return code == 0 ? int{kSuccess} : int{kConfigError};
    }

    try {
        CLI::App *sub = app.get_subcommands().front();
        if(!config_path.empty()) apply_json_config(*sub, config_path);
        if(threads < 1) throw InvalidArgument("--threads must be positive");
        std::ostringstream buffer;
        int                code = kSuccess;
        if(sub == blocks_cmd) {
            cmd_blocks(blocks, buffer);
        } else if(sub == sweep_cmd) {
            if(sweep.hz.empty()) sweep.hz = hz_grid(hz_min, hz_max, hz_step);
            sweep.threads = threads;
            code          = cmd_lmg_sweep(sweep, buffer, err);
        } else if(sub == bench_cmd) {
            bench.threads = threads;
            cmd_bench(bench, buffer);
        } else if(sub == shadow_cmd) {
            shadow.threads = threads;
            cmd_shadows(shadow, buffer);
        } else {
            verify_cfg.threads = threads;
            code               = cmd_verify(verify_cfg, buffer, err);
        }
        write_output(output_path, out, buffer.str());
        return code;
    } catch(const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch(const InvalidArgument &e) {
        err << "invalid argument: " << e.what() << '\n';
        return kConfigError;
    } catch(const ResourceGuard &e) {
        err << "resource guard: " << e.what() << '\n';
        return kResourceGuardTripped;
    } catch(const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace permsim::cli
