#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

/// Command-line front end: `blocks`, `lmg-sweep`, `bench`, `shadows`, `verify`.
namespace permsim::cli {

enum ExitCode : int {
    kSuccess             = 0,
    kRuntimeError        = 1,
    kConfigError         = 2,
    kVerificationFailure = 3,
    kResourceGuardTripped = 4,
};

/// Environment variable holding the default worker count.
inline constexpr const char *kThreadsEnv = "PERMSIM_THREADS";

/// Shortest round-trip form with 17 significant digits, '.' decimal.
std::string format_double(double x);

struct BlocksConfig {
    int                        n{};
    std::optional<std::string> kind;
    std::optional<std::string> kvec;
    std::string                format; ///< "dense" or "banded"; empty picks banded for kvec, dense for kind
};

/// JSON {n, kind|kvec, format, blocks: [...]}. Dense blocks carry real/imag
/// d x d arrays; banded blocks carry bandwidth and real/imag arrays indexed
/// [q][q' - q + b].
void cmd_blocks(const BlocksConfig &config, std::ostream &out);

struct SweepConfig {
    std::vector<int>      ns;
    double                J{1.0};
    double                gamma{0.5};
    std::vector<double>   hz;
    std::optional<int>    L;
    std::optional<double> T;
    int                   threads{1};
    bool                  omit_timing{false};
};

/// Evenly spaced grid from lo to hi inclusive, built as lo + i * step.
std::vector<double> hz_grid(double lo, double hi, double step);

/// CSV with one row per (n, hz) in input order. Points that fail are reported
/// on `err` and written with empty result fields; returns the exit code.
int cmd_lmg_sweep(const SweepConfig &config, std::ostream &out, std::ostream &err);

struct BenchConfig {
    std::string      task; ///< "aqc", "algorithm1" or "heisenberg"
    std::vector<int> ns;
    int              repetitions{3};
    std::string      kvec{"1,1,1"};
    int              threads{1};
};

/// Least-squares slope of log(seconds) against log(n).
double fit_exponent(const std::vector<int> &ns, const std::vector<double> &seconds);

/// CSV task,n,repetitions,median_seconds,fitted_exponent; the last row has
/// n = "all" and carries the fitted exponent.
void cmd_bench(const BenchConfig &config, std::ostream &out);

struct ShadowsConfig {
    std::string                  protocol; ///< "deep" or "symmetrized"
    int                          n{};
    std::size_t                  snapshots{};
    std::vector<std::string>     observables; ///< kind names or "identity"; empty means the observable set
    std::string                  state{"zero"}; ///< zero, plus, dicke:<w> or lmg
    double                       hz{0.5};
    double                       gamma{0.5};
    std::optional<std::uint64_t> seed;
    std::string                  aggregation{"mean"}; ///< mean or median-of-means
    int                          batches{1};
    int                          threads{1};
    std::string                  write_snapshots;
    std::string                  read_snapshots;
};

/// CSV protocol,observable,truth,estimate,std_error,n_snapshots,variance,variance_bound.
void cmd_shadows(const ShadowsConfig &config, std::ostream &out);

struct VerifyConfig {
    std::vector<int> ns{2, 3, 4, 5, 6};
    std::string      fault{"none"}; ///< none or global-y-sign-flip
    std::string      report;        ///< JSON path; empty writes JSON to `out`
    int              threads{1};
};

/// Runs the suite, prints one line per check on `err` and the JSON report.
/// Returns kVerificationFailure when any check fails.
int cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv, applies an optional JSON config file (explicit flags win) and
/// dispatches. Never throws; returns an ExitCode.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace permsim::cli
