#include "permsim/shadows/shadows.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/core/parallel.hpp"
#include "permsim/ops/closed_form.hpp"

#include <Eigen/QR>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace permsim::shadows {

using evolution::SchurState;

namespace {

constexpr double kProbabilityTolerance = 1e-10;

/// Index of the first cumulative weight exceeding u * total.
int sample_index(const VectorR &weights, double u) {
    const double target = u * weights.sum();
    double       acc    = 0.0;
    int          last   = 0;
    for(Eigen::Index i = 0; i < weights.size(); ++i) {
        if(weights(i) <= 0.0) continue;
        last = static_cast<int>(i);
        acc += weights(i);
        if(target < acc) return last;
    }
    return last;
}

VectorR checked_probabilities(VectorR p, const char *what) {
    if(p.minCoeff() < -kProbabilityTolerance) throw NumericalError(fmt::format("{} has a negative probability {:.3e}", what, p.minCoeff()));
    if(std::abs(p.sum() - 1.0) > kProbabilityTolerance) throw NumericalError(fmt::format("{} sums to {:.15g}", what, p.sum()));
    return p.cwiseMax(0.0);
}

double standard_normal(Philox4x32 &rng) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

EulerAngles sample_euler(Philox4x32 &rng) {
    EulerAngles a;
    a.theta1 = 2.0 * std::numbers::pi * rng.uniform();
    a.theta2 = std::acos(std::clamp(1.0 - 2.0 * rng.uniform(), -1.0, 1.0));
    a.theta3 = 2.0 * std::numbers::pi * rng.uniform();
    return a;
}

Eigen::Matrix2cd single_qubit_unitary(const EulerAngles &angles) {
    auto rz = [](double t) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0)            = std::polar(1.0, -t / 2);
        m(1, 1)            = std::polar(1.0, t / 2);
        return m;
    };
    Eigen::Matrix2cd ry;
    const double     c = std::cos(angles.theta2 / 2), s = std::sin(angles.theta2 / 2);
    ry << c, -s, s, c;
    return rz(angles.theta3) * ry * rz(angles.theta1);
}

std::array<double, 3> rotated_axis(const EulerAngles &angles) {
    const Eigen::Matrix2cd w = single_qubit_unitary(angles);
    Eigen::Matrix2cd       z;
    z << 1, 0, 0, -1;
    const Eigen::Matrix2cd m = w.adjoint() * z * w;
    // m = [[n_z, n_x - i n_y], [n_x + i n_y, -n_z]]
    return {m(1, 0).real(), m(1, 0).imag(), m(0, 0).real()};
}

RotatedMeasurement::RotatedMeasurement(int n) : n_(n) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    for(const auto &irrep : schur::enumerate_irreps(n)) {
        auto block = ops::closed_form_block(ops::GeneratorKind::sum_y(), n, irrep);
        block.entries *= static_cast<double>(n);
        spin_y_.push_back(evolution::eigendecompose(block, evolution::EigenMethod::Dense));
    }
}

MatrixC RotatedMeasurement::rotation_block(int m, const EulerAngles &angles) const {
    const auto &f = spin_y_.at(static_cast<std::size_t>(m));
    const int   d = static_cast<int>(f.lambda.size());
    VectorC     phase(d);
    for(int i = 0; i < d; ++i) phase(i) = std::polar(1.0, -0.5 * angles.theta2 * f.lambda(i));
    MatrixC u = f.Q * phase.asDiagonal() * f.Q.adjoint();
    // sum_i Z_i = n - 2h on |m, q> with h = q + m
    for(int q = 0; q < d; ++q) {
        const double z = n_ - 2.0 * (q + m);
        u.row(q) *= std::polar(1.0, -0.5 * angles.theta3 * z);
        u.col(q) *= std::polar(1.0, -0.5 * angles.theta1 * z);
    }
    return u;
}

VectorR RotatedMeasurement::hamming_distribution(const SchurState &state, const EulerAngles &angles) const {
    if(state.n() != n_) throw InvalidArgument(fmt::format("state has n={}, measurement n={}", state.n(), n_));
    VectorR p = VectorR::Zero(n_ + 1);
    if(state.is_pure()) {
        const VectorC u = rotation_block(0, angles) * state.psi();
        p.head(u.size()) = u.cwiseAbs2();
    } else {
        const auto &tau = state.tau();
        for(std::size_t mi = 0; mi < tau.size(); ++mi) {
            const int     m = static_cast<int>(mi);
            const MatrixC u = rotation_block(m, angles);
            const MatrixC r = u * tau[mi] * u.adjoint();
            for(Eigen::Index q = 0; q < r.rows(); ++q) p(q + m) += r(q, q).real();
        }
    }
    return checked_probabilities(std::move(p), "rotated Hamming distribution");
}

VectorR rotated_hamming_distribution(const SchurState &state, const EulerAngles &angles) {
    return RotatedMeasurement(state.n()).hamming_distribution(state, angles);
}

VectorR measurement_vector(int n, const EulerAngles &angles, int hamming) {
    if(hamming < 0 || hamming > n) throw InvalidArgument(fmt::format("Hamming weight {} out of range for n={}", hamming, n));
    const auto axis  = rotated_axis(angles);
    const auto basis = schur::enumerate_weight_vectors(n, n);
    VectorR    out(static_cast<Eigen::Index>(basis.size()));
    std::vector<double> a(static_cast<std::size_t>(n + 1));
    for(int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = a_coeff(hamming, k, n).convert_to<double>();
    for(std::size_t i = 0; i < basis.size(); ++i) {
        const auto  &k        = basis[i];
        const double log_norm = 0.5 * (schur::log_factorial(n) - n * std::log(2.0) - schur::log_factorial(k.x) - schur::log_factorial(k.y) -
                                       schur::log_factorial(k.z) - schur::log_factorial(n - k.total()));
        out(static_cast<Eigen::Index>(i)) =
            a[static_cast<std::size_t>(k.total())] * std::exp(log_norm) * std::pow(axis[0], k.x) * std::pow(axis[1], k.y) * std::pow(axis[2], k.z);
    }
    return out;
}

SymmetrizedEstimator::SymmetrizedEstimator(const ChannelMatrix &channel, const ops::BlockOperator &obs) : n_(channel.n()), basis_(channel.basis()) {
    if(obs.n != n_) throw InvalidArgument(fmt::format("observable has n={}, channel n={}", obs.n, n_));
    weights_ = channel.solve(observable_coordinates(obs));
    a_table_.assign(static_cast<std::size_t>(n_ + 1), std::vector<double>(static_cast<std::size_t>(n_ + 1)));
    for(int h = 0; h <= n_; ++h)
        for(int k = 0; k <= n_; ++k) a_table_[static_cast<std::size_t>(h)][static_cast<std::size_t>(k)] = a_coeff(h, k, n_).convert_to<double>();
    for(const auto &k : basis_)
        log_norm_.push_back(0.5 * (schur::log_factorial(n_) - n_ * std::log(2.0) - schur::log_factorial(k.x) - schur::log_factorial(k.y) -
                                   schur::log_factorial(k.z) - schur::log_factorial(n_ - k.total())));
}

double SymmetrizedEstimator::operator()(const SymmetrizedSnapshot &snapshot) const {
    if(snapshot.hamming < 0 || snapshot.hamming > n_) throw InvalidArgument(fmt::format("Hamming weight {} out of range for n={}", snapshot.hamming, n_));
    const auto          axis = rotated_axis(snapshot.angles);
    std::vector<double> px(static_cast<std::size_t>(n_ + 1)), py(px.size()), pz(px.size());
    px[0] = py[0] = pz[0] = 1.0;
    for(std::size_t e = 1; e < px.size(); ++e) {
        px[e] = px[e - 1] * axis[0];
        py[e] = py[e - 1] * axis[1];
        pz[e] = pz[e - 1] * axis[2];
    }
    const auto &a   = a_table_[static_cast<std::size_t>(snapshot.hamming)];
    double      acc = 0.0;
    for(std::size_t i = 0; i < basis_.size(); ++i) {
        const auto &k = basis_[i];
        const double v = a[static_cast<std::size_t>(k.total())] * std::exp(log_norm_[i]) * px[static_cast<std::size_t>(k.x)] * py[static_cast<std::size_t>(k.y)] *
                         pz[static_cast<std::size_t>(k.z)];
        acc += v * weights_(static_cast<Eigen::Index>(i));
    }
    return acc;
}

double estimator_symmetrized(const SymmetrizedSnapshot &snapshot, const ops::BlockOperator &obs, const ChannelMatrix &channel) {
    return SymmetrizedEstimator(channel, obs)(snapshot);
}

SymmetrizedSnapshot symmetrized_sample(const RotatedMeasurement &measurement, const SchurState &state, Philox4x32 &rng) {
    SymmetrizedSnapshot s;
    s.angles  = sample_euler(rng);
    s.hamming = sample_index(measurement.hamming_distribution(state, s.angles), rng.uniform());
    return s;
}

MatrixC haar_unitary(int d, std::uint64_t seed) {
    if(d < 1) throw InvalidArgument(fmt::format("unitary dimension must be positive, got {}", d));
    Philox4x32 rng(seed);
    MatrixC    g(d, d);
    for(int j = 0; j < d; ++j)
        for(int i = 0; i < d; ++i) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            g(i, j)         = cplx{re, im} * std::sqrt(0.5);
        }
    Eigen::HouseholderQR<MatrixC> qr(g);
    MatrixC                       q = qr.householderQ();
    const MatrixC                 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for(int j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if(mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

DeepSnapshot deep_pics_sample(const SchurState &state, Philox4x32 &rng) {
    DeepSnapshot s;
    if(state.is_pure()) {
        s.irrep_m = 0;
    } else {
        const auto &tau = state.tau();
        VectorR     pm(static_cast<Eigen::Index>(tau.size()));
        for(std::size_t m = 0; m < tau.size(); ++m) pm(static_cast<Eigen::Index>(m)) = tau[m].trace().real();
        s.irrep_m = sample_index(checked_probabilities(std::move(pm), "irrep distribution"), rng.uniform());
    }
    s.register_seed = rng.next_u64();
    const int     d = state.n() - 2 * s.irrep_m + 1;
    const MatrixC v = haar_unitary(d, s.register_seed);
    VectorR       pq;
    if(state.is_pure()) {
        pq = (v * state.psi()).cwiseAbs2();
    } else {
        const MatrixC &t = state.tau()[static_cast<std::size_t>(s.irrep_m)];
        const MatrixC  r = v * (t / t.trace().real()) * v.adjoint();
        pq               = r.diagonal().real();
    }
    s.outcome = sample_index(checked_probabilities(std::move(pq), "register distribution"), rng.uniform());
    return s;
}

double estimator_deep(const DeepSnapshot &snapshot, const ops::BlockOperator &obs) {
    const auto   &o = obs.block(snapshot.irrep_m).entries;
    const int     d = static_cast<int>(o.rows());
    if(snapshot.outcome < 0 || snapshot.outcome >= d) throw InvalidArgument(fmt::format("register outcome {} out of range for d={}", snapshot.outcome, d));
    const MatrixC v   = haar_unitary(d, snapshot.register_seed);
    const VectorC row = v.row(snapshot.outcome).transpose();
    // <q|V O V^dagger|q> with <q|V = row^T
    const cplx    val = row.transpose() * o * row.conjugate();
    return (d + 1) * val.real() - o.trace().real();
}

std::vector<SymmetrizedSnapshot> acquire_symmetrized(const SchurState &state, std::size_t count, std::uint64_t seed, int threads) {
    const RotatedMeasurement         measurement(state.n());
    std::vector<SymmetrizedSnapshot> out(count);
    parallel_for(count, threads, [&](std::size_t i) {
        Philox4x32 rng(seed, i);
        out[i]       = symmetrized_sample(measurement, state, rng);
        out[i].seed  = seed;
        out[i].index = i;
    });
    return out;
}

std::vector<DeepSnapshot> acquire_deep(const SchurState &state, std::size_t count, std::uint64_t seed, int threads) {
    std::vector<DeepSnapshot> out(count);
    parallel_for(count, threads, [&](std::size_t i) {
        Philox4x32 rng(seed, i);
        out[i]       = deep_pics_sample(state, rng);
        out[i].seed  = seed;
        out[i].index = i;
    });
    return out;
}

Estimate aggregate(std::span<const double> estimates, Aggregation strategy, int batches) {
    if(estimates.empty()) throw InvalidArgument("cannot aggregate an empty list of estimates");
    const auto   count = estimates.size();
    const double mean  = std::accumulate(estimates.begin(), estimates.end(), 0.0) / static_cast<double>(count);
    double       ss    = 0.0;
    for(double e : estimates) ss += (e - mean) * (e - mean);
    Estimate out;
    out.count    = count;
    out.variance = count > 1 ? ss / static_cast<double>(count - 1) : 0.0;
    if(strategy == Aggregation::Mean || batches == 1) {
        out.value     = mean;
        out.std_error = std::sqrt(out.variance / static_cast<double>(count));
        return out;
    }
    if(batches < 1 || static_cast<std::size_t>(batches) > count) throw InvalidArgument(fmt::format("cannot split {} estimates into {} batches", count, batches));
    std::vector<double> means;
    const std::size_t   base = count / static_cast<std::size_t>(batches);
    const std::size_t   rem  = count % static_cast<std::size_t>(batches);
    std::size_t         pos  = 0;
    for(std::size_t b = 0; b < static_cast<std::size_t>(batches); ++b) {
        const std::size_t len = base + (b < rem ? 1 : 0);
        means.push_back(std::accumulate(estimates.begin() + static_cast<std::ptrdiff_t>(pos), estimates.begin() + static_cast<std::ptrdiff_t>(pos + len), 0.0) /
                        static_cast<double>(len));
        pos += len;
    }
    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    out.value             = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    const double bm       = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
    double       bss      = 0.0;
    for(double m : means) bss += (m - bm) * (m - bm);
    const double bvar = means.size() > 1 ? bss / static_cast<double>(means.size() - 1) : 0.0;
    out.std_error     = std::sqrt(std::numbers::pi / 2.0 * bvar / static_cast<double>(means.size()));
    return out;
}

double deep_variance_bound(const ops::BlockOperator &obs) {
    const double n    = obs.n;
    const double norm = ops::operator_norm(obs);
    return 3.0 * (n * n + 2.0 * n + 2.0) * norm * norm;
}

double symmetrized_variance_bound(const ops::BlockOperator &obs) { return (2.0 * obs.n + 1.0) * ops::frobenius_norm_sq(obs); }

void write_snapshots(std::ostream &out, std::span<const Snapshot> snapshots) {
    for(const auto &s : snapshots) {
        if(const auto *sym = std::get_if<SymmetrizedSnapshot>(&s))
            out << fmt::format("sym {} {} {:.17g} {:.17g} {:.17g} {}\n", sym->seed, sym->index, sym->angles.theta1, sym->angles.theta2, sym->angles.theta3, sym->hamming);
        else {
            const auto &deep = std::get<DeepSnapshot>(s);
            out << fmt::format("deep {} {} {} {} {}\n", deep.seed, deep.index, deep.irrep_m, deep.register_seed, deep.outcome);
        }
    }
}

std::vector<Snapshot> read_snapshots(std::istream &in) {
    std::vector<Snapshot> out;
    std::string           line;
    std::size_t           lineno = 0;
    while(std::getline(in, line)) {
        ++lineno;
        if(line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        fields.imbue(std::locale::classic());
        std::string tag;
        fields >> tag;
        bool ok = false;
        if(tag == "sym") {
            SymmetrizedSnapshot s;
            ok = static_cast<bool>(fields >> s.seed >> s.index >> s.angles.theta1 >> s.angles.theta2 >> s.angles.theta3 >> s.hamming);
            if(ok) out.emplace_back(s);
        } else if(tag == "deep") {
            DeepSnapshot s;
            ok = static_cast<bool>(fields >> s.seed >> s.index >> s.irrep_m >> s.register_seed >> s.outcome);
            if(ok) out.emplace_back(s);
        }
        std::string extra;
        if(!ok || (fields >> extra)) throw InvalidArgument(fmt::format("malformed snapshot record on line {}: '{}'", lineno, line));
    }
    return out;
}

} // namespace permsim::shadows
