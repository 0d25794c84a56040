#include "permsim/schur/irreps.hpp"

#include "permsim/core/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace permsim::schur {

namespace {

const std::vector<double> &log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kMaxLogFactorial + 1, 0.0);
        for(int k = 2; k <= kMaxLogFactorial; ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
        return t;
    }();
    return table;
}

} // namespace

double IrrepLabel::mult_double() const { return mult.convert_to<double>(); }

double IrrepLabel::log_mult() const {
    // C(n,m) (n-2m+1)/(n-m+1), evaluated in log space so it never overflows
    return log_binomial(n, m) + std::log(static_cast<double>(n - 2 * m + 1)) - std::log(static_cast<double>(n - m + 1));
}

std::string to_string(const WeightVector &k) { return fmt::format("({},{},{})", k.x, k.y, k.z); }

BigInt binomial(int n, int k) {
    if(k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for(int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

BigInt factorial(int n) {
    if(n < 0) throw InvalidArgument("factorial of a negative integer");
    BigInt r = 1;
    for(int i = 2; i <= n; ++i) r *= i;
    return r;
}

double log_factorial(int k) {
    if(k < 0) return std::numeric_limits<double>::infinity();
    if(k > kMaxLogFactorial) throw ResourceGuard(fmt::format("log_factorial({}) exceeds the table size {}", k, kMaxLogFactorial));
    return log_factorial_table()[static_cast<std::size_t>(k)];
}

std::span<const double> log_factorials() { return log_factorial_table(); }

double log_binomial(int n, int k) {
    if(k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

IrrepLabel make_irrep(int n, int m) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    if(m < 0 || 2 * m > n) throw InvalidArgument(fmt::format("irrep label m={} out of range for n={}", m, n));
    IrrepLabel label;
    label.n = n;
    label.m = m;
    label.d = n - 2 * m + 1;
    // n!(n-2m+1)! / ((n-m+1)! m! (n-2m)!) = C(n,m) (n-2m+1) / (n-m+1); the division is exact
    BigInt num = binomial(n, m) * (n - 2 * m + 1);
    label.mult = num / (n - m + 1);
    return label;
}

std::vector<IrrepLabel> enumerate_irreps(int n) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    std::vector<IrrepLabel> out;
    out.reserve(static_cast<std::size_t>(n / 2 + 1));
    // running binomial keeps this linear in n instead of recomputing C(n,m)
    BigInt c = 1;
    for(int m = 0; 2 * m <= n; ++m) {
        IrrepLabel label;
        label.n    = n;
        label.m    = m;
        label.d    = n - 2 * m + 1;
        label.mult = (c * (n - 2 * m + 1)) / (n - m + 1);
        out.push_back(std::move(label));
        c = c * (n - m) / (m + 1);
    }
    return out;
}

std::uint64_t commutant_dim(int n) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    const auto x = static_cast<std::uint64_t>(n);
    return (x + 3) * (x + 2) * (x + 1) / 6;
}

std::vector<WeightVector> enumerate_weight_vectors(int n, int k_max) {
    if(n < 1) throw InvalidArgument(fmt::format("qubit count must be positive, got {}", n));
    if(k_max < 0 || k_max > n) throw InvalidArgument(fmt::format("k_max={} must lie in [0, n={}]", k_max, n));
    std::vector<WeightVector> out;
    out.reserve(static_cast<std::size_t>((k_max + 3) * (k_max + 2) * (k_max + 1) / 6));
    for(int k = 0; k <= k_max; ++k)
        for(int x = 0; x <= k; ++x)
            for(int y = 0; y <= k - x; ++y) out.push_back({x, y, k - x - y});
    return out;
}

std::size_t weight_vector_index(const WeightVector &k) {
    if(k.x < 0 || k.y < 0 || k.z < 0) throw InvalidArgument("weight vector components must be non-negative");
    const auto t = static_cast<std::size_t>(k.total());
    // C(t+2, 3) vectors have smaller total weight
    std::size_t offset = (t + 2) * (t + 1) * t / 6;
    for(int x = 0; x < k.x; ++x) offset += t - static_cast<std::size_t>(x) + 1;
    return offset + static_cast<std::size_t>(k.y);
}

} // namespace permsim::schur
