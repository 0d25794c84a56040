#include "permsim/ops/generator.hpp"

#include "permsim/core/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>

namespace permsim::ops {

namespace {

schur::WeightVector count_paulis(Pauli a, Pauli b) {
    schur::WeightVector k;
    for(Pauli p : {a, b}) {
        if(p == Pauli::X) ++k.x;
        if(p == Pauli::Y) ++k.y;
        if(p == Pauli::Z) ++k.z;
    }
    return k;
}

double twirl_prefactor(const schur::WeightVector &k, int n) {
    using schur::log_factorial;
    return std::exp(log_factorial(k.x) + log_factorial(k.y) + log_factorial(k.z) + log_factorial(n - k.total()) - log_factorial(n));
}

} // namespace

char to_char(Pauli p) {
    switch(p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli parse_pauli(char c) {
    switch(c) {
        case 'I': case 'i': return Pauli::I;
        case 'X': case 'x': return Pauli::X;
        case 'Y': case 'y': return Pauli::Y;
        case 'Z': case 'z': return Pauli::Z;
        default: throw InvalidArgument(fmt::format("unknown Pauli label '{}'", c));
    }
}

std::string name(const GeneratorKind &kind) {
    switch(kind.tag) {
        case Kind::SumX: return "sum-x";
        case Kind::SumY: return "sum-y";
        case Kind::SumZ: return "sum-z";
        case Kind::SumXX: return "sum-xx";
        case Kind::SumYY: return "sum-yy";
        case Kind::SumZZ: return "sum-zz";
        case Kind::GlobalX: return "global-x";
        case Kind::GlobalY: return "global-y";
        case Kind::GlobalZ: return "global-z";
        case Kind::TwoLocal: return fmt::format("two-local:{}{}", to_char(kind.p), to_char(kind.q));
        case Kind::KLocal: return fmt::format("kvec:{},{},{}", kind.kvec.x, kind.kvec.y, kind.kvec.z);
    }
    return "unknown";
}

schur::WeightVector parse_kvec(std::string_view text) {
    std::array<int, 3> v{};
    std::size_t        pos = 0;
    for(int i = 0; i < 3; ++i) {
        const auto end  = (i < 2) ? text.find(',', pos) : text.size();
        if(end == std::string_view::npos) throw InvalidArgument(fmt::format("weight vector '{}' needs three comma-separated integers", text));
        const auto part = text.substr(pos, end - pos);
        auto [ptr, ec]  = std::from_chars(part.data(), part.data() + part.size(), v[static_cast<std::size_t>(i)]);
        if(ec != std::errc() || ptr != part.data() + part.size() || v[static_cast<std::size_t>(i)] < 0)
            throw InvalidArgument(fmt::format("weight vector '{}' needs three non-negative integers", text));
        pos = end + 1;
    }
    return {v[0], v[1], v[2]};
}

GeneratorKind parse_kind(std::string_view text) {
    for(const auto &k : observable_set())
        if(name(k) == text) return k;
    if(text.starts_with("two-local:") && text.size() == 12) return GeneratorKind::two_local(parse_pauli(text[10]), parse_pauli(text[11]));
    if(text.starts_with("kvec:")) return GeneratorKind::k_local(parse_kvec(text.substr(5)));
    throw InvalidArgument(fmt::format("unknown generator kind '{}'", text));
}

schur::WeightVector twirl_weight(const GeneratorKind &kind, int n) {
    switch(kind.tag) {
        case Kind::SumX: return {1, 0, 0};
        case Kind::SumY: return {0, 1, 0};
        case Kind::SumZ: return {0, 0, 1};
        case Kind::SumXX: return {2, 0, 0};
        case Kind::SumYY: return {0, 2, 0};
        case Kind::SumZZ: return {0, 0, 2};
        case Kind::GlobalX: return {n, 0, 0};
        case Kind::GlobalY: return {0, n, 0};
        case Kind::GlobalZ: return {0, 0, n};
        case Kind::TwoLocal: return count_paulis(kind.p, kind.q);
        case Kind::KLocal: return kind.kvec;
    }
    throw InvalidArgument("unsupported generator kind");
}

int min_qubits(const GeneratorKind &kind) {
    switch(kind.tag) {
        case Kind::SumXX:
        case Kind::SumYY:
        case Kind::SumZZ:
        case Kind::TwoLocal: return 2;
        case Kind::KLocal: return std::max(1, kind.kvec.total());
        default: return 1;
    }
}

double normalization(const GeneratorKind &kind, int n) {
    if(n < min_qubits(kind)) throw InvalidArgument(fmt::format("{} needs at least {} qubits, got n={}", name(kind), min_qubits(kind), n));
    switch(kind.tag) {
        case Kind::SumX:
        case Kind::SumY:
        case Kind::SumZ: return 1.0 / n;
        case Kind::SumXX:
        case Kind::SumYY:
        case Kind::SumZZ: return 2.0 / (static_cast<double>(n) * (n - 1));
        case Kind::GlobalX:
        case Kind::GlobalY:
        case Kind::GlobalZ: return 1.0;
        case Kind::TwoLocal:
        case Kind::KLocal: return twirl_prefactor(twirl_weight(kind, n), n);
    }
    throw InvalidArgument("unsupported generator kind");
}

double twirl_ratio(const GeneratorKind &kind, int n) {
    return normalization(kind, n) / twirl_prefactor(twirl_weight(kind, n), n);
}

std::vector<GeneratorKind> generator_set() {
    return {GeneratorKind::sum_x(), GeneratorKind::sum_y(), GeneratorKind::sum_z(), GeneratorKind::sum_xx(), GeneratorKind::sum_yy(), GeneratorKind::sum_zz()};
}

std::vector<GeneratorKind> observable_set() {
    auto out = generator_set();
    out.push_back(GeneratorKind::global_x());
    out.push_back(GeneratorKind::global_y());
    out.push_back(GeneratorKind::global_z());
    return out;
}

std::vector<GeneratorKind> two_local_set() {
    std::vector<GeneratorKind> out;
    for(Pauli a : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z})
        for(Pauli b : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) out.push_back(GeneratorKind::two_local(a, b));
    return out;
}

} // namespace permsim::ops
