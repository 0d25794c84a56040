#include "catch_amalgamated.hpp"

#include "permsim/core/errors.hpp"
#include "permsim/schur/irreps.hpp"

#include <cmath>

using namespace permsim;
using namespace permsim::schur;

namespace {

// Counts standard Young tableaux of shape (n-m, m) by placing 1..n one at a
// time; row 2 may never be longer than row 1.
long count_tableaux(int row1, int row2, int target1, int target2) {
    if(row1 == target1 && row2 == target2) return 1;
    long total = 0;
    if(row1 < target1) total += count_tableaux(row1 + 1, row2, target1, target2);
    if(row2 < target2 && row2 + 1 <= row1) total += count_tableaux(row1, row2 + 1, target1, target2);
    return total;
}

} // namespace

TEST_CASE("irreps of four qubits", "[schur]") {
    const auto irreps = enumerate_irreps(4);
    REQUIRE(irreps.size() == 3);
    CHECK(irreps[0].m == 0);
    CHECK(irreps[0].d == 5);
    CHECK(irreps[0].mult == 1);
    CHECK(irreps[1].d == 3);
    CHECK(irreps[1].mult == 3);
    CHECK(irreps[2].d == 1);
    CHECK(irreps[2].mult == 2);
    CHECK(irreps[1].spin() == 1.0);
    CHECK(irreps[1].partition() == std::pair{3, 1});
}

TEST_CASE("single qubit has one irrep", "[schur]") {
    const auto irreps = enumerate_irreps(1);
    REQUIRE(irreps.size() == 1);
    CHECK(irreps[0].d == 2);
    CHECK(irreps[0].mult == 1);
}

TEST_CASE("invalid qubit counts are rejected", "[schur]") {
    CHECK_THROWS_AS(enumerate_irreps(0), InvalidArgument);
    CHECK_THROWS_AS(commutant_dim(0), InvalidArgument);
    CHECK_THROWS_AS(enumerate_weight_vectors(3, 4), InvalidArgument);
    CHECK_THROWS_AS(make_irrep(4, 3), InvalidArgument);
}

TEST_CASE("dimension times multiplicity sums to 2^n exactly", "[schur][property]") {
    for(int n = 1; n <= 64; ++n) {
        BigInt total = 0;
        for(const auto &irrep : enumerate_irreps(n)) total += BigInt(irrep.d) * irrep.mult;
        CHECK(total == (BigInt(1) << n));
    }
    BigInt total = 0;
    for(const auto &irrep : enumerate_irreps(1024)) total += BigInt(irrep.d) * irrep.mult;
    CHECK(total == (BigInt(1) << 1024));
}

TEST_CASE("multiplicity equals the number of standard tableaux", "[schur][oracle]") {
    for(int n = 1; n <= 10; ++n)
        for(const auto &irrep : enumerate_irreps(n)) {
            INFO("n=" << n << " m=" << irrep.m);
            CHECK(irrep.mult == count_tableaux(0, 0, n - irrep.m, irrep.m));
            CHECK(make_irrep(n, irrep.m).mult == irrep.mult);
        }
}

TEST_CASE("multiplicity in log space", "[schur]") {
    for(const auto &irrep : enumerate_irreps(40)) CHECK(std::abs(irrep.log_mult() - std::log(irrep.mult_double())) < 1e-10);
}

TEST_CASE("commutant dimension", "[schur]") {
    CHECK(commutant_dim(1) == 4);
    CHECK(commutant_dim(4) == 35);
    for(int n = 1; n <= 20; ++n) CHECK(enumerate_weight_vectors(n, n).size() == commutant_dim(n));
}

TEST_CASE("weight vector enumeration", "[schur]") {
    const auto zero = enumerate_weight_vectors(5, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == WeightVector{0, 0, 0});
    CHECK(enumerate_weight_vectors(5, 2).size() == 10);

    const auto all = enumerate_weight_vectors(10, 10);
    for(std::size_t i = 0; i < all.size(); ++i) {
        CHECK(weight_vector_index(all[i]) == i);
        if(i > 0) {
            const auto &a = all[i - 1];
            const auto &b = all[i];
            const bool  ordered = std::tuple{a.total(), a.x, a.y} < std::tuple{b.total(), b.x, b.y};
            CHECK(ordered);
        }
    }
    for(int k = 0; k <= 10; ++k) {
        const auto count = std::count_if(all.begin(), all.end(), [k](const WeightVector &v) { return v.total() == k; });
        CHECK(count == (k + 2) * (k + 1) / 2);
    }
}

TEST_CASE("exact combinatorics", "[schur]") {
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 7) == 0);
    CHECK(factorial(10) == 3628800);
    CHECK(std::abs(log_factorial(10) - std::log(3628800.0)) < 1e-12);
    CHECK(std::isinf(log_binomial(3, 5)));
    CHECK_THROWS_AS(log_factorial(kMaxLogFactorial + 1), ResourceGuard);
}
