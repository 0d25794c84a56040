#pragma once

// Random circuits and states shared by the tests and the verification suite.
// Each circuit is produced twice: as block operators and as dense 2^n
// matrices built independently by the oracle.

#include "permsim/evolution/circuit.hpp"
#include "permsim/ops/closed_form.hpp"
#include "permsim/oracle/dense.hpp"

#include <random>
#include <vector>

namespace permsim::testing {

struct PairedCircuit {
    evolution::Circuit              blocks;
    std::vector<oracle::DenseLayer> dense;
};

inline PairedCircuit random_circuit(int n, int layers, std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> time(-2.0, 2.0);
    std::bernoulli_distribution            use(0.6);
    const auto                             kinds = ops::generator_set();
    std::vector<ops::BlockOperator>        ops_b;
    std::vector<MatrixC>                   ops_d;
    for(const auto &k : kinds) {
        ops_b.push_back(ops::make_operator(k, n));
        ops_d.push_back(oracle::dense_operator(k, n));
    }
    PairedCircuit out;
    for(int l = 0; l < layers; ++l) {
        std::vector<std::pair<double, const ops::BlockOperator *>> terms;
        MatrixC dense = MatrixC::Zero(ops_d[0].rows(), ops_d[0].cols());
        for(std::size_t i = 0; i < kinds.size(); ++i) {
            if(!use(gen)) continue;
            const double c = coeff(gen);
            terms.emplace_back(c, &ops_b[i]);
            dense += c * ops_d[i];
        }
        if(terms.empty()) {
            terms.emplace_back(1.0, &ops_b[0]);
            dense += ops_d[0];
        }
        const double t = time(gen);
        out.blocks.push_back({ops::compose(terms), t, ""});
        out.dense.push_back({dense, t});
    }
    return out;
}

inline MatrixC random_density(int n, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    const Eigen::Index               dim = Eigen::Index{1} << n;
    MatrixC                          a(dim, dim);
    for(Eigen::Index j = 0; j < dim; ++j)
        for(Eigen::Index i = 0; i < dim; ++i) a(i, j) = cplx{g(gen), g(gen)};
    MatrixC rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline MatrixC random_hermitian(int dim, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    MatrixC                          a(dim, dim);
    for(int j = 0; j < dim; ++j)
        for(int i = 0; i < dim; ++i) a(i, j) = cplx{g(gen), g(gen)};
    return 0.5 * (a + a.adjoint());
}

/// Random equivariant observable as block operator plus its dense image.
inline std::pair<ops::BlockOperator, MatrixC> random_observable(int n, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    auto                             kinds = ops::observable_set();
    ops::BlockOperator               acc   = ops::zero_operator(n);
    MatrixC                          dense = MatrixC::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for(const auto &k : kinds) {
        const double c  = g(gen);
        const auto   op = ops::make_operator(k, n);
        acc             = ops::compose({{1.0, &acc}, {c, &op}});
        dense += c * oracle::dense_operator(k, n);
    }
    return {acc, dense};
}

inline MatrixC dense_state(const VectorC &v) { return v * v.adjoint(); }

} // namespace permsim::testing
