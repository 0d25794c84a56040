#pragma once

#include <Eigen/Dense>

#include <complex>

namespace permsim {

using cplx     = std::complex<double>;
using MatrixC  = Eigen::MatrixXcd;
using MatrixR  = Eigen::MatrixXd;
using VectorC  = Eigen::VectorXcd;
using VectorR  = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// i^k for any integer k.
inline cplx i_power(int k) {
    switch(k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace permsim
