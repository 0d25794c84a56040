#include "permsim/evolution/banded.hpp"

#include "permsim/core/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace permsim::evolution {

namespace {

constexpr int kMaxQlIterations = 60;

/// sqrt(a^2 + b^2); falls back to std::hypot only when squaring could over- or underflow.
inline double pythag(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    if(m > 1e-150 && m < 1e150) return std::sqrt(a * a + b * b);
    return std::hypot(a, b);
}

/// Symmetric work matrix holding w lower diagonals (the band plus one bulge).
class BandWork {
  public:
    BandWork(std::vector<double> &storage, int d, int w) : data_(storage), d_(d), w_(w) { data_.assign(static_cast<std::size_t>((w + 1) * d), 0.0); }

    double &ref(int i, int j) {
        if(i < j) std::swap(i, j);
        return data_[static_cast<std::size_t>((i - j) + (w_ + 1) * j)];
    }

    /// A <- G A G^T for the rotation acting on (p, p+1).
    void rotate(int p, double c, double s) {
        const int lo = std::max(0, p + 1 - w_);
        const int hi = std::min(d_ - 1, p + w_);
        for(int k = lo; k <= hi; ++k) {
            if(k == p || k == p + 1) continue;
            double &x  = ref(p, k);
            double &y  = ref(p + 1, k);
            const double xv = x;
            const double yv = y;
            x = c * xv + s * yv;
            y = -s * xv + c * yv;
        }
        double &a  = ref(p, p);
        double &bb = ref(p + 1, p);
        double &e  = ref(p + 1, p + 1);
        const double av = a, bv = bb, ev = e;
        a  = c * c * av + 2.0 * c * s * bv + s * s * ev;
        e  = s * s * av - 2.0 * c * s * bv + c * c * ev;
        bb = (c * c - s * s) * bv + c * s * (ev - av);
    }

  private:
    std::vector<double> &data_;
    int                  d_;
    int                  w_;
};

} // namespace

SymmetricBand::SymmetricBand(int dim, int bandwidth) : d(dim), b(bandwidth), lower(static_cast<std::size_t>((bandwidth + 1) * dim), 0.0) {
    if(dim < 1 || bandwidth < 0) throw InvalidArgument(fmt::format("invalid band shape d={}, b={}", dim, bandwidth));
}

SymmetricBand SymmetricBand::from_dense(const MatrixR &a, int bandwidth) {
    if(a.rows() != a.cols()) throw InvalidArgument("band source must be square");
    SymmetricBand out(static_cast<int>(a.rows()), bandwidth);
    for(int j = 0; j < out.d; ++j)
        for(int i = j; i <= std::min(out.d - 1, j + bandwidth); ++i) out.lower_at(i, j) = a(i, j);
    return out;
}

double SymmetricBand::at(int i, int j) const {
    if(i < j) std::swap(i, j);
    if(i - j > b) return 0.0;
    return lower[static_cast<std::size_t>((i - j) + (b + 1) * j)];
}

MatrixR SymmetricBand::dense() const {
    MatrixR out = MatrixR::Zero(d, d);
    for(int j = 0; j < d; ++j)
        for(int i = j; i <= std::min(d - 1, j + b); ++i) out(i, j) = out(j, i) = at(i, j);
    return out;
}

void SymmetricBand::axpy(double alpha, const SymmetricBand &other) {
    if(other.d != d || other.b > b) throw InvalidArgument("axpy: incompatible band shapes");
    for(int j = 0; j < d; ++j)
        for(int i = j; i <= std::min(d - 1, j + other.b); ++i) lower_at(i, j) += alpha * other.at(i, j);
}

void BandedEigensystem::compute(const SymmetricBand &a) {
    const int d = a.d;
    const int b = a.b;
    rotations_.clear();
    lambda_.resize(d);
    off_.assign(static_cast<std::size_t>(d), 0.0);

    if(b >= 2) {
        BandWork work(work_band_, d, b + 1);
        for(int j = 0; j < d; ++j)
            for(int i = j; i <= std::min(d - 1, j + b); ++i) work.ref(i, j) = a.at(i, j);
        for(int col0 = 0; col0 + 2 < d; ++col0) {
            for(int j = std::min(b, d - 1 - col0); j >= 2; --j) {
                int row = col0 + j;
                int col = col0;
                while(true) {
                    const double y = work.ref(row, col);
                    if(y == 0.0) break;
                    const double x = work.ref(row - 1, col);
                    const double r = pythag(x, y);
                    const double c = x / r;
                    const double s = y / r;
                    work.rotate(row - 1, c, s);
                    work.ref(row, col) = 0.0;
                    rotations_.push_back({row - 1, c, s});
                    if(row + b >= d) break;
                    col = row - 1;
                    row += b;
                }
            }
        }
        for(int i = 0; i < d; ++i) {
            lambda_(i) = work.ref(i, i);
            if(i + 1 < d) off_[static_cast<std::size_t>(i)] = work.ref(i + 1, i);
        }
    } else {
        for(int i = 0; i < d; ++i) {
            lambda_(i) = a.at(i, i);
            if(i + 1 < d && b == 1) off_[static_cast<std::size_t>(i)] = a.at(i + 1, i);
        }
    }

    // implicit-shift QL on (lambda_, off_), off_[i] couples i and i+1
    auto      &dd  = lambda_;
    auto      &e   = off_;
    const double eps = std::numeric_limits<double>::epsilon();
    for(int l = 0; l < d; ++l) {
        int iter = 0;
        int m    = l;
        do {
            for(m = l; m < d - 1; ++m) {
                const double scale = std::abs(dd(m)) + std::abs(dd(m + 1));
                if(std::abs(e[static_cast<std::size_t>(m)]) <= eps * scale) break;
            }
            if(m != l) {
                if(iter++ == kMaxQlIterations) throw NumericalError(fmt::format("banded QL failed to converge (d={})", d));
                double g = (dd(l + 1) - dd(l)) / (2.0 * e[static_cast<std::size_t>(l)]);
                double r = pythag(g, 1.0);
                g        = dd(m) - dd(l) + e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int    i = m - 1;
                bool   deflated = false;
                for(; i >= l; --i) {
                    const double f  = s * e[static_cast<std::size_t>(i)];
                    const double bb = c * e[static_cast<std::size_t>(i)];
                    r                                  = pythag(f, g);
                    e[static_cast<std::size_t>(i + 1)] = r;
                    if(r == 0.0) {
                        dd(i + 1) -= p;
                        e[static_cast<std::size_t>(m)] = 0.0;
                        deflated                       = true;
                        break;
                    }
                    const double inv = 1.0 / r;
                    s                = f * inv;
                    c                = g * inv;
                    g         = dd(i + 1) - p;
                    r         = (dd(i) - g) * s + 2.0 * c * bb;
                    p         = s * r;
                    dd(i + 1) = g + p;
                    g         = c * r - bb;
                    rotations_.push_back({i, c, -s});
                }
                if(deflated) continue;
                dd(l) -= p;
                e[static_cast<std::size_t>(l)] = g;
                e[static_cast<std::size_t>(m)] = 0.0;
            }
        } while(m != l);
    }
}

void BandedEigensystem::forward(VectorC &x) const {
    for(const auto &rot : rotations_) {
        const cplx xp = x(rot.index);
        const cplx xq = x(rot.index + 1);
        x(rot.index)     = rot.c * xp + rot.s * xq;
        x(rot.index + 1) = -rot.s * xp + rot.c * xq;
    }
}

void BandedEigensystem::backward(VectorC &y) const {
    for(auto it = rotations_.rbegin(); it != rotations_.rend(); ++it) {
        const cplx yp = y(it->index);
        const cplx yq = y(it->index + 1);
        y(it->index)     = it->c * yp - it->s * yq;
        y(it->index + 1) = it->s * yp + it->c * yq;
    }
}

void BandedEigensystem::propagate(VectorC &psi, double t) const {
    if(psi.size() != lambda_.size()) throw InvalidArgument(fmt::format("vector of size {} does not match d={}", psi.size(), lambda_.size()));
    forward(psi);
    for(Eigen::Index i = 0; i < psi.size(); ++i) psi(i) *= std::polar(1.0, -t * lambda_(i));
    backward(psi);
}

MatrixR BandedEigensystem::eigenvectors() const {
    const auto d = lambda_.size();
    MatrixR    v = MatrixR::Identity(d, d);
    for(auto it = rotations_.rbegin(); it != rotations_.rend(); ++it) {
        const auto p = it->index;
        for(Eigen::Index col = 0; col < d; ++col) {
            const double yp = v(p, col);
            const double yq = v(p + 1, col);
            v(p, col)       = it->c * yp - it->s * yq;
            v(p + 1, col)   = it->s * yp + it->c * yq;
        }
    }
    return v;
}

} // namespace permsim::evolution
