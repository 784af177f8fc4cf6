#include "fellgeom/lincore/random.hpp"

#include <cmath>

namespace fellgeom {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return uniform_(engine_); }

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

int Rng::integer(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(engine_);
}

Matrix Rng::ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    }
    return m;
}

Matrix Rng::hermitian(Eigen::Index n) {
    const Matrix g = ginibre(n, n);
    return (g + g.adjoint()) / 2.0;
}

Matrix Rng::unitary(Eigen::Index n) {
    const Matrix g = ginibre(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

Matrix Rng::density(Eigen::Index n) {
    const Matrix g = ginibre(n, n);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

Vector Rng::unit_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v / v.norm();
}

RealVector Rng::real_normal(Eigen::Index n) {
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
}

}  // namespace fellgeom
