#include "fellgeom/lincore/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace fellgeom {

double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix commutator(const Matrix& x, const Matrix& y) {
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
        throw ValidationError("commutator: operands must be square of equal size");
    }
    return x * y - y * x;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double relative_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("relative_difference: shape mismatch");
    }
    const double scale = std::max(a.norm(), b.norm());
    if (scale == 0.0) return 0.0;
    return (a - b).norm() / scale;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return relative_difference(a, b) <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return approx_equal(m, m.adjoint(), tol);
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).norm() <= tol * std::sqrt(static_cast<double>(m.rows()));
}

RealVector hermitian_eigenvalues(const Matrix& h) {
    if (h.rows() != h.cols()) throw ValidationError("hermitian_eigenvalues: matrix not square");
    if (h.size() == 0) return RealVector();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Matrix hermitian_function(const Matrix& h, const std::function<Complex(double)>& f) {
    if (h.rows() != h.cols()) throw ValidationError("hermitian_function: matrix not square");
    if (h.size() == 0) return h;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Matrix& v = es.eigenvectors();
    Vector d(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) d(i) = f(es.eigenvalues()(i));
    return v * d.asDiagonal() * v.adjoint();
}

RealVector singular_values(const Matrix& m) {
    if (m.size() == 0) return RealVector();
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

RealVector realify(const Matrix& m) {
    RealVector v(2 * m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        v(2 * k) = m.data()[k].real();
        v(2 * k + 1) = m.data()[k].imag();
    }
    return v;
}

Matrix complexify(const RealVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != 2 * rows * cols) throw ValidationError("complexify: size mismatch");
    Matrix m(rows, cols);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = Complex(v(2 * k), v(2 * k + 1));
    return m;
}

namespace {

struct RightSvd {
    RealVector sigma;
    RealMatrix v;  // full right singular basis
};

// Tall inputs are reduced to their square R factor first, so the SVD only
// ever runs on a cols x cols matrix.
RightSvd right_svd(const RealMatrix& m) {
    if (m.rows() > m.cols()) {
        Eigen::HouseholderQR<RealMatrix> qr(m);
        const RealMatrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
        Eigen::JacobiSVD<RealMatrix> svd(r, Eigen::ComputeFullV);
        return {svd.singularValues(), svd.matrixV()};
    }
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixV()};
}

int rank_from_sigma(const RealVector& sigma, double cutoff) {
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff * sigma(0)) ++r;
    }
    return r;
}

}  // namespace

int numerical_rank(const RealMatrix& m, double relative_cutoff) {
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<RealMatrix> svd(m);
    return rank_from_sigma(svd.singularValues(), relative_cutoff);
}

RealMatrix null_space(const RealMatrix& m, double relative_cutoff) {
    if (m.cols() == 0) return RealMatrix(0, 0);
    if (m.rows() == 0) return RealMatrix::Identity(m.cols(), m.cols());
    const RightSvd s = right_svd(m);
    const int r = rank_from_sigma(s.sigma, relative_cutoff);
    return s.v.rightCols(m.cols() - r);
}

RealMatrix column_span(const RealMatrix& m, double relative_cutoff) {
    if (m.size() == 0) return RealMatrix(m.rows(), 0);
    // Left singular vectors of m are the right ones of m^T.
    const RightSvd s = right_svd(m.transpose());
    const int r = rank_from_sigma(s.sigma, relative_cutoff);
    return s.v.leftCols(r);
}

int complex_span_dimension(const std::vector<Matrix>& ms, double relative_cutoff) {
    if (ms.empty()) return 0;
    const Eigen::Index n = ms.front().size();
    Matrix stacked(n, static_cast<Eigen::Index>(ms.size()));
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (ms[k].size() != n) throw ValidationError("complex_span_dimension: shape mismatch");
        stacked.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vector>(ms[k].data(), n);
    }
    Eigen::BDCSVD<Matrix> svd(stacked);
    return rank_from_sigma(svd.singularValues(), relative_cutoff);
}

}  // namespace fellgeom
