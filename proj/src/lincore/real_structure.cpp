#include "fellgeom/lincore/real_structure.hpp"

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

RealStructure::RealStructure(Matrix unitary, int sign_j2, int sign_dj, double tol)
    : unitary_(std::move(unitary)), sign_j2_(sign_j2), sign_dj_(sign_dj) {
    if (!is_unitary(unitary_, tol)) throw ValidationError("RealStructure: U must be unitary");
    if ((sign_j2_ != 1 && sign_j2_ != -1) || (sign_dj_ != 1 && sign_dj_ != -1)) {
        throw ValidationError("RealStructure: signs must be +1 or -1");
    }
}

RealStructure RealStructure::conjugation(int n, int sign_dj) {
    return {Matrix::Identity(n, n), 1, sign_dj};
}

Vector RealStructure::apply(const Vector& v) const { return unitary_ * v.conjugate(); }

Vector RealStructure::apply_inverse(const Vector& v) const { return (unitary_.adjoint() * v).conjugate(); }

Matrix RealStructure::conjugate(const Matrix& m) const {
    if (m.rows() != unitary_.rows() || m.cols() != unitary_.cols()) {
        throw ValidationError("RealStructure::conjugate: dimension mismatch");
    }
    return unitary_ * m.conjugate() * unitary_.adjoint();
}

Matrix RealStructure::square() const { return unitary_ * unitary_.conjugate(); }

Grading::Grading(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
        if (s != 1 && s != -1) throw ValidationError("Grading: entries must be +1 or -1");
    }
}

Matrix Grading::matrix() const {
    Matrix m = Matrix::Zero(dimension(), dimension());
    for (int i = 0; i < dimension(); ++i) m(i, i) = signs_[static_cast<std::size_t>(i)];
    return m;
}

Matrix opposite_action(const AlgebraElement& b, const RealStructure& j, const Representation& rep) {
    return j.conjugate(rep.embed(b).adjoint());
}

}  // namespace fellgeom
