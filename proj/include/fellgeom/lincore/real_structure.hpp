#pragma once

#include <vector>

#include "fellgeom/lincore/algebra.hpp"
#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

// Antiunitary J v = U conj(v) with declared signs J^2 = sign_j2, DJ = sign_dj JD.
class RealStructure {
public:
    RealStructure() = default;
    RealStructure(Matrix unitary, int sign_j2, int sign_dj, double tol = kDefaultTolerance);

    // Plain complex conjugation on C^n.
    static RealStructure conjugation(int n, int sign_dj = 1);

    int dimension() const { return static_cast<int>(unitary_.rows()); }
    const Matrix& unitary() const { return unitary_; }
    int sign_j2() const { return sign_j2_; }
    int sign_dj() const { return sign_dj_; }

    Vector apply(const Vector& v) const;
    Vector apply_inverse(const Vector& v) const;

    // J m J^{-1} = U conj(m) U^*.
    Matrix conjugate(const Matrix& m) const;

    // J^2 as a (complex-linear) matrix: U conj(U).
    Matrix square() const;

private:
    Matrix unitary_;
    int sign_j2_ = 1;
    int sign_dj_ = 1;
};

class Grading {
public:
    Grading() = default;
    explicit Grading(std::vector<int> signs);

    int dimension() const { return static_cast<int>(signs_.size()); }
    const std::vector<int>& signs() const { return signs_; }
    Matrix matrix() const;

private:
    std::vector<int> signs_;
};

// b^opp = J b^* J^{-1} acting on H.
Matrix opposite_action(const AlgebraElement& b, const RealStructure& j, const Representation& rep);

}  // namespace fellgeom
