#include "fellgeom/quantize/modular.hpp"

#include <cmath>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

ModularFlow::ModularFlow(const StateFunctional& omega, double tol) : rho_(omega.density()) {
    const Eigen::Index n = rho_.rows();
    const Matrix off = rho_ - Matrix(rho_.diagonal().asDiagonal());
    diagonal_ = off.norm() == 0.0;
    if (diagonal_) {
        eigen_ = rho_.diagonal().real();
        basis_ = Matrix::Identity(n, n);
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
        eigen_ = es.eigenvalues();
        basis_ = es.eigenvectors();
    }
    if (eigen_.minCoeff() <= tol * std::max(eigen_.maxCoeff(), 1e-300)) {
        throw ValidationError("modular flow needs a faithful state (density has a zero eigenvalue)");
    }
}

std::pair<Matrix, Matrix> ModularFlow::conjugation(double t) const {
    Vector plus(eigen_.size());
    Vector minus(eigen_.size());
    for (Eigen::Index k = 0; k < eigen_.size(); ++k) {
        plus(k) = std::exp(Complex(0.0, t * std::log(eigen_(k))));
        minus(k) = std::conj(plus(k));
    }
    return {basis_ * plus.asDiagonal() * basis_.adjoint(), basis_ * minus.asDiagonal() * basis_.adjoint()};
}

Matrix ModularFlow::apply(const Matrix& a, double t) const {
    if (a.rows() != rho_.rows() || a.cols() != rho_.cols()) throw ValidationError("modular flow: dimension mismatch");
    // Entrywise phases in the eigenbasis; equal eigenvalues give phase exactly one.
    Matrix m = diagonal_ ? a : Matrix(basis_.adjoint() * a * basis_);
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        for (Eigen::Index l = 0; l < m.cols(); ++l) {
            const double phase = t * (std::log(eigen_(k)) - std::log(eigen_(l)));
            if (phase != 0.0) m(k, l) *= std::exp(Complex(0.0, phase));
        }
    }
    return diagonal_ ? m : Matrix(basis_ * m * basis_.adjoint());
}

Matrix ModularFlow::continued(const Matrix& a) const { return rho_ * a * rho_.inverse(); }

Matrix ModularFlow::hamiltonian() const {
    RealVector h(eigen_.size());
    for (Eigen::Index k = 0; k < eigen_.size(); ++k) h(k) = -std::log(eigen_(k));
    return basis_ * h.cast<Complex>().asDiagonal() * basis_.adjoint();
}

Continuation parse_continuation(const std::string& s) {
    if (s == "modular") return Continuation::Modular;
    if (s == "inverted") return Continuation::Inverted;
    throw ValidationError("unknown continuation '" + s + "' (expected modular or inverted)");
}

KmsReport kms_check(const StateFunctional& omega, int samples, std::uint64_t seed, Continuation continuation,
                    const Representation* rep, double tol) {
    const ModularFlow flow(omega);
    const Matrix& rho = flow.density();
    const Matrix rho_inv = rho.inverse();
    KmsReport r;
    r.continuation = continuation == Continuation::Modular ? "modular" : "inverted";
    Rng rng(seed);
    const Eigen::Index n = rho.rows();
    if (rep && rep->space().dimension() != n) throw ValidationError("kms_check: representation dimension mismatch");
    auto draw = [&]() -> Matrix {
        if (rep) return rep->embed(AlgebraElement::random(rep->algebra(), rng));
        return rng.ginibre(n, n);
    };
    for (int s = 0; s < samples; ++s) {
        const Matrix a = draw();
        const Matrix b = draw();
        const Matrix sa = continuation == Continuation::Modular ? Matrix(rho * a * rho_inv) : Matrix(rho_inv * a * rho);
        const Complex lhs = omega(a * b);
        const Complex rhs = omega(b * sa);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        const double rel = std::abs(lhs - rhs) / scale;
        ++r.samples;
        if (rel > r.worst) r.worst = rel;
        if (rel > tol && r.passed) {
            r.passed = false;
            r.witness = s;
        }
    }
    return r;
}

NearestSectionReport nearest_dirac_section(const ModularFlow& flow, const ConfigurationSpace& space) {
    const Matrix k = flow.hamiltonian();
    NearestSectionReport out;
    const RealVector target = realify(k);
    RealMatrix a(target.size(), space.dimension());
    for (int j = 0; j < space.dimension(); ++j) a.col(j) = realify(space.generators()[static_cast<std::size_t>(j)]);
    out.coefficients = space.dimension() == 0 ? RealVector() : RealVector(a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(target));
    out.section = space.dimension() == 0 ? Matrix::Zero(k.rows(), k.cols()) : space.point(out.coefficients);
    const double norm = k.norm();
    out.relative_residual = norm == 0.0 ? 0.0 : (k - out.section).norm() / norm;
    return out;
}

}  // namespace fellgeom
