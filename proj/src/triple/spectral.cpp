#include "fellgeom/triple/spectral.hpp"

#include <cmath>
#include <sstream>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

SpectralFunction SpectralFunction::polynomial(std::vector<double> coefficients) {
    std::ostringstream name;
    name << "poly";
    for (double c : coefficients) name << ':' << c;
    return {[c = std::move(coefficients)](double x) {
                double acc = 0.0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
                return acc;
            },
            name.str()};
}

SpectralFunction SpectralFunction::gaussian_cutoff(double scale) {
    if (!(scale > 0.0)) throw ValidationError("gaussian_cutoff: scale must be positive");
    std::ostringstream name;
    name << "cutoff:" << scale;
    return {[scale](double x) { return std::exp(-(x / scale) * (x / scale)); }, name.str()};
}

SpectralFunction SpectralFunction::named(const std::string& name) {
    if (name == "x2") return {[](double x) { return x * x; }, "x2"};
    if (name == "x4") return {[](double x) { return x * x * x * x; }, "x4"};
    if (name == "cutoff") return gaussian_cutoff(1.0);
    try {
        if (name.rfind("cutoff:", 0) == 0) return gaussian_cutoff(std::stod(name.substr(7)));
        if (name.rfind("poly:", 0) == 0) {
            std::vector<double> c;
            std::istringstream is(name.substr(5));
            for (std::string tok; std::getline(is, tok, ',');) c.push_back(std::stod(tok));
            if (!c.empty()) return polynomial(std::move(c));
        }
    } catch (const std::logic_error&) {
        // fall through to the error below
    }
    throw ValidationError("unknown spectral function '" + name +
                          "' (expected x2, x4, cutoff, cutoff:<scale> or poly:<c0>,<c1>,...)");
}

SpectralFunction SpectralFunction::shifted(double c) const {
    std::ostringstream name;
    name << name_ << "+" << c;
    return {[f = f_, c](double x) { return f(x) + c; }, name.str()};
}

Matrix fluctuate(const Matrix& d, const std::vector<Matrix>& unitaries, const std::vector<double>& weights, double tol) {
    if (unitaries.size() != weights.size()) throw ValidationError("fluctuate: one real weight per unitary");
    Matrix out = Matrix::Zero(d.rows(), d.cols());
    for (std::size_t k = 0; k < unitaries.size(); ++k) {
        const Matrix& u = unitaries[k];
        if (u.rows() != d.rows() || !is_unitary(u, tol)) {
            throw ValidationError("fluctuate: element " + std::to_string(k) + " is not a unitary on H");
        }
        out += weights[k] * (u * d * u.adjoint());
    }
    return out;
}

double spectral_action(const Matrix& d, const SpectralFunction& f, double tol) {
    if (!is_hermitian(d, tol)) throw ValidationError("spectral_action: D is not Hermitian");
    const RealVector ev = hermitian_eigenvalues(d);
    double s = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) s += f(ev(k));
    return s;
}

Complex fermion_bilinear(const Vector& psi, const Matrix& d) {
    if (psi.size() != d.cols() || d.rows() != d.cols()) throw ValidationError("fermion_bilinear: dimension mismatch");
    return psi.dot(d * psi);
}

StateFunctional StateFunctional::from_density(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw ValidationError("state: density must be a square matrix");
    if (!is_hermitian(rho, tol)) throw ValidationError("state: density is not Hermitian");
    const Matrix h = (rho + rho.adjoint()) / 2.0;
    if (std::abs(h.trace() - Complex(1.0)) > tol) throw ValidationError("state: density does not have unit trace");
    if (hermitian_eigenvalues(h).minCoeff() < -tol) throw ValidationError("state: density is not positive");
    return StateFunctional(h);
}

StateFunctional StateFunctional::vector_state(const Vector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("state: zero vector");
    const Vector u = psi / n;
    return StateFunctional(u * u.adjoint());
}

StateFunctional StateFunctional::basis_state(int dim, int index) {
    if (index < 0 || index >= dim) throw ValidationError("state: basis index out of range");
    Vector e = Vector::Zero(dim);
    e(index) = 1.0;
    return vector_state(e);
}

StateFunctional StateFunctional::maximally_mixed(int dim) {
    if (dim <= 0) throw ValidationError("state: dimension must be positive");
    return StateFunctional(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool StateFunctional::is_pure(double tol) const { return (density_ * density_ - density_).norm() <= tol; }

bool StateFunctional::is_faithful(double tol) const { return hermitian_eigenvalues(density_).minCoeff() > tol; }

Complex StateFunctional::operator()(const Matrix& x) const {
    if (x.rows() != density_.rows() || x.cols() != density_.cols()) throw ValidationError("state: dimension mismatch");
    return (density_ * x).trace();
}

double expectation(const StateFunctional& omega, const Matrix& x, double tol) {
    if (!is_hermitian(x, tol)) throw ValidationError("expectation: observable is not Hermitian");
    return omega(x).real();
}

}  // namespace fellgeom
