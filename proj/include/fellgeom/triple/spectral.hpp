#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

// Real function applied eigenvalue-wise.
class SpectralFunction {
public:
    SpectralFunction(std::function<double(double)> f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}

    // sum_k c_k x^k
    static SpectralFunction polynomial(std::vector<double> coefficients);
    // exp(-(x / scale)^2)
    static SpectralFunction gaussian_cutoff(double scale);
    // Parses "x2", "x4", "cutoff" (unit scale) or "cutoff:<scale>".
    static SpectralFunction named(const std::string& name);

    double operator()(double x) const { return f_(x); }
    const std::string& name() const { return name_; }
    SpectralFunction shifted(double c) const;

private:
    std::function<double(double)> f_;
    std::string name_;
};

// sum_j r_j U_j D U_j^*. Throws on non-unitary U_j or mismatched weights.
Matrix fluctuate(const Matrix& d, const std::vector<Matrix>& unitaries, const std::vector<double>& weights,
                 double tol = kDefaultTolerance);

// Tr f(D) for Hermitian D. Throws ValidationError on non-Hermitian input.
double spectral_action(const Matrix& d, const SpectralFunction& f, double tol = kDefaultTolerance);

// <psi, D psi>.
Complex fermion_bilinear(const Vector& psi, const Matrix& d);

// omega(x) = Tr(rho x) with rho a density operator on H.
class StateFunctional {
public:
    static StateFunctional from_density(const Matrix& rho, double tol = 1e-9);
    static StateFunctional vector_state(const Vector& psi);
    static StateFunctional basis_state(int dim, int index);
    static StateFunctional maximally_mixed(int dim);

    const Matrix& density() const { return density_; }
    int dimension() const { return static_cast<int>(density_.rows()); }
    bool is_pure(double tol = 1e-9) const;
    bool is_faithful(double tol = 1e-12) const;
    Complex operator()(const Matrix& x) const;

private:
    explicit StateFunctional(Matrix rho) : density_(std::move(rho)) {}
    Matrix density_;
};

// Re omega(X) for Hermitian X; throws if X is not Hermitian.
double expectation(const StateFunctional& omega, const Matrix& x, double tol = kDefaultTolerance);

}  // namespace fellgeom
