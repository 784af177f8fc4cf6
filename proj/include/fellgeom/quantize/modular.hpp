#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fellgeom/lincore/algebra.hpp"
#include "fellgeom/quantize/configuration.hpp"
#include "fellgeom/triple/spectral.hpp"

namespace fellgeom {

// sigma_t(a) = rho^{it} a rho^{-it} for a faithful state with density rho.
class ModularFlow {
public:
    explicit ModularFlow(const StateFunctional& omega, double tol = 1e-12);

    const Matrix& density() const { return rho_; }
    // (rho^{it}, rho^{-it})
    std::pair<Matrix, Matrix> conjugation(double t) const;
    Matrix apply(const Matrix& a, double t) const;
    // Analytic continuation to t = -i, a -> rho a rho^{-1}.
    Matrix continued(const Matrix& a) const;
    // Modular Hamiltonian -log rho.
    Matrix hamiltonian() const;

private:
    Matrix rho_;
    Matrix basis_;          // eigenvectors, identity for diagonal rho
    RealVector eigen_;
    bool diagonal_ = false;
};

enum class Continuation { Modular, Inverted };

Continuation parse_continuation(const std::string& s);

struct KmsReport {
    bool passed = true;
    double worst = 0.0;
    int samples = 0;
    int witness = -1;       // index of the first failing pair
    std::string continuation;
};

// omega(a b) = omega(b sigma_{-i}(a)) on random pairs, a and b drawn from rep when given.
KmsReport kms_check(const StateFunctional& omega, int samples, std::uint64_t seed,
                    Continuation continuation = Continuation::Modular, const Representation* rep = nullptr,
                    double tol = 1e-8);

// Heuristic only: least-squares projection of the modular Hamiltonian onto a configuration space.
struct NearestSectionReport {
    RealVector coefficients;
    Matrix section;
    double relative_residual = 0.0;
};

NearestSectionReport nearest_dirac_section(const ModularFlow& flow, const ConfigurationSpace& space);

}  // namespace fellgeom
