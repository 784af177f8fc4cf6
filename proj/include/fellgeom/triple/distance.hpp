#pragma once

#include <cstdint>
#include <vector>

#include "fellgeom/lincore/algebra.hpp"
#include "fellgeom/triple/spectral.hpp"
#include "fellgeom/triple/triple.hpp"

namespace fellgeom {

struct DistanceOptions {
    int restarts = 20;
    int agreement = 3;            // restarts that must agree with the best value
    double agreement_tol = 1e-6;  // relative to max(1, best)
    std::uint64_t seed = 1;
    double tol = kDefaultTolerance;
};

struct DistanceResult {
    double distance = 0.0;
    bool unbounded = false;
    bool converged = true;
    int agreeing_restarts = 0;
    std::vector<double> restart_values;
    Matrix maximizer;  // pi(a) with ||[D, pi(a)]|| = 1 attaining the value
};

// sup { |omega1(a) - omega2(a)| : a = a* in A, ||[D, a]|| <= 1 }.
DistanceResult connes_distance(const Representation& rep, const Matrix& d, const StateFunctional& omega1,
                               const StateFunctional& omega2, const DistanceOptions& options = {});

inline DistanceResult connes_distance(const TripleData& t, const StateFunctional& omega1, const StateFunctional& omega2,
                                      const DistanceOptions& options = {}) {
    return connes_distance(t.rep, t.dirac, omega1, omega2, options);
}

}  // namespace fellgeom
