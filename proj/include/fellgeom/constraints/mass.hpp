#pragma once

#include <utility>
#include <vector>

#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

struct MassSpectrum {
    std::vector<double> masses;                       // descending, padded with zeros to max(rows, cols)
    std::vector<std::pair<double, int>> multiplicities;  // distinct masses with their multiplicity
    int nonzero = 0;
    int zero = 0;
    Matrix left_rotation;   // M = U diag(masses) V^*
    Matrix right_rotation;
};

// Singular value decomposition of a mass block; masses within tol * max are merged.
MassSpectrum diagonalize_mass(const Matrix& m, double tol = 1e-8);

}  // namespace fellgeom
