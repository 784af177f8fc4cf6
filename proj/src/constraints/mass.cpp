#include "fellgeom/constraints/mass.hpp"

#include <algorithm>
#include <cmath>

namespace fellgeom {

MassSpectrum diagonalize_mass(const Matrix& m, double tol) {
    if (m.size() == 0) throw ValidationError("diagonalize_mass: empty mass block");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    MassSpectrum s;
    s.left_rotation = svd.matrixU();
    s.right_rotation = svd.matrixV();
    const RealVector& sv = svd.singularValues();
    for (Eigen::Index k = 0; k < sv.size(); ++k) s.masses.push_back(sv(k));
    const std::size_t total = static_cast<std::size_t>(std::max(m.rows(), m.cols()));
    s.masses.resize(total, 0.0);
    std::sort(s.masses.begin(), s.masses.end(), std::greater<>());
    const double top = s.masses.front();
    const double zero_cut = top > 0.0 ? tol * top : 0.0;
    for (double x : s.masses) {
        if (x > zero_cut) {
            ++s.nonzero;
        } else {
            ++s.zero;
        }
        const double v = x > zero_cut ? x : 0.0;
        if (!s.multiplicities.empty() && std::abs(s.multiplicities.back().first - v) <= tol * std::max(top, 1e-300)) {
            ++s.multiplicities.back().second;
        } else {
            s.multiplicities.emplace_back(v, 1);
        }
    }
    return s;
}

}  // namespace fellgeom
