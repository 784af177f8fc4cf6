#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fellgeom/constraints/patterns.hpp"
#include "fellgeom/fellbundle/product_bundle.hpp"

namespace fellgeom {

// Indices of the L, R, Lbar, Rbar objects of one sector.
struct SectorObjects {
    int left = -1;
    int right = -1;
    int left_bar = -1;
    int right_bar = -1;
};

SectorObjects sector_objects(const std::vector<ObjectRole>& roles, const std::string& sector);

enum class Layout { Mass, Euclidean, Lorentzian };

const char* layout_name(Layout l);

// Random D with the given block layout, completed so that D = D^* and D = J D J^{-1}:
// Mass = M; Euclidean = M + G; Lorentzian = M + K + H.
Matrix layout_matrix(const ProductBundle& bundle, const SectorObjects& s, Layout layout, Rng& rng);

struct LayoutCheck {
    Layout layout = Layout::Mass;
    SectionDiagnostics section;
    double adjoint_residual = 0.0;
    double reality_residual = 0.0;
    double chi_euclidean_residual = 0.0;   // ||D chi + chi D|| / ||D|| for each grading table
    double chi_lorentzian_residual = 0.0;
};

struct LeptoquarkReport {
    LayoutCheck mass;
    LayoutCheck euclidean;
    LayoutCheck lorentzian;
    bool exclusion_holds() const;
};

// The extra leptoquark blocks of both layouts put two blocks in a row.
LeptoquarkReport check_leptoquark_exclusion(const ProductBundle& bundle, const std::vector<ObjectRole>& roles,
                                            const std::string& sector, std::uint64_t seed, double tol = kDefaultTolerance);

struct MixingReport {
    bool vacuous = false;
    int patterns_considered = 0;
    int mass_bearing = 0;
    bool mixing_possible = false;
    std::vector<std::string> offending;
};

// Every admissible pattern giving L <-> R masses in each sector leaves no
// nonzero entry between basis vectors of different sectors.
MixingReport check_sector_mixing(const ProductBundle& bundle, const std::vector<ObjectRole>& roles,
                                 const std::vector<std::string>& basis_sectors,
                                 const std::optional<std::vector<int>>& chi = std::nullopt);

}  // namespace fellgeom
