#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fellgeom/fellbundle/groupoid.hpp"
#include "fellgeom/fellbundle/section.hpp"
#include "fellgeom/lincore/real_structure.hpp"

namespace fellgeom {

// Linear conditions on D supported in a set of blocks.
struct DiracSpaceConstraints {
    BlockPartition partition;
    std::vector<Arrow> blocks;                     // allowed (row, column) blocks
    bool self_adjoint = true;
    const RealStructure* j = nullptr;              // D = sign_dj J D J^{-1}
    const Grading* chi = nullptr;                  // D chi = -chi D
    const Representation* first_order = nullptr;   // [[D, a], J b* J^{-1}] = 0, needs j
    std::vector<std::vector<bool>> entry_mask;     // optional per-entry support inside blocks
    std::map<Arrow, std::vector<Matrix>> block_basis;  // optional real basis of a block's allowed values
    std::uint64_t seed = 1;
};

// Real basis of all D meeting the constraints. First-order conditions are
// imposed on sampled pairs until fresh pairs no longer cut the space down.
std::vector<Matrix> dirac_solution_space(const DiracSpaceConstraints& c);

}  // namespace fellgeom
