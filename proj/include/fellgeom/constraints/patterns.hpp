#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fellgeom/fellbundle/groupoid.hpp"
#include "fellgeom/fellbundle/section.hpp"
#include "fellgeom/lincore/real_structure.hpp"

namespace fellgeom {

enum class Chirality { None, Left, Right };

// Physical role of an object: sector name, chirality, particle or antiparticle.
struct ObjectRole {
    std::string sector;
    Chirality chirality = Chirality::None;
    bool particle = true;

    bool operator==(const ObjectRole&) const = default;
};

// Block support of a Dirac section: one block (pairing[i], i) per column.
struct BlockPattern {
    std::vector<int> pairing;

    int size() const { return static_cast<int>(pairing.size()); }
    std::vector<Arrow> blocks() const;
    std::vector<std::vector<bool>> grid() const;
    std::string cycles() const;  // e.g. "(0 1)(2 3)", "id"
    // Block-role name (M, K, H, G, diagonal...) when roles are known.
    std::string name(const std::vector<ObjectRole>& roles) const;
    std::string diagram(const std::vector<std::string>& labels) const;

    bool operator==(const BlockPattern&) const = default;
};

// Object permutation induced by J: block i is sent to block tau[i].
// Throws if J does not map blocks onto blocks.
std::vector<int> object_involution(const RealStructure& j, const BlockPartition& partition,
                                   double tol = kDefaultTolerance);

// All involutive patterns commuting with tau; with grading signs, only patterns
// whose blocks all have the same chi-parity.
std::vector<BlockPattern> enumerate_admissible_patterns(const std::vector<int>& tau,
                                                        const std::optional<std::vector<int>>& chi = std::nullopt);

std::vector<BlockPattern> enumerate_admissible_patterns(const BlockPartition& partition, const RealStructure& j,
                                                        const std::optional<std::vector<int>>& chi = std::nullopt);

// +1 if every block commutes with chi, -1 if every block anticommutes, 0 otherwise.
int pattern_parity(const BlockPattern& p, const std::vector<int>& chi);

// The pattern pairing the L and R particle objects of every sector.
BlockPattern select_mass_pattern(const std::vector<BlockPattern>& patterns, const std::vector<ObjectRole>& roles,
                                 const std::optional<std::vector<int>>& chi = std::nullopt);

}  // namespace fellgeom
