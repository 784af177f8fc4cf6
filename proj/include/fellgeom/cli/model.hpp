#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fellgeom/cli/config.hpp"
#include "fellgeom/constraints/patterns.hpp"
#include "fellgeom/fellbundle/bundle.hpp"
#include "fellgeom/fellbundle/product_bundle.hpp"
#include "fellgeom/quantize/configuration.hpp"
#include "fellgeom/triple/spectral.hpp"
#include "fellgeom/triple/triple.hpp"

namespace fellgeom::cli {

// Everything a subcommand needs, built from one config and one sector choice.
struct Model {
    GeometryConfig config;
    std::string sector;                 // "all" or a sector name
    std::vector<std::string> object_ids;
    PairGroupoid groupoid;
    FellBundleGeometry geometry;        // carries the configured (possibly corrupted) operations
    std::optional<ProductBundle> bundle;
    std::vector<int> pairing;           // object involution of J (identity without one)
    std::vector<ObjectRole> roles;
    BlockPartition partition;
    HilbertSpace space;
    std::vector<std::string> basis_sectors;
    std::optional<Representation> rep;
    std::optional<RealStructure> j;
    std::optional<Grading> chi;
    std::optional<std::vector<int>> object_chi;  // grading sign per object when constant on blocks
    Signature signature = Signature::Euclidean;
    std::vector<StateFunctional> states;

    int dimension() const { return partition.total(); }
    int object_index(const std::string& id) const;
    std::vector<int> pattern_from_pairs(const PairList& pairs) const;
};

// sector: "" for the config default, "all" for no restriction.
Model build_model(const GeometryConfig& config, const std::string& sector = "");

// Patterns admissible for the model's J (and grading when present).
std::vector<BlockPattern> admissible_patterns(const Model& m);
BlockPattern mass_pattern(const Model& m);

// Real basis of the Dirac operators supported on a pattern: self-adjoint, real,
// odd (unless disabled), in the product fibers, and first order when requested.
std::vector<Matrix> pattern_dirac_space(const Model& m, const BlockPattern& p, bool first_order, std::uint64_t seed,
                                        bool odd = true);

// The configured D; random choices are seeded.
Matrix build_dirac(const Model& m, std::uint64_t seed);

TripleData build_triple(const Model& m, const Matrix& d);

ConfigurationSpace build_configuration_space(const Model& m, std::uint64_t seed);

}  // namespace fellgeom::cli
