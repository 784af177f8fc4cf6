#pragma once

#include <string>
#include <vector>

#include "fellgeom/fellbundle/section.hpp"
#include "fellgeom/lincore/random.hpp"

namespace fellgeom {

enum class Field { Real, Complex };

// D(theta) = sum_k theta_k G_k over a fixed set of Hermitian generators.
// Lebesgue measure on theta is the declared path-integral measure.
class ConfigurationSpace {
public:
    ConfigurationSpace(BlockPartition partition, std::vector<int> pairing, std::vector<Matrix> generators,
                       std::string description);

    const BlockPartition& partition() const { return partition_; }
    const std::vector<int>& pairing() const { return pairing_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    const std::string& description() const { return description_; }
    int dimension() const { return static_cast<int>(generators_.size()); }
    int hilbert_dimension() const { return partition_.total(); }

    Matrix point(const RealVector& theta) const;
    Matrix random_point(Rng& rng) const;

private:
    BlockPartition partition_;
    std::vector<int> pairing_;
    std::vector<Matrix> generators_;
    std::string description_;
};

// Entry generators of the self-adjoint sections with the given pairing: for each
// entry (r, c) of block (sigma(i), i) the Hermitian completions of E_rc and i E_rc.
// The coefficient of each generator is the real or imaginary part of that entry.
std::vector<Matrix> section_generators(const BlockPartition& partition, const std::vector<int>& pairing, Field field);

struct GeneratedDims {
    int algebra = 0;            // span of the algebra generated by sampled sections
    int unit_algebra = 0;       // span of the algebra generated by products of pairs of sections
    int expected_algebra = 0;   // sum over sigma-components of (sum n_i)^2
    int expected_unit = 0;      // sum n_i^2
    bool rank_deficient = false;
};

// Complex dimensions of the algebras generated by n_samples random points.
GeneratedDims generated_algebra_dims(const ConfigurationSpace& space, int n_samples, std::uint64_t seed);

// Complex dimension of the algebra generated (as a closed span) by the given matrices.
int generated_algebra_dimension(const std::vector<Matrix>& generators, double relative_cutoff = 1e-9);

}  // namespace fellgeom
