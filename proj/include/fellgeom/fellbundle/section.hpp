#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fellgeom/fellbundle/bundle.hpp"
#include "fellgeom/lincore/real_structure.hpp"

namespace fellgeom {

// Decomposition of C^N into consecutive blocks, one per object.
class BlockPartition {
public:
    BlockPartition() = default;
    explicit BlockPartition(std::vector<int> sizes);
    static BlockPartition of(const FellBundleGeometry& geom) { return BlockPartition(geom.fiber_dims()); }

    int block_count() const { return static_cast<int>(sizes_.size()); }
    int size(int i) const { return sizes_.at(static_cast<std::size_t>(i)); }
    int offset(int i) const { return offsets_.at(static_cast<std::size_t>(i)); }
    int total() const { return total_; }
    const std::vector<int>& sizes() const { return sizes_; }

    auto block(Matrix& m, int i, int j) const { return m.block(offset(i), offset(j), size(i), size(j)); }
    Matrix block(const Matrix& m, int i, int j) const { return m.block(offset(i), offset(j), size(i), size(j)); }

    // Blocks (i, j) whose Frobenius norm exceeds tol * ||m||_F.
    std::vector<std::vector<bool>> support(const Matrix& m, double tol = kDefaultTolerance) const;

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    int total_ = 0;
};

bool is_involution(const std::vector<int>& pairing);

// Section x -> e_x with e_i in the fiber over (pairing[i], i).
class DiracSection {
public:
    DiracSection(FellBundleGeometry geometry, std::vector<int> pairing, std::vector<Matrix> elements,
                 double tol = kDefaultTolerance);

    // Fills e_{pairing[i]} = e_i^* from the free element of each orbit; fixed
    // points are symmetrized.
    static DiracSection from_free(FellBundleGeometry geometry, std::vector<int> pairing, const std::vector<Matrix>& free);
    static DiracSection random(FellBundleGeometry geometry, std::vector<int> pairing, Rng& rng);

    const FellBundleGeometry& geometry() const { return geometry_; }
    const std::vector<int>& pairing() const { return pairing_; }
    const std::vector<Matrix>& elements() const { return elements_; }

private:
    FellBundleGeometry geometry_;
    std::vector<int> pairing_;
    std::vector<Matrix> elements_;
};

// Places e_i at block (targets[i], i) without checking anything.
Matrix assemble_raw(const BlockPartition& partition, const std::vector<int>& targets, const std::vector<Matrix>& elements);
Matrix assemble(const DiracSection& section);

struct SectionDiagnostics {
    bool accepted = true;
    std::vector<std::string> reasons;
    std::vector<int> crowded_rows;  // rows (and columns) with more than one block
    std::vector<int> pairing;       // inferred block pairing when accepted
};

inline constexpr const char* kMultipleBlocksReason = "multiple blocks per row/column";

SectionDiagnostics is_dirac_section(const Matrix& d, const BlockPartition& partition, const RealStructure* j,
                                    double tol = kDefaultTolerance);
SectionDiagnostics is_dirac_section(const DiracSection& section, const RealStructure* j, double tol = kDefaultTolerance);

}  // namespace fellgeom
