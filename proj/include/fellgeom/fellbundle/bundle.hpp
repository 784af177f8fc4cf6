#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fellgeom/fellbundle/groupoid.hpp"
#include "fellgeom/lincore/algebra.hpp"
#include "fellgeom/lincore/random.hpp"

namespace fellgeom {

struct FiberElement {
    Arrow arrow;
    Matrix value;
};

// Fiber product and involution. The standard choice is matrix product and
// conjugate transpose; other choices exist to build negative controls.
struct BundleOperations {
    std::function<Matrix(const Matrix&, const Matrix&)> product;
    std::function<Matrix(const Matrix&)> involution;
    std::string name = "standard";

    static BundleOperations standard();
    static BundleOperations transpose_involution();
    static BundleOperations scaled_involution(double factor);
    static BundleOperations scaled_product(double factor);
};

// Fell bundle over Pair(n) with fiber M_{n_i x n_j} over (i, j).
class FellBundleGeometry {
public:
    FellBundleGeometry() = default;
    FellBundleGeometry(PairGroupoid groupoid, std::vector<int> fiber_dims,
                       BundleOperations ops = BundleOperations::standard(), bool is_product_bundle = false);

    const PairGroupoid& groupoid() const { return groupoid_; }
    const std::vector<int>& fiber_dims() const { return fiber_dims_; }
    int fiber_dim(int object) const { return fiber_dims_.at(static_cast<std::size_t>(object)); }
    int object_count() const { return groupoid_.object_count(); }
    bool is_product_bundle() const { return product_; }
    const BundleOperations& operations() const { return ops_; }

    // Sum of n_i: size of the linking algebra.
    int total_dimension() const;
    std::vector<int> offsets() const;

    FiberElement multiply(const FiberElement& first, const FiberElement& second) const;
    FiberElement involution(const FiberElement& e) const;
    FiberElement random_element(Arrow a, Rng& rng) const;
    FiberElement zero_element(Arrow a) const;
    bool in_fiber(const FiberElement& e) const;

    FellBundleGeometry with_operations(BundleOperations ops) const;

private:
    PairGroupoid groupoid_;
    std::vector<int> fiber_dims_;
    BundleOperations ops_;
    bool product_ = false;
};

FellBundleGeometry build_fell_bundle(const PairGroupoid& groupoid, const std::map<std::string, int>& fiber_dims);

struct AxiomResult {
    int number = 0;
    std::string name;
    bool passed = true;
    double worst = 0.0;
    std::string witness;
};

struct FellAxiomReport {
    std::vector<AxiomResult> axioms;  // numbered 1..10
    int samples = 0;
    std::uint64_t seed = 0;
    bool all_passed() const;
    std::vector<int> failed() const;
};

FellAxiomReport verify_fell_axioms(const FellBundleGeometry& geom, int samples, std::uint64_t seed,
                                   double tol = kDefaultTolerance);

// C*(E) realized as M_N with N = sum n_i, blocks indexed by objects.
struct LinkingAlgebra {
    BlockAlgebra algebra;
    std::vector<int> block_sizes;
    std::vector<int> offsets;

    Matrix assemble(const std::vector<FiberElement>& elements) const;
    Matrix block(const Matrix& m, Arrow a) const;
};

LinkingAlgebra linking_algebra(const FellBundleGeometry& geom);

struct SaturationEntry {
    Arrow first;
    Arrow second;
    int rank = 0;
    int expected = 0;
};

struct SaturationReport {
    bool saturated = true;
    std::vector<SaturationEntry> entries;
};

// Rank of the span of products E_g E_h against dim E_{gh}, from random elements.
SaturationReport saturation_check(const FellBundleGeometry& geom, std::uint64_t seed);

}  // namespace fellgeom
