#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fellgeom/constraints/patterns.hpp"
#include "fellgeom/fellbundle/product_bundle.hpp"

namespace fellgeom {

class RankInstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InconsistentPatternError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Symmetry words acting on blocks: bit 0 = adjoint, bit 1 = reality (J . J^{-1}).
enum BlockWord : int { kIdentityWord = 0, kAdjointWord = 1, kRealityWord = 2, kBothWords = 3 };

struct OrbitMember {
    Arrow block;
    int word = kIdentityWord;
};

// Blocks of a pattern identified by D = D^* and D = J D J^{-1}.
struct BlockOrbit {
    Arrow representative;
    std::vector<OrbitMember> members;  // first entry is the representative
    std::vector<int> stabilizers;      // non-trivial words fixing the representative
    int left_real_dim = 0;
    int right_real_dim = 0;
    int param_offset = 0;
};

// D as a function of the factor coordinates of each orbit representative,
// where the representative block is the simple tensor left (x) right.
class SectionParametrization {
public:
    SectionParametrization(ProductBundle bundle, BlockPattern pattern);

    const ProductBundle& bundle() const { return bundle_; }
    const BlockPattern& pattern() const { return pattern_; }
    const RealSubspace& left_space(std::size_t orbit) const { return left_.at(orbit); }
    const RealSubspace& right_space(std::size_t orbit) const { return right_.at(orbit); }

    const std::vector<BlockOrbit>& orbits() const { return orbits_; }
    int parameter_count() const { return params_; }
    int constraint_count() const;

    Matrix representative_block(const BlockOrbit& o, const RealVector& theta) const;
    Matrix dirac(const RealVector& theta) const;
    // Columns: realified dD / dtheta_k, optionally conjugated by a unitary.
    RealMatrix jacobian(const RealVector& theta, const Matrix* basis_change = nullptr) const;
    RealVector constraint_residual(const RealVector& theta) const;
    RealMatrix constraint_jacobian(const RealVector& theta) const;

    // Gauss-Newton projection onto the constraint set.
    RealVector project(RealVector theta, double tol = 1e-13) const;

    Matrix apply_word(int word, Arrow from, const Matrix& block) const;
    Arrow word_target(int word, Arrow from) const;

    std::string describe_equation(const BlockOrbit& o, const OrbitMember& m) const;

private:
    Matrix derivative_block(const BlockOrbit& o, const RealVector& theta, int k) const;

    ProductBundle bundle_;
    BlockPattern pattern_;
    std::vector<BlockOrbit> orbits_;
    std::vector<RealSubspace> left_;
    std::vector<RealSubspace> right_;
    int params_ = 0;
};

struct ConstraintWitness {
    RealVector theta;
    Matrix dirac;
    double constraint_residual = 0.0;  // stabilizer equations
    double reality_residual = 0.0;     // ||D - J D J^-1|| / ||D||
    double adjoint_residual = 0.0;     // ||D - D^*|| / ||D||
    double membership_residual = 0.0;  // worst block distance from its product fiber
    double tensor_residual = 0.0;      // worst sigma_2 / sigma_1 of a block rearrangement
    bool section_accepted = false;
};

struct ConstraintSolution {
    BlockPattern pattern;
    std::vector<std::string> equations;
    int naive_param_count = 0;
    int manifold_real_dim = 0;
    std::optional<int> manifold_dim;  // complex dimension when the real one is even
    std::vector<int> seed_ranks;
    std::vector<BlockOrbit> orbits;
    std::vector<ConstraintWitness> witnesses;
};

struct SolveOptions {
    int seeds = 5;
    int witnesses = 3;
    std::uint64_t seed = 1;
    double rank_cutoff = 1e-8;
    std::optional<Matrix> basis_change;
};

// Sum over orbits of the complex dimensions of the representative's factors,
// ignoring 1-dimensional factors (C (x) V = V) unless both are 1-dimensional.
int naive_parameter_count(const SectionParametrization& p);

ConstraintSolution solve_reality_constraint(const ProductBundle& bundle, const BlockPattern& pattern,
                                            const SolveOptions& options = {});

// sigma_2 / sigma_1 of the (right, left) rearrangement of a block.
double tensor_rank_residual(const ProductBundle& bundle, int i, int j, const Matrix& block);

}  // namespace fellgeom
