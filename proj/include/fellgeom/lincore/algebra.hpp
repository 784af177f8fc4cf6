#pragma once

#include <string>
#include <vector>

#include "fellgeom/lincore/random.hpp"
#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

// Direct sum of full matrix algebras M_{n_1} + ... + M_{n_k}.
class BlockAlgebra {
public:
    BlockAlgebra() = default;
    explicit BlockAlgebra(std::vector<int> summands, std::vector<std::string> labels = {});

    int summand_count() const { return static_cast<int>(summands_.size()); }
    int summand_size(int s) const { return summands_.at(static_cast<std::size_t>(s)); }
    const std::vector<int>& summands() const { return summands_; }
    const std::string& label(int s) const { return labels_.at(static_cast<std::size_t>(s)); }
    const std::vector<std::string>& labels() const { return labels_; }

    // Complex dimension, sum of n_i^2.
    int dimension() const;

    bool operator==(const BlockAlgebra& other) const { return summands_ == other.summands_; }

private:
    std::vector<int> summands_;
    std::vector<std::string> labels_;
};

class AlgebraElement {
public:
    AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> blocks);

    static AlgebraElement zero(const BlockAlgebra& algebra);
    static AlgebraElement identity(const BlockAlgebra& algebra);
    static AlgebraElement random(const BlockAlgebra& algebra, Rng& rng);
    static AlgebraElement random_hermitian(const BlockAlgebra& algebra, Rng& rng);
    static AlgebraElement random_unitary(const BlockAlgebra& algebra, Rng& rng);

    const BlockAlgebra& algebra() const { return algebra_; }
    const Matrix& block(int s) const { return blocks_.at(static_cast<std::size_t>(s)); }
    const std::vector<Matrix>& blocks() const { return blocks_; }

    AlgebraElement adjoint() const;
    AlgebraElement operator*(const AlgebraElement& other) const;
    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator-(const AlgebraElement& other) const;
    AlgebraElement scaled(Complex c) const;

    // C*-norm: max operator norm over summands.
    double norm() const;

private:
    void require_same_algebra(const AlgebraElement& other) const;

    BlockAlgebra algebra_;
    std::vector<Matrix> blocks_;
};

// Real basis: E_ab and i E_ab in every summand (2 * dimension elements).
std::vector<AlgebraElement> real_basis(const BlockAlgebra& algebra);

// Real basis of the Hermitian part (dimension elements).
std::vector<AlgebraElement> hermitian_basis(const BlockAlgebra& algebra);

class HilbertSpace {
public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<std::string> labels);
    static HilbertSpace numbered(int dim, const std::string& prefix = "e");

    int dimension() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(const std::string& label) const;

private:
    std::vector<std::string> labels_;
};

// Summand s acts as a (or conj(a)) on each listed copy of C^{n_s} inside H.
struct Placement {
    int summand = 0;
    bool conjugate = false;
    std::vector<std::vector<int>> copies;
};

struct HomomorphismReport {
    bool passed = true;
    double worst = 0.0;
    std::string witness;
};

// Real-linear *-representation built from placements.
class Representation {
public:
    Representation() = default;
    Representation(BlockAlgebra algebra, HilbertSpace space, std::vector<Placement> placements,
                   bool declared_faithful = false);

    const BlockAlgebra& algebra() const { return algebra_; }
    const HilbertSpace& space() const { return space_; }
    const std::vector<Placement>& placements() const { return placements_; }
    bool declared_faithful() const { return declared_faithful_; }

    Matrix embed(const AlgebraElement& a) const;

    HomomorphismReport check_homomorphism(int samples, Rng& rng, double tol = kDefaultTolerance) const;

    // Rank of the real-linear map A -> B(H) equals dim_R A.
    bool is_faithful(double relative_cutoff = 1e-9) const;

private:
    BlockAlgebra algebra_;
    HilbertSpace space_;
    std::vector<Placement> placements_;
    bool declared_faithful_ = false;
};

}  // namespace fellgeom
