#pragma once

#include <string>
#include <vector>

#include "fellgeom/fellbundle/section.hpp"

namespace fellgeom {

// Real-linear subspace of rows x cols complex matrices.
class RealSubspace {
public:
    RealSubspace(int rows, int cols) : rows_(rows), cols_(cols) {}
    // Generators are reduced to an independent set.
    static RealSubspace from_generators(int rows, int cols, const std::vector<Matrix>& generators);
    static RealSubspace complex_span(int rows, int cols, const std::vector<Matrix>& generators);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Matrix>& basis() const { return basis_; }
    int real_dimension() const { return static_cast<int>(basis_.size()); }
    int complex_dimension() const { return real_dimension() / 2; }

    Matrix combine(const RealVector& coords) const;
    // Least-squares distance of m from the subspace, relative to ||m||.
    double residual(const Matrix& m) const;
    bool contains(const Matrix& m, double tol = kDefaultTolerance) const { return residual(m) <= tol; }
    RealSubspace conjugated() const;

private:
    int rows_;
    int cols_;
    std::vector<Matrix> basis_;
};

enum class FactorKind { Full, Scalar };

// Hilbert realization of the left factor of an object: M_k on C^k, or C on C^k
// where slot s carries lambda (sign +1) or conj(lambda) (sign -1).
struct FactorSpec {
    FactorKind kind = FactorKind::Full;
    int hilbert_dim = 1;
    std::vector<int> signs;

    bool operator==(const FactorSpec&) const = default;
};

// How C^a sits inside a (a x k) block between a full and a scalar object.
enum class BimoduleEmbedding { Diagonal, Column };

// E (x) E^opp with H_i = C^{right_i} (x) C^{left_i}, right factor outermost.
// The right factor of object i is the conjugate of the left factor of pairing[i].
class ProductBundle {
public:
    ProductBundle(FellBundleGeometry base, std::vector<int> pairing, std::vector<FactorSpec> left,
                  BimoduleEmbedding embedding = BimoduleEmbedding::Diagonal);

    const FellBundleGeometry& base() const { return base_; }
    const std::vector<int>& pairing() const { return pairing_; }
    int partner(int i) const { return pairing_.at(static_cast<std::size_t>(i)); }
    const FactorSpec& left_factor(int i) const { return left_.at(static_cast<std::size_t>(i)); }
    BimoduleEmbedding embedding() const { return embedding_; }
    int object_count() const { return base_.object_count(); }
    const std::string& object(int i) const { return base_.groupoid().object(i); }

    int left_dim(int i) const { return left_factor(i).hilbert_dim; }
    int right_dim(int i) const { return left_dim(partner(i)); }
    int block_size(int i) const { return left_dim(i) * right_dim(i); }
    BlockPartition partition() const;
    int hilbert_dimension() const { return partition().total(); }

    RealSubspace left_fiber(int i, int j) const;
    RealSubspace right_fiber(int i, int j) const;
    RealSubspace product_fiber(int i, int j) const;

    // Block of the simple tensor left (x) right at (i, j).
    Matrix tensor_block(int i, int j, const Matrix& left, const Matrix& right) const;

    // Block at (pairing[i], pairing[j]) of J D J^{-1}, given the block of D at (i, j).
    Matrix reality_image(int i, int j, const Matrix& block) const;

    RealStructure real_structure(int sign_dj = 1) const;

    // Placements of a summand acting through the left factor of an object.
    std::vector<Placement> left_action(int object, int summand, int summand_size) const;

    // Basis labels "object:r.l" unless the object supplies its own.
    std::vector<std::string> default_labels() const;

    // Sub-bundle on a pairing-closed subset of objects (in the given order).
    ProductBundle restrict(const std::vector<int>& objects) const;

private:
    FellBundleGeometry base_;
    std::vector<int> pairing_;
    std::vector<FactorSpec> left_;
    BimoduleEmbedding embedding_;
};

}  // namespace fellgeom
