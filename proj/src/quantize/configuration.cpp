#include "fellgeom/quantize/configuration.hpp"

#include <map>
#include <numeric>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

ConfigurationSpace::ConfigurationSpace(BlockPartition partition, std::vector<int> pairing, std::vector<Matrix> generators,
                                       std::string description)
    : partition_(std::move(partition)), pairing_(std::move(pairing)), generators_(std::move(generators)),
      description_(std::move(description)) {
    if (static_cast<int>(pairing_.size()) != partition_.block_count() || !is_involution(pairing_)) {
        throw ValidationError("configuration space: pairing must be an involution on the objects");
    }
    for (const Matrix& g : generators_) {
        if (g.rows() != partition_.total() || g.cols() != partition_.total()) {
            throw ValidationError("configuration space: generator shape does not match the Hilbert space");
        }
        if (!is_hermitian(g)) throw ValidationError("configuration space: generators must be Hermitian");
    }
}

Matrix ConfigurationSpace::point(const RealVector& theta) const {
    if (theta.size() != dimension()) throw ValidationError("configuration space: wrong parameter count");
    Matrix d = Matrix::Zero(partition_.total(), partition_.total());
    for (int k = 0; k < dimension(); ++k) d += theta(k) * generators_[static_cast<std::size_t>(k)];
    return d;
}

Matrix ConfigurationSpace::random_point(Rng& rng) const { return point(rng.real_normal(dimension())); }

std::vector<Matrix> section_generators(const BlockPartition& partition, const std::vector<int>& pairing, Field field) {
    if (static_cast<int>(pairing.size()) != partition.block_count() || !is_involution(pairing)) {
        throw ValidationError("section_generators: pairing must be an involution on the objects");
    }
    const int n = partition.total();
    const Complex im(0.0, 1.0);
    std::vector<Matrix> out;
    auto unit = [&](int r, int c, Complex v) {
        Matrix m = Matrix::Zero(n, n);
        m(r, c) += v;
        m(c, r) += std::conj(v);
        return m;
    };
    for (int i = 0; i < partition.block_count(); ++i) {
        const int s = pairing[static_cast<std::size_t>(i)];
        if (s < i) continue;
        for (int r = 0; r < partition.size(s); ++r) {
            for (int c = 0; c < partition.size(i); ++c) {
                const int gr = partition.offset(s) + r;
                const int gc = partition.offset(i) + c;
                if (s == i && r > c) continue;
                if (gr == gc) {
                    Matrix m = Matrix::Zero(n, n);
                    m(gr, gr) = 1.0;
                    out.push_back(m);
                    continue;
                }
                out.push_back(unit(gr, gc, 1.0));
                if (field == Field::Complex) out.push_back(unit(gr, gc, im));
            }
        }
    }
    return out;
}

namespace {

// Orthonormal basis of the complex span, as columns of vectorized matrices.
Matrix span_basis(const Matrix& columns, double relative_cutoff) {
    if (columns.cols() == 0) return columns;
    Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const RealVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return Matrix(columns.rows(), 0);
    int rank = 0;
    while (rank < s.size() && s(rank) > relative_cutoff * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

int generated_algebra_dimension(const std::vector<Matrix>& generators, double relative_cutoff) {
    if (generators.empty()) return 0;
    const Eigen::Index n = generators.front().rows();
    Matrix cols(n * n, static_cast<Eigen::Index>(generators.size()));
    for (std::size_t k = 0; k < generators.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = vec(generators[k]);
    Matrix gens = span_basis(cols, relative_cutoff);
    Matrix basis = gens;
    // Words in the generators: multiply the current span by generators on the right until stable.
    while (true) {
        Matrix grown(n * n, basis.cols() + basis.cols() * gens.cols());
        grown.leftCols(basis.cols()) = basis;
        Eigen::Index at = basis.cols();
        for (Eigen::Index a = 0; a < basis.cols(); ++a) {
            const Eigen::Map<const Matrix> x(basis.col(a).data(), n, n);
            for (Eigen::Index g = 0; g < gens.cols(); ++g) {
                const Eigen::Map<const Matrix> y(gens.col(g).data(), n, n);
                grown.col(at++) = vec(x * y);
            }
        }
        Matrix next = span_basis(grown, relative_cutoff);
        if (next.cols() == basis.cols()) return static_cast<int>(basis.cols());
        basis = next;
    }
}

GeneratedDims generated_algebra_dims(const ConfigurationSpace& space, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw ValidationError("generated_algebra_dims: need at least one sample");
    Rng rng(seed);
    std::vector<Matrix> ds;
    for (int k = 0; k < n_samples; ++k) {
        Matrix d = space.random_point(rng);
        if (d.norm() > 0.0) ds.push_back(std::move(d));
    }
    std::vector<Matrix> pairs;
    for (const Matrix& a : ds) {
        for (const Matrix& b : ds) pairs.push_back(a * b);
    }
    GeneratedDims out;
    out.algebra = generated_algebra_dimension(ds);
    out.unit_algebra = generated_algebra_dimension(pairs);

    const BlockPartition& p = space.partition();
    std::map<int, int> component_size;
    for (int i = 0; i < p.block_count(); ++i) {
        const int root = std::min(i, space.pairing()[static_cast<std::size_t>(i)]);
        component_size[root] += p.size(i);
        out.expected_unit += p.size(i) * p.size(i);
    }
    for (const auto& [root, size] : component_size) out.expected_algebra += size * size;
    out.rank_deficient = out.algebra < out.expected_algebra || out.unit_algebra < out.expected_unit;
    return out;
}

}  // namespace fellgeom
