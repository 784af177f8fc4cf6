#include "fellgeom/fellbundle/product_bundle.hpp"

#include <algorithm>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

RealSubspace RealSubspace::from_generators(int rows, int cols, const std::vector<Matrix>& generators) {
    RealSubspace s(rows, cols);
    if (generators.empty()) return s;
    RealMatrix stacked(2 * rows * cols, static_cast<Eigen::Index>(generators.size()));
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (generators[k].rows() != rows || generators[k].cols() != cols) {
            throw ValidationError("RealSubspace: generator has the wrong shape");
        }
        stacked.col(static_cast<Eigen::Index>(k)) = realify(generators[k]);
    }
    const RealMatrix q = column_span(stacked, 1e-9);
    for (Eigen::Index k = 0; k < q.cols(); ++k) s.basis_.push_back(complexify(q.col(k), rows, cols));
    return s;
}

RealSubspace RealSubspace::complex_span(int rows, int cols, const std::vector<Matrix>& generators) {
    std::vector<Matrix> all = generators;
    for (const auto& g : generators) all.push_back(Complex(0, 1) * g);
    return from_generators(rows, cols, all);
}

Matrix RealSubspace::combine(const RealVector& coords) const {
    if (coords.size() != real_dimension()) throw ValidationError("RealSubspace::combine: wrong number of coordinates");
    Matrix m = Matrix::Zero(rows_, cols_);
    for (int k = 0; k < real_dimension(); ++k) m += coords(k) * basis_[static_cast<std::size_t>(k)];
    return m;
}

double RealSubspace::residual(const Matrix& m) const {
    if (m.rows() != rows_ || m.cols() != cols_) return 1.0;
    const double norm = m.norm();
    if (norm == 0.0) return 0.0;
    const RealVector v = realify(m);
    RealVector proj = RealVector::Zero(v.size());
    for (const auto& b : basis_) {
        const RealVector bv = realify(b);
        proj += bv.dot(v) * bv;
    }
    return (v - proj).norm() / norm;
}

RealSubspace RealSubspace::conjugated() const {
    RealSubspace s(rows_, cols_);
    for (const auto& b : basis_) s.basis_.push_back(b.conjugate());
    return s;
}

ProductBundle::ProductBundle(FellBundleGeometry base, std::vector<int> pairing, std::vector<FactorSpec> left,
                             BimoduleEmbedding embedding)
    : base_(base.groupoid(), base.fiber_dims(), base.operations(), true),
      pairing_(std::move(pairing)),
      left_(std::move(left)),
      embedding_(embedding) {
    const int n = base_.object_count();
    if (static_cast<int>(pairing_.size()) != n || static_cast<int>(left_.size()) != n) {
        throw ValidationError("ProductBundle: need one pairing entry and one factor per object");
    }
    if (!is_involution(pairing_)) throw ValidationError("ProductBundle: object pairing is not an involution");
    for (int i = 0; i < n; ++i) {
        const FactorSpec& f = left_[static_cast<std::size_t>(i)];
        if (f.hilbert_dim <= 0) throw ValidationError("ProductBundle: factor dimension must be positive");
        if (f.kind == FactorKind::Full && f.hilbert_dim != base_.fiber_dim(i)) {
            throw ValidationError("ProductBundle: full factor of '" + object(i) + "' must match its fiber dimension");
        }
        if (f.kind == FactorKind::Scalar) {
            if (base_.fiber_dim(i) != 1) {
                throw ValidationError("ProductBundle: scalar factor of '" + object(i) + "' needs fiber dimension 1");
            }
            if (static_cast<int>(f.signs.size()) != f.hilbert_dim) {
                throw ValidationError("ProductBundle: scalar factor of '" + object(i) + "' needs one sign per slot");
            }
            for (int s : f.signs) {
                if (s != 1 && s != -1) throw ValidationError("ProductBundle: scalar signs must be +1 or -1");
            }
        }
    }
}

BlockPartition ProductBundle::partition() const {
    std::vector<int> sizes;
    for (int i = 0; i < object_count(); ++i) sizes.push_back(block_size(i));
    return BlockPartition(std::move(sizes));
}

namespace {

Matrix unit(int rows, int cols, int r, int c) {
    Matrix m = Matrix::Zero(rows, cols);
    m(r, c) = 1.0;
    return m;
}

// Generators of C^a inside (a x k) matrices.
std::vector<Matrix> full_from_scalar(int a, int k, BimoduleEmbedding embedding) {
    std::vector<Matrix> g;
    for (int p = 0; p < a; ++p) {
        if (embedding == BimoduleEmbedding::Diagonal && a == k) {
            g.push_back(unit(a, k, p, p));
        } else {
            g.push_back(unit(a, k, p, 0));
        }
    }
    return g;
}

}  // namespace

RealSubspace ProductBundle::left_fiber(int i, int j) const {
    const FactorSpec& fi = left_factor(i);
    const FactorSpec& fj = left_factor(j);
    const int a = fi.hilbert_dim, b = fj.hilbert_dim;
    if (i == j) {
        if (fi.kind == FactorKind::Full) {
            std::vector<Matrix> g;
            for (int r = 0; r < a; ++r) {
                for (int c = 0; c < a; ++c) g.push_back(unit(a, a, r, c));
            }
            return RealSubspace::complex_span(a, a, g);
        }
        Matrix re = Matrix::Zero(a, a), im = Matrix::Zero(a, a);
        for (int s = 0; s < a; ++s) {
            re(s, s) = 1.0;
            im(s, s) = Complex(0, fi.signs[static_cast<std::size_t>(s)]);
        }
        return RealSubspace::from_generators(a, a, {re, im});
    }
    std::vector<Matrix> g;
    if (fi.kind == FactorKind::Full && fj.kind == FactorKind::Full) {
        for (int r = 0; r < a; ++r) {
            for (int c = 0; c < b; ++c) g.push_back(unit(a, b, r, c));
        }
    } else if (fi.kind == FactorKind::Full) {
        g = full_from_scalar(a, b, embedding_);
    } else if (fj.kind == FactorKind::Full) {
        for (const auto& m : full_from_scalar(b, a, embedding_)) g.push_back(m.adjoint());
    } else {
        Matrix p = Matrix::Zero(a, b);
        for (int s = 0; s < std::min(a, b); ++s) p(s, s) = 1.0;
        g.push_back(p);
    }
    return RealSubspace::complex_span(a, b, g);
}

RealSubspace ProductBundle::right_fiber(int i, int j) const { return left_fiber(partner(i), partner(j)).conjugated(); }

RealSubspace ProductBundle::product_fiber(int i, int j) const {
    const RealSubspace l = left_fiber(i, j);
    const RealSubspace r = right_fiber(i, j);
    std::vector<Matrix> g;
    for (const auto& rb : r.basis()) {
        for (const auto& lb : l.basis()) g.push_back(kron(rb, lb));
    }
    return RealSubspace::from_generators(block_size(i), block_size(j), g);
}

Matrix ProductBundle::tensor_block(int i, int j, const Matrix& left, const Matrix& right) const {
    if (left.rows() != left_dim(i) || left.cols() != left_dim(j) || right.rows() != right_dim(i) ||
        right.cols() != right_dim(j)) {
        throw ValidationError("ProductBundle::tensor_block: factor shapes do not match the block");
    }
    return kron(right, left);
}

Matrix ProductBundle::reality_image(int i, int j, const Matrix& block) const {
    if (block.rows() != block_size(i) || block.cols() != block_size(j)) {
        throw ValidationError("ProductBundle::reality_image: block has the wrong shape");
    }
    const int kl_i = left_dim(i), kr_i = right_dim(i), kl_j = left_dim(j), kr_j = right_dim(j);
    Matrix out(block.rows(), block.cols());
    for (int r = 0; r < kr_i; ++r) {
        for (int l = 0; l < kl_i; ++l) {
            for (int s = 0; s < kr_j; ++s) {
                for (int m = 0; m < kl_j; ++m) {
                    out(l * kr_i + r, m * kr_j + s) = std::conj(block(r * kl_i + l, s * kl_j + m));
                }
            }
        }
    }
    return out;
}

RealStructure ProductBundle::real_structure(int sign_dj) const {
    const BlockPartition p = partition();
    Matrix u = Matrix::Zero(p.total(), p.total());
    for (int i = 0; i < object_count(); ++i) {
        const int t = partner(i);
        const int kl = left_dim(i), kr = right_dim(i);
        for (int r = 0; r < kr; ++r) {
            for (int l = 0; l < kl; ++l) u(p.offset(t) + l * kr + r, p.offset(i) + r * kl + l) = 1.0;
        }
    }
    return {u, 1, sign_dj};
}

std::vector<Placement> ProductBundle::left_action(int object, int summand, int summand_size) const {
    const FactorSpec& f = left_factor(object);
    const int off = partition().offset(object);
    const int kl = left_dim(object), kr = right_dim(object);
    if (f.kind == FactorKind::Full) {
        if (summand_size != kl) {
            throw ValidationError("ProductBundle: summand of size " + std::to_string(summand_size) +
                                  " cannot act on the left factor of '" + this->object(object) + "'");
        }
        Placement p{summand, false, {}};
        for (int r = 0; r < kr; ++r) {
            std::vector<int> copy;
            for (int l = 0; l < kl; ++l) copy.push_back(off + r * kl + l);
            p.copies.push_back(copy);
        }
        return {p};
    }
    if (summand_size != 1) {
        throw ValidationError("ProductBundle: only a 1-dimensional summand acts on the scalar factor of '" +
                              this->object(object) + "'");
    }
    Placement plain{summand, false, {}}, conj{summand, true, {}};
    for (int r = 0; r < kr; ++r) {
        for (int l = 0; l < kl; ++l) {
            Placement& p = f.signs[static_cast<std::size_t>(l)] > 0 ? plain : conj;
            p.copies.push_back({off + r * kl + l});
        }
    }
    std::vector<Placement> out;
    if (!plain.copies.empty()) out.push_back(plain);
    if (!conj.copies.empty()) out.push_back(conj);
    return out;
}

std::vector<std::string> ProductBundle::default_labels() const {
    std::vector<std::string> labels;
    for (int i = 0; i < object_count(); ++i) {
        for (int r = 0; r < right_dim(i); ++r) {
            for (int l = 0; l < left_dim(i); ++l) {
                labels.push_back(object(i) + "[" + std::to_string(r) + "," + std::to_string(l) + "]");
            }
        }
    }
    return labels;
}

ProductBundle ProductBundle::restrict(const std::vector<int>& objects) const {
    std::vector<std::string> ids;
    std::vector<int> dims;
    std::vector<FactorSpec> left;
    std::vector<int> index(static_cast<std::size_t>(object_count()), -1);
    for (std::size_t k = 0; k < objects.size(); ++k) {
        const int o = objects[k];
        if (o < 0 || o >= object_count()) throw ValidationError("ProductBundle::restrict: object out of range");
        index[static_cast<std::size_t>(o)] = static_cast<int>(k);
        ids.push_back(object(o));
        dims.push_back(base_.fiber_dim(o));
        left.push_back(left_factor(o));
    }
    std::vector<int> pairing;
    for (int o : objects) {
        const int t = index[static_cast<std::size_t>(partner(o))];
        if (t < 0) throw ValidationError("ProductBundle::restrict: subset is not closed under the object pairing");
        pairing.push_back(t);
    }
    FellBundleGeometry sub(PairGroupoid(ids), dims, base_.operations(), true);
    return {sub, pairing, left, embedding_};
}

}  // namespace fellgeom
