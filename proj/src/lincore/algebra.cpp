#include "fellgeom/lincore/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

BlockAlgebra::BlockAlgebra(std::vector<int> summands, std::vector<std::string> labels)
    : summands_(std::move(summands)), labels_(std::move(labels)) {
    for (int n : summands_) {
        if (n <= 0) throw ValidationError("BlockAlgebra: summand sizes must be positive");
    }
    if (labels_.empty()) {
        for (std::size_t s = 0; s < summands_.size(); ++s) labels_.push_back("M" + std::to_string(summands_[s]));
    }
    if (labels_.size() != summands_.size()) throw ValidationError("BlockAlgebra: one label per summand");
}

int BlockAlgebra::dimension() const {
    int d = 0;
    for (int n : summands_) d += n * n;
    return d;
}

AlgebraElement::AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != algebra_.summand_count()) {
        throw ValidationError("AlgebraElement: wrong number of blocks");
    }
    for (int s = 0; s < algebra_.summand_count(); ++s) {
        const int n = algebra_.summand_size(s);
        if (blocks_[static_cast<std::size_t>(s)].rows() != n || blocks_[static_cast<std::size_t>(s)].cols() != n) {
            throw ValidationError("AlgebraElement: block " + std::to_string(s) + " has wrong shape");
        }
    }
}

AlgebraElement AlgebraElement::zero(const BlockAlgebra& algebra) {
    std::vector<Matrix> b;
    for (int n : algebra.summands()) b.push_back(Matrix::Zero(n, n));
    return {algebra, std::move(b)};
}

AlgebraElement AlgebraElement::identity(const BlockAlgebra& algebra) {
    std::vector<Matrix> b;
    for (int n : algebra.summands()) b.push_back(Matrix::Identity(n, n));
    return {algebra, std::move(b)};
}

AlgebraElement AlgebraElement::random(const BlockAlgebra& algebra, Rng& rng) {
    std::vector<Matrix> b;
    for (int n : algebra.summands()) b.push_back(rng.ginibre(n, n));
    return {algebra, std::move(b)};
}

AlgebraElement AlgebraElement::random_hermitian(const BlockAlgebra& algebra, Rng& rng) {
    std::vector<Matrix> b;
    for (int n : algebra.summands()) b.push_back(rng.hermitian(n));
    return {algebra, std::move(b)};
}

AlgebraElement AlgebraElement::random_unitary(const BlockAlgebra& algebra, Rng& rng) {
    std::vector<Matrix> b;
    for (int n : algebra.summands()) b.push_back(rng.unitary(n));
    return {algebra, std::move(b)};
}

void AlgebraElement::require_same_algebra(const AlgebraElement& other) const {
    if (!(algebra_ == other.algebra_)) throw ValidationError("AlgebraElement: algebras differ");
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<Matrix> b;
    for (const auto& m : blocks_) b.push_back(m.adjoint());
    return {algebra_, std::move(b)};
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& other) const {
    require_same_algebra(other);
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < blocks_.size(); ++s) b.push_back(blocks_[s] * other.blocks_[s]);
    return {algebra_, std::move(b)};
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
    require_same_algebra(other);
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < blocks_.size(); ++s) b.push_back(blocks_[s] + other.blocks_[s]);
    return {algebra_, std::move(b)};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
    require_same_algebra(other);
    std::vector<Matrix> b;
    for (std::size_t s = 0; s < blocks_.size(); ++s) b.push_back(blocks_[s] - other.blocks_[s]);
    return {algebra_, std::move(b)};
}

AlgebraElement AlgebraElement::scaled(Complex c) const {
    std::vector<Matrix> b;
    for (const auto& m : blocks_) b.push_back(c * m);
    return {algebra_, std::move(b)};
}

double AlgebraElement::norm() const {
    double n = 0.0;
    for (const auto& m : blocks_) n = std::max(n, op_norm(m));
    return n;
}

std::vector<AlgebraElement> real_basis(const BlockAlgebra& algebra) {
    std::vector<AlgebraElement> out;
    for (int s = 0; s < algebra.summand_count(); ++s) {
        const int n = algebra.summand_size(s);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (Complex c : {Complex(1, 0), Complex(0, 1)}) {
                    AlgebraElement e = AlgebraElement::zero(algebra);
                    std::vector<Matrix> blocks = e.blocks();
                    blocks[static_cast<std::size_t>(s)](a, b) = c;
                    out.emplace_back(algebra, std::move(blocks));
                }
            }
        }
    }
    return out;
}

std::vector<AlgebraElement> hermitian_basis(const BlockAlgebra& algebra) {
    std::vector<AlgebraElement> out;
    const double r = 1.0 / std::sqrt(2.0);
    for (int s = 0; s < algebra.summand_count(); ++s) {
        const int n = algebra.summand_size(s);
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                std::vector<Matrix> blocks = AlgebraElement::zero(algebra).blocks();
                Matrix& m = blocks[static_cast<std::size_t>(s)];
                if (a == b) {
                    m(a, a) = 1.0;
                    out.emplace_back(algebra, blocks);
                    continue;
                }
                m(a, b) = r;
                m(b, a) = r;
                out.emplace_back(algebra, blocks);
                m(a, b) = Complex(0, r);
                m(b, a) = Complex(0, -r);
                out.emplace_back(algebra, blocks);
            }
        }
    }
    return out;
}

HilbertSpace::HilbertSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw ValidationError("HilbertSpace: duplicate basis label '" + l + "'");
    }
}

HilbertSpace HilbertSpace::numbered(int dim, const std::string& prefix) {
    std::vector<std::string> labels;
    for (int i = 0; i < dim; ++i) labels.push_back(prefix + std::to_string(i));
    return HilbertSpace(std::move(labels));
}

int HilbertSpace::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw ValidationError("HilbertSpace: unknown basis label '" + label + "'");
    return static_cast<int>(it - labels_.begin());
}

Representation::Representation(BlockAlgebra algebra, HilbertSpace space, std::vector<Placement> placements,
                               bool declared_faithful)
    : algebra_(std::move(algebra)),
      space_(std::move(space)),
      placements_(std::move(placements)),
      declared_faithful_(declared_faithful) {
    std::vector<bool> used(static_cast<std::size_t>(space_.dimension()), false);
    for (const auto& p : placements_) {
        if (p.summand < 0 || p.summand >= algebra_.summand_count()) {
            throw ValidationError("Representation: placement refers to unknown summand " + std::to_string(p.summand));
        }
        const int n = algebra_.summand_size(p.summand);
        for (const auto& copy : p.copies) {
            if (static_cast<int>(copy.size()) != n) {
                throw ValidationError("Representation: copy of summand " + std::to_string(p.summand) + " needs " +
                                      std::to_string(n) + " basis indices");
            }
            for (int idx : copy) {
                if (idx < 0 || idx >= space_.dimension()) throw ValidationError("Representation: basis index out of range");
                if (used[static_cast<std::size_t>(idx)]) {
                    throw ValidationError("Representation: basis index " + std::to_string(idx) + " placed twice");
                }
                used[static_cast<std::size_t>(idx)] = true;
            }
        }
    }
    if (declared_faithful_ && !is_faithful()) throw ValidationError("Representation: declared faithful but is not");
}

Matrix Representation::embed(const AlgebraElement& a) const {
    if (!(a.algebra() == algebra_)) throw ValidationError("Representation::embed: element of a different algebra");
    Matrix out = Matrix::Zero(space_.dimension(), space_.dimension());
    for (const auto& p : placements_) {
        const Matrix& m = a.block(p.summand);
        for (const auto& copy : p.copies) {
            for (std::size_t r = 0; r < copy.size(); ++r) {
                for (std::size_t c = 0; c < copy.size(); ++c) {
                    const Complex v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                    out(copy[r], copy[c]) = p.conjugate ? std::conj(v) : v;
                }
            }
        }
    }
    return out;
}

HomomorphismReport Representation::check_homomorphism(int samples, Rng& rng, double tol) const {
    HomomorphismReport report;
    auto note = [&](double residual, int sample, const char* what) {
        if (residual > report.worst) report.worst = residual;
        if (residual > tol && report.passed) {
            report.passed = false;
            std::ostringstream os;
            os << "sample " << sample << ": " << what << " residual " << residual;
            report.witness = os.str();
        }
    };
    for (int k = 0; k < samples; ++k) {
        const AlgebraElement a = AlgebraElement::random(algebra_, rng);
        const AlgebraElement b = AlgebraElement::random(algebra_, rng);
        const double x = rng.normal();
        note(relative_difference(embed(a * b), embed(a) * embed(b)), k, "pi(ab) = pi(a)pi(b)");
        note(relative_difference(embed(a.adjoint()), embed(a).adjoint()), k, "pi(a*) = pi(a)*");
        note(relative_difference(embed(a + b.scaled(x)), embed(a) + x * embed(b)), k, "real linearity");
    }
    return report;
}

bool Representation::is_faithful(double relative_cutoff) const {
    const auto basis = real_basis(algebra_);
    if (basis.empty()) return true;
    const int h = space_.dimension();
    RealMatrix m(2 * h * h, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = realify(embed(basis[k]));
    return numerical_rank(m, relative_cutoff) == static_cast<int>(basis.size());
}

}  // namespace fellgeom
