#include "fellgeom/fellbundle/section.hpp"

#include <sstream>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

BlockPartition::BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    for (int s : sizes_) {
        if (s < 0) throw ValidationError("BlockPartition: negative block size");
        offsets_.push_back(total_);
        total_ += s;
    }
}

std::vector<std::vector<bool>> BlockPartition::support(const Matrix& m, double tol) const {
    if (m.rows() != total_ || m.cols() != total_) throw ValidationError("BlockPartition::support: dimension mismatch");
    const int n = block_count();
    const double scale = m.norm();
    std::vector<std::vector<bool>> out(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    if (scale == 0.0) return out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = block(m, i, j).norm() > tol * scale;
        }
    }
    return out;
}

bool is_involution(const std::vector<int>& pairing) {
    const int n = static_cast<int>(pairing.size());
    for (int i = 0; i < n; ++i) {
        const int t = pairing[static_cast<std::size_t>(i)];
        if (t < 0 || t >= n || pairing[static_cast<std::size_t>(t)] != i) return false;
    }
    return true;
}

DiracSection::DiracSection(FellBundleGeometry geometry, std::vector<int> pairing, std::vector<Matrix> elements, double tol)
    : geometry_(std::move(geometry)), pairing_(std::move(pairing)), elements_(std::move(elements)) {
    const int n = geometry_.object_count();
    if (static_cast<int>(pairing_.size()) != n || static_cast<int>(elements_.size()) != n) {
        throw ValidationError("DiracSection: need one pairing entry and one element per object");
    }
    if (!is_involution(pairing_)) throw ValidationError("DiracSection: pairing is not an involution");
    for (int i = 0; i < n; ++i) {
        const int t = pairing_[static_cast<std::size_t>(i)];
        const Matrix& e = elements_[static_cast<std::size_t>(i)];
        if (e.rows() != geometry_.fiber_dim(t) || e.cols() != geometry_.fiber_dim(i)) {
            throw ValidationError("DiracSection: element at object " + geometry_.groupoid().object(i) +
                                  " does not lie in fiber " + geometry_.groupoid().describe({t, i}));
        }
    }
    for (int i = 0; i < n; ++i) {
        const int t = pairing_[static_cast<std::size_t>(i)];
        const Matrix& e = elements_[static_cast<std::size_t>(i)];
        const Matrix& partner = elements_[static_cast<std::size_t>(t)];
        if (!approx_equal(partner, e.adjoint(), tol)) {
            throw ValidationError("DiracSection: element at " + geometry_.groupoid().object(t) +
                                  " is not the adjoint of the element at " + geometry_.groupoid().object(i));
        }
    }
}

DiracSection DiracSection::from_free(FellBundleGeometry geometry, std::vector<int> pairing, const std::vector<Matrix>& free) {
    if (!is_involution(pairing)) throw ValidationError("DiracSection: pairing is not an involution");
    std::vector<Matrix> elements(free.size());
    for (std::size_t i = 0; i < free.size(); ++i) {
        const std::size_t t = static_cast<std::size_t>(pairing.at(i));
        if (t == i) {
            elements[i] = (free[i] + free[i].adjoint()) / 2.0;
        } else if (i < t) {
            elements[i] = free[i];
            elements[t] = free[i].adjoint();
        }
    }
    return {std::move(geometry), std::move(pairing), std::move(elements)};
}

DiracSection DiracSection::random(FellBundleGeometry geometry, std::vector<int> pairing, Rng& rng) {
    std::vector<Matrix> free;
    for (int i = 0; i < geometry.object_count(); ++i) {
        free.push_back(rng.ginibre(geometry.fiber_dim(pairing.at(static_cast<std::size_t>(i))), geometry.fiber_dim(i)));
    }
    return from_free(std::move(geometry), std::move(pairing), free);
}

Matrix assemble_raw(const BlockPartition& partition, const std::vector<int>& targets, const std::vector<Matrix>& elements) {
    Matrix d = Matrix::Zero(partition.total(), partition.total());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const int t = targets[i];
        const Matrix& e = elements.at(i);
        if (e.rows() != partition.size(t) || e.cols() != partition.size(static_cast<int>(i))) {
            throw ValidationError("assemble_raw: element shape does not match its block");
        }
        partition.block(d, t, static_cast<int>(i)) = e;
    }
    return d;
}

Matrix assemble(const DiracSection& section) {
    return assemble_raw(BlockPartition::of(section.geometry()), section.pairing(), section.elements());
}

SectionDiagnostics is_dirac_section(const Matrix& d, const BlockPartition& partition, const RealStructure* j, double tol) {
    SectionDiagnostics diag;
    const auto support = partition.support(d, tol);
    const int n = partition.block_count();
    std::vector<int> pairing(static_cast<std::size_t>(n), -1);
    for (int col = 0; col < n; ++col) {
        int count = 0;
        for (int row = 0; row < n; ++row) {
            if (support[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) {
                ++count;
                pairing[static_cast<std::size_t>(col)] = row;
            }
        }
        int row_count = 0;
        for (int c = 0; c < n; ++c) {
            if (support[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)]) ++row_count;
        }
        if (count > 1 || row_count > 1) diag.crowded_rows.push_back(col);
    }
    if (!diag.crowded_rows.empty()) {
        diag.accepted = false;
        std::ostringstream os;
        os << kMultipleBlocksReason << " (rows";
        for (int r : diag.crowded_rows) os << ' ' << r;
        os << ')';
        diag.reasons.push_back(os.str());
    }
    const double scale = std::max(1e-300, d.norm());
    const double herm = (d - d.adjoint()).norm() / scale;
    if (herm > tol) {
        diag.accepted = false;
        diag.reasons.push_back("not self-adjoint (residual " + std::to_string(herm) + ")");
    }
    if (j != nullptr) {
        if (j->dimension() != partition.total()) throw ValidationError("is_dirac_section: J has the wrong dimension");
        const double real = (d - static_cast<double>(j->sign_dj()) * j->conjugate(d)).norm() / scale;
        if (real > tol) {
            diag.accepted = false;
            diag.reasons.push_back("violates D J = " + std::string(j->sign_dj() > 0 ? "" : "-") + "J D (residual " +
                                   std::to_string(real) + ")");
        }
    }
    if (diag.accepted) {
        // Objects with no nonzero block pair with themselves.
        for (int i = 0; i < n; ++i) {
            if (pairing[static_cast<std::size_t>(i)] < 0) pairing[static_cast<std::size_t>(i)] = i;
        }
        diag.pairing = pairing;
    }
    return diag;
}

SectionDiagnostics is_dirac_section(const DiracSection& section, const RealStructure* j, double tol) {
    return is_dirac_section(assemble(section), BlockPartition::of(section.geometry()), j, tol);
}

}  // namespace fellgeom
