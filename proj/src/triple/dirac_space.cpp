#include "fellgeom/triple/dirac_space.hpp"

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

namespace {

struct Pair {
    Matrix a;
    Matrix bop;
};

std::vector<Pair> sample_pairs(const DiracSpaceConstraints& c, int count, std::uint64_t stream) {
    Rng rng = Rng::stream(c.seed, stream);
    std::vector<Pair> out;
    for (int k = 0; k < count; ++k) {
        const AlgebraElement a = AlgebraElement::random(c.first_order->algebra(), rng);
        const AlgebraElement b = AlgebraElement::random(c.first_order->algebra(), rng);
        out.push_back({c.first_order->embed(a), opposite_action(b, *c.j, *c.first_order)});
    }
    return out;
}

RealVector constraint_image(const DiracSpaceConstraints& c, const Matrix& d, const std::vector<Pair>& pairs) {
    std::vector<RealVector> parts;
    if (c.self_adjoint) parts.push_back(realify(d - d.adjoint()));
    if (c.j != nullptr) parts.push_back(realify(d - static_cast<double>(c.j->sign_dj()) * c.j->conjugate(d)));
    if (c.chi != nullptr) {
        const Matrix g = c.chi->matrix();
        parts.push_back(realify(d * g + g * d));
    }
    for (const auto& p : pairs) parts.push_back(realify(commutator(commutator(d, p.a), p.bop)));
    Eigen::Index total = 0;
    for (const auto& v : parts) total += v.size();
    RealVector out(total);
    Eigen::Index off = 0;
    for (const auto& v : parts) {
        out.segment(off, v.size()) = v;
        off += v.size();
    }
    return out;
}

}  // namespace

std::vector<Matrix> dirac_solution_space(const DiracSpaceConstraints& c) {
    if (c.first_order != nullptr && c.j == nullptr) {
        throw ValidationError("dirac_solution_space: first-order condition needs a real structure");
    }
    const int n = c.partition.total();
    std::vector<Matrix> vars;
    for (const Arrow b : c.blocks) {
        if (const auto it = c.block_basis.find(b); it != c.block_basis.end()) {
            for (const Matrix& m : it->second) {
                if (m.rows() != c.partition.size(b.range) || m.cols() != c.partition.size(b.source)) {
                    throw ValidationError("dirac_solution_space: block basis has the wrong shape");
                }
                Matrix e = Matrix::Zero(n, n);
                c.partition.block(e, b.range, b.source) = m;
                vars.push_back(e);
            }
            continue;
        }
        for (int r = 0; r < c.partition.size(b.range); ++r) {
            for (int s = 0; s < c.partition.size(b.source); ++s) {
                const int row = c.partition.offset(b.range) + r, col = c.partition.offset(b.source) + s;
                if (!c.entry_mask.empty() && !c.entry_mask[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) {
                    continue;
                }
                for (Complex z : {Complex(1, 0), Complex(0, 1)}) {
                    Matrix e = Matrix::Zero(n, n);
                    e(row, col) = z;
                    vars.push_back(e);
                }
            }
        }
    }
    if (vars.empty()) return {};

    int pair_count = c.first_order != nullptr ? 4 : 0;
    std::uint64_t stream = 0;
    std::vector<Pair> pairs = c.first_order != nullptr ? sample_pairs(c, pair_count, stream++) : std::vector<Pair>{};
    for (int round = 0; round < 8; ++round) {
        const RealVector probe = constraint_image(c, vars.front(), pairs);
        RealMatrix system(probe.size(), static_cast<Eigen::Index>(vars.size()));
        for (std::size_t v = 0; v < vars.size(); ++v) {
            system.col(static_cast<Eigen::Index>(v)) = constraint_image(c, vars[v], pairs);
        }
        const RealMatrix null = null_space(system, 1e-10);
        std::vector<Matrix> basis;
        for (Eigen::Index k = 0; k < null.cols(); ++k) {
            Matrix m = Matrix::Zero(n, n);
            for (std::size_t v = 0; v < vars.size(); ++v) m += null(static_cast<Eigen::Index>(v), k) * vars[v];
            basis.push_back(m);
        }
        if (c.first_order == nullptr) return basis;
        // Fresh pairs must not cut the space any further.
        const std::vector<Pair> fresh = sample_pairs(c, 2, 1000 + stream++);
        bool stable = true;
        for (const auto& m : basis) {
            for (const auto& p : fresh) {
                if (commutator(commutator(m, p.a), p.bop).norm() > 1e-9 * std::max(1.0, m.norm() * p.a.norm() * p.bop.norm())) {
                    stable = false;
                }
            }
        }
        if (stable) return basis;
        for (const auto& p : fresh) pairs.push_back(p);
        pair_count += 2;
    }
    throw ValidationError("dirac_solution_space: first-order solution space did not stabilize");
}

}  // namespace fellgeom
