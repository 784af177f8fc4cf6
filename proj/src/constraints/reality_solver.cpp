#include "fellgeom/constraints/reality_solver.hpp"

#include <algorithm>
#include <sstream>

#include "fellgeom/lincore/linalg.hpp"

namespace fellgeom {

SectionParametrization::SectionParametrization(ProductBundle bundle, BlockPattern pattern)
    : bundle_(std::move(bundle)), pattern_(std::move(pattern)) {
    const int n = bundle_.object_count();
    if (pattern_.size() != n) throw InconsistentPatternError("pattern size does not match the number of objects");
    if (!is_involution(pattern_.pairing)) throw InconsistentPatternError("pattern is not an involution");
    for (int i = 0; i < n; ++i) {
        const int ti = bundle_.partner(i);
        if (pattern_.pairing[static_cast<std::size_t>(ti)] != bundle_.partner(pattern_.pairing[static_cast<std::size_t>(i)])) {
            throw InconsistentPatternError("pattern " + pattern_.cycles() + " does not commute with the pairing of J");
        }
    }
    std::vector<Arrow> blocks = pattern_.blocks();
    std::sort(blocks.begin(), blocks.end());
    std::vector<Arrow> seen;
    for (const Arrow b : blocks) {
        if (std::find(seen.begin(), seen.end(), b) != seen.end()) continue;
        BlockOrbit o;
        o.representative = b;
        for (int w = 0; w < 4; ++w) {
            const Arrow t = word_target(w, b);
            if (pattern_.pairing[static_cast<std::size_t>(t.source)] != t.range) {
                throw InconsistentPatternError("symmetry image of a pattern block leaves the pattern");
            }
            const bool known = std::any_of(o.members.begin(), o.members.end(), [&](const OrbitMember& m) { return m.block == t; });
            if (!known) {
                o.members.push_back({t, w});
                seen.push_back(t);
            } else if (t == b && w != kIdentityWord) {
                o.stabilizers.push_back(w);
            }
        }
        left_.push_back(bundle_.left_fiber(b.range, b.source));
        right_.push_back(bundle_.right_fiber(b.range, b.source));
        o.left_real_dim = left_.back().real_dimension();
        o.right_real_dim = right_.back().real_dimension();
        o.param_offset = params_;
        params_ += o.left_real_dim + o.right_real_dim;
        orbits_.push_back(o);
    }
}

int SectionParametrization::constraint_count() const {
    int c = 0;
    for (const auto& o : orbits_) c += static_cast<int>(o.stabilizers.size());
    return c;
}

Arrow SectionParametrization::word_target(int word, Arrow from) const {
    switch (word) {
        case kAdjointWord:
            return {from.source, from.range};
        case kRealityWord:
            return {bundle_.partner(from.range), bundle_.partner(from.source)};
        case kBothWords:
            return {bundle_.partner(from.source), bundle_.partner(from.range)};
        default:
            return from;
    }
}

Matrix SectionParametrization::apply_word(int word, Arrow from, const Matrix& block) const {
    switch (word) {
        case kAdjointWord:
            return block.adjoint();
        case kRealityWord:
            return bundle_.reality_image(from.range, from.source, block);
        case kBothWords:
            return bundle_.reality_image(from.range, from.source, block).adjoint();
        default:
            return block;
    }
}

namespace {

std::size_t orbit_index(const std::vector<BlockOrbit>& orbits, const BlockOrbit& o) {
    return static_cast<std::size_t>(&o - orbits.data());
}

}  // namespace

Matrix SectionParametrization::representative_block(const BlockOrbit& o, const RealVector& theta) const {
    const std::size_t k = orbit_index(orbits_, o);
    const Matrix l = left_[k].combine(theta.segment(o.param_offset, o.left_real_dim));
    const Matrix r = right_[k].combine(theta.segment(o.param_offset + o.left_real_dim, o.right_real_dim));
    return bundle_.tensor_block(o.representative.range, o.representative.source, l, r);
}

Matrix SectionParametrization::derivative_block(const BlockOrbit& o, const RealVector& theta, int k) const {
    const std::size_t idx = orbit_index(orbits_, o);
    const Matrix l = left_[idx].combine(theta.segment(o.param_offset, o.left_real_dim));
    const Matrix r = right_[idx].combine(theta.segment(o.param_offset + o.left_real_dim, o.right_real_dim));
    const Arrow b = o.representative;
    if (k < o.left_real_dim) return bundle_.tensor_block(b.range, b.source, left_[idx].basis()[static_cast<std::size_t>(k)], r);
    return bundle_.tensor_block(b.range, b.source, l, right_[idx].basis()[static_cast<std::size_t>(k - o.left_real_dim)]);
}

Matrix SectionParametrization::dirac(const RealVector& theta) const {
    if (theta.size() != params_) throw ValidationError("SectionParametrization: wrong number of parameters");
    const BlockPartition p = bundle_.partition();
    Matrix d = Matrix::Zero(p.total(), p.total());
    for (const auto& o : orbits_) {
        const Matrix b = representative_block(o, theta);
        for (const auto& m : o.members) p.block(d, m.block.range, m.block.source) = apply_word(m.word, o.representative, b);
    }
    return d;
}

RealMatrix SectionParametrization::jacobian(const RealVector& theta, const Matrix* basis_change) const {
    const BlockPartition p = bundle_.partition();
    const int n = p.total();
    RealMatrix jac(2 * n * n, params_);
    for (const auto& o : orbits_) {
        for (int k = 0; k < o.left_real_dim + o.right_real_dim; ++k) {
            const Matrix db = derivative_block(o, theta, k);
            Matrix dd = Matrix::Zero(n, n);
            for (const auto& m : o.members) p.block(dd, m.block.range, m.block.source) = apply_word(m.word, o.representative, db);
            if (basis_change != nullptr) dd = (*basis_change) * dd * basis_change->adjoint();
            jac.col(o.param_offset + k) = realify(dd);
        }
    }
    return jac;
}

RealVector SectionParametrization::constraint_residual(const RealVector& theta) const {
    std::vector<RealVector> parts;
    Eigen::Index total = 0;
    for (const auto& o : orbits_) {
        if (o.stabilizers.empty()) continue;
        const Matrix b = representative_block(o, theta);
        for (int w : o.stabilizers) {
            parts.push_back(realify(apply_word(w, o.representative, b) - b));
            total += parts.back().size();
        }
    }
    RealVector out(total);
    Eigen::Index off = 0;
    for (const auto& v : parts) {
        out.segment(off, v.size()) = v;
        off += v.size();
    }
    return out;
}

RealMatrix SectionParametrization::constraint_jacobian(const RealVector& theta) const {
    Eigen::Index rows = 0;
    for (const auto& o : orbits_) {
        const auto& r = o.representative;
        rows += static_cast<Eigen::Index>(o.stabilizers.size()) * 2 * bundle_.block_size(r.range) * bundle_.block_size(r.source);
    }
    RealMatrix jac = RealMatrix::Zero(rows, params_);
    Eigen::Index off = 0;
    for (const auto& o : orbits_) {
        for (int w : o.stabilizers) {
            Eigen::Index len = 0;
            for (int k = 0; k < o.left_real_dim + o.right_real_dim; ++k) {
                const Matrix db = derivative_block(o, theta, k);
                const RealVector col = realify(apply_word(w, o.representative, db) - db);
                jac.block(off, o.param_offset + k, col.size(), 1) = col;
                len = col.size();
            }
            off += len;
        }
    }
    return jac;
}

RealVector SectionParametrization::project(RealVector theta, double tol) const {
    if (constraint_count() == 0) return theta;
    for (int iter = 0; iter < 200; ++iter) {
        const RealVector r = constraint_residual(theta);
        if (r.norm() <= tol * std::max(1.0, theta.squaredNorm())) return theta;
        const RealMatrix j = constraint_jacobian(theta);
        Eigen::BDCSVD<RealMatrix> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-12);
        theta -= svd.solve(r);
    }
    throw RankInstabilityError("constraint projection did not converge");
}

std::string SectionParametrization::describe_equation(const BlockOrbit& o, const OrbitMember& m) const {
    auto name = [&](Arrow a) { return bundle_.object(a.range) + "," + bundle_.object(a.source); };
    const std::string lhs = "left(" + name(m.block) + ") (x) right(" + name(m.block) + ")";
    const std::string rep = name(o.representative);
    switch (m.word) {
        case kAdjointWord:
            return lhs + " = left(" + rep + ")^* (x) right(" + rep + ")^*";
        case kRealityWord:
            return lhs + " = conj(right(" + rep + ")) (x) conj(left(" + rep + "))";
        case kBothWords:
            return lhs + " = right(" + rep + ")^T (x) left(" + rep + ")^T";
        default:
            return lhs;
    }
}

int naive_parameter_count(const SectionParametrization& p) {
    int total = 0;
    for (std::size_t k = 0; k < p.orbits().size(); ++k) {
        const int cl = p.left_space(k).complex_dimension();
        const int cr = p.right_space(k).complex_dimension();
        if (cl <= 1 && cr <= 1) {
            total += 1;
        } else {
            total += (cl > 1 ? cl : 0) + (cr > 1 ? cr : 0);
        }
    }
    return total;
}

double tensor_rank_residual(const ProductBundle& bundle, int i, int j, const Matrix& block) {
    const int kl_i = bundle.left_dim(i), kr_i = bundle.right_dim(i), kl_j = bundle.left_dim(j), kr_j = bundle.right_dim(j);
    Matrix re(kr_i * kr_j, kl_i * kl_j);
    for (int r = 0; r < kr_i; ++r) {
        for (int s = 0; s < kr_j; ++s) {
            for (int l = 0; l < kl_i; ++l) {
                for (int m = 0; m < kl_j; ++m) re(r * kr_j + s, l * kl_j + m) = block(r * kl_i + l, s * kl_j + m);
            }
        }
    }
    const RealVector sv = singular_values(re);
    if (sv.size() < 2 || sv(0) == 0.0) return 0.0;
    return sv(1) / sv(0);
}

ConstraintSolution solve_reality_constraint(const ProductBundle& bundle, const BlockPattern& pattern, const SolveOptions& options) {
    if (options.seeds < 1) throw ValidationError("solve_reality_constraint: need at least one seed");
    const SectionParametrization param(bundle, pattern);
    ConstraintSolution sol;
    sol.pattern = pattern;
    sol.orbits = param.orbits();
    for (const auto& o : param.orbits()) {
        for (const auto& m : o.members) {
            if (m.word != kIdentityWord) sol.equations.push_back(param.describe_equation(o, m));
        }
        for (int w : o.stabilizers) {
            sol.equations.push_back(param.describe_equation(o, {o.representative, w}) + "  [self-matching]");
        }
    }
    sol.naive_param_count = naive_parameter_count(param);

    const Matrix* v = options.basis_change ? &*options.basis_change : nullptr;
    for (int s = 0; s < options.seeds; ++s) {
        Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(s));
        const RealVector theta = param.project(rng.real_normal(param.parameter_count()));
        RealMatrix jac = param.jacobian(theta, v);
        if (param.constraint_count() > 0) jac = jac * null_space(param.constraint_jacobian(theta), 1e-9);
        sol.seed_ranks.push_back(jac.cols() == 0 ? 0 : numerical_rank(jac, options.rank_cutoff));
    }
    if (std::adjacent_find(sol.seed_ranks.begin(), sol.seed_ranks.end(), std::not_equal_to<>()) != sol.seed_ranks.end()) {
        std::ostringstream os;
        os << "Jacobian rank differs across seeds:";
        for (int r : sol.seed_ranks) os << ' ' << r;
        throw RankInstabilityError(os.str());
    }
    sol.manifold_real_dim = sol.seed_ranks.front();
    if (sol.manifold_real_dim % 2 == 0) sol.manifold_dim = sol.manifold_real_dim / 2;

    const RealStructure j = bundle.real_structure();
    const BlockPartition part = bundle.partition();
    for (int w = 0; w < options.witnesses; ++w) {
        Rng rng = Rng::stream(options.seed, 1000 + static_cast<std::uint64_t>(w));
        ConstraintWitness wit;
        wit.theta = param.project(rng.real_normal(param.parameter_count()));
        wit.dirac = param.dirac(wit.theta);
        const double scale = std::max(1e-300, wit.dirac.norm());
        wit.constraint_residual = param.constraint_residual(wit.theta).norm() / scale;
        wit.adjoint_residual = (wit.dirac - wit.dirac.adjoint()).norm() / scale;
        wit.reality_residual = (wit.dirac - j.conjugate(wit.dirac)).norm() / scale;
        for (const Arrow b : pattern.blocks()) {
            const Matrix blk = part.block(wit.dirac, b.range, b.source);
            wit.membership_residual = std::max(wit.membership_residual, bundle.product_fiber(b.range, b.source).residual(blk));
            wit.tensor_residual = std::max(wit.tensor_residual, tensor_rank_residual(bundle, b.range, b.source, blk));
        }
        if (wit.membership_residual > 1e-8) {
            throw InconsistentPatternError("a symmetry image of the representative leaves its fiber; check the bimodule conventions");
        }
        wit.section_accepted = is_dirac_section(wit.dirac, part, &j).accepted;
        sol.witnesses.push_back(wit);
    }
    return sol;
}

}  // namespace fellgeom
