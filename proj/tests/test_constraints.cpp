#include <algorithm>
#include <set>

#include "doctest.h"
#include "fellgeom/constraints/exclusions.hpp"
#include "fellgeom/constraints/mass.hpp"
#include "fellgeom/constraints/patterns.hpp"
#include "fellgeom/constraints/reality_solver.hpp"
#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/random.hpp"

using namespace fellgeom;

namespace {

ProductBundle sector_bundle(FactorSpec left, FactorSpec right, FactorSpec left_bar, FactorSpec right_bar,
                            std::vector<int> fibers) {
    const FellBundleGeometry base(PairGroupoid({"L", "R", "Lbar", "Rbar"}), std::move(fibers), BundleOperations::standard(),
                                  true);
    return ProductBundle(base, {2, 3, 0, 1}, {std::move(left), std::move(right), std::move(left_bar), std::move(right_bar)});
}

ProductBundle quark_bundle() {
    return sector_bundle({FactorKind::Full, 2, {}}, {FactorKind::Scalar, 2, {1, -1}}, {FactorKind::Full, 3, {}},
                         {FactorKind::Full, 3, {}}, {2, 1, 3, 3});
}

ProductBundle lepton_bundle() {
    return sector_bundle({FactorKind::Full, 2, {}}, {FactorKind::Scalar, 1, {-1}}, {FactorKind::Scalar, 1, {1}},
                         {FactorKind::Scalar, 1, {1}}, {2, 1, 1, 1});
}

std::vector<ObjectRole> sector_roles(const std::string& sector) {
    return {{sector, Chirality::Left, true},
            {sector, Chirality::Right, true},
            {sector, Chirality::Left, false},
            {sector, Chirality::Right, false}};
}

const std::vector<int> kEuclidean = {1, -1, -1, 1};

Matrix block_grading(const BlockPartition& p, const std::vector<int>& signs) {
    Matrix chi = Matrix::Zero(p.total(), p.total());
    for (int i = 0; i < p.block_count(); ++i)
        p.block(chi, i, i) = static_cast<double>(signs[static_cast<std::size_t>(i)]) * Matrix::Identity(p.size(i), p.size(i));
    return chi;
}

// Matrix-level oracle: sigma is admissible when a generic self-adjoint D on its
// blocks, completed by J, keeps that support and has a definite chi-parity.
std::set<std::vector<int>> brute_force_patterns(const BlockPartition& part, const RealStructure& j,
                                                const std::optional<std::vector<int>>& chi, Rng& rng) {
    std::set<std::vector<int>> out;
    std::vector<int> sigma = {0, 1, 2, 3};
    do {
        bool involutive = true;
        for (int i = 0; i < 4; ++i) involutive = involutive && sigma[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] == i;
        if (!involutive) continue;
        Matrix x = Matrix::Zero(part.total(), part.total());
        for (int i = 0; i < 4; ++i) {
            const int t = sigma[static_cast<std::size_t>(i)];
            part.block(x, t, i) = rng.ginibre(part.size(t), part.size(i));
        }
        Matrix d = x + x.adjoint();
        d = d + j.conjugate(d);
        const auto support = part.support(d, 1e-12);
        bool same = true;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                same = same && support[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
                                   (sigma[static_cast<std::size_t>(c)] == r);
        if (!same) continue;
        if (chi) {
            const Matrix g = block_grading(part, *chi);
            const double anti = (d * g + g * d).norm(), comm = (d * g - g * d).norm();
            if (anti > 1e-10 * d.norm() && comm > 1e-10 * d.norm()) continue;
        }
        out.insert(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

std::set<std::vector<int>> as_set(const std::vector<BlockPattern>& ps) {
    std::set<std::vector<int>> s;
    for (const auto& p : ps) s.insert(p.pairing);
    return s;
}

}  // namespace

TEST_SUITE("constraints") {

TEST_CASE("the quark sector admits exactly four patterns") {
    const ProductBundle b = quark_bundle();
    const RealStructure j = b.real_structure();
    const BlockPartition part = b.partition();
    CHECK(object_involution(j, part) == std::vector<int>{2, 3, 0, 1});

    const std::vector<BlockPattern> ps = enumerate_admissible_patterns(part, j, kEuclidean);
    REQUIRE(ps.size() == 4);
    CHECK(ps[0].cycles() == "id");
    CHECK(ps[1].cycles() == "(0 1)(2 3)");
    CHECK(ps[2].cycles() == "(0 2)(1 3)");
    CHECK(ps[3].cycles() == "(0 3)(1 2)");
    const auto roles = sector_roles("quark");
    CHECK(ps[1].name(roles) == "M");
    CHECK(ps[3].name(roles) == "G");

    Rng rng(3);
    CHECK(as_set(ps) == brute_force_patterns(part, j, kEuclidean, rng));
    // Without a grading the two J-fixed transpositions also survive.
    const auto ungraded = enumerate_admissible_patterns(part, j);
    CHECK(ungraded.size() == 6);
    CHECK(as_set(ungraded) == brute_force_patterns(part, j, std::nullopt, rng));
}

TEST_CASE("the pattern list does not depend on the choice of J within its class") {
    const ProductBundle b = quark_bundle();
    const BlockPartition part = b.partition();
    const RealStructure j = b.real_structure();
    const auto reference = as_set(enumerate_admissible_patterns(part, j, kEuclidean));
    Rng rng(5);
    for (int k = 0; k < 3; ++k) {
        Matrix w = Matrix::Zero(24, 24);
        for (int i = 0; i < 4; ++i) part.block(w, i, i) = rng.unitary(6);
        const RealStructure jw(w * j.unitary() * w.transpose(), 1, 1);
        CHECK(as_set(enumerate_admissible_patterns(part, jw, kEuclidean)) == reference);
    }
}

TEST_CASE("small pattern spaces") {
    CHECK(enumerate_admissible_patterns(std::vector<int>{0, 1}).size() == 2);
    CHECK(enumerate_admissible_patterns(std::vector<int>{0}).size() == 1);
    CHECK_THROWS_AS(enumerate_admissible_patterns(std::vector<int>{1, 2, 0}), ValidationError);
}

TEST_CASE("patterns are symmetric permutation grids") {
    for (const auto& p : enumerate_admissible_patterns(std::vector<int>{2, 3, 0, 1})) {
        const auto g = p.grid();
        for (int r = 0; r < 4; ++r) {
            int row = 0, col = 0;
            for (int c = 0; c < 4; ++c) {
                row += g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ? 1 : 0;
                col += g[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] ? 1 : 0;
                CHECK(g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
                      g[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
            }
            CHECK(row == 1);
            CHECK(col == 1);
        }
    }
}

TEST_CASE("mass pattern selection") {
    const auto ps = enumerate_admissible_patterns(std::vector<int>{2, 3, 0, 1}, kEuclidean);
    const BlockPattern m = select_mass_pattern(ps, sector_roles("quark"), kEuclidean);
    CHECK(m.cycles() == "(0 1)(2 3)");
    CHECK(pattern_parity(m, kEuclidean) == -1);
    CHECK(pattern_parity(ps[0], kEuclidean) == 1);
    CHECK(pattern_parity(BlockPattern{{2, 1, 0, 3}}, kEuclidean) == 0);
    CHECK_THROWS_AS(select_mass_pattern({BlockPattern{{0}}}, {ObjectRole{"x", Chirality::None, true}}), ValidationError);
}

TEST_CASE("reality constraint in the quark sector") {
    const ProductBundle b = quark_bundle();
    const BlockPattern m{{1, 0, 3, 2}};
    const ConstraintSolution s = solve_reality_constraint(b, m);
    CHECK(s.naive_param_count == 11);
    CHECK(s.manifold_real_dim == 20);
    REQUIRE(s.manifold_dim.has_value());
    CHECK(*s.manifold_dim == 10);
    CHECK(*s.manifold_dim <= s.naive_param_count);
    CHECK(s.seed_ranks == std::vector<int>(5, 20));
    CHECK(s.equations.size() == 3);
    REQUIRE(s.witnesses.size() == 3);
    for (const ConstraintWitness& w : s.witnesses) {
        CHECK(w.section_accepted);
        CHECK(w.constraint_residual < 1e-10);
        CHECK(w.reality_residual < 1e-10);
        CHECK(w.adjoint_residual < 1e-10);
        CHECK(w.membership_residual < 1e-10);
        CHECK(w.tensor_residual < 1e-10);
    }
}

TEST_CASE("manifold dimension is basis independent") {
    const ProductBundle b = quark_bundle();
    Rng rng(7);
    SolveOptions o;
    o.basis_change = rng.unitary(24);
    const ConstraintSolution s = solve_reality_constraint(b, BlockPattern{{1, 0, 3, 2}}, o);
    CHECK(s.manifold_real_dim == 20);
}

TEST_CASE("reality constraint in the lepton sector") {
    const ConstraintSolution s = solve_reality_constraint(lepton_bundle(), BlockPattern{{1, 0, 3, 2}});
    CHECK(s.naive_param_count == 2);
    REQUIRE(s.manifold_dim.has_value());
    CHECK(*s.manifold_dim == 2);
    const Matrix& d = s.witnesses.at(0).dirac;
    const BlockPartition part = lepton_bundle().partition();
    CHECK(part.block(d, 0, 1).rows() == 2);
    CHECK(part.block(d, 0, 1).cols() == 1);
}

TEST_CASE("inconsistent patterns are rejected") {
    CHECK_THROWS(solve_reality_constraint(quark_bundle(), BlockPattern{{1, 0}}));
}

TEST_CASE("leptoquark layouts are not sections") {
    const LeptoquarkReport r = check_leptoquark_exclusion(quark_bundle(), sector_roles("quark"), "quark", 11);
    CHECK(r.exclusion_holds());
    CHECK(r.mass.section.accepted);
    for (const LayoutCheck* c : {&r.euclidean, &r.lorentzian}) {
        CHECK_FALSE(c->section.accepted);
        REQUIRE_FALSE(c->section.reasons.empty());
        CHECK(c->section.reasons[0].rfind(kMultipleBlocksReason, 0) == 0);
        CHECK(c->section.crowded_rows == std::vector<int>{0, 1, 2, 3});
        CHECK(c->adjoint_residual < 1e-12);
        CHECK(c->reality_residual < 1e-12);
    }
    CHECK(r.mass.chi_euclidean_residual < 1e-12);
}

TEST_CASE("mixing check on a single sector is vacuous") {
    const ProductBundle b = quark_bundle();
    const MixingReport r = check_sector_mixing(b, sector_roles("quark"), std::vector<std::string>(24, "quark"), kEuclidean);
    CHECK(r.vacuous);
    CHECK_FALSE(r.mixing_possible);
}

TEST_CASE("mass diagonalization") {
    SUBCASE("doublet") {
        Matrix m(2, 1);
        m << Complex(0.3, 0.4), Complex(-1.2, 0.0);
        const MassSpectrum s = diagonalize_mass(m);
        REQUIRE(s.masses.size() == 2);
        CHECK(s.masses[0] == doctest::Approx(std::sqrt(0.25 + 1.44)));
        CHECK(s.masses[1] == 0.0);
        CHECK(s.nonzero == 1);
        CHECK(s.zero == 1);
    }
    SUBCASE("zero") {
        const MassSpectrum s = diagonalize_mass(Matrix::Zero(3, 3));
        CHECK(s.nonzero == 0);
        CHECK(s.zero == 3);
    }
    SUBCASE("colour degeneracy") {
        Matrix md = Matrix::Zero(2, 2);
        md(0, 0) = 2.5;
        md(1, 1) = 0.7;
        Rng rng(13);
        const Matrix u = rng.unitary(6), v = rng.unitary(6);
        const Matrix m = u * kron(md, Matrix::Identity(3, 3)) * v.adjoint();
        const MassSpectrum s = diagonalize_mass(m);
        REQUIRE(s.multiplicities.size() == 2);
        CHECK(s.multiplicities[0].first == doctest::Approx(2.5));
        CHECK(s.multiplicities[0].second == 3);
        CHECK(s.multiplicities[1].first == doctest::Approx(0.7));
        CHECK(s.multiplicities[1].second == 3);
        RealVector sv(6);
        for (int k = 0; k < 6; ++k) sv(k) = s.masses[static_cast<std::size_t>(k)];
        const Matrix rebuilt = s.left_rotation * sv.cast<Complex>().asDiagonal() * s.right_rotation.adjoint();
        CHECK(approx_equal(rebuilt, m, 1e-12));
    }
}

}  // TEST_SUITE
