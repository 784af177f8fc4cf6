#include <cmath>

#include "doctest.h"
#include "fellgeom/lincore/algebra.hpp"
#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/random.hpp"
#include "fellgeom/lincore/real_structure.hpp"

using namespace fellgeom;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_SUITE("lincore") {

TEST_CASE("op_norm") {
    CHECK(op_norm(Matrix::Zero(3, 3)) == 0.0);
    CHECK(op_norm(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
    CHECK(op_norm(m2(2, 0, 0, -5)) == doctest::Approx(5.0));
    CHECK(op_norm(Matrix(0, 0)) == 0.0);
}

TEST_CASE("commutator") {
    Rng rng(3);
    const Matrix y = rng.ginibre(3, 3);
    CHECK(op_norm(commutator(Matrix::Identity(3, 3), y)) == 0.0);
    CHECK(op_norm(commutator(y, y)) == 0.0);
    // [diag(1,2), offdiag(1,1)] = offdiag(-1, 1)
    CHECK(approx_equal(commutator(m2(1, 0, 0, 2), m2(0, 1, 1, 0)), m2(0, -1, 1, 0)));
    CHECK_THROWS_AS(commutator(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), ValidationError);
}

TEST_CASE("kron matches the index formula") {
    Rng rng(5);
    const Matrix a = rng.ginibre(2, 3), b = rng.ginibre(3, 2);
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 2; ++c) CHECK(std::abs(k(i * 3 + r, j * 2 + c) - a(i, j) * b(r, c)) < 1e-14);
}

TEST_CASE("realify round trip") {
    Rng rng(7);
    const Matrix m = rng.ginibre(3, 2);
    CHECK(approx_equal(complexify(realify(m), 3, 2), m, 0.0));
}

TEST_CASE("spans and ranks") {
    RealMatrix m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
    CHECK(numerical_rank(m) == 2);
    CHECK(null_space(m).cols() == 1);
    CHECK((m * null_space(m)).norm() < 1e-12);
    const Matrix e = Matrix::Identity(2, 2);
    CHECK(complex_span_dimension({e, Complex(0, 2) * e, m2(0, 1, 0, 0)}) == 2);
}

TEST_CASE("hermitian functional calculus") {
    Rng rng(11);
    const Matrix h = rng.hermitian(4);
    CHECK(approx_equal(hermitian_function(h, [](double x) { return Complex(x * x); }), h * h, 1e-12));
    const RealVector ev = hermitian_eigenvalues(h);
    for (int k = 1; k < ev.size(); ++k) CHECK(ev(k - 1) <= ev(k));
}

TEST_CASE("random ensembles have their defining properties") {
    Rng rng(13);
    CHECK(is_unitary(rng.unitary(5)));
    CHECK(is_hermitian(rng.hermitian(5)));
    const Matrix rho = rng.density(4);
    CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-12);
    CHECK(hermitian_eigenvalues(rho).minCoeff() > 0.0);
    CHECK(rng.unit_vector(6).norm() == doctest::Approx(1.0));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("block algebra") {
    const BlockAlgebra a({2, 1, 3});
    CHECK(a.dimension() == 14);
    CHECK(real_basis(a).size() == 28);
    CHECK(hermitian_basis(a).size() == 14);
    CHECK_THROWS_AS(BlockAlgebra({2, 0}), ValidationError);
    CHECK_THROWS(AlgebraElement(a, {Matrix::Zero(2, 2)}));
}

TEST_CASE("C*-identity and adjoint of products on random elements") {
    const BlockAlgebra a({2, 1, 3});
    Rng rng(17);
    double worst_norm = 0.0, worst_adj = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const AlgebraElement x = AlgebraElement::random(a, rng), y = AlgebraElement::random(a, rng);
        const double n = x.norm();
        worst_norm = std::max(worst_norm, std::abs((x.adjoint() * x).norm() - n * n) / (n * n));
        const AlgebraElement lhs = (x * y).adjoint(), rhs = y.adjoint() * x.adjoint();
        for (int s = 0; s < a.summand_count(); ++s)
            worst_adj = std::max(worst_adj, relative_difference(lhs.block(s), rhs.block(s)));
    }
    CHECK(worst_norm < 1e-10);
    CHECK(worst_adj < 1e-12);
}

TEST_CASE("hilbert space labels are unique") {
    CHECK(HilbertSpace::numbered(3).dimension() == 3);
    CHECK(HilbertSpace({"u", "d"}).index_of("d") == 1);
    CHECK_THROWS(HilbertSpace({"u", "u"}));
}

TEST_CASE("representation is a *-homomorphism") {
    const BlockAlgebra a({2, 1});
    // M2 on basis 0..1 and conjugated on 2..3, C on 4.
    const Representation rep(a, HilbertSpace::numbered(5),
                             {Placement{0, false, {{0, 1}}}, Placement{0, true, {{2, 3}}}, Placement{1, false, {{4}}}},
                             true);
    Rng rng(19);
    const HomomorphismReport h = rep.check_homomorphism(200, rng, 1e-12);
    CHECK(h.passed);
    CHECK(rep.is_faithful());
    const AlgebraElement x = AlgebraElement::random(a, rng), y = AlgebraElement::random(a, rng);
    CHECK(approx_equal(rep.embed(x * y), rep.embed(x) * rep.embed(y), 1e-12));
    CHECK(approx_equal(rep.embed(x.adjoint()), rep.embed(x).adjoint(), 1e-12));

    const Representation partial(a, HilbertSpace::numbered(2), {Placement{0, false, {{0, 1}}}});
    CHECK_FALSE(partial.is_faithful());
}

TEST_CASE("real structure") {
    Rng rng(23);
    const RealStructure j(rng.unitary(3), 1, 1);
    const Vector x = rng.unit_vector(3), y = rng.unit_vector(3);
    CHECK(std::abs(j.apply(x).dot(j.apply(y)) - std::conj(x.dot(y))) < 1e-12);
    CHECK((j.apply_inverse(j.apply(x)) - x).norm() < 1e-12);
    CHECK(approx_equal(RealStructure::conjugation(3).square(), Matrix::Identity(3, 3)));

    // Swap with a sign: U conj(U) = -1.
    Matrix u = Matrix::Zero(2, 2);
    u(0, 1) = 1.0;
    u(1, 0) = -1.0;
    CHECK(approx_equal(RealStructure(u, -1, 1).square(), -Matrix::Identity(2, 2)));
    CHECK_THROWS(RealStructure(u, 2, 1));
    CHECK_THROWS(RealStructure(2.0 * Matrix::Identity(2, 2), 1, 1));
}

TEST_CASE("grading") {
    const Grading chi({1, -1, -1, 1});
    const Matrix g = chi.matrix();
    CHECK(approx_equal(g * g, Matrix::Identity(4, 4)));
    CHECK(is_hermitian(g));
    CHECK_THROWS(Grading({1, 2}));
}

TEST_CASE("opposite action") {
    const BlockAlgebra a({2, 2});
    const Representation rep(a, HilbertSpace::numbered(4), {Placement{0, false, {{0, 1}}}, Placement{1, false, {{2, 3}}}});
    Rng rng(29);

    SUBCASE("unit is central") {
        const RealStructure j = RealStructure::conjugation(4);
        CHECK(approx_equal(opposite_action(AlgebraElement::identity(a), j, rep), Matrix::Identity(4, 4)));
    }
    SUBCASE("plain conjugation fixes real diagonal elements") {
        const RealStructure j = RealStructure::conjugation(4);
        const AlgebraElement b(a, {m2(1, 0, 0, 2), m2(-3, 0, 0, 0.5)});
        CHECK(approx_equal(opposite_action(b, j, rep), rep.embed(b)));
    }
    SUBCASE("sector swap exchanges and conjugates the blocks") {
        Matrix u = Matrix::Zero(4, 4);
        u.block(0, 2, 2, 2) = Matrix::Identity(2, 2);
        u.block(2, 0, 2, 2) = Matrix::Identity(2, 2);
        const RealStructure j(u, 1, 1);
        const Matrix x = rng.ginibre(2, 2), y = rng.ginibre(2, 2);
        const AlgebraElement b(a, {x, y});
        // J b* J^{-1} = U conj(b*) U* = U b^T U*
        Matrix expected = Matrix::Zero(4, 4);
        expected.block(0, 0, 2, 2) = y.transpose();
        expected.block(2, 2, 2, 2) = x.transpose();
        CHECK(approx_equal(opposite_action(b, j, rep), expected, 1e-12));
    }
    SUBCASE("anti-multiplicative") {
        const RealStructure j(rng.unitary(4), 1, 1);
        for (int k = 0; k < 50; ++k) {
            const AlgebraElement b1 = AlgebraElement::random(a, rng), b2 = AlgebraElement::random(a, rng);
            CHECK(approx_equal(opposite_action(b1 * b2, j, rep),
                               opposite_action(b2, j, rep) * opposite_action(b1, j, rep), 1e-12));
        }
    }
}

}  // TEST_SUITE
