#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/random.hpp"
#include "fellgeom/triple/distance.hpp"
#include "fellgeom/triple/spectral.hpp"
#include "fellgeom/triple/triple.hpp"

using namespace fellgeom;

namespace {

Matrix offdiag(Complex m) {
    Matrix d = Matrix::Zero(2, 2);
    d(1, 0) = m;
    d(0, 1) = std::conj(m);
    return d;
}

// C + C acting diagonally on C^2.
Representation two_point_rep() {
    return Representation(BlockAlgebra({1, 1}), HilbertSpace({"a", "b"}),
                          {Placement{0, false, {{0}}}, Placement{1, false, {{1}}}}, true);
}

// M2 on C^2 (x) C^2 as a (x) 1 with J = swap of tensor factors composed with conjugation.
TripleData matrix_triple(const Matrix& d) {
    TripleData t;
    t.rep = Representation(BlockAlgebra({2}), HilbertSpace::numbered(4), {Placement{0, false, {{0, 2}, {1, 3}}}});
    Matrix swap = Matrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) swap(2 * b + a, 2 * a + b) = 1.0;
    t.j = RealStructure(swap, 1, 1);
    t.dirac = d;
    return t;
}

}  // namespace

TEST_SUITE("triple") {

TEST_CASE("signature grading tables") {
    CHECK(signature_grading(Signature::Euclidean) == std::array<int, 4>{1, -1, -1, 1});
    CHECK(signature_grading(Signature::Lorentzian) == std::array<int, 4>{1, -1, 1, -1});
}

TEST_CASE("axioms of a small real triple") {
    const TripleReport zero = check_axioms(matrix_triple(Matrix::Zero(4, 4)), 200, 3);
    CHECK(zero.all_passed());
    CHECK(zero.find("first_order").applicable);
    CHECK_FALSE(zero.find("chirality").applicable);

    // D = 1 (x) h commutes with a (x) 1 and is J-real when h is real symmetric.
    Matrix h(2, 2);
    h << 1.0, 2.0, 2.0, -0.5;
    const Matrix d = kron(Matrix::Identity(2, 2), h);
    TripleData t = matrix_triple(d);
    const Matrix jd = t.j->conjugate(d);
    CHECK(approx_equal(jd, kron(h, Matrix::Identity(2, 2))));
    // Symmetrize so D = J D J^{-1}; both terms are first order.
    t.dirac = d + jd;
    CHECK(check_axioms(t, 200, 3).all_passed());

    // A D mixing both factors violates the first-order condition.
    Rng rng(5);
    t.dirac = rng.hermitian(4);
    t.dirac = t.dirac + t.j->conjugate(t.dirac);
    const TripleReport bad = check_axioms(t, 200, 3);
    CHECK_FALSE(bad.find("first_order").passed);
    CHECK_FALSE(bad.find("first_order").witness.empty());
    CHECK(bad.find("dj_sign").passed);
}

TEST_CASE("sign and chirality checks fire") {
    TripleData t;
    t.rep = two_point_rep();
    t.dirac = offdiag(Complex(2.0, 0.0));
    t.j = RealStructure::conjugation(2, -1);
    t.chi = Grading({1, -1});
    const TripleReport r = check_axioms(t, 50, 1);
    CHECK_FALSE(r.find("dj_sign").passed);
    CHECK(r.find("chirality").passed);

    t.j = RealStructure::conjugation(2, 1);
    t.chi = Grading({1, 1});
    CHECK_FALSE(check_axioms(t, 50, 1).find("chirality").passed);
}

TEST_CASE("fluctuations") {
    Rng rng(7);
    const Matrix d = rng.hermitian(3), u = rng.unitary(3);
    CHECK(approx_equal(fluctuate(d, {Matrix::Identity(3, 3)}, {1.0}), d));
    CHECK(approx_equal(fluctuate(d, {u, u}, {0.5, 0.5}), u * d * u.adjoint(), 1e-12));
    Matrix sw = Matrix::Zero(2, 2);
    sw(0, 1) = sw(1, 0) = 1.0;
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = -1.0;
    CHECK(op_norm(fluctuate(diag, {Matrix::Identity(2, 2), sw}, {0.5, 0.5})) < 1e-15);
    CHECK(is_hermitian(fluctuate(d, {u, rng.unitary(3)}, {0.3, -1.2}), 1e-12));
    CHECK_THROWS_AS(fluctuate(d, {2.0 * u}, {1.0}), ValidationError);
    CHECK_THROWS_AS(fluctuate(d, {u}, {1.0, 2.0}), ValidationError);
}

TEST_CASE("inner fluctuations keep the first-order condition") {
    Matrix h(2, 2);
    h << 0.3, Complex(0.0, 1.0), Complex(0.0, -1.0), 1.0;
    TripleData t = matrix_triple(kron(Matrix::Identity(2, 2), h));
    t.dirac = t.dirac + t.j->conjugate(t.dirac);
    Rng rng(8);
    for (int k = 0; k < 10; ++k) {
        const Matrix u = t.rep.embed(AlgebraElement::random_unitary(t.rep.algebra(), rng));
        TripleData f = t;
        f.dirac = fluctuate(t.dirac, {u, Matrix::Identity(4, 4)}, {0.4, 0.6});
        CHECK(check_axioms(f, 50, static_cast<std::uint64_t>(k)).find("first_order").passed);
    }
}

TEST_CASE("spectral action") {
    const Complex m(1.5, -0.5);
    const SpectralFunction x2 = SpectralFunction::named("x2");
    CHECK(spectral_action(offdiag(m), x2) == doctest::Approx(2.0 * std::norm(m)));
    const SpectralFunction c = SpectralFunction::gaussian_cutoff(2.0);
    CHECK(spectral_action(Matrix::Zero(5, 5), c) == doctest::Approx(5.0 * c(0.0)));
    Rng rng(9);
    const Matrix d = rng.hermitian(4);
    CHECK(spectral_action(d, SpectralFunction::named("x4")) == doctest::Approx((d * d * d * d).trace().real()).epsilon(1e-12));
    CHECK(spectral_action(d, SpectralFunction::polynomial({1.0, 0.0, 1.0})) ==
          doctest::Approx(4.0 + (d * d).trace().real()).epsilon(1e-12));
    CHECK(SpectralFunction::named("poly:0,0,1")(3.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(SpectralFunction::named("exp"), ValidationError);
    CHECK_THROWS_AS(spectral_action(rng.ginibre(3, 3), x2), ValidationError);
}

TEST_CASE("spectral action is unitarily invariant") {
    Rng rng(10);
    const Matrix d = rng.hermitian(6);
    for (const char* name : {"x2", "x4", "cutoff"}) {
        const SpectralFunction f = SpectralFunction::named(name);
        const double s = spectral_action(d, f);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Matrix u = rng.unitary(6);
            worst = std::max(worst, std::abs(spectral_action(u * d * u.adjoint(), f) - s) / std::max(1.0, std::abs(s)));
        }
        CHECK_MESSAGE(worst < 1e-10, name);
    }
}

TEST_CASE("fermion bilinear") {
    const Complex m(0.7, 0.4);
    CHECK(fermion_bilinear(Vector::Zero(2), offdiag(m)) == Complex(0.0));
    Rng rng(11);
    const Vector psi = rng.unit_vector(3);
    CHECK(std::abs(fermion_bilinear(psi, Matrix::Identity(3, 3)) - Complex(1.0)) < 1e-14);
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(std::abs(fermion_bilinear(v, offdiag(m)) - Complex(m.real())) < 1e-14);
}

TEST_CASE("states and expectations") {
    Rng rng(12);
    const Matrix d = rng.hermitian(3);
    const StateFunctional mixed = StateFunctional::maximally_mixed(3);
    CHECK(expectation(mixed, d * d) == doctest::Approx((d * d).trace().real() / 3.0));
    CHECK_FALSE(mixed.is_pure());
    CHECK(mixed.is_faithful());

    Eigen::SelfAdjointEigenSolver<Matrix> es(d);
    const StateFunctional eig = StateFunctional::vector_state(es.eigenvectors().col(1));
    CHECK(eig.is_pure());
    CHECK(expectation(eig, d * d) == doctest::Approx(es.eigenvalues()(1) * es.eigenvalues()(1)));

    const Matrix rho = rng.density(3);
    const StateFunctional w = StateFunctional::from_density(rho);
    Complex brute = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) brute += rho(i, j) * d(j, i);
    CHECK(expectation(w, d) == doctest::Approx(brute.real()).epsilon(1e-12));
    CHECK(std::abs(w(d).imag()) < 1e-12);

    // Linear in both arguments.
    const Matrix x = rng.hermitian(3), y = rng.hermitian(3);
    CHECK(expectation(w, 2.0 * x - y) == doctest::Approx(2.0 * expectation(w, x) - expectation(w, y)).epsilon(1e-12));
    const StateFunctional half = StateFunctional::from_density(0.5 * rho + 0.5 * Matrix::Identity(3, 3) / 3.0);
    CHECK(expectation(half, x) == doctest::Approx(0.5 * expectation(w, x) + 0.5 * expectation(mixed, x)).epsilon(1e-12));

    CHECK_THROWS(StateFunctional::from_density(2.0 * rho));
    CHECK_THROWS(StateFunctional::from_density(-rho));
    CHECK_THROWS(expectation(w, rng.ginibre(3, 3)));
}

TEST_CASE("distance on the two-point space") {
    const Representation rep = two_point_rep();
    const StateFunctional a = StateFunctional::basis_state(2, 0), b = StateFunctional::basis_state(2, 1);
    Rng rng(13);
    for (int k = 0; k < 5; ++k) {
        const Complex m = rng.complex_normal() * 2.0;
        const DistanceResult r = connes_distance(rep, offdiag(m), a, b);
        CHECK(r.converged);
        CHECK_FALSE(r.unbounded);
        CHECK(r.distance == doctest::Approx(1.0 / std::abs(m)).epsilon(1e-6));
    }
    CHECK(connes_distance(rep, offdiag(1.0), a, a).distance == doctest::Approx(0.0));
    CHECK(connes_distance(rep, Matrix::Zero(2, 2), a, b).unbounded);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    const Representation rep(BlockAlgebra({1, 1, 1}), HilbertSpace::numbered(3),
                             {Placement{0, false, {{0}}}, Placement{1, false, {{1}}}, Placement{2, false, {{2}}}});
    Rng rng(14);
    const Matrix d = rng.hermitian(3);
    for (int k = 0; k < 3; ++k) {
        const StateFunctional w1 = StateFunctional::from_density(rng.density(3));
        const StateFunctional w2 = StateFunctional::from_density(rng.density(3));
        const StateFunctional w3 = StateFunctional::from_density(rng.density(3));
        const double d12 = connes_distance(rep, d, w1, w2).distance, d21 = connes_distance(rep, d, w2, w1).distance;
        const double d13 = connes_distance(rep, d, w1, w3).distance, d23 = connes_distance(rep, d, w2, w3).distance;
        CHECK(d12 >= 0.0);
        CHECK(std::abs(d12 - d21) <= 1e-6 * std::max(1.0, d12));
        CHECK(d13 <= d12 + d23 + 1e-6);
    }
}

}  // TEST_SUITE
