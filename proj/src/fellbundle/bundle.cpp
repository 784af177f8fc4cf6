#include "fellgeom/fellbundle/bundle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/parallel.hpp"

namespace fellgeom {

BundleOperations BundleOperations::standard() {
    return {[](const Matrix& a, const Matrix& b) -> Matrix { return a * b; },
            [](const Matrix& a) -> Matrix { return a.adjoint(); }, "standard"};
}

BundleOperations BundleOperations::transpose_involution() {
    return {[](const Matrix& a, const Matrix& b) -> Matrix { return a * b; },
            [](const Matrix& a) -> Matrix { return a.transpose(); }, "transpose-involution"};
}

BundleOperations BundleOperations::scaled_involution(double factor) {
    return {[](const Matrix& a, const Matrix& b) -> Matrix { return a * b; },
            [factor](const Matrix& a) -> Matrix { return factor * a.adjoint(); }, "scaled-involution"};
}

BundleOperations BundleOperations::scaled_product(double factor) {
    return {[factor](const Matrix& a, const Matrix& b) -> Matrix { return factor * (a * b); },
            [](const Matrix& a) -> Matrix { return a.adjoint(); }, "scaled-product"};
}

FellBundleGeometry::FellBundleGeometry(PairGroupoid groupoid, std::vector<int> fiber_dims, BundleOperations ops,
                                       bool is_product_bundle)
    : groupoid_(std::move(groupoid)), fiber_dims_(std::move(fiber_dims)), ops_(std::move(ops)), product_(is_product_bundle) {
    if (static_cast<int>(fiber_dims_.size()) != groupoid_.object_count()) {
        throw ValidationError("FellBundleGeometry: need one fiber dimension per object");
    }
    for (int n : fiber_dims_) {
        if (n <= 0) throw ValidationError("FellBundleGeometry: fiber dimensions must be positive");
    }
}

int FellBundleGeometry::total_dimension() const {
    int n = 0;
    for (int d : fiber_dims_) n += d;
    return n;
}

std::vector<int> FellBundleGeometry::offsets() const {
    std::vector<int> out;
    int off = 0;
    for (int d : fiber_dims_) {
        out.push_back(off);
        off += d;
    }
    return out;
}

bool FellBundleGeometry::in_fiber(const FiberElement& e) const {
    if (e.arrow.range < 0 || e.arrow.range >= object_count() || e.arrow.source < 0 || e.arrow.source >= object_count()) {
        return false;
    }
    return e.value.rows() == fiber_dim(e.arrow.range) && e.value.cols() == fiber_dim(e.arrow.source);
}

FiberElement FellBundleGeometry::multiply(const FiberElement& first, const FiberElement& second) const {
    const Arrow a = groupoid_.compose(first.arrow, second.arrow);
    return {a, ops_.product(first.value, second.value)};
}

FiberElement FellBundleGeometry::involution(const FiberElement& e) const {
    return {PairGroupoid::inverse(e.arrow), ops_.involution(e.value)};
}

FiberElement FellBundleGeometry::random_element(Arrow a, Rng& rng) const {
    return {a, rng.ginibre(fiber_dim(a.range), fiber_dim(a.source))};
}

FiberElement FellBundleGeometry::zero_element(Arrow a) const {
    return {a, Matrix::Zero(fiber_dim(a.range), fiber_dim(a.source))};
}

FellBundleGeometry FellBundleGeometry::with_operations(BundleOperations ops) const {
    return {groupoid_, fiber_dims_, std::move(ops), product_};
}

FellBundleGeometry build_fell_bundle(const PairGroupoid& groupoid, const std::map<std::string, int>& fiber_dims) {
    std::vector<int> dims;
    for (const auto& id : groupoid.objects()) {
        const auto it = fiber_dims.find(id);
        if (it == fiber_dims.end()) throw ValidationError("build_fell_bundle: no fiber dimension for '" + id + "'");
        dims.push_back(it->second);
    }
    for (const auto& [id, n] : fiber_dims) groupoid.index_of(id);
    return {groupoid, std::move(dims)};
}

bool FellAxiomReport::all_passed() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

std::vector<int> FellAxiomReport::failed() const {
    std::vector<int> out;
    for (const auto& a : axioms) {
        if (!a.passed) out.push_back(a.number);
    }
    return out;
}

namespace {

const std::array<const char*, 10> kAxiomNames = {
    "product covers composition",   "bilinear product",       "associative product",
    "submultiplicative norm",       "involution covers inverse", "conjugate-linear involution",
    "involutive involution",        "anti-multiplicative involution", "C*-identity",
    "positivity of e*e"};

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : num; }

// Relative difference that tolerates shape mismatch (reported as 1).
double rel_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return 1.0;
    return relative_difference(a, b);
}

struct Tally {
    std::array<double, 10> worst{};
    std::array<std::string, 10> witness;
    std::array<int, 10> first_bad{};

    Tally() { first_bad.fill(-1); }

    void note(int axiom, double residual, double tol, int sample, const std::string& where) {
        const std::size_t k = static_cast<std::size_t>(axiom - 1);
        if (residual > worst[k]) worst[k] = residual;
        if (residual > tol && first_bad[k] < 0) {
            first_bad[k] = sample;
            std::ostringstream os;
            os << "sample " << sample << " at " << where << ": residual " << residual;
            witness[k] = os.str();
        }
    }
};

void check_sample(const FellBundleGeometry& geom, Rng& rng, int sample, double tol, Tally& t) {
    const PairGroupoid& g = geom.groupoid();
    const int n = geom.object_count();
    const int i = rng.integer(0, n - 1), j = rng.integer(0, n - 1), k = rng.integer(0, n - 1), l = rng.integer(0, n - 1);
    const Arrow a1{i, j}, a2{j, k}, a3{k, l};
    const FiberElement e1 = geom.random_element(a1, rng);
    const FiberElement e1b = geom.random_element(a1, rng);
    const FiberElement e2 = geom.random_element(a2, rng);
    const FiberElement e2b = geom.random_element(a2, rng);
    const FiberElement e3 = geom.random_element(a3, rng);
    const Complex alpha = rng.complex_normal(), beta = rng.complex_normal();
    const std::string where = g.describe(a1) + g.describe(a2) + g.describe(a3);

    // 1: p(e1 e2) = p(e1) p(e2) and the product lands in that fiber.
    const FiberElement p12 = geom.multiply(e1, e2);
    const bool covers = p12.arrow == g.compose(a1, a2) && geom.in_fiber(p12);
    t.note(1, covers ? 0.0 : 1.0, tol, sample, where);

    // 2: bilinearity in each slot.
    const FiberElement lin_l{a1, alpha * e1.value + beta * e1b.value};
    const FiberElement lin_r{a2, alpha * e2.value + beta * e2b.value};
    const Matrix lhs_l = geom.multiply(lin_l, e2).value;
    const Matrix rhs_l = alpha * p12.value + beta * geom.multiply(e1b, e2).value;
    const Matrix lhs_r = geom.multiply(e1, lin_r).value;
    const Matrix rhs_r = alpha * p12.value + beta * geom.multiply(e1, e2b).value;
    t.note(2, std::max(rel_diff(lhs_l, rhs_l), rel_diff(lhs_r, rhs_r)), tol, sample, where);

    // 3: associativity.
    const Matrix left_assoc = geom.multiply(p12, e3).value;
    const Matrix right_assoc = geom.multiply(e1, geom.multiply(e2, e3)).value;
    t.note(3, rel_diff(left_assoc, right_assoc), tol, sample, where);

    // 4: ||e1 e2|| <= ||e1|| ||e2||.
    const double bound = op_norm(e1.value) * op_norm(e2.value);
    t.note(4, safe_ratio(std::max(0.0, op_norm(p12.value) - bound), bound), tol, sample, where);

    // 5: p(e*) = p(e)^{-1}.
    const FiberElement s1 = geom.involution(e1);
    const bool inv_ok = s1.arrow == PairGroupoid::inverse(a1) && geom.in_fiber(s1);
    t.note(5, inv_ok ? 0.0 : 1.0, tol, sample, where);

    // 6: (alpha e + beta f)* = conj(alpha) e* + conj(beta) f*.
    const Matrix lhs6 = geom.involution(lin_l).value;
    const Matrix rhs6 = std::conj(alpha) * s1.value + std::conj(beta) * geom.involution(e1b).value;
    t.note(6, rel_diff(lhs6, rhs6), tol, sample, where);

    // 7: e** = e.
    t.note(7, rel_diff(geom.involution(s1).value, e1.value), tol, sample, where);

    // 8: (e1 e2)* = e2* e1*.
    const Matrix lhs8 = geom.involution(p12).value;
    const Matrix rhs8 = geom.multiply(geom.involution(e2), s1).value;
    t.note(8, rel_diff(lhs8, rhs8), tol, sample, where);

    // 9: ||e* e|| = ||e||^2.
    const Matrix ses = geom.multiply(s1, e1).value;
    const double nsq = std::pow(op_norm(e1.value), 2);
    t.note(9, safe_ratio(std::abs(op_norm(ses) - nsq), nsq), tol, sample, where);

    // 10: e* e is a positive element of the unit fiber.
    double pos = 0.0;
    if (ses.rows() != ses.cols()) {
        pos = 1.0;
    } else {
        const Matrix herm = (ses + ses.adjoint()) / 2.0;
        pos = safe_ratio((ses - herm).norm(), ses.norm());
        const double lmin = hermitian_eigenvalues(herm).minCoeff();
        pos = std::max(pos, safe_ratio(std::max(0.0, -lmin), nsq));
    }
    t.note(10, pos, tol, sample, where);
}

}  // namespace

FellAxiomReport verify_fell_axioms(const FellBundleGeometry& geom, int samples, std::uint64_t seed, double tol) {
    if (samples < 1) throw ValidationError("verify_fell_axioms: samples must be positive");
    constexpr int kChunk = 128;
    const int chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Tally> tallies(static_cast<std::size_t>(chunks));
    parallel_chunks(chunks, [&](int c) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(c));
        const int begin = c * kChunk;
        const int end = std::min(samples, begin + kChunk);
        for (int s = begin; s < end; ++s) check_sample(geom, rng, s, tol, tallies[static_cast<std::size_t>(c)]);
    });

    FellAxiomReport report;
    report.samples = samples;
    report.seed = seed;
    for (int a = 1; a <= 10; ++a) {
        AxiomResult r;
        r.number = a;
        r.name = kAxiomNames[static_cast<std::size_t>(a - 1)];
        for (const auto& t : tallies) {
            const std::size_t k = static_cast<std::size_t>(a - 1);
            r.worst = std::max(r.worst, t.worst[k]);
            if (t.first_bad[k] >= 0 && r.passed) {
                r.passed = false;
                r.witness = t.witness[k];
            }
        }
        report.axioms.push_back(r);
    }
    return report;
}

Matrix LinkingAlgebra::assemble(const std::vector<FiberElement>& elements) const {
    const int n = algebra.summand_size(0);
    Matrix out = Matrix::Zero(n, n);
    for (const auto& e : elements) {
        const int r = block_sizes.at(static_cast<std::size_t>(e.arrow.range));
        const int c = block_sizes.at(static_cast<std::size_t>(e.arrow.source));
        if (e.value.rows() != r || e.value.cols() != c) throw ValidationError("LinkingAlgebra: element has wrong shape");
        out.block(offsets[static_cast<std::size_t>(e.arrow.range)], offsets[static_cast<std::size_t>(e.arrow.source)], r, c) +=
            e.value;
    }
    return out;
}

Matrix LinkingAlgebra::block(const Matrix& m, Arrow a) const {
    return m.block(offsets.at(static_cast<std::size_t>(a.range)), offsets.at(static_cast<std::size_t>(a.source)),
                   block_sizes.at(static_cast<std::size_t>(a.range)), block_sizes.at(static_cast<std::size_t>(a.source)));
}

LinkingAlgebra linking_algebra(const FellBundleGeometry& geom) {
    return {BlockAlgebra({geom.total_dimension()}, {"linking"}), geom.fiber_dims(), geom.offsets()};
}

SaturationReport saturation_check(const FellBundleGeometry& geom, std::uint64_t seed) {
    Rng rng(seed);
    SaturationReport report;
    const PairGroupoid& g = geom.groupoid();
    for (const Arrow first : g.arrows()) {
        for (const Arrow second : g.arrows()) {
            if (!PairGroupoid::composable(first, second)) continue;
            const Arrow target = g.compose(first, second);
            const int expected = geom.fiber_dim(target.range) * geom.fiber_dim(target.source);
            std::vector<Matrix> products;
            for (int k = 0; k < expected + 4; ++k) {
                products.push_back(geom.multiply(geom.random_element(first, rng), geom.random_element(second, rng)).value);
            }
            const int rank = complex_span_dimension(products);
            report.entries.push_back({first, second, rank, expected});
            if (rank != expected) report.saturated = false;
        }
    }
    return report;
}

}  // namespace fellgeom
