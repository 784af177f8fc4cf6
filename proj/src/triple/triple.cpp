#include "fellgeom/triple/triple.hpp"

#include <algorithm>
#include <sstream>

#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/parallel.hpp"

namespace fellgeom {

std::array<int, 4> signature_grading(Signature s) {
    if (s == Signature::Euclidean) return {1, -1, -1, 1};
    return {1, -1, 1, -1};
}

const char* signature_name(Signature s) { return s == Signature::Euclidean ? "euclidean" : "lorentzian"; }

void TripleData::validate() const {
    const int n = dimension();
    if (dirac.rows() != n || dirac.cols() != n) throw ValidationError("TripleData: D does not act on H");
    if (j && j->dimension() != n) throw ValidationError("TripleData: J does not act on H");
    if (chi && chi->dimension() != n) throw ValidationError("TripleData: chi does not act on H");
}

bool TripleReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const TripleCheck& c) { return !c.applicable || c.passed; });
}

const TripleCheck& TripleReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw ValidationError("TripleReport: no check named '" + name + "'");
}

std::vector<std::string> TripleReport::failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (c.applicable && !c.passed) out.push_back(c.name);
    }
    return out;
}

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : num; }

void record(TripleCheck& c, double residual, double tol, const std::string& where) {
    c.worst = std::max(c.worst, residual);
    if (residual > tol && c.passed) {
        c.passed = false;
        std::ostringstream os;
        os << where << ": residual " << residual;
        c.witness = os.str();
    }
}

struct SampledChecks {
    TripleCheck grading{"grading"};
    TripleCheck zeroth{"zeroth_order"};
    TripleCheck first{"first_order"};
    TripleCheck antiunitary{"j_antiunitary"};
};

void merge(TripleCheck& into, const TripleCheck& part) {
    into.worst = std::max(into.worst, part.worst);
    if (!part.passed && into.passed) {
        into.passed = false;
        into.witness = part.witness;
    }
}

}  // namespace

TripleReport check_axioms(const TripleData& t, int samples, std::uint64_t seed, double tol) {
    t.validate();
    if (samples < 1) throw ValidationError("check_axioms: samples must be positive");
    TripleReport report;
    report.samples = samples;
    report.seed = seed;
    const Matrix& d = t.dirac;
    const int n = t.dimension();
    const double dnorm = d.norm();

    TripleCheck rep{"representation"};
    {
        Rng rng = Rng::stream(seed, 1000003);
        const HomomorphismReport h = t.rep.check_homomorphism(std::min(samples, 200), rng, tol);
        rep.passed = h.passed;
        rep.worst = h.worst;
        rep.witness = h.witness;
    }

    TripleCheck sa{"self_adjoint"};
    record(sa, ratio((d - d.adjoint()).norm(), dnorm), tol, "D - D*");

    TripleCheck jsq{"j_squared"}, djs{"dj_sign"}, chir{"chirality"};
    if (t.j) {
        const Matrix id = Matrix::Identity(n, n);
        record(jsq, (t.j->square() - static_cast<double>(t.j->sign_j2()) * id).norm() / std::sqrt(double(n)), tol,
               "J^2 - sign");
        record(djs, ratio((d - static_cast<double>(t.j->sign_dj()) * t.j->conjugate(d)).norm(), dnorm), tol,
               "D - sign J D J^-1");
    } else {
        jsq.applicable = djs.applicable = false;
    }
    if (t.chi) {
        const Matrix g = t.chi->matrix();
        record(chir, ratio((d * g + g * d).norm(), dnorm), tol, "D chi + chi D");
    } else {
        chir.applicable = false;
    }

    constexpr int kChunk = 64;
    const int chunks = (samples + kChunk - 1) / kChunk;
    std::vector<SampledChecks> parts(static_cast<std::size_t>(chunks));
    parallel_chunks(chunks, [&](int c) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(c));
        SampledChecks& p = parts[static_cast<std::size_t>(c)];
        const BlockAlgebra& alg = t.rep.algebra();
        const int end = std::min(samples, (c + 1) * kChunk);
        for (int s = c * kChunk; s < end; ++s) {
            const std::string where = "sample " + std::to_string(s);
            const Matrix a = t.rep.embed(AlgebraElement::random(alg, rng));
            const AlgebraElement b = AlgebraElement::random(alg, rng);
            if (t.chi) {
                const Matrix g = t.chi->matrix();
                record(p.grading, ratio(commutator(g, a).norm(), a.norm()), tol, where);
            }
            if (!t.j) continue;
            const Matrix bop = opposite_action(b, *t.j, t.rep);
            record(p.zeroth, ratio(commutator(a, bop).norm(), a.norm() * bop.norm()), tol, where);
            record(p.first, ratio(commutator(commutator(d, a), bop).norm(), dnorm * a.norm() * bop.norm()), tol, where);
            const Vector x = rng.unit_vector(n), y = rng.unit_vector(n);
            const Complex lhs = t.j->apply(x).dot(t.j->apply(y));
            const Complex rhs = std::conj(x.dot(y));
            record(p.antiunitary, std::abs(lhs - rhs), tol, where);
        }
    });
    SampledChecks all;
    for (const auto& p : parts) {
        merge(all.grading, p.grading);
        merge(all.zeroth, p.zeroth);
        merge(all.first, p.first);
        merge(all.antiunitary, p.antiunitary);
    }
    if (!t.chi) all.grading.applicable = false;
    if (!t.j) all.zeroth.applicable = all.first.applicable = all.antiunitary.applicable = false;

    report.checks = {rep, sa, all.antiunitary, jsq, djs, all.grading, chir, all.zeroth, all.first};
    return report;
}

}  // namespace fellgeom
