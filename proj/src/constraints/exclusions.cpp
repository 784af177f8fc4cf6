#include "fellgeom/constraints/exclusions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fellgeom/triple/triple.hpp"

namespace fellgeom {

SectorObjects sector_objects(const std::vector<ObjectRole>& roles, const std::string& sector) {
    SectorObjects s;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        const ObjectRole& r = roles[i];
        if (r.sector != sector) continue;
        const int idx = static_cast<int>(i);
        if (r.chirality == Chirality::Left) (r.particle ? s.left : s.left_bar) = idx;
        if (r.chirality == Chirality::Right) (r.particle ? s.right : s.right_bar) = idx;
    }
    if (s.left < 0 || s.right < 0 || s.left_bar < 0 || s.right_bar < 0) {
        throw ValidationError("sector '" + sector + "' needs L, R, Lbar and Rbar objects");
    }
    return s;
}

const char* layout_name(Layout l) {
    switch (l) {
        case Layout::Euclidean:
            return "euclidean";
        case Layout::Lorentzian:
            return "lorentzian";
        default:
            return "mass";
    }
}

namespace {

Arrow target(const ProductBundle& b, int word, Arrow a) {
    switch (word) {
        case 1:
            return {a.source, a.range};
        case 2:
            return {b.partner(a.range), b.partner(a.source)};
        case 3:
            return {b.partner(a.source), b.partner(a.range)};
        default:
            return a;
    }
}

Matrix transform(const ProductBundle& b, int word, Arrow a, const Matrix& m) {
    switch (word) {
        case 1:
            return m.adjoint();
        case 2:
            return b.reality_image(a.range, a.source, m);
        case 3:
            return b.reality_image(a.range, a.source, m).adjoint();
        default:
            return m;
    }
}

// Places a random block at a and all its images, averaged over the stabilizer.
void place_orbit(const ProductBundle& b, const BlockPartition& p, Arrow a, Rng& rng, Matrix& d) {
    const Matrix b0 = rng.ginibre(p.size(a.range), p.size(a.source));
    Matrix avg = Matrix::Zero(b0.rows(), b0.cols());
    int count = 0;
    for (int w = 0; w < 4; ++w) {
        if (target(b, w, a) == a) {
            avg += transform(b, w, a, b0);
            ++count;
        }
    }
    avg /= static_cast<double>(count);
    for (int w = 0; w < 4; ++w) {
        const Arrow t = target(b, w, a);
        p.block(d, t.range, t.source) = transform(b, w, a, avg);
    }
}

std::vector<int> object_grading(const ProductBundle& b, const SectorObjects& s, Signature sig) {
    const auto g = signature_grading(sig);
    std::vector<int> signs;
    for (int i = 0; i < b.object_count(); ++i) {
        int v = 1;
        if (i == s.left) v = g[0];
        if (i == s.right) v = g[1];
        if (i == s.left_bar) v = g[2];
        if (i == s.right_bar) v = g[3];
        for (int k = 0; k < b.block_size(i); ++k) signs.push_back(v);
    }
    return signs;
}

LayoutCheck check_layout(const ProductBundle& b, const SectorObjects& s, Layout layout, Rng& rng, double tol) {
    LayoutCheck c;
    c.layout = layout;
    const Matrix d = layout_matrix(b, s, layout, rng);
    const RealStructure j = b.real_structure();
    c.section = is_dirac_section(d, b.partition(), &j, tol);
    const double scale = d.norm();
    c.adjoint_residual = (d - d.adjoint()).norm() / scale;
    c.reality_residual = (d - j.conjugate(d)).norm() / scale;
    for (Signature sig : {Signature::Euclidean, Signature::Lorentzian}) {
        const Matrix g = Grading(object_grading(b, s, sig)).matrix();
        const double r = (d * g + g * d).norm() / scale;
        (sig == Signature::Euclidean ? c.chi_euclidean_residual : c.chi_lorentzian_residual) = r;
    }
    return c;
}

}  // namespace

Matrix layout_matrix(const ProductBundle& bundle, const SectorObjects& s, Layout layout, Rng& rng) {
    const BlockPartition p = bundle.partition();
    Matrix d = Matrix::Zero(p.total(), p.total());
    place_orbit(bundle, p, {s.left, s.right}, rng, d);
    if (layout == Layout::Euclidean) place_orbit(bundle, p, {s.left, s.right_bar}, rng, d);
    if (layout == Layout::Lorentzian) {
        place_orbit(bundle, p, {s.left, s.left_bar}, rng, d);
        place_orbit(bundle, p, {s.right, s.right_bar}, rng, d);
    }
    return d;
}

bool LeptoquarkReport::exclusion_holds() const {
    auto crowded = [](const LayoutCheck& c) {
        return !c.section.accepted && std::any_of(c.section.reasons.begin(), c.section.reasons.end(), [](const std::string& r) {
                   return r.rfind(kMultipleBlocksReason, 0) == 0;
               });
    };
    return mass.section.accepted && crowded(euclidean) && crowded(lorentzian);
}

LeptoquarkReport check_leptoquark_exclusion(const ProductBundle& bundle, const std::vector<ObjectRole>& roles,
                                            const std::string& sector, std::uint64_t seed, double tol) {
    const SectorObjects s = sector_objects(roles, sector);
    Rng rng(seed);
    LeptoquarkReport r;
    r.mass = check_layout(bundle, s, Layout::Mass, rng, tol);
    r.euclidean = check_layout(bundle, s, Layout::Euclidean, rng, tol);
    r.lorentzian = check_layout(bundle, s, Layout::Lorentzian, rng, tol);
    return r;
}

MixingReport check_sector_mixing(const ProductBundle& bundle, const std::vector<ObjectRole>& roles,
                                 const std::vector<std::string>& basis_sectors, const std::optional<std::vector<int>>& chi) {
    const BlockPartition part = bundle.partition();
    if (static_cast<int>(basis_sectors.size()) != part.total()) {
        throw ValidationError("check_sector_mixing: one sector label per basis vector");
    }
    if (static_cast<int>(roles.size()) != bundle.object_count()) throw ValidationError("check_sector_mixing: one role per object");
    MixingReport report;
    report.vacuous = std::set<std::string>(basis_sectors.begin(), basis_sectors.end()).size() < 2;

    std::map<std::string, std::pair<int, int>> lr;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        if (!roles[i].particle || roles[i].chirality == Chirality::None) continue;
        auto& e = lr.try_emplace(roles[i].sector, -1, -1).first->second;
        (roles[i].chirality == Chirality::Left ? e.first : e.second) = static_cast<int>(i);
    }

    const auto patterns = enumerate_admissible_patterns(bundle.pairing(), chi);
    report.patterns_considered = static_cast<int>(patterns.size());
    for (const auto& p : patterns) {
        bool mass_bearing = !lr.empty();
        for (const auto& [name, e] : lr) {
            if (e.first < 0 || e.second < 0 || p.pairing[static_cast<std::size_t>(e.first)] != e.second) mass_bearing = false;
        }
        if (!mass_bearing) continue;
        ++report.mass_bearing;
        for (const Arrow b : p.blocks()) {
            const RealSubspace fiber = bundle.product_fiber(b.range, b.source);
            for (int r = 0; r < part.size(b.range); ++r) {
                for (int c = 0; c < part.size(b.source); ++c) {
                    const bool allowed = std::any_of(fiber.basis().begin(), fiber.basis().end(),
                                                     [&](const Matrix& m) { return std::abs(m(r, c)) > 1e-12; });
                    if (!allowed) continue;
                    const std::string& rs = basis_sectors[static_cast<std::size_t>(part.offset(b.range) + r)];
                    const std::string& cs = basis_sectors[static_cast<std::size_t>(part.offset(b.source) + c)];
                    if (rs != cs) {
                        report.mixing_possible = true;
                        if (report.offending.size() < 8) {
                            report.offending.push_back("pattern " + p.cycles() + " block (" + bundle.object(b.range) + "," +
                                                       bundle.object(b.source) + ") couples " + rs + " to " + cs);
                        }
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace fellgeom
