#include "fellgeom/constraints/patterns.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fellgeom {

std::vector<Arrow> BlockPattern::blocks() const {
    std::vector<Arrow> out;
    for (int i = 0; i < size(); ++i) out.push_back({pairing[static_cast<std::size_t>(i)], i});
    return out;
}

std::vector<std::vector<bool>> BlockPattern::grid() const {
    std::vector<std::vector<bool>> g(pairing.size(), std::vector<bool>(pairing.size(), false));
    for (int i = 0; i < size(); ++i) g[static_cast<std::size_t>(pairing[static_cast<std::size_t>(i)])][static_cast<std::size_t>(i)] = true;
    return g;
}

std::string BlockPattern::cycles() const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) {
        const int t = pairing[static_cast<std::size_t>(i)];
        if (t > i) os << '(' << i << ' ' << t << ')';
    }
    const std::string s = os.str();
    return s.empty() ? "id" : s;
}

namespace {

std::string role_block_name(const ObjectRole& a, const ObjectRole& b) {
    if (a.chirality == Chirality::None || b.chirality == Chirality::None) return "X";
    const bool same_chirality = a.chirality == b.chirality;
    const bool same_particle = a.particle == b.particle;
    if (same_particle && !same_chirality) return "M";
    if (!same_particle && same_chirality) return a.chirality == Chirality::Left ? "K" : "H";
    if (!same_particle && !same_chirality) return "G";
    return "X";
}

}  // namespace

std::string BlockPattern::name(const std::vector<ObjectRole>& roles) const {
    if (roles.size() != pairing.size()) return cycles();
    std::vector<std::string> parts;
    bool any = false;
    for (int i = 0; i < size(); ++i) {
        const int t = pairing[static_cast<std::size_t>(i)];
        if (t <= i) continue;
        any = true;
        const ObjectRole& a = roles[static_cast<std::size_t>(i)];
        const ObjectRole& b = roles[static_cast<std::size_t>(t)];
        std::string n = role_block_name(a, b);
        if (a.sector != b.sector) n += "[" + a.sector + "-" + b.sector + "]";
        if (std::find(parts.begin(), parts.end(), n) == parts.end()) parts.push_back(n);
    }
    if (!any) return "diagonal";
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "+") + p;
    return out;
}

std::string BlockPattern::diagram(const std::vector<std::string>& labels) const {
    const auto g = grid();
    std::size_t width = 1;
    for (const auto& l : labels) width = std::max(width, l.size());
    std::ostringstream os;
    for (int r = 0; r < size(); ++r) {
        const std::string l = r < static_cast<int>(labels.size()) ? labels[static_cast<std::size_t>(r)] : std::to_string(r);
        os << l << std::string(width - l.size(), ' ') << " |";
        for (int c = 0; c < size(); ++c) os << ' ' << (g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ? 'X' : '.');
        os << '\n';
    }
    return os.str();
}

std::vector<int> object_involution(const RealStructure& j, const BlockPartition& partition, double tol) {
    if (j.dimension() != partition.total()) throw ValidationError("object_involution: J has the wrong dimension");
    const Matrix& u = j.unitary();
    std::vector<int> tau;
    for (int i = 0; i < partition.block_count(); ++i) {
        int target = -1;
        for (int t = 0; t < partition.block_count(); ++t) {
            if (partition.block(u, t, i).norm() > tol) {
                if (target >= 0) throw ValidationError("object_involution: J mixes block " + std::to_string(i) + " into several blocks");
                target = t;
            }
        }
        if (target < 0 || partition.size(target) != partition.size(i)) {
            throw ValidationError("object_involution: J does not map block " + std::to_string(i) + " onto a block");
        }
        tau.push_back(target);
    }
    if (!is_involution(tau)) throw ValidationError("object_involution: induced object map is not an involution");
    return tau;
}

namespace {

void involutions(std::vector<int>& current, int next, std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(current.size());
    while (next < n && current[static_cast<std::size_t>(next)] >= 0) ++next;
    if (next == n) {
        out.push_back(current);
        return;
    }
    current[static_cast<std::size_t>(next)] = next;
    involutions(current, next + 1, out);
    current[static_cast<std::size_t>(next)] = -1;
    for (int k = next + 1; k < n; ++k) {
        if (current[static_cast<std::size_t>(k)] >= 0) continue;
        current[static_cast<std::size_t>(next)] = k;
        current[static_cast<std::size_t>(k)] = next;
        involutions(current, next + 1, out);
        current[static_cast<std::size_t>(next)] = -1;
        current[static_cast<std::size_t>(k)] = -1;
    }
}

}  // namespace

int pattern_parity(const BlockPattern& p, const std::vector<int>& chi) {
    if (chi.size() != p.pairing.size()) throw ValidationError("pattern_parity: one grading sign per object");
    int parity = 0;
    for (int i = 0; i < p.size(); ++i) {
        const int s = chi[static_cast<std::size_t>(i)] * chi[static_cast<std::size_t>(p.pairing[static_cast<std::size_t>(i)])];
        if (parity == 0) parity = s;
        if (s != parity) return 0;
    }
    return parity;
}

std::vector<BlockPattern> enumerate_admissible_patterns(const std::vector<int>& tau, const std::optional<std::vector<int>>& chi) {
    if (!is_involution(tau)) throw ValidationError("enumerate_admissible_patterns: tau is not an involution");
    if (chi && chi->size() != tau.size()) throw ValidationError("enumerate_admissible_patterns: one grading sign per object");
    const int n = static_cast<int>(tau.size());
    std::vector<std::vector<int>> all;
    std::vector<int> current(static_cast<std::size_t>(n), -1);
    involutions(current, 0, all);
    std::vector<BlockPattern> out;
    for (const auto& s : all) {
        bool compatible = true;
        for (int i = 0; i < n && compatible; ++i) {
            const auto ti = static_cast<std::size_t>(tau[static_cast<std::size_t>(i)]);
            compatible = tau[static_cast<std::size_t>(s[ti])] == s[static_cast<std::size_t>(i)];
        }
        if (!compatible) continue;
        BlockPattern p{s};
        if (chi && pattern_parity(p, *chi) == 0) continue;
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const BlockPattern& a, const BlockPattern& b) { return a.pairing < b.pairing; });
    return out;
}

std::vector<BlockPattern> enumerate_admissible_patterns(const BlockPartition& partition, const RealStructure& j,
                                                        const std::optional<std::vector<int>>& chi) {
    return enumerate_admissible_patterns(object_involution(j, partition), chi);
}

BlockPattern select_mass_pattern(const std::vector<BlockPattern>& patterns, const std::vector<ObjectRole>& roles,
                                 const std::optional<std::vector<int>>& chi) {
    // Sector -> (L particle object, R particle object).
    std::map<std::string, std::pair<int, int>> sectors;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        const ObjectRole& r = roles[i];
        if (!r.particle || r.chirality == Chirality::None) continue;
        auto& entry = sectors.try_emplace(r.sector, -1, -1).first->second;
        (r.chirality == Chirality::Left ? entry.first : entry.second) = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> required;
    for (const auto& [name, lr] : sectors) {
        if (lr.first >= 0 && lr.second >= 0) required.push_back(lr);
    }
    if (required.empty()) throw ValidationError("select_mass_pattern: no chirality-connecting pattern (no L/R objects)");
    for (const auto& p : patterns) {
        if (p.pairing.size() != roles.size()) throw ValidationError("select_mass_pattern: roles do not match the pattern size");
        const bool connects = std::all_of(required.begin(), required.end(), [&](const std::pair<int, int>& lr) {
            return p.pairing[static_cast<std::size_t>(lr.first)] == lr.second;
        });
        if (!connects) continue;
        if (chi && pattern_parity(p, *chi) != -1) continue;
        return p;
    }
    throw ValidationError("select_mass_pattern: no chirality-connecting pattern");
}

}  // namespace fellgeom
