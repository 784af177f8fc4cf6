#include "fellgeom/cli/model.hpp"

#include <algorithm>
#include <map>

#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/triple/dirac_space.hpp"

namespace fellgeom::cli {

int Model::object_index(const std::string& id) const {
    const auto it = std::find(object_ids.begin(), object_ids.end(), id);
    if (it == object_ids.end()) throw ValidationError("object '" + id + "' is not part of sector '" + sector + "'");
    return static_cast<int>(it - object_ids.begin());
}

std::vector<int> Model::pattern_from_pairs(const PairList& pairs) const {
    std::vector<int> p(object_ids.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
    for (const auto& [a, b] : pairs) {
        const int x = object_index(a), y = object_index(b);
        p[static_cast<std::size_t>(x)] = y;
        p[static_cast<std::size_t>(y)] = x;
    }
    return p;
}

namespace {

Chirality parse_chirality(const std::string& s) {
    if (s == "left") return Chirality::Left;
    if (s == "right") return Chirality::Right;
    return Chirality::None;
}

BundleOperations corrupted_operations(const CorruptionConfig& c) {
    if (c.kind == "transpose_involution") return BundleOperations::transpose_involution();
    if (c.kind == "scaled_involution") return BundleOperations::scaled_involution(c.factor);
    if (c.kind == "scaled_product") return BundleOperations::scaled_product(c.factor);
    return BundleOperations::standard();
}

Matrix to_matrix(const std::vector<std::vector<Complex>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return m;
}

StateFunctional build_state(const StateConfig& s, int dim) {
    if (s.kind == "basis") {
        if (s.index < 0 || s.index >= dim) throw ValidationError("state basis index out of range");
        return StateFunctional::basis_state(dim, s.index);
    }
    if (s.kind == "vector") {
        if (static_cast<int>(s.vector.size()) != dim) throw ValidationError("state vector has the wrong length");
        Vector v(dim);
        for (int k = 0; k < dim; ++k) v(k) = s.vector[static_cast<std::size_t>(k)];
        if (v.norm() == 0.0) throw ValidationError("state vector must be nonzero");
        return StateFunctional::vector_state(v / v.norm());
    }
    if (s.kind == "diagonal") {
        if (static_cast<int>(s.diagonal.size()) != dim) throw ValidationError("state diagonal has the wrong length");
        Matrix rho = Matrix::Zero(dim, dim);
        for (int k = 0; k < dim; ++k) rho(k, k) = s.diagonal[static_cast<std::size_t>(k)];
        return StateFunctional::from_density(rho);
    }
    return StateFunctional::maximally_mixed(dim);
}

int signature_sign(Signature sig, const ObjectRole& r, const std::string& id) {
    if (r.chirality == Chirality::None) throw ValidationError("grading 'signature' needs a chirality on object '" + id + "'");
    const auto g = signature_grading(sig);
    const bool left = r.chirality == Chirality::Left;
    if (r.particle) return left ? g[0] : g[1];
    return left ? g[2] : g[3];
}

}  // namespace

Model build_model(const GeometryConfig& config, const std::string& sector_choice) {
    Model m;
    m.config = config;
    m.sector = sector_choice.empty() ? config.default_sector : sector_choice;
    m.signature = config.signature == "lorentzian" ? Signature::Lorentzian : Signature::Euclidean;

    std::vector<int> keep;
    for (std::size_t i = 0; i < config.objects.size(); ++i) {
        if (m.sector == "all" || config.objects[i].sector == m.sector) keep.push_back(static_cast<int>(i));
    }
    if (keep.empty()) throw ValidationError("no objects in sector '" + m.sector + "'");
    const bool restricted = keep.size() != config.objects.size();

    std::vector<std::string> all_ids;
    std::map<std::string, int> fibers;
    for (const auto& o : config.objects) {
        all_ids.push_back(o.id);
        fibers[o.id] = o.fiber;
    }
    const PairGroupoid full_groupoid = build_pair_groupoid(all_ids);
    const FellBundleGeometry full_geometry =
        build_fell_bundle(full_groupoid, fibers).with_operations(corrupted_operations(config.corruption));

    std::vector<const ObjectConfig*> objs;
    for (int i : keep) {
        objs.push_back(&config.objects[static_cast<std::size_t>(i)]);
        m.object_ids.push_back(config.objects[static_cast<std::size_t>(i)].id);
    }
    for (const ObjectConfig* o : objs) m.roles.push_back({o->sector, parse_chirality(o->chirality), o->particle});

    if (config.bundle == "product") {
        std::vector<int> pairing(all_ids.size());
        for (std::size_t i = 0; i < pairing.size(); ++i) pairing[i] = static_cast<int>(i);
        auto idx = [&](const std::string& id) {
            return static_cast<int>(std::find(all_ids.begin(), all_ids.end(), id) - all_ids.begin());
        };
        for (const auto& [a, b] : config.pairing) {
            pairing[static_cast<std::size_t>(idx(a))] = idx(b);
            pairing[static_cast<std::size_t>(idx(b))] = idx(a);
        }
        std::vector<FactorSpec> factors;
        for (const auto& o : config.objects) {
            FactorSpec f;
            f.kind = o.factor == "scalar" ? FactorKind::Scalar : FactorKind::Full;
            f.hilbert_dim = f.kind == FactorKind::Scalar ? static_cast<int>(o.signs.size()) : o.fiber;
            f.signs = o.signs;
            factors.push_back(f);
        }
        const ProductBundle full(full_geometry, pairing, factors,
                                 config.embedding == "column" ? BimoduleEmbedding::Column : BimoduleEmbedding::Diagonal);
        m.bundle = restricted ? full.restrict(keep) : full;
        m.geometry = m.bundle->base();
        m.groupoid = m.geometry.groupoid();
        m.pairing = m.bundle->pairing();
        m.partition = m.bundle->partition();
    } else {
        if (restricted) {
            std::map<std::string, int> sub;
            for (const ObjectConfig* o : objs) sub[o->id] = o->fiber;
            m.groupoid = build_pair_groupoid(m.object_ids);
            m.geometry = build_fell_bundle(m.groupoid, sub).with_operations(corrupted_operations(config.corruption));
        } else {
            m.groupoid = full_groupoid;
            m.geometry = full_geometry;
        }
        m.partition = BlockPartition::of(m.geometry);
        m.pairing = m.pattern_from_pairs(config.pairing);
    }

    // Basis labels and sectors.
    std::vector<std::string> labels;
    const std::vector<std::string> defaults = m.bundle ? m.bundle->default_labels() : std::vector<std::string>{};
    for (std::size_t k = 0; k < objs.size(); ++k) {
        const ObjectConfig& o = *objs[k];
        const int size = m.partition.size(static_cast<int>(k));
        if (!o.labels.empty() && static_cast<int>(o.labels.size()) != size) {
            throw ValidationError("object '" + o.id + "' has " + std::to_string(o.labels.size()) + " labels for " +
                                  std::to_string(size) + " basis vectors");
        }
        if (!o.basis_sectors.empty() && static_cast<int>(o.basis_sectors.size()) != size) {
            throw ValidationError("object '" + o.id + "' needs one basis sector per basis vector");
        }
        for (int r = 0; r < size; ++r) {
            if (!o.labels.empty()) {
                labels.push_back(o.labels[static_cast<std::size_t>(r)]);
            } else if (m.bundle) {
                labels.push_back(defaults[static_cast<std::size_t>(m.partition.offset(static_cast<int>(k)) + r)]);
            } else {
                labels.push_back(o.id + "[" + std::to_string(r) + "]");
            }
            m.basis_sectors.push_back(!o.basis_sectors.empty() ? o.basis_sectors[static_cast<std::size_t>(r)]
                                                               : (o.sector.empty() ? "default" : o.sector));
        }
    }
    m.space = HilbertSpace(labels);
    const int n = m.dimension();

    // Real structure.
    const RealStructureConfig& rs = config.real_structure;
    if (rs.kind == "product") {
        m.j = RealStructure(m.bundle->real_structure().unitary(), rs.sign_j2, rs.sign_dj);
    } else if (rs.kind == "conjugation") {
        m.j = RealStructure(Matrix::Identity(n, n), rs.sign_j2, rs.sign_dj);
    } else if (rs.kind == "permutation") {
        if (restricted) throw ValidationError("a permutation real structure cannot be restricted to a sector");
        Matrix u = Matrix::Identity(n, n);
        for (const auto& [a, b] : rs.swaps) {
            if (a >= n || b >= n) throw ValidationError("real structure swap index out of range");
            u(a, a) = 0.0;
            u(b, b) = 0.0;
            u(a, b) = 1.0;
            u(b, a) = 1.0;
        }
        m.j = RealStructure(u, rs.sign_j2, rs.sign_dj);
    }
    if (m.j && !m.bundle) {
        // J fixes the object pairing; a section pairing from the config must agree.
        m.pairing = object_involution(*m.j, m.partition);
    }

    // Grading.
    if (config.grading.kind == "signature") {
        std::vector<int> per_object, signs;
        for (std::size_t k = 0; k < objs.size(); ++k) {
            const int s = signature_sign(m.signature, m.roles[k], objs[k]->id);
            per_object.push_back(s);
            for (int r = 0; r < m.partition.size(static_cast<int>(k)); ++r) signs.push_back(s);
        }
        m.chi = Grading(signs);
        m.object_chi = per_object;
    } else if (config.grading.kind == "signs") {
        if (restricted) throw ValidationError("explicit grading signs cannot be restricted to a sector");
        if (static_cast<int>(config.grading.signs.size()) != n) throw ValidationError("grading needs one sign per basis vector");
        m.chi = Grading(config.grading.signs);
        std::vector<int> per_object;
        bool constant = true;
        for (int k = 0; k < m.partition.block_count(); ++k) {
            const int first = config.grading.signs[static_cast<std::size_t>(m.partition.offset(k))];
            for (int r = 0; r < m.partition.size(k); ++r) {
                if (config.grading.signs[static_cast<std::size_t>(m.partition.offset(k) + r)] != first) constant = false;
            }
            per_object.push_back(first);
        }
        if (constant) m.object_chi = per_object;
    }

    // Algebra and representation.
    if (!config.algebra.empty()) {
        std::vector<int> sizes;
        std::vector<std::string> names;
        for (const auto& s : config.algebra) {
            sizes.push_back(s.size);
            names.push_back(s.label);
        }
        BlockAlgebra algebra(sizes, names);
        std::vector<Placement> placements;
        for (const auto& p : config.representation) {
            if (!p.object.empty()) {
                const auto it = std::find(m.object_ids.begin(), m.object_ids.end(), p.object);
                if (it == m.object_ids.end()) continue;
                const int obj = static_cast<int>(it - m.object_ids.begin());
                for (Placement pl : m.bundle->left_action(obj, p.summand, algebra.summand_size(p.summand))) {
                    if (p.conjugate) pl.conjugate = !pl.conjugate;
                    placements.push_back(pl);
                }
            } else {
                if (restricted) throw ValidationError("explicit placements cannot be restricted to a sector");
                placements.push_back({p.summand, p.conjugate, p.copies});
            }
        }
        m.rep = Representation(algebra, m.space, placements, config.faithful);
    }

    if (config.states.empty()) {
        m.states = std::vector<StateFunctional>();
        for (int k = 0; k < n; ++k) m.states.push_back(StateFunctional::basis_state(n, k));
    } else {
        for (const auto& s : config.states) m.states.push_back(build_state(s, n));
    }
    return m;
}

std::vector<BlockPattern> admissible_patterns(const Model& m) {
    if (!m.j) throw ValidationError("enumerating patterns needs a real structure");
    return enumerate_admissible_patterns(object_involution(*m.j, m.partition), m.object_chi);
}

BlockPattern mass_pattern(const Model& m) { return select_mass_pattern(admissible_patterns(m), m.roles, m.object_chi); }

std::vector<Matrix> pattern_dirac_space(const Model& m, const BlockPattern& p, bool first_order, std::uint64_t seed,
                                        bool odd) {
    DiracSpaceConstraints c;
    c.partition = m.partition;
    c.blocks = p.blocks();
    c.j = m.j ? &*m.j : nullptr;
    c.chi = odd && m.chi ? &*m.chi : nullptr;
    c.first_order = first_order && m.rep && m.j ? &*m.rep : nullptr;
    c.seed = seed;
    if (m.bundle) {
        for (const Arrow b : c.blocks) c.block_basis[b] = m.bundle->product_fiber(b.range, b.source).basis();
    }
    return dirac_solution_space(c);
}

Matrix build_dirac(const Model& m, std::uint64_t seed) {
    const DiracConfig& d = m.config.dirac;
    const int n = m.dimension();
    if (d.kind == "none") throw ValidationError("config declares no Dirac operator");
    if (d.kind == "matrix") {
        Matrix out = to_matrix(d.matrix);
        if (out.rows() != n || out.cols() != n) throw ValidationError("dirac matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        return out;
    }
    if (d.kind == "section") {
        Matrix out = Matrix::Zero(n, n);
        for (const auto& b : d.blocks) {
            const int from = m.object_index(b.from), to = m.object_index(b.to);
            const Matrix v = to_matrix(b.value);
            if (v.rows() != m.partition.size(to) || v.cols() != m.partition.size(from)) {
                throw ValidationError("section block (" + b.to + "," + b.from + ") has the wrong shape");
            }
            m.partition.block(out, to, from) = v;
            if (from != to) m.partition.block(out, from, to) = v.adjoint();
        }
        return out;
    }
    const BlockPattern p = d.kind == "mass_pattern" ? mass_pattern(m) : BlockPattern{m.pattern_from_pairs(d.pattern)};
    const std::vector<Matrix> basis = pattern_dirac_space(m, p, d.first_order, seed, d.odd);
    if (basis.empty()) throw ValidationError("no nonzero Dirac operator fits pattern " + p.cycles());
    Rng rng = Rng::stream(seed, 77);
    Matrix out = Matrix::Zero(n, n);
    for (const Matrix& b : basis) out += rng.normal() * b;
    return out;
}

TripleData build_triple(const Model& m, const Matrix& d) {
    if (!m.rep) throw ValidationError("config declares no algebra representation");
    TripleData t{*m.rep, d, m.j, m.chi, m.signature};
    if (m.config.corruption.kind == "flip_dj_sign" && t.j) {
        t.j = RealStructure(t.j->unitary(), t.j->sign_j2(), -t.j->sign_dj());
    }
    t.validate();
    return t;
}

ConfigurationSpace build_configuration_space(const Model& m, std::uint64_t seed) {
    const ConfigurationSpaceConfig& c = m.config.configuration_space;
    if (!c.present) throw ValidationError("config declares no configuration space");
    const std::vector<int> pairing = m.pattern_from_pairs(c.pattern);
    const Field field = c.field == "real" ? Field::Real : Field::Complex;
    std::string description = "pattern " + BlockPattern{pairing}.cycles() + ", " + c.field + " field";
    if (!m.j) return ConfigurationSpace(m.partition, pairing, section_generators(m.partition, pairing, field), description);
    std::vector<Matrix> basis = pattern_dirac_space(m, BlockPattern{pairing}, false, seed);
    if (field == Field::Real) {
        std::vector<Matrix> real;
        for (const Matrix& b : basis) {
            if (b.imag().norm() <= 1e-12 * b.norm()) real.push_back(b);
        }
        basis = real;
    }
    return ConfigurationSpace(m.partition, pairing, basis, description + ", real structure imposed");
}

}  // namespace fellgeom::cli
