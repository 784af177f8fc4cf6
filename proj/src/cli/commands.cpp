#include "fellgeom/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fellgeom/cli/model.hpp"
#include "fellgeom/constraints/exclusions.hpp"
#include "fellgeom/constraints/mass.hpp"
#include "fellgeom/constraints/reality_solver.hpp"
#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/quantize/dynamics.hpp"
#include "fellgeom/quantize/modular.hpp"
#include "fellgeom/triple/distance.hpp"

namespace fellgeom::cli {

namespace {

// Key-value report; "ok" tracks verification failures.
class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}

    template <class T>
    void put(const std::string& key, const T& value) {
        out_ << key << ": " << value << "\n";
    }
    void num(const std::string& key, double value) { put(key, format_double(value)); }
    void flag(const std::string& key, bool value) { put(key, value ? "true" : "false"); }
    void check(const std::string& key, bool passed, const std::string& detail = "") {
        put(key, std::string(passed ? "pass" : "FAIL") + (detail.empty() ? "" : " (" + detail + ")"));
        if (!passed) failed_.push_back(key);
    }
    int finish() {
        if (failed_.empty()) {
            put("status", "ok");
            return kSuccess;
        }
        std::string list;
        for (const auto& f : failed_) list += (list.empty() ? "" : ", ") + f;
        put("failed", list);
        put("status", "verification failed");
        return kVerificationFailure;
    }

private:
    std::ostream& out_;
    std::vector<std::string> failed_;
};

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + format_double(x);
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

std::string join_strings(const std::vector<std::string>& v, const std::string& sep = " ") {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
    return s;
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

void header(Report& r, const std::string& command, const Model& m, const std::string& reproduces) {
    r.put("command", command);
    r.put("config", m.config.name);
    r.put("sector", m.sector);
    r.put("reproduces", reproduces);
}

int samples_or(const Flags& f, int fallback) {
    const int s = f.samples.value_or(fallback);
    if (s < 1) throw UsageError("--samples must be positive");
    return s;
}

Matrix scaled_dirac(const Model& m, const Flags& f) { return f.dirac_scale * build_dirac(m, f.seed); }

// Objects (L, R) of each sector that has both.
std::vector<std::pair<std::string, std::pair<int, int>>> chiral_pairs(const Model& m) {
    std::map<std::string, std::pair<int, int>> lr;
    for (std::size_t i = 0; i < m.roles.size(); ++i) {
        const ObjectRole& r = m.roles[i];
        if (!r.particle || r.chirality == Chirality::None) continue;
        auto& e = lr.try_emplace(r.sector, -1, -1).first->second;
        (r.chirality == Chirality::Left ? e.first : e.second) = static_cast<int>(i);
    }
    std::vector<std::pair<std::string, std::pair<int, int>>> out;
    for (const auto& [s, e] : lr) {
        if (e.first >= 0 && e.second >= 0) out.emplace_back(s, e);
    }
    return out;
}

int cmd_check(const Model& m, const Flags& f, Report& r) {
    header(r, "check", m, "Fell bundle axioms and real even spectral triple axioms");
    const int samples = samples_or(f, 1000);
    r.put("samples", samples);
    r.put("operations", m.geometry.operations().name);
    const FellAxiomReport fell = verify_fell_axioms(m.geometry, samples, f.seed, f.tol);
    for (const AxiomResult& a : fell.axioms) {
        std::string key = "fell_axiom_" + std::to_string(a.number);
        r.check(key, a.passed, a.name + (a.passed ? "" : "; witness " + a.witness));
    }
    if (fell.all_passed()) {
        const SaturationReport sat = saturation_check(m.geometry, f.seed);
        r.check("saturation", sat.saturated);
    }
    if (m.config.dirac.kind == "none" || !m.rep) return r.finish();

    const Matrix d = scaled_dirac(m, f);
    if (m.config.dirac.kind != "matrix") {
        const SectionDiagnostics s = is_dirac_section(d, m.partition, m.j ? &*m.j : nullptr, f.tol);
        r.check("dirac_section", s.accepted, s.accepted ? "pairing " + BlockPattern{s.pairing}.cycles() : join_strings(s.reasons, "; "));
    }
    const TripleReport t = check_axioms(build_triple(m, d), samples, f.seed, f.tol);
    for (const TripleCheck& c : t.checks) {
        if (!c.applicable) {
            r.put("triple_" + c.name, "n/a");
            continue;
        }
        r.check("triple_" + c.name, c.passed, c.passed ? "worst " + sci(c.worst) : "witness " + c.witness);
    }
    return r.finish();
}

int cmd_enumerate(const Model& m, const Flags&, Report& r) {
    header(r, "enumerate", m, "the admissible block patterns of a Dirac section commuting with J");
    r.put("objects", join_strings(m.object_ids));
    r.put("grading", m.object_chi ? join_ints(*m.object_chi) : std::string("none"));
    const auto patterns = admissible_patterns(m);
    r.put("patterns", patterns.size());
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        r.put("pattern_" + std::to_string(k), patterns[k].cycles() + " " + patterns[k].name(m.roles));
    }
    try {
        r.put("mass_pattern", select_mass_pattern(patterns, m.roles, m.object_chi).cycles());
    } catch (const ValidationError&) {
        r.put("mass_pattern", "none");
    }
    return r.finish();
}

int cmd_count_params(const Model& m, const Flags& f, Report& r) {
    header(r, "count-params", m, "free parameters of the Dirac mass block after the reality condition");
    if (!m.bundle) throw ValidationError("count-params needs a product bundle");
    const BlockPattern p = mass_pattern(m);
    r.put("pattern", p.cycles() + " " + p.name(m.roles));
    SolveOptions opts;
    opts.seed = f.seed;
    try {
        const ConstraintSolution s = solve_reality_constraint(*m.bundle, p, opts);
        for (std::size_t k = 0; k < s.orbits.size(); ++k) {
            const BlockOrbit& o = s.orbits[k];
            const Arrow a = o.representative;
            r.put("orbit_" + std::to_string(k), "(" + m.object_ids[static_cast<std::size_t>(a.range)] + "," +
                                                    m.object_ids[static_cast<std::size_t>(a.source)] + ") block " +
                                                    std::to_string(m.partition.size(a.range)) + "x" +
                                                    std::to_string(m.partition.size(a.source)));
        }
        for (std::size_t k = 0; k < s.equations.size(); ++k) r.put("equation_" + std::to_string(k), s.equations[k]);
        r.put("naive", s.naive_param_count);
        r.put("manifold_real", s.manifold_real_dim);
        r.put("manifold", s.manifold_dim ? std::to_string(*s.manifold_dim) : std::string("odd real dimension"));
        r.put("seed_ranks", join_ints(s.seed_ranks));
        for (const auto& [sector, e] : chiral_pairs(m)) {
            r.put("mass_block_" + sector, std::to_string(m.partition.size(e.first)) + "x" + std::to_string(m.partition.size(e.second)));
        }
        bool witnesses_ok = true;
        double worst = 0.0;
        for (const auto& w : s.witnesses) {
            witnesses_ok = witnesses_ok && w.section_accepted;
            worst = std::max({worst, w.reality_residual, w.adjoint_residual, w.constraint_residual});
        }
        r.check("witnesses", witnesses_ok && worst <= 1e-8, "worst residual " + sci(worst));
    } catch (const RankInstabilityError& e) {
        r.check("rank_stability", false, e.what());
    } catch (const InconsistentPatternError& e) {
        r.check("pattern_consistency", false, e.what());
    }
    return r.finish();
}

int cmd_exclusions(const Model& m, const Flags& f, Report& r) {
    header(r, "exclusions", m, "absence of leptoquark blocks and of quark-lepton mixing");
    if (!m.bundle) throw ValidationError("exclusions needs a product bundle");
    for (const auto& [sector, e] : chiral_pairs(m)) {
        const LeptoquarkReport lq = check_leptoquark_exclusion(*m.bundle, m.roles, sector, f.seed, f.tol);
        for (const LayoutCheck* c : {&lq.mass, &lq.euclidean, &lq.lorentzian}) {
            const std::string key = "layout_" + sector + "_" + layout_name(c->layout);
            r.put(key, c->section.accepted ? std::string("accepted") : "rejected: " + join_strings(c->section.reasons, "; "));
            r.put(key + "_chi_residual", "euclidean " + sci(c->chi_euclidean_residual) + " lorentzian " + sci(c->chi_lorentzian_residual));
        }
        r.check("leptoquark_exclusion_" + sector, lq.exclusion_holds());
    }
    const Model full = m.sector == "all" ? m : build_model(m.config, "all");
    const MixingReport mix = check_sector_mixing(*full.bundle, full.roles, full.basis_sectors, full.object_chi);
    r.put("mixing_patterns_considered", mix.patterns_considered);
    r.put("mixing_mass_bearing", mix.mass_bearing);
    if (mix.vacuous) {
        r.put("sector_mixing", "vacuous (one sector)");
    } else {
        for (std::size_t k = 0; k < mix.offending.size(); ++k) r.put("mixing_witness_" + std::to_string(k), mix.offending[k]);
        r.check("sector_mixing_excluded", !mix.mixing_possible && mix.mass_bearing > 0);
    }
    return r.finish();
}

int cmd_diagonalize(const Model& m, const Flags& f, Report& r) {
    header(r, "diagonalize", m, "mass spectrum of the first-order Dirac mass block");
    const BlockPattern p = mass_pattern(m);
    const std::vector<Matrix> basis = pattern_dirac_space(m, p, true, f.seed);
    r.put("dirac_space_real_dim", basis.size());
    if (basis.empty()) throw ValidationError("no nonzero first-order Dirac operator on the mass pattern");
    Rng rng = Rng::stream(f.seed, 5);
    Matrix d = Matrix::Zero(m.dimension(), m.dimension());
    for (const Matrix& b : basis) d += rng.normal() * b;
    for (const auto& [sector, e] : chiral_pairs(m)) {
        const Matrix block = m.partition.block(d, e.first, e.second);
        const MassSpectrum s = diagonalize_mass(block);
        std::vector<std::string> mult;
        for (const auto& [mass, k] : s.multiplicities) mult.push_back(format_double(mass) + "x" + std::to_string(k));
        r.put("mass_block_" + sector, std::to_string(block.rows()) + "x" + std::to_string(block.cols()));
        r.put("masses_" + sector, join_doubles(s.masses));
        r.put("multiplicities_" + sector, join_strings(mult));
        r.put("nonzero_" + sector, s.nonzero);
        r.put("zero_" + sector, s.zero);
    }
    return r.finish();
}

int cmd_action(const Model& m, const Flags& f, Report& r) {
    header(r, "action", m, "spectral action Tr f(D) and its unitary invariance");
    const SpectralFunction fn = SpectralFunction::named(f.function).shifted(f.shift);
    const Matrix d = scaled_dirac(m, f);
    const double s = spectral_action(d, fn, 1e-9);
    r.put("function", fn.name());
    r.num("action", s);
    const int samples = samples_or(f, 100);
    Rng rng = Rng::stream(f.seed, 11);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Matrix u = rng.unitary(d.rows());
        Matrix c = u * d * u.adjoint();
        c = 0.5 * (c + c.adjoint());
        worst = std::max(worst, std::abs(spectral_action(c, fn, 1e-9) - s) / std::max(1.0, std::abs(s)));
    }
    r.put("unitaries", samples);
    r.check("unitary_invariance", worst <= f.tol, "worst " + sci(worst));
    return r.finish();
}

int cmd_distance(const Model& m, const Flags& f, Report& r) {
    header(r, "distance", m, "state distance sup |w1(a) - w2(a)| over ||[D, a]|| <= 1");
    if (!m.rep) throw ValidationError("distance needs an algebra representation");
    const Matrix d = scaled_dirac(m, f);
    DistanceOptions opts;
    opts.seed = f.seed;
    std::vector<StateFunctional> states = m.states;
    if (f.random_states > 0) {
        states.clear();
        Rng rng = Rng::stream(f.seed, 21);
        for (int k = 0; k < f.random_states; ++k) states.push_back(StateFunctional::from_density(rng.density(m.dimension())));
    }
    if (states.size() < 2) throw ValidationError("distance needs at least two states");
    const std::size_t n = states.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    bool converged = true;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const DistanceResult res = connes_distance(m.rep.value(), d, states[a], states[b], opts);
            dist[a][b] = res.unbounded ? INFINITY : res.distance;
            converged = converged && (res.unbounded || res.converged);
            r.put("distance_" + std::to_string(a) + "_" + std::to_string(b),
                  res.unbounded ? std::string("unbounded") : format_double(res.distance));
        }
    }
    double sym = 0.0, tri = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (std::isfinite(dist[a][b]) && std::isfinite(dist[b][a])) sym = std::max(sym, std::abs(dist[a][b] - dist[b][a]));
            for (std::size_t c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                if (std::isfinite(dist[a][b]) && std::isfinite(dist[b][c])) tri = std::max(tri, dist[a][c] - dist[a][b] - dist[b][c]);
            }
        }
    }
    r.check("restart_agreement", converged);
    r.check("symmetry", sym <= 1e-6, "worst " + sci(sym));
    if (n >= 3) r.check("triangle_inequality", tri <= 1e-6, "worst excess " + sci(std::max(tri, 0.0)));
    return r.finish();
}

const StateFunctional& pick_state(const Model& m, const Flags& f) {
    if (f.state) {
        if (*f.state < 0 || *f.state >= static_cast<int>(m.states.size())) throw UsageError("--state out of range");
        return m.states[static_cast<std::size_t>(*f.state)];
    }
    for (const auto& s : m.states) {
        if (s.is_faithful()) return s;
    }
    throw ValidationError("config declares no faithful state");
}

int cmd_flow(const Model& m, const Flags& f, Report& r) {
    header(r, "flow", m, "modular flow sigma_t(a) = rho^{it} a rho^{-it} of a faithful state");
    const StateFunctional& omega = pick_state(m, f);
    const ModularFlow flow(omega);
    const int n = m.dimension();
    r.num("time", f.time);
    r.put("density_diagonal", [&] {
        std::vector<double> v;
        for (int k = 0; k < n; ++k) v.push_back(omega.density()(k, k).real());
        return join_doubles(v);
    }());
    bool trivial = true;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            Matrix e = Matrix::Zero(n, n);
            e(k, l) = 1.0;
            const Matrix s = flow.apply(e, f.time);
            if (s != e) trivial = false;
            r.put("unit_" + std::to_string(k) + "_" + std::to_string(l),
                  format_double(s(k, l).real()) + " " + format_double(s(k, l).imag()));
        }
    }
    r.flag("trivial", trivial);
    const int samples = samples_or(f, 20);
    Rng rng = Rng::stream(f.seed, 31);
    double group = 0.0, invariance = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Matrix a = rng.ginibre(n, n);
        const double s = rng.normal(), t = rng.normal();
        group = std::max(group, relative_difference(flow.apply(flow.apply(a, t), s), flow.apply(a, s + t)));
        const Complex w0 = omega(a), w1 = omega(flow.apply(a, t));
        invariance = std::max(invariance, std::abs(w1 - w0) / std::max(1.0, std::abs(w0)));
    }
    r.check("group_law", group <= f.tol, "worst " + sci(group));
    r.check("state_invariance", invariance <= f.tol, "worst " + sci(invariance));
    if (m.config.configuration_space.present) {
        const NearestSectionReport h = nearest_dirac_section(flow, build_configuration_space(m, f.seed));
        r.num("heuristic_nearest_section_residual", h.relative_residual);
    }
    return r.finish();
}

int cmd_kms(const Model& m, const Flags& f, Report& r) {
    header(r, "kms", m, "KMS condition of a faithful state for its modular flow");
    const StateFunctional& omega = pick_state(m, f);
    const Continuation c = parse_continuation(f.continuation);
    const KmsReport k = kms_check(omega, samples_or(f, 100), f.seed, c, m.rep ? &*m.rep : nullptr, 1e-8);
    r.put("continuation", k.continuation);
    r.put("pairs", k.samples);
    r.num("worst", k.worst);
    r.check("kms", k.passed, k.passed ? "" : "first violating pair " + std::to_string(k.witness));
    return r.finish();
}

int cmd_partition(const Model& m, const Flags& f, Report& r) {
    header(r, "partition", m, "partition sum Z over the declared states");
    const PartitionMode mode = parse_partition_mode(f.mode.value_or("trace"));
    const LoopIndex loops = parse_loop_index(m.config.loops);
    const Matrix d = scaled_dirac(m, f);
    // Loops follow the domain map of the configured D; J's pairing otherwise.
    std::vector<int> pairing = m.pairing;
    const SectionDiagnostics s = is_dirac_section(build_dirac(m, f.seed), m.partition, nullptr, f.tol);
    if (s.accepted) pairing = s.pairing;
    const double z = partition_sum(d, m.partition, pairing, m.states, mode, loops);
    r.put("mode", partition_mode_name(mode));
    r.put("loops", loop_index_name(loops));
    r.put("loop_pairing", BlockPattern{pairing}.cycles());
    r.put("states", m.states.size());
    r.num("Z", z);
    const int samples = samples_or(f, 20);
    Rng rng = Rng::stream(f.seed, 41);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Matrix u = Matrix::Zero(m.dimension(), m.dimension());
        for (int i = 0; i < m.partition.block_count(); ++i) m.partition.block(u, i, i) = rng.unitary(m.partition.size(i));
        const double zu = partition_sum(u * d * u.adjoint(), m.partition, pairing, m.states, mode, loops);
        worst = std::max(worst, std::abs(zu - z) / std::max(1.0, std::abs(z)));
    }
    r.num("unitary_invariance_worst", worst);
    if (mode == PartitionMode::Trace) r.check("unitary_invariance", worst <= f.tol);
    return r.finish();
}

int cmd_sample(const Model& m, const Flags& f, Report& r) {
    header(r, "sample", m, "Metropolis ensemble with weight exp(-Tr f(D))");
    const ConfigurationSpace space = build_configuration_space(m, f.seed);
    const SpectralFunction fn = SpectralFunction::named(f.function).shifted(f.shift);
    SamplerOptions o;
    o.steps = f.steps;
    o.thin = f.thin;
    o.proposal_scale = f.proposal_scale;
    o.seed = f.seed;
    const Ensemble e = metropolis_sample(space, fn, o);
    r.put("space", space.description());
    r.put("parameters", space.dimension());
    r.put("function", fn.name());
    r.put("measure", "lebesgue on the real parameters");
    r.put("steps", e.steps);
    r.put("samples", e.samples.size());
    r.num("acceptance_rate", e.acceptance_rate());
    double mean = 0.0;
    for (const auto& s : e.samples) mean += s.action;
    r.num("mean_action", e.samples.empty() ? 0.0 : mean / static_cast<double>(e.samples.size()));
    if (!f.out.empty()) {
        std::ofstream csv(f.out);
        if (!csv) throw UsageError("cannot write '" + f.out + "'");
        write_ensemble_csv(csv, e);
        r.put("csv", f.out);
    }
    return r.finish();
}

int cmd_generate_dims(const Model& m, const Flags& f, Report& r) {
    header(r, "generate-dims", m, "algebras generated by Dirac sections and by their products");
    const ConfigurationSpace space = build_configuration_space(m, f.seed);
    const int n = samples_or(f, std::max(4, space.dimension() + 2));
    const GeneratedDims g = generated_algebra_dims(space, n, f.seed);
    const GeneratedDims g2 = generated_algebra_dims(space, 2 * n, derive_seed(f.seed, 1));
    r.put("space", space.description());
    r.put("sections_sampled", n);
    r.put("dims", std::to_string(g.algebra) + " " + std::to_string(g.unit_algebra));
    r.put("expected", std::to_string(g.expected_algebra) + " " + std::to_string(g.expected_unit));
    r.put("dims_doubled", std::to_string(g2.algebra) + " " + std::to_string(g2.unit_algebra));
    r.flag("stable_under_doubling", g.algebra == g2.algebra && g.unit_algebra == g2.unit_algebra);
    r.flag("rank_deficient", g.rank_deficient);
    if (g.rank_deficient) r.put("warning", "generated algebra is smaller than the bundle bound (sections under-sampled or degenerate)");
    return r.finish();
}

using Handler = std::function<int(const Model&, const Flags&, Report&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"check", cmd_check},       {"enumerate", cmd_enumerate}, {"count-params", cmd_count_params},
        {"exclusions", cmd_exclusions}, {"action", cmd_action},   {"distance", cmd_distance},
        {"flow", cmd_flow},         {"kms", cmd_kms},             {"partition", cmd_partition},
        {"sample", cmd_sample},     {"generate-dims", cmd_generate_dims}, {"diagonalize", cmd_diagonalize},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = {"check",  "enumerate", "count-params", "exclusions",
                                                   "action", "distance",  "flow",         "kms",
                                                   "partition", "sample", "generate-dims", "diagonalize"};
    return names;
}

int run_subcommand(const std::string& name, const std::string& config, const Flags& flags, std::ostream& out,
                   std::ostream& err) {
    const auto it = handlers().find(name);
    if (it == handlers().end()) {
        err << "error: unknown subcommand '" << name << "'\n";
        return kUsageError;
    }
    if (flags.mode && name != "partition") {
        err << "error: --mode only applies to partition\n";
        return kUsageError;
    }
    try {
        const Model m = build_model(load_config(config), flags.sector);
        std::ostringstream buffer;
        Report r(buffer);
        const int code = it->second(m, flags, r);
        out << buffer.str();
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
}

}  // namespace fellgeom::cli
