#include "fellgeom/quantize/dynamics.hpp"

#include <cmath>
#include <cstdio>

#include "fellgeom/lincore/linalg.hpp"
#include "fellgeom/lincore/parallel.hpp"

namespace fellgeom {

PartitionMode parse_partition_mode(const std::string& s) {
    if (s == "trace") return PartitionMode::Trace;
    if (s == "state-weighted") return PartitionMode::StateWeighted;
    throw ValidationError("unknown partition mode '" + s + "' (expected trace or state-weighted)");
}

LoopIndex parse_loop_index(const std::string& s) {
    if (s == "orbits") return LoopIndex::Orbits;
    if (s == "objects") return LoopIndex::Objects;
    if (s == "whole") return LoopIndex::Whole;
    throw ValidationError("unknown loop index '" + s + "' (expected orbits, objects or whole)");
}

const char* partition_mode_name(PartitionMode m) { return m == PartitionMode::Trace ? "trace" : "state-weighted"; }

const char* loop_index_name(LoopIndex l) {
    switch (l) {
        case LoopIndex::Objects:
            return "objects";
        case LoopIndex::Whole:
            return "whole";
        default:
            return "orbits";
    }
}

double partition_sum(const Matrix& d, const BlockPartition& partition, const std::vector<int>& pairing,
                     const std::vector<StateFunctional>& states, PartitionMode mode, LoopIndex loops) {
    if (states.empty()) throw ValidationError("partition_sum: empty state set");
    if (d.rows() != partition.total() || d.cols() != partition.total()) {
        throw ValidationError("partition_sum: D does not match the block partition");
    }
    if (static_cast<int>(pairing.size()) != partition.block_count() || !is_involution(pairing)) {
        throw ValidationError("partition_sum: pairing must be an involution on the objects");
    }
    for (const auto& s : states) {
        if (s.dimension() != partition.total()) throw ValidationError("partition_sum: state dimension mismatch");
    }

    std::vector<std::vector<int>> groups;
    const int n = partition.block_count();
    switch (loops) {
        case LoopIndex::Whole: {
            groups.emplace_back();
            for (int i = 0; i < n; ++i) groups.back().push_back(i);
            break;
        }
        case LoopIndex::Objects:
            for (int i = 0; i < n; ++i) groups.push_back({i});
            break;
        case LoopIndex::Orbits:
            for (int i = 0; i < n; ++i) {
                const int s = pairing[static_cast<std::size_t>(i)];
                if (s < i) continue;
                groups.push_back(s == i ? std::vector<int>{i} : std::vector<int>{i, s});
            }
            break;
    }

    const Matrix d2 = d * d;
    std::vector<Matrix> projected;
    for (const auto& g : groups) {
        Matrix p = Matrix::Zero(d.rows(), d.cols());
        for (int i : g) p.block(partition.offset(i), partition.offset(i), partition.size(i), partition.size(i)) = d2.block(
                         partition.offset(i), partition.offset(i), partition.size(i), partition.size(i));
        projected.push_back(std::move(p));
    }

    double z = 0.0;
    for (const auto& omega : states) {
        double prod = 1.0;
        for (const Matrix& p : projected) {
            prod *= mode == PartitionMode::Trace ? p.trace().real() : omega(p).real();
        }
        z += prod;
    }
    return z;
}

std::vector<StateFunctional> basis_states(int dim) {
    std::vector<StateFunctional> out;
    for (int k = 0; k < dim; ++k) out.push_back(StateFunctional::basis_state(dim, k));
    return out;
}

Matrix geodesic_flow(const Matrix& d, double t) {
    if (!is_hermitian(d)) throw ValidationError("geodesic_flow: D must be Hermitian");
    return hermitian_function(d, [t](double x) { return std::exp(Complex(0.0, t * std::abs(x))); });
}

namespace {

double action_of(const RealVector& eigenvalues, const SpectralFunction& f) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) s += f(eigenvalues(k));
    return s;
}

}  // namespace

Ensemble metropolis_sample(const ConfigurationSpace& space, const SpectralFunction& f, const SamplerOptions& opts) {
    if (opts.steps < 1) throw ValidationError("metropolis_sample: steps must be at least 1");
    if (opts.thin < 1) throw ValidationError("metropolis_sample: thin must be at least 1");
    if (opts.proposal_scale < 0.0) throw ValidationError("metropolis_sample: proposal scale must be nonnegative");
    if (space.dimension() == 0) throw ValidationError("metropolis_sample: zero-dimensional configuration space");

    Rng rng(opts.seed);
    Ensemble e;
    e.function_name = f.name();
    e.space_description = space.description();
    e.options = opts;

    RealVector theta = RealVector::Zero(space.dimension());
    RealVector spec = hermitian_eigenvalues(space.point(theta));
    double action = action_of(spec, f);
    for (int step = 1; step <= opts.steps; ++step) {
        RealVector proposal = theta;
        for (Eigen::Index k = 0; k < proposal.size(); ++k) proposal(k) += opts.proposal_scale * rng.normal();
        const RealVector pspec = hermitian_eigenvalues(space.point(proposal));
        const double paction = action_of(pspec, f);
        const double u = rng.uniform();
        if (std::log(u) < action - paction) {
            theta = proposal;
            spec = pspec;
            action = paction;
            ++e.accepted;
        }
        ++e.steps;
        if (step % opts.thin == 0) e.samples.push_back({step, theta, spec, action});
    }
    return e;
}

std::vector<Ensemble> metropolis_chains(const ConfigurationSpace& space, const SpectralFunction& f,
                                        const SamplerOptions& opts, int chains) {
    if (chains < 1) throw ValidationError("metropolis_chains: need at least one chain");
    std::vector<Ensemble> out(static_cast<std::size_t>(chains));
    parallel_chunks(chains, [&](int c) {
        SamplerOptions o = opts;
        o.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(c));
        out[static_cast<std::size_t>(c)] = metropolis_sample(space, f, o);
    });
    return out;
}

void write_ensemble_csv(std::ostream& os, const Ensemble& e) {
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    os << "# seed: " << e.options.seed << "\n";
    os << "# measure: lebesgue on the real parameters\n";
    os << "# space: " << e.space_description << "\n";
    os << "# function: " << e.function_name << "\n";
    os << "# proposal_scale: " << num(e.options.proposal_scale) << "\n";
    os << "# steps: " << e.steps << "\n";
    os << "# thin: " << e.options.thin << "\n";
    os << "# acceptance: " << num(e.acceptance_rate()) << "\n";
    if (e.samples.empty()) return;
    os << "step";
    for (Eigen::Index k = 0; k < e.samples.front().theta.size(); ++k) os << ",theta" << k;
    for (Eigen::Index k = 0; k < e.samples.front().eigenvalues.size(); ++k) os << ",lambda" << k;
    os << ",action\n";
    for (const auto& s : e.samples) {
        os << s.step;
        for (Eigen::Index k = 0; k < s.theta.size(); ++k) os << ',' << num(s.theta(k));
        for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) os << ',' << num(s.eigenvalues(k));
        os << ',' << num(s.action) << '\n';
    }
}

}  // namespace fellgeom
