#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fellgeom/quantize/configuration.hpp"
#include "fellgeom/triple/spectral.hpp"

namespace fellgeom {

enum class PartitionMode { Trace, StateWeighted };

// Index set of the product in Z: the sigma-orbits of objects, every object, or one factor.
enum class LoopIndex { Orbits, Objects, Whole };

PartitionMode parse_partition_mode(const std::string& s);
LoopIndex parse_loop_index(const std::string& s);
const char* partition_mode_name(PartitionMode m);
const char* loop_index_name(LoopIndex l);

// Z = sum_omega prod_loops F(loop), with F = Tr(P D^2 P) in trace mode and
// omega(P D^2 P) in state-weighted mode; P projects onto the loop's objects.
double partition_sum(const Matrix& d, const BlockPartition& partition, const std::vector<int>& pairing,
                     const std::vector<StateFunctional>& states, PartitionMode mode, LoopIndex loops = LoopIndex::Orbits);

// Vector states of the standard basis.
std::vector<StateFunctional> basis_states(int dim);

// exp(i t |D|) for Hermitian D.
Matrix geodesic_flow(const Matrix& d, double t);

struct SamplerOptions {
    int steps = 10000;
    int thin = 1;
    double proposal_scale = 0.5;
    std::uint64_t seed = 0;
};

struct EnsembleSample {
    int step = 0;
    RealVector theta;
    RealVector eigenvalues;
    double action = 0.0;
};

struct Ensemble {
    std::vector<EnsembleSample> samples;
    int accepted = 0;
    int steps = 0;
    double acceptance_rate() const { return steps == 0 ? 0.0 : static_cast<double>(accepted) / steps; }
    std::string function_name;
    std::string space_description;
    SamplerOptions options;
};

// Metropolis chain on the parameters with weight exp(-Tr f(D(theta))), started at theta = 0.
Ensemble metropolis_sample(const ConfigurationSpace& space, const SpectralFunction& f, const SamplerOptions& opts);

// Independent chains with partitioned seeds, merged by chain index.
std::vector<Ensemble> metropolis_chains(const ConfigurationSpace& space, const SpectralFunction& f,
                                        const SamplerOptions& opts, int chains);

// CSV with a '#' metadata header: step, theta_k..., lambda_k..., action.
void write_ensemble_csv(std::ostream& os, const Ensemble& e);

}  // namespace fellgeom
