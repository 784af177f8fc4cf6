#pragma once

#include <cstdint>
#include <random>

#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

// splitmix64 mix of (seed, stream); used to partition random streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent generator for a numbered sub-stream.
    static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

    double uniform();
    double normal();
    Complex complex_normal();
    int integer(int lo, int hi);  // inclusive

    Matrix ginibre(Eigen::Index rows, Eigen::Index cols);
    Matrix hermitian(Eigen::Index n);
    Matrix unitary(Eigen::Index n);  // Haar distributed
    Matrix density(Eigen::Index n);  // full rank, unit trace
    Vector unit_vector(Eigen::Index n);
    RealVector real_normal(Eigen::Index n);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace fellgeom
