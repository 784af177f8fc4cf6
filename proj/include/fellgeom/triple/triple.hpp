#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fellgeom/lincore/algebra.hpp"
#include "fellgeom/lincore/real_structure.hpp"

namespace fellgeom {

enum class Signature { Euclidean, Lorentzian };

// Grading signs of the (L, R, Lbar, Rbar) sectors.
std::array<int, 4> signature_grading(Signature s);
const char* signature_name(Signature s);

// Finite real (even) spectral triple (A, H, D, J, chi).
struct TripleData {
    Representation rep;
    Matrix dirac;
    std::optional<RealStructure> j;
    std::optional<Grading> chi;
    Signature signature = Signature::Euclidean;

    int dimension() const { return rep.space().dimension(); }
    void validate() const;
};

struct TripleCheck {
    TripleCheck(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool applicable = true;
    bool passed = true;
    double worst = 0.0;
    std::string witness;
};

struct TripleReport {
    std::vector<TripleCheck> checks;
    int samples = 0;
    std::uint64_t seed = 0;

    bool all_passed() const;
    const TripleCheck& find(const std::string& name) const;
    std::vector<std::string> failed() const;
};

// Checks: representation, self_adjoint, j_antiunitary, j_squared, dj_sign,
// grading, chirality, zeroth_order, first_order.
TripleReport check_axioms(const TripleData& t, int samples, std::uint64_t seed, double tol = kDefaultTolerance);

}  // namespace fellgeom
