#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fellgeom/lincore/types.hpp"

namespace fellgeom::cli {

// Schema violation anchored at a line of the source text.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& path, const std::string& message);
    int line() const { return line_; }
    const std::string& path() const { return path_; }

private:
    int line_;
    std::string path_;
};

struct ObjectConfig {
    std::string id;
    int fiber = 1;
    std::string factor;              // product bundles: "full" or "scalar"
    std::vector<int> signs;          // scalar factors: +1 (lambda) or -1 (conj lambda) per slot
    std::string sector;
    std::string chirality = "none";  // left | right | none
    bool particle = true;
    std::vector<std::string> labels;
    std::vector<std::string> basis_sectors;

    bool operator==(const ObjectConfig&) const = default;
};

struct RealStructureConfig {
    std::string kind = "none";  // none | product | conjugation | permutation
    std::vector<std::pair<int, int>> swaps;
    int sign_j2 = 1;
    int sign_dj = 1;

    bool operator==(const RealStructureConfig&) const = default;
};

struct GradingConfig {
    std::string kind = "none";  // none | signature | signs
    std::vector<int> signs;

    bool operator==(const GradingConfig&) const = default;
};

struct SummandConfig {
    int size = 1;
    std::string label;

    bool operator==(const SummandConfig&) const = default;
};

struct PlacementConfig {
    int summand = 0;
    std::string object;                    // product bundles: act through the object's left factor
    std::vector<std::vector<int>> copies;  // otherwise: explicit basis indices
    bool conjugate = false;

    bool operator==(const PlacementConfig&) const = default;
};

struct StateConfig {
    std::string kind;  // basis | vector | diagonal | mixed
    int index = 0;
    std::vector<Complex> vector;
    std::vector<double> diagonal;

    bool operator==(const StateConfig&) const = default;
};

using PairList = std::vector<std::pair<std::string, std::string>>;

struct SectionBlockConfig {
    std::string from;
    std::string to;
    std::vector<std::vector<Complex>> value;

    bool operator==(const SectionBlockConfig&) const = default;
};

struct DiracConfig {
    std::string kind = "none";  // none | mass_pattern | pattern | section | matrix
    PairList pattern;
    bool first_order = true;
    bool odd = true;  // impose D chi = -chi D
    std::vector<SectionBlockConfig> blocks;
    std::vector<std::vector<Complex>> matrix;

    bool operator==(const DiracConfig&) const = default;
};

struct ConfigurationSpaceConfig {
    bool present = false;
    PairList pattern;
    std::string field = "complex";

    bool operator==(const ConfigurationSpaceConfig&) const = default;
};

struct CorruptionConfig {
    std::string kind = "none";  // none | transpose_involution | scaled_involution | scaled_product | flip_dj_sign
    double factor = 1.0;

    bool operator==(const CorruptionConfig&) const = default;
};

struct GeometryConfig {
    std::string name;
    std::string description;
    std::string signature = "euclidean";
    std::string bundle = "plain";  // plain | product
    std::string embedding = "diagonal";
    std::string default_sector = "all";
    std::string loops = "orbits";
    std::vector<ObjectConfig> objects;
    PairList pairing;
    RealStructureConfig real_structure;
    GradingConfig grading;
    std::vector<SummandConfig> algebra;
    bool faithful = false;
    std::vector<PlacementConfig> representation;
    std::vector<StateConfig> states;
    DiracConfig dirac;
    ConfigurationSpaceConfig configuration_space;
    CorruptionConfig corruption;

    bool operator==(const GeometryConfig&) const = default;
};

GeometryConfig parse_config(const std::string& text, const std::string& source = "<config>");

// Canonical YAML; parse_config(emit_config(c)) == c.
std::string emit_config(const GeometryConfig& c);

// A path, or the name of a bundled config (with or without .yaml).
std::string resolve_config_path(const std::string& name_or_path);
GeometryConfig load_config(const std::string& name_or_path);

// "1.5", "-0.5i", "1.5-0.5i"
Complex parse_complex(const std::string& s);
std::string format_complex(Complex z);
std::string format_double(double x);

}  // namespace fellgeom::cli
