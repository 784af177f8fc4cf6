#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fellgeom::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

struct Flags {
    std::uint64_t seed = 1;
    double tol = 1e-10;
    std::optional<int> samples;
    std::string sector;  // empty: the config's default sector
    std::optional<std::string> mode;
    std::string out;

    std::string function = "x2";
    double shift = 0.0;
    double dirac_scale = 1.0;
    int random_states = 0;
    std::optional<int> state;
    double time = 1.0;
    std::string continuation = "modular";
    int steps = 10000;
    double proposal_scale = 0.5;
    int thin = 1;
};

const std::vector<std::string>& subcommand_names();

// Runs one subcommand and writes a "key: value" report to out.
int run_subcommand(const std::string& name, const std::string& config, const Flags& flags, std::ostream& out,
                   std::ostream& err);

}  // namespace fellgeom::cli
