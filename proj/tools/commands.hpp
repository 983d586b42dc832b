#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfaff/matrix.hpp"
#include "pfaff/matrix_io.hpp"
#include "pfaff/tolerances.hpp"

namespace pfaff::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kNotConjugateNormal = 3,
    kPfaffianUndefined = 4,
    kToleranceFailure = 5,
};

/// Environment variable consulted for the default seed when --seed is absent.
inline constexpr const char* kSeedEnvVar = "PFAFF_SEED";

struct CommandOptions {
    /// Matrix files ("-" is stdin). `gen` takes spectrum-spec JSON files.
    std::vector<std::string> inputs;
    std::optional<MatrixFormat> format;
    Tolerances tol;
    std::optional<std::uint64_t> seed;
    /// normal-form | relation | polynomial
    std::string method = "normal-form";
    /// Symmetric partner B for the tensor identity.
    std::optional<std::string> partner_b;
    Complex lambda{0.8, -0.6};
};

struct CommandResult {
    std::string text;  ///< JSON (or a matrix document for `gen`), newline-terminated
    int exit_code = kOk;
};

/// Runs one of pf, apf, wnf, check, identities, gen. Never throws; failures
/// are reported as {"error": {"code": c, "message": m}} with the matching
/// exit code. With several inputs the results form a JSON array in input
/// order and the exit code is the first non-zero one.
CommandResult run_command(std::string_view command, const CommandOptions& options);

/// --seed if given, else $PFAFF_SEED, else 0.
std::uint64_t resolve_seed(const CommandOptions& options);

}  // namespace pfaff::cli
