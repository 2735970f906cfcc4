#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triadic/procedures.hpp"
#include "triadic/risk.hpp"

namespace triadic::cli {

enum class Command { Test, Simulate, ClosureCheck, Counterexample, Graph };
enum class OutputFormat { Table, Json, Csv };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view text);
OutputFormat parse_format(std::string_view text);

inline constexpr std::string_view kSeedEnvVar = "TRIADIC_SEED";

struct RunConfig {
    Command command = Command::Test;
    double alpha = kDefaultAlpha;
    CalibrationKind calibration = CalibrationKind::Bonferroni;
    std::optional<std::string> input_path;
    OutputFormat output_format = OutputFormat::Table;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    std::size_t workers = 1;

    // test
    bool allow_noncomplementary = false;

    // simulate
    std::string model = "gaussian";
    ProcedureKind procedure = ProcedureKind::SingleStep;
    std::optional<std::size_t> m;
    std::vector<double> theta;
    std::vector<double> boundary;
    double n = 1.0;
    LossSpec loss = LossSpec::identity(0.5);

    // closure-check
    std::optional<std::size_t> trials;
    bool nested = false;

    // counterexample
    double theta1 = 0.0;
    double theta2 = 10.0;
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    double grid_step = 0.01;

    // graph
    double rho0 = 0.0;

    /// Checks the cross-field invariants (alpha in (0,1), replicates >= 1, ...). Throws ConfigError.
    void validate() const;
};

/// Sets one field from its key (flag name without dashes). Throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` file; `#` starts a comment. Throws ConfigError with the line number.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Seed precedence after flags and config: the TRIADIC_SEED environment variable, then 0.
std::uint64_t effective_seed(const RunConfig& config);

} // namespace triadic::cli
