#pragma once

#include <stdexcept>
#include <string>

#include "swspectra/relmap.hpp"
#include "swspectra/systems.hpp"

namespace sw {

// Raised on malformed or inconsistent job configuration; the command-line
// driver maps it to the usage exit status.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class RunMode { quasi, relativistic, closure_check, dirac_check, verify };
enum class OutputFormat { csv, json };

// Branch selection for table modes: every sign branch, or one explicit pair.
struct SignSelection {
    bool all = true;
    SignPair pair; // meaningful only when all == false

    friend bool operator==(const SignSelection& x, const SignSelection& y) {
        if (x.all != y.all) return false;
        return x.all || (x.pair.e1 == y.pair.e1 && x.pair.e2 == y.pair.e2);
    }
};

struct JobConfig {
    int case_id = 0;
    PhysicalParams params; // m, c, hbar and the case couplings
    int p_max = 3;
    SignSelection signs;
    RunMode mode = RunMode::quasi;
    bool has_mode = false; // true when the config document named the mode
    double tol = 1e-9;
    bool has_tol = false; // true when tol came from the config or a flag
    ResidualForm form = ResidualForm::composed;
    Case4Quantization variant = Case4Quantization::standard;
    int grid_points = 300;       // oracle override: grid resolution per axis
    bool has_grid_points = false; // true when grid_points was given explicitly
    double grid_extent = 0.0;    // oracle override: box size; 0 = per-case default
    bool has_window = false;  // explicit relativistic search window
    EnergyWindow window{0.0, 0.0};
    OutputFormat format = OutputFormat::csv;

    friend bool operator==(const JobConfig& x, const JobConfig& y);
};

const char* mode_name(RunMode mode);
RunMode mode_from_name(const std::string& name);

// Parses a UTF-8 JSON job description, filling defaults (m = c = hbar = 1)
// and validating case-required couplings. Unknown keys and missing required
// keys raise ConfigError naming the offending field.
JobConfig parse_config(const std::string& text);

// Mode-dependent consistency checks (also run at the end of parse_config);
// call again after overriding mode or tolerances from command-line flags.
void validate_job(const JobConfig& cfg);

// Serializes a config such that parse_config(emit_config(cfg)) == cfg.
std::string emit_config(const JobConfig& cfg);

} // namespace sw
