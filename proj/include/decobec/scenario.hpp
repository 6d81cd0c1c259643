// scenario.hpp — config parsing/validation, scenario dispatch, sweep
// execution, CSV/JSON output with run manifests
#pragma once

#include "decobec/model.hpp"
#include "decobec/oracle.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace decobec {

struct TimesSpec {
    double t_start = 0.0;
    double t_end = 50.0;
    int steps = 500;
};

struct SweepSpec {
    std::string parameter; // dotted path, validated against a whitelist
    std::vector<double> values;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
    std::string directory; // empty → environment default, then cwd
    OutputFormat format = OutputFormat::Csv;
};

struct DoubleWellRun {
    double alpha = 1.0;
    std::optional<double> delta; // absent → tunnel_splitting(geometry)
    int n_ref = 0;               // <= 0 → automatic
    double tail_tol = 1e-9;
};

struct ScenarioConfig {
    std::string scenario;
    double lambda = 1e-3; // unit-sector-difference decoherence rate scale
    int sector_m = 0;
    int sector_n = 1;
    PumpConfig pump;
    SpectralDensity density;
    TrapGeometry geometry = SingleWell{1.0, 1.0};
    std::optional<GridSpec> grid;
    std::vector<Mode> explicit_modes; // alternative to grid
    bool has_explicit_modes = false;
    TimesSpec times;
    std::optional<SweepSpec> sweep;
    oracle::TruncationSpec truncation;
    double hbar = 1.0;
    double c = 1.0;
    double tol = 1e-10;
    double k_max = 1e4; // continuum-quadrature cutoff
    std::vector<std::complex<double>> state_coefficients;
    double atom_interaction = 0.0;
    DoubleWellRun double_well;
    double deviation_tolerance = 1e-6; // oracle-check gate
    OutputSpec output;
    std::vector<std::string> warnings; // non-fatal validation notes
    std::string canonical;             // normalized serialization, hashed
};

// Strict parse + validation.  Aggregates every violation into one
// InvalidArgumentError message; unknown keys are violations.  Comments
// (// and /* */) are stripped by the JSON reader.
ScenarioConfig validate_config(const std::string& raw_text);

// validate_config over the contents of a file.
ScenarioConfig load_config(const std::string& path);

// FNV-1a 64-bit hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const ScenarioConfig& config);

struct RunManifest {
    std::string config_hash;
    std::string artifact_version;
    double wall_time_seconds = 0.0;
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;
    std::optional<double> max_abs_deviation; // oracle-check scenarios only
};

struct RunOptions {
    std::string out_dir;  // overrides config / environment when non-empty
    int workers = 1;      // sweep-point concurrency
    std::optional<OutputFormat> format; // overrides config when set
};

// Executes the scenario, writes `<scenario>_<hash>.<ext>` and
// manifest.json into the resolved output directory, and returns the
// manifest.  Throws AccuracyError when an oracle-check deviation exceeds
// its gate; sweep-point failures are recorded in-band via marker columns.
RunManifest run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

} // namespace decobec
