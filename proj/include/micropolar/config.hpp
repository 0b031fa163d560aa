#pragma once

#include <micropolar/analysis.hpp>

#include <stdexcept>
#include <string>

namespace micropolar {

/// Configuration or override rejected; what() carries the offending field
/// path, e.g. "params.Nsq: violates 0 < N^2 < 1".
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Initial data source: a named preset, or a checkpoint file (which wins
/// when set).
struct InitialData {
    Preset preset = Preset::conduction;
    std::string checkpoint;
};

/// Experiment knobs shared by the drivers; unused entries are ignored by
/// subcommands that do not need them.
struct ExperimentConfig {
    std::vector<Real> deltas{1e-6};
    std::vector<int> resolutions{8, 16, 32};
    int trials = 48;
    std::string ledger;  // existing ledger CSV, for monitor-only runs
};

struct RunConfig {
    DomainSpec domain;
    Resolution resolution;
    PhysParams params;
    StepperConfig stepper;
    InitialData initial;
    ExperimentConfig experiment;
    std::string out_dir = "out";
    std::uint64_t seed = 12345;

    void validate() const;  // throws ConfigError with a field path
};

/// Parses the JSON run configuration (schema/run_config.schema.json). The
/// params section and all five of its fields are required; everything else
/// falls back to the documented defaults. Unknown keys are rejected with
/// their path.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Applies a "dotted.key=value" override to a scalar field.
void apply_override(RunConfig& cfg, const std::string& keyval);

/// Canonical JSON echo of a config (the form written into run manifests).
std::string config_json(const RunConfig& cfg);

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

}  // namespace micropolar
