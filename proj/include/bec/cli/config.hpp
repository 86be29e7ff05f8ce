#pragma once

// Strict JSON run configuration for the becsim command-line tool.  Unknown
// keys and keys irrelevant to the selected experiment are rejected, so a
// config file documents exactly the run it produces.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bec/hamiltonians.hpp"
#include "bec/revivals.hpp"
#include "bec/states.hpp"

namespace bec::cli {

enum class ExperimentKind { spectrum, evolve, revival, adiabatic, validity };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

// Numerical gates checked during a run; failures are reported in the
// manifest and drive the exit code.
struct ToleranceSet {
    double spectrum = 1e-10;
    double revival_fidelity = 1e-8;
    double norm_drift = 1e-10;
    double sector_drift = 1e-10;
    double truncation_tail = 1e-8;
    double adiabatic_fidelity = 0.99;
    double adiabatic_mid_population = 1e-3;
};

// Physical inputs for the validity estimate: interaction range vs trap size.
struct ValidityParams {
    double scattering_length_m = 5e-9;
    double trap_size_m = 100e-6;
    int atom_number = 1000;
};

struct RevivalConfig {
    int branches = 2;
    int step = 1;
    ResonanceConvention convention = ResonanceConvention::derived;
    double q = 0.1;
};

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::spectrum;
    int cutoff = 24;
    SqueezingParam squeezing{0.5, 0.0};
    ToleranceSet tolerances;

    // spectrum
    std::optional<EffectiveParams> effective;
    int max_total = 12;

    // evolve
    std::vector<double> time_grid;

    // revival
    RevivalConfig revival;
    std::vector<double> tau_grid;

    // adiabatic
    std::optional<RamanParams> raman;
    std::vector<double> ratio_grid;  // detuning / |g1|
    double gt = 1.0;                 // |g1|^2 t / detuning, fixes the duration
    int max_sector = 6;

    // validity
    ValidityParams validity;
};

// Configuration rejection with the full list of violations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace bec::cli
