#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Converter configuration. Files are flat "key = value" text with dotted
// keys and the unit spelled in the key name (e.g. fields.rabi_probe_MHz_2pi),
// so a config diff is unambiguous. Internally everything is SI.

namespace rydconv {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ordered so serialization is deterministic
using ConfigMap = std::map<std::string, std::string>;

struct ConverterConfig {
    // drive fields, rad/s
    double rabi_probe;
    double rabi_coupling;
    double rabi_mw;
    double rabi_decoupling;
    double detuning_probe;
    double detuning_coupling;
    double detuning_mw;
    double detuning_decoupling;

    // decay channels, rad/s
    double decay_e;
    double decay_r1;
    double decay_r2;
    double decay_s;
    double transit_rate;
    double dephasing; // optional uniform dephasing, default 0

    // signed wavevectors, rad/m (+z / -z propagation)
    double wavevector_probe;
    double wavevector_coupling;
    double wavevector_mw;
    double wavevector_decoupling;

    // cell & geometry
    double temperature_cell;     // K
    double atomic_mass;          // kg
    double beam_waist;           // m
    double cell_length;          // m
    double probe_absorption;     // 1/m
    bool probe_absorption_both_factors;
    double atomic_density;       // 1/m^3
    double effective_length;     // m

    // dipoles & frequencies
    double dipole_mw;            // C m
    double dipole_signal;        // C m
    double mw_frequency;         // rad/s
    double signal_wavelength;    // m; <= 0 means derived from energy conservation
    double environment_temperature; // K

    // ensemble grids
    bool velocity_grid_uniform;
    int velocity_uniform_points;
    double velocity_core;        // m/s, half-width of the dense core
    double velocity_core_step;   // m/s
    int velocity_wing_points;    // per side
    double velocity_span_sigmas;
    int beam_points;
    double beam_cutoff_w0;
    bool coherent_average;

    // derived quantities (level detunings are never stored)
    double delta_55d() const { return detuning_probe + detuning_coupling; }
    double delta_54f() const { return delta_55d() + detuning_mw; }
    double sigma_velocity() const;
    // energy conservation over the loop fixes the emitted frequency:
    // k_s = k_c - k_d + k_mw (magnitudes); an explicit signal_wavelength
    // overrides it.
    double signal_wavevector() const;
    double signal_frequency() const;

    static ConverterConfig paper_defaults();
};

struct Diagnostic {
    enum Severity { Warning, Error };
    Severity severity;
    std::string field;
    std::string message;
};

ConfigMap default_config_map();
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);
void apply_overrides(ConfigMap& cfg, const std::vector<std::string>& key_equals_value);
std::string serialize_config(const ConfigMap& cfg);

// builds the SI struct; throws ConfigError on unknown keys or bad numbers
ConverterConfig config_from_map(const ConfigMap& cfg);

// type-invariant checks plus warnings for parameters far from the defaults
std::vector<Diagnostic> validate_config(const ConfigMap& cfg);

} // namespace rydconv
