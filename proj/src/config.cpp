#include "rydconv/config.hpp"

#include "rydconv/constants.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rydconv {

namespace {

const ConfigMap& builtin_defaults() {
    static const ConfigMap defaults = {
        {"fields.rabi_probe_MHz_2pi", "8"},
        {"fields.rabi_coupling_MHz_2pi", "22"},
        {"fields.rabi_mw_MHz_2pi", "0.1"},
        {"fields.rabi_decoupling_MHz_2pi", "17"},
        {"fields.detuning_probe_MHz_2pi", "0"},
        {"fields.detuning_coupling_MHz_2pi", "16"},
        {"fields.detuning_mw_MHz_2pi", "-16"},
        {"fields.detuning_decoupling_MHz_2pi", "0"},
        {"decay.e_MHz_2pi", "6.07"},
        {"decay.r1_MHz_2pi", "0.002"},
        {"decay.r2_MHz_2pi", "0.002"},
        {"decay.s_MHz_2pi", "0.66"},
        {"decay.transit_MHz_2pi", "0.35"},
        {"decay.dephasing_MHz_2pi", "0"},
        {"geometry.wavelength_probe_nm", "780"},
        {"geometry.wavelength_coupling_nm", "480"},
        {"geometry.wavelength_decoupling_nm", "1258"},
        {"geometry.wavelength_mw_mm", "21.5"},
        {"geometry.direction_probe", "-1"},
        {"geometry.direction_coupling", "1"},
        {"geometry.direction_decoupling", "1"},
        {"geometry.direction_mw", "1"},
        {"geometry.beam_waist_um", "100"},
        {"geometry.cell_length_mm", "50"},
        {"geometry.probe_absorption_1_m", "19"},
        {"geometry.probe_absorption_both_factors", "true"},
        {"cell.temperature_K", "315"},
        {"cell.atomic_mass_kg", "1.4099931e-25"},
        {"cell.atomic_density_1_m3", "7e16"},
        {"cell.effective_length_cm", "2.5"},
        {"dipoles.mw_a0e", "2500"},
        {"dipoles.signal_a0e", "0.95"},
        {"mw.frequency_GHz", "13.9"},
        {"signal.wavelength_nm", "derived"},
        {"environment.temperature_K", "300"},
        {"grids.velocity_mode", "composite"},
        {"grids.velocity_uniform_points", "801"},
        {"grids.velocity_core_m_s", "120"},
        {"grids.velocity_core_step_m_s", "1"},
        {"grids.velocity_wing_points", "24"},
        {"grids.velocity_span_sigmas", "4"},
        {"grids.beam_points", "16"},
        {"grids.beam_cutoff_w0", "3"},
        {"averaging.mode", "coherent"},
    };
    return defaults;
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(x))
        throw ConfigError("config key '" + key + "': not a finite number: '" + value + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

int to_int(const std::string& key, const std::string& value) {
    const double x = to_double(key, value);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return i;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

double ConverterConfig::sigma_velocity() const {
    return std::sqrt(constants::boltzmann * temperature_cell / atomic_mass);
}

double ConverterConfig::signal_wavevector() const {
    if (signal_wavelength > 0.0)
        return 2.0 * constants::pi / signal_wavelength;
    return std::abs(wavevector_coupling) - std::abs(wavevector_decoupling)
         + std::abs(wavevector_mw);
}

double ConverterConfig::signal_frequency() const {
    return signal_wavevector() * constants::speed_of_light;
}

ConverterConfig ConverterConfig::paper_defaults() {
    return config_from_map(default_config_map());
}

ConfigMap default_config_map() { return builtin_defaults(); }

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap cfg = builtin_defaults();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (builtin_defaults().find(key) == builtin_defaults().end())
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        cfg[key] = value;
    }
    return cfg;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_overrides(ConfigMap& cfg, const std::vector<std::string>& kvs) {
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must be key=value: '" + kv + "'");
        const std::string key = trim(kv.substr(0, eq));
        const std::string value = trim(kv.substr(eq + 1));
        if (builtin_defaults().find(key) == builtin_defaults().end())
            throw ConfigError("unknown config key in override: '" + key + "'");
        cfg[key] = value;
    }
}

std::string serialize_config(const ConfigMap& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

ConverterConfig config_from_map(const ConfigMap& cfg) {
    using namespace units;
    auto get = [&](const char* key) -> const std::string& {
        const auto it = cfg.find(key);
        if (it == cfg.end()) throw ConfigError(std::string("missing config key: ") + key);
        return it->second;
    };
    auto num = [&](const char* key) { return to_double(key, get(key)); };

    ConverterConfig c{};
    c.rabi_probe = num("fields.rabi_probe_MHz_2pi") * MHz_2pi;
    c.rabi_coupling = num("fields.rabi_coupling_MHz_2pi") * MHz_2pi;
    c.rabi_mw = num("fields.rabi_mw_MHz_2pi") * MHz_2pi;
    c.rabi_decoupling = num("fields.rabi_decoupling_MHz_2pi") * MHz_2pi;
    c.detuning_probe = num("fields.detuning_probe_MHz_2pi") * MHz_2pi;
    c.detuning_coupling = num("fields.detuning_coupling_MHz_2pi") * MHz_2pi;
    c.detuning_mw = num("fields.detuning_mw_MHz_2pi") * MHz_2pi;
    c.detuning_decoupling = num("fields.detuning_decoupling_MHz_2pi") * MHz_2pi;
    c.decay_e = num("decay.e_MHz_2pi") * MHz_2pi;
    c.decay_r1 = num("decay.r1_MHz_2pi") * MHz_2pi;
    c.decay_r2 = num("decay.r2_MHz_2pi") * MHz_2pi;
    c.decay_s = num("decay.s_MHz_2pi") * MHz_2pi;
    c.transit_rate = num("decay.transit_MHz_2pi") * MHz_2pi;
    c.dephasing = num("decay.dephasing_MHz_2pi") * MHz_2pi;

    const double two_pi = 2.0 * constants::pi;
    c.wavevector_probe = to_int("geometry.direction_probe", get("geometry.direction_probe"))
        * two_pi / (num("geometry.wavelength_probe_nm") * 1e-9);
    c.wavevector_coupling = to_int("geometry.direction_coupling", get("geometry.direction_coupling"))
        * two_pi / (num("geometry.wavelength_coupling_nm") * 1e-9);
    c.wavevector_decoupling = to_int("geometry.direction_decoupling", get("geometry.direction_decoupling"))
        * two_pi / (num("geometry.wavelength_decoupling_nm") * 1e-9);
    c.wavevector_mw = to_int("geometry.direction_mw", get("geometry.direction_mw"))
        * two_pi / (num("geometry.wavelength_mw_mm") * 1e-3);

    c.temperature_cell = num("cell.temperature_K");
    c.atomic_mass = num("cell.atomic_mass_kg");
    c.beam_waist = num("geometry.beam_waist_um") * 1e-6;
    c.cell_length = num("geometry.cell_length_mm") * 1e-3;
    c.probe_absorption = num("geometry.probe_absorption_1_m");
    c.probe_absorption_both_factors =
        to_bool("geometry.probe_absorption_both_factors", get("geometry.probe_absorption_both_factors"));
    c.atomic_density = num("cell.atomic_density_1_m3");
    c.effective_length = num("cell.effective_length_cm") * 1e-2;
    c.dipole_mw = num("dipoles.mw_a0e") * constants::a0e;
    c.dipole_signal = num("dipoles.signal_a0e") * constants::a0e;
    c.mw_frequency = num("mw.frequency_GHz") * GHz_2pi;
    c.signal_wavelength = get("signal.wavelength_nm") == "derived"
        ? 0.0 : num("signal.wavelength_nm") * 1e-9;
    c.environment_temperature = num("environment.temperature_K");

    const std::string vmode = get("grids.velocity_mode");
    if (vmode != "composite" && vmode != "uniform")
        throw ConfigError("grids.velocity_mode must be composite or uniform");
    c.velocity_grid_uniform = (vmode == "uniform");
    c.velocity_uniform_points = to_int("grids.velocity_uniform_points", get("grids.velocity_uniform_points"));
    c.velocity_core = num("grids.velocity_core_m_s");
    c.velocity_core_step = num("grids.velocity_core_step_m_s");
    c.velocity_wing_points = to_int("grids.velocity_wing_points", get("grids.velocity_wing_points"));
    c.velocity_span_sigmas = num("grids.velocity_span_sigmas");
    c.beam_points = to_int("grids.beam_points", get("grids.beam_points"));
    c.beam_cutoff_w0 = num("grids.beam_cutoff_w0");

    const std::string amode = get("averaging.mode");
    if (amode != "coherent" && amode != "incoherent")
        throw ConfigError("averaging.mode must be coherent or incoherent");
    c.coherent_average = (amode == "coherent");
    return c;
}

std::vector<Diagnostic> validate_config(const ConfigMap& cfg) {
    std::vector<Diagnostic> out;
    auto error = [&](const std::string& field, const std::string& msg) {
        out.push_back({Diagnostic::Error, field, msg});
    };
    auto warn = [&](const std::string& field, const std::string& msg) {
        out.push_back({Diagnostic::Warning, field, msg});
    };

    ConverterConfig c{};
    try {
        c = config_from_map(cfg);
    } catch (const ConfigError& e) {
        error("(parse)", e.what());
        return out;
    }

    auto positive = [&](double v, const char* field) {
        if (!(v > 0.0)) error(field, "must be strictly positive");
    };
    positive(c.decay_e, "decay.e_MHz_2pi");
    positive(c.decay_r1, "decay.r1_MHz_2pi");
    positive(c.decay_r2, "decay.r2_MHz_2pi");
    positive(c.decay_s, "decay.s_MHz_2pi");
    positive(c.transit_rate, "decay.transit_MHz_2pi");
    positive(c.beam_waist, "geometry.beam_waist_um");
    positive(c.cell_length, "geometry.cell_length_mm");
    positive(c.effective_length, "cell.effective_length_cm");
    positive(c.atomic_density, "cell.atomic_density_1_m3");
    positive(c.atomic_mass, "cell.atomic_mass_kg");
    if (c.dephasing < 0.0) error("decay.dephasing_MHz_2pi", "must be >= 0");
    if (c.temperature_cell < 0.0) error("cell.temperature_K", "must be >= 0");
    if (c.environment_temperature < 0.0) error("environment.temperature_K", "must be >= 0");
    if (c.rabi_probe < 0.0) error("fields.rabi_probe_MHz_2pi", "must be >= 0");
    if (c.rabi_coupling < 0.0) error("fields.rabi_coupling_MHz_2pi", "must be >= 0");
    if (c.rabi_mw < 0.0) error("fields.rabi_mw_MHz_2pi", "must be >= 0");
    if (c.rabi_decoupling < 0.0) error("fields.rabi_decoupling_MHz_2pi", "must be >= 0");

    // the probe must counter-propagate with respect to coupling and decoupling
    if (c.wavevector_probe * c.wavevector_coupling >= 0.0)
        error("geometry.direction_probe", "probe must counter-propagate with the coupling beam");
    if (c.wavevector_probe * c.wavevector_decoupling >= 0.0)
        error("geometry.direction_probe", "probe must counter-propagate with the decoupling beam");

    if (c.velocity_core <= 0.0 || c.velocity_core_step <= 0.0)
        error("grids.velocity_core_m_s", "core half-width and step must be positive");
    if (c.velocity_wing_points < 1) error("grids.velocity_wing_points", "need at least one wing node");
    if (c.velocity_uniform_points < 3) error("grids.velocity_uniform_points", "need at least 3 nodes");
    if (c.velocity_span_sigmas < 3.0)
        warn("grids.velocity_span_sigmas", "span below 3 sigma truncates the Maxwell profile");
    if (c.beam_points < 1) error("grids.beam_points", "need at least one radial shell");
    if (c.beam_cutoff_w0 < 3.0) error("grids.beam_cutoff_w0", "cutoff must be >= 3 w0");

    // warn when numeric parameters stray far (>10x) from the defaults
    const ConfigMap& defs = builtin_defaults();
    for (const auto& [key, defval] : defs) {
        const auto it = cfg.find(key);
        if (it == cfg.end()) continue;
        char* end = nullptr;
        const double dv = std::strtod(defval.c_str(), &end);
        if (end == defval.c_str() || *end != '\0') continue; // non-numeric default
        char* end2 = nullptr;
        const double uv = std::strtod(it->second.c_str(), &end2);
        if (end2 == it->second.c_str() || *end2 != '\0') continue;
        if (dv == 0.0 || uv == 0.0) continue;
        const double ratio = std::abs(uv / dv);
        if (ratio > 10.0 || ratio < 0.1)
            warn(key, "deviates more than 10x from the default " + defval);
    }
    return out;
}

} // namespace rydconv
