#pragma once

#include "rydconv/config.hpp"
#include "rydconv/ensemble.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Parameter sweeps over the ensemble-averaged conversion response, plus the
// curve diagnostics (FWHM, integral bandwidth) and the dressed-state
// predictions behind the level maps.

namespace rydconv {

enum class Normalization { None, Max, Integral };

struct Spectrum {
    std::string axis_name;       // e.g. "mw_detuning_rad_s"
    std::vector<double> axis;    // strictly monotone
    std::vector<double> values;  // >= 0
    Normalization normalization = Normalization::None;
};

struct DetuningMap {
    std::vector<double> delta_55d; // rad/s
    std::vector<double> delta_54f; // rad/s
    std::vector<double> values;    // row-major: [i55 * n54 + i54]

    double value(std::size_t i55, std::size_t i54) const {
        return values[i55 * delta_54f.size() + i54];
    }
};

struct NoPeak : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepOptions {
    unsigned threads = 1;
};

struct FieldDetunings {
    double probe, coupling, mw, decoupling;
};

// Level detunings to field detunings for the bare-state maps. The probe
// stays on resonance; the coupling carries the full 55D detuning; the MW
// supplies the difference; the decoupling follows the 54F detuning so the
// emitted signal frequency does not move during a scan.
FieldDetunings level_detunings_to_field(double delta_55d, double delta_54f);

ConverterConfig with_field_detunings(const ConverterConfig& cfg, const FieldDetunings& d);

// conversion intensity vs MW detuning; all other detunings fixed
Spectrum sweep_mw_detuning(const ConverterConfig& cfg, double lo, double hi, int n,
                           const SweepOptions& opt = {});

// conversion response vs MW intensity (log-spaced); the MW Rabi frequency
// is derived from the intensity through the configured dipole moment
Spectrum sweep_mw_power(const ConverterConfig& cfg, double intensity_lo,
                        double intensity_hi, int n, const SweepOptions& opt = {});

DetuningMap sweep_level_map(const ConverterConfig& cfg,
                            double lo_55d, double hi_55d, int n_55d,
                            double lo_54f, double hi_54f, int n_54f,
                            const SweepOptions& opt = {});

// probe-detuning sweep returning both EIT and conversion curves
struct EitConversionCurves {
    std::vector<double> detuning; // probe detuning, rad/s
    std::vector<double> eit;
    std::vector<double> conversion;
};
EitConversionCurves sweep_probe_detuning(const ConverterConfig& cfg, double lo,
                                         double hi, int n, const SweepOptions& opt = {});

struct FwhmResult {
    double width;
    bool multi_peak; // more than two half-maximum crossings; widest pair used
};

// full width at half maximum by linear interpolation between samples;
// throws NoPeak when the maximum sits on the axis boundary
FwhmResult fwhm(const Spectrum& s);

// integral bandwidth (1/max S) * Int S dw by the trapezoid rule
double integral_bandwidth(const Spectrum& s);

// dressed eigen-detunings +-sqrt(Op^2+Oc^2)/2 of the probe-coupling block
std::pair<double, double> bright_state_positions(double rabi_probe, double rabi_coupling);

void normalize(Spectrum& s, Normalization how);

} // namespace rydconv
