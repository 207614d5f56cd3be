#include "rydconv/response.hpp"

#include "rydconv/constants.hpp"
#include "rydconv/parallel.hpp"
#include "rydconv/quadrature.hpp"
#include "rydconv/thermal.hpp"

#include <algorithm>
#include <cmath>

namespace rydconv {

FieldDetunings level_detunings_to_field(double delta_55d, double delta_54f) {
    return {0.0, delta_55d, delta_54f - delta_55d, delta_54f};
}

ConverterConfig with_field_detunings(const ConverterConfig& cfg, const FieldDetunings& d) {
    ConverterConfig out = cfg;
    out.detuning_probe = d.probe;
    out.detuning_coupling = d.coupling;
    out.detuning_mw = d.mw;
    out.detuning_decoupling = d.decoupling;
    return out;
}

namespace {

// evaluates the ensemble response over a list of configs, in parallel, with
// results stored per index (deterministic reduction)
std::vector<EnsembleResponse> run_points(const ConverterConfig& base,
                                         const std::vector<ConverterConfig>& configs,
                                         unsigned threads) {
    const VelocityGrid vgrid = VelocityGrid::from_config(base);
    const BeamGrid bgrid = BeamGrid::from_config(base);
    std::vector<EnsembleResponse> out(configs.size());
    parallel_for(configs.size(), threads, [&](std::size_t i) {
        // jump operators are detuning-independent, but rebuild per task to
        // keep tasks self-contained when rates are overridden per point
        SteadyStateSolver solver(build_jump_operators(configs[i]));
        out[i] = average_response(configs[i], vgrid, bgrid, solver);
    });
    return out;
}

} // namespace

Spectrum sweep_mw_detuning(const ConverterConfig& cfg, double lo, double hi, int n,
                           const SweepOptions& opt) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("sweep_mw_detuning: bad range");
    std::vector<ConverterConfig> pts(n, cfg);
    Spectrum s;
    s.axis_name = "mw_detuning_rad_s";
    s.axis.resize(n);
    for (int i = 0; i < n; ++i) {
        s.axis[i] = lo + (hi - lo) * i / (n - 1);
        pts[i].detuning_mw = s.axis[i];
    }
    const auto res = run_points(cfg, pts, opt.threads);
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values[i] = res[i].coherence_intensity;
    return s;
}

Spectrum sweep_mw_power(const ConverterConfig& cfg, double intensity_lo,
                        double intensity_hi, int n, const SweepOptions& opt) {
    if (n < 2 || !(intensity_hi > intensity_lo) || !(intensity_lo > 0.0))
        throw std::invalid_argument("sweep_mw_power: bad intensity range");
    std::vector<ConverterConfig> pts(n, cfg);
    Spectrum s;
    s.axis_name = "mw_intensity_W_m2";
    s.axis.resize(n);
    const double llo = std::log(intensity_lo), lhi = std::log(intensity_hi);
    for (int i = 0; i < n; ++i) {
        s.axis[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
        pts[i].rabi_mw = rabi_from_field(field_from_intensity(s.axis[i]), cfg.dipole_mw);
    }
    const auto res = run_points(cfg, pts, opt.threads);
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values[i] = res[i].coherence_intensity;
    return s;
}

DetuningMap sweep_level_map(const ConverterConfig& cfg,
                            double lo_55d, double hi_55d, int n_55d,
                            double lo_54f, double hi_54f, int n_54f,
                            const SweepOptions& opt) {
    if (n_55d < 2 || n_54f < 2)
        throw std::invalid_argument("sweep_level_map: need at least 2x2 points");
    DetuningMap map;
    map.delta_55d.resize(n_55d);
    map.delta_54f.resize(n_54f);
    for (int i = 0; i < n_55d; ++i)
        map.delta_55d[i] = lo_55d + (hi_55d - lo_55d) * i / (n_55d - 1);
    for (int j = 0; j < n_54f; ++j)
        map.delta_54f[j] = lo_54f + (hi_54f - lo_54f) * j / (n_54f - 1);
    std::vector<ConverterConfig> pts;
    pts.reserve(static_cast<std::size_t>(n_55d) * n_54f);
    for (int i = 0; i < n_55d; ++i)
        for (int j = 0; j < n_54f; ++j)
            pts.push_back(with_field_detunings(
                cfg, level_detunings_to_field(map.delta_55d[i], map.delta_54f[j])));
    const auto res = run_points(cfg, pts, opt.threads);
    map.values.resize(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
        map.values[k] = res[k].coherence_intensity;
    return map;
}

EitConversionCurves sweep_probe_detuning(const ConverterConfig& cfg, double lo,
                                         double hi, int n, const SweepOptions& opt) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("sweep_probe_detuning: bad range");
    std::vector<ConverterConfig> pts(n, cfg);
    EitConversionCurves c;
    c.detuning.resize(n);
    for (int i = 0; i < n; ++i) {
        c.detuning[i] = lo + (hi - lo) * i / (n - 1);
        pts[i].detuning_probe = c.detuning[i];
    }
    const auto res = run_points(cfg, pts, opt.threads);
    c.eit.resize(n);
    c.conversion.resize(n);
    for (int i = 0; i < n; ++i) {
        c.eit[i] = res[i].eit;
        c.conversion[i] = res[i].coherence_intensity;
    }
    return c;
}

FwhmResult fwhm(const Spectrum& s) {
    const std::size_t n = s.values.size();
    if (n < 3) throw NoPeak("fwhm: need at least 3 samples");
    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(s.values.begin(), s.values.end()) - s.values.begin());
    if (imax == 0 || imax == n - 1)
        throw NoPeak("fwhm: maximum sits on the axis boundary");
    const double half = s.values[imax] / 2.0;

    // collect all half-maximum crossings by linear interpolation
    std::vector<double> crossings;
    for (std::size_t i = 1; i < n; ++i) {
        const double a = s.values[i - 1] - half, b = s.values[i] - half;
        if (a == 0.0) crossings.push_back(s.axis[i - 1]);
        else if (a * b < 0.0)
            crossings.push_back(s.axis[i - 1]
                + (s.axis[i] - s.axis[i - 1]) * (-a) / (b - a));
    }
    if (crossings.size() < 2)
        throw NoPeak("fwhm: curve does not fall to half maximum on both sides");
    FwhmResult r;
    r.multi_peak = crossings.size() > 2;
    // widest pair: robust against dressed-state shoulders
    r.width = std::abs(crossings.back() - crossings.front());
    return r;
}

double integral_bandwidth(const Spectrum& s) {
    if (s.values.empty()) throw std::invalid_argument("integral_bandwidth: empty spectrum");
    const double m = *std::max_element(s.values.begin(), s.values.end());
    if (!(m > 0.0)) throw std::invalid_argument("integral_bandwidth: max must be > 0");
    return trapezoid(s.axis, s.values) / m;
}

std::pair<double, double> bright_state_positions(double rabi_probe, double rabi_coupling) {
    if (rabi_probe < 0.0 || rabi_coupling < 0.0 || (rabi_probe == 0.0 && rabi_coupling == 0.0))
        throw std::invalid_argument("bright_state_positions: need a nonzero Rabi frequency");
    const double split = 0.5 * std::hypot(rabi_probe, rabi_coupling);
    return {-split, split};
}

void normalize(Spectrum& s, Normalization how) {
    if (how == Normalization::None) return;
    double scale = 0.0;
    if (how == Normalization::Max)
        scale = *std::max_element(s.values.begin(), s.values.end());
    else
        scale = trapezoid(s.axis, s.values);
    if (scale > 0.0)
        for (double& v : s.values) v /= scale;
    s.normalization = how;
}

} // namespace rydconv
