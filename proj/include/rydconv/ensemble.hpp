#pragma once

#include "rydconv/config.hpp"
#include "rydconv/master_equation.hpp"

#include <complex>
#include <vector>

// Maxwell-Boltzmann velocity average and transverse Gaussian-profile average
// of the single-class steady state.
//
// The conversion resonances are only a few MHz wide in the two-photon
// detuning, which maps to a few m/s in velocity; a plain uniform grid over
// the full +-4 sigma Doppler span would need thousands of nodes to resolve
// them. The default grid is therefore composite: a dense uniform core
// around v=0 (where the drive fields select their velocity classes) plus
// geometrically spaced wing nodes carrying the rest of the Maxwell weight.

namespace rydconv {

// normalized 1D Maxwell-Boltzmann density, 1/(m/s)
double maxwell_weight(double v, double temperature, double mass);

struct VelocityGrid {
    std::vector<double> nodes;   // m/s, ascending, symmetric about 0
    std::vector<double> weights; // sum to 1

    static VelocityGrid composite(double temperature, double mass, double core,
                                  double core_step, int wing_points,
                                  double span_sigmas);
    static VelocityGrid uniform(double temperature, double mass, int points,
                                double span_sigmas);
    static VelocityGrid from_config(const ConverterConfig& cfg);
    static VelocityGrid single_class(double v = 0.0);

    bool valid(double* weight_sum_error = nullptr) const;
};

struct BeamGrid {
    std::vector<double> nodes;   // radial positions, m
    std::vector<double> weights; // area weights, sum to 1

    // Gauss-Legendre shells on [0, cutoff*w0], weight ~ r dr
    static BeamGrid shells(double waist, int points, double cutoff_w0);
    static BeamGrid from_config(const ConverterConfig& cfg);
    static BeamGrid on_axis();
};

struct EnsembleResponse {
    Complex coherence_amplitude;  // weighted signal coherence (coherent mode)
    double coherence_intensity;   // |amplitude|^2, or weighted |rho_s|^2
    double eit;                   // weighted probe absorption
};

// Solves the steady state on every (velocity, radius) node. The optical Rabi
// frequencies are scaled by exp(-r^2/w0^2); detunings are Doppler-shifted.
// The signal coherence is averaged as an amplitude and squared afterwards
// (all classes emit into one spatial mode); EIT averages incoherently.
// Summation runs in a fixed node order, so results are reproducible.
EnsembleResponse average_response(const ConverterConfig& cfg,
                                  const VelocityGrid& vgrid,
                                  const BeamGrid& bgrid);

EnsembleResponse average_response(const ConverterConfig& cfg);

// same, reusing a prepared solver (jump operators don't depend on the node)
EnsembleResponse average_response(const ConverterConfig& cfg,
                                  const VelocityGrid& vgrid,
                                  const BeamGrid& bgrid,
                                  const SteadyStateSolver& solver);

} // namespace rydconv
