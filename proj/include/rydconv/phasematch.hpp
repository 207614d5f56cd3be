#pragma once

#include "rydconv/config.hpp"
#include "rydconv/gaussian_beam.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

// Phase-matching factor eta_phm(theta) for a plane-wave MW field entering at
// angle theta to the beam axis, and the polarization-resolved reception
// pattern |eta(theta)|^2 built from it.
//
// The detection mode wavelength is derived from energy conservation of the
// mixing loop (k_s = k_c - k_d + k_mw) unless the config pins it; with the
// nominal rounded wavelengths instead, a spurious residual mismatch of order
// 1e3 rad/m would swamp the Gouy-phase physics the pattern is about.

namespace rydconv {

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PhaseMatchGeometry {
    GaussianMode probe;      // enters as |E_p|^2: phase cancels
    GaussianMode coupling;
    GaussianMode decoupling; // conjugated in the susceptibility
    GaussianMode detection;  // u_s, 776 nm class
    double mw_wavevector;    // rad/m
    double cell_length;      // m
    double probe_absorption; // 1/m
    bool absorption_both_factors; // exp(-2 alpha z) vs exp(-alpha z)

    static PhaseMatchGeometry from_config(const ConverterConfig& cfg);
};

struct QuadratureSpec {
    int nz = 64;
    int nrho = 24;
    int nphi = 16;
    double rho_cutoff_w0 = 4.0;

    QuadratureSpec doubled() const { return {2 * nz, 2 * nrho, 2 * nphi, rho_cutoff_w0}; }
};

// chi_theta(r) = |E_p|^2 E_c E_d^* E_MW(theta) at cylindrical (rho, phi, z)
std::complex<double> susceptibility(const PhaseMatchGeometry& g, double theta,
                                    double rho, double phi, double z);

// triple integral of chi_theta u_s^* over the cell; relative normalization
// only (callers compare against the theta-maximum)
std::complex<double> eta_phm(const PhaseMatchGeometry& g, double theta,
                             const QuadratureSpec& quad = {});

// eta_phm with a node-doubling convergence check (0.5% on |eta|)
std::complex<double> eta_phm_checked(const PhaseMatchGeometry& g, double theta,
                                     const QuadratureSpec& quad = {});

// circular polarization projections; they sum to 1 for every theta
double polarization_sigma_plus(double theta);   // cos^4(t/2) + sin^4(t/2)
double polarization_sigma_minus(double theta);  // 2 cos^2(t/2) sin^2(t/2)

struct ReceptionPattern {
    std::vector<double> theta;            // rad, [0, pi]
    std::vector<double> gain_sigma_plus;  // normalized to max = 1
    std::vector<double> gain_sigma_minus; // same normalization
};

// samples |eta(theta)|^2 for both polarizations over [0, pi]; convergence is
// spot-checked at three angles (every theta would double the runtime for no
// extra information, the integrand geometry does not change with theta)
ReceptionPattern reception_pattern(const PhaseMatchGeometry& g, int ntheta,
                                   const QuadratureSpec& quad = {});

// fraction of isotropic thermal radiation accepted by the converter:
// (1/4pi) Int |eta_sigma+|^2 dOmega / 2 (two polarization modes)
double coupling_fraction(const ReceptionPattern& p);

} // namespace rydconv
