#pragma once

#include "rydconv/phasematch.hpp"

// Black-body coupling model: Planck occupation, noise-equivalent field
// spectral densities, and the field/intensity/Rabi conversion chain.
//
// Field convention: E is the peak amplitude and I = (1/2) c eps0 E^2. The
// paper's (5.07 uV/cm, 3.41e-10 W/m2) pair pins this down; an RMS convention
// would be off by a factor of two.

namespace rydconv {

// mean thermal energy per mode, hbar w / (exp(hbar w / kB T) - 1); 0 at T=0
double planck_energy(double omega, double temperature);

// sqrt( w^2 <E> / (pi^2 c^3 eps0) * (1/4pi) Int |eta(theta)|^2 dOmega ),
// in V m^-1 (rad/s)^-1/2, using the sigma+ reception pattern
double effective_field_spectral_density(double temperature,
                                        const ReceptionPattern& pattern,
                                        double omega);

// same with isotropic both-polarization acceptance, |eta|^2 = 2
double total_field_fluctuations(double temperature, double omega);

// field integrated over the conversion band: E = density * sqrt(band)
double band_integrate_field(double spectral_density, double band);

double intensity_from_field(double field);   // I = 1/2 c eps0 E^2
double field_from_intensity(double intensity);

double rabi_from_field(double field, double dipole);  // Omega = d E / hbar
double field_from_rabi(double rabi, double dipole);

// Rayleigh-Jeans proportionality: T_NE = T_ref * rate_noise / rate_thermal
double noise_equivalent_temperature(double rate_noise, double rate_thermal_ref,
                                    double temperature_ref);

// end-to-end detected thermal photon rate:
// intensity(T, pattern, band) * aperture / (hbar w) * efficiency_chain
double thermal_photon_rate(double temperature, const ReceptionPattern& pattern,
                           double band, double aperture, double efficiency_chain,
                           double omega);

} // namespace rydconv
