#include "rydconv/thermal.hpp"

#include "rydconv/constants.hpp"
#include "rydconv/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rydconv {

double planck_energy(double omega, double temperature) {
    if (omega <= 0.0) throw std::invalid_argument("planck_energy: omega must be > 0");
    if (temperature <= 0.0) return 0.0;
    const double x = constants::hbar * omega / (constants::boltzmann * temperature);
    return constants::hbar * omega / std::expm1(x);
}

namespace {

double mode_density_factor(double omega, double temperature) {
    const double c = constants::speed_of_light;
    return omega * omega * planck_energy(omega, temperature)
         / (constants::pi * constants::pi * c * c * c * constants::vacuum_permittivity);
}

} // namespace

double effective_field_spectral_density(double temperature,
                                        const ReceptionPattern& pattern,
                                        double omega) {
    std::vector<double> integrand(pattern.theta.size());
    for (std::size_t i = 0; i < pattern.theta.size(); ++i)
        integrand[i] = pattern.gain_sigma_plus[i] * std::sin(pattern.theta[i]);
    const double angular = 0.5 * trapezoid(pattern.theta, integrand);
    return std::sqrt(mode_density_factor(omega, temperature) * angular);
}

double total_field_fluctuations(double temperature, double omega) {
    return std::sqrt(mode_density_factor(omega, temperature) * 2.0);
}

double band_integrate_field(double spectral_density, double band) {
    if (band < 0.0) throw std::invalid_argument("band_integrate_field: band must be >= 0");
    return spectral_density * std::sqrt(band);
}

double intensity_from_field(double field) {
    return 0.5 * constants::speed_of_light * constants::vacuum_permittivity * field * field;
}

double field_from_intensity(double intensity) {
    if (intensity < 0.0) throw std::invalid_argument("field_from_intensity: intensity < 0");
    return std::sqrt(2.0 * intensity
                     / (constants::speed_of_light * constants::vacuum_permittivity));
}

double rabi_from_field(double field, double dipole) {
    if (dipole <= 0.0) throw std::invalid_argument("rabi_from_field: dipole must be > 0");
    return dipole * field / constants::hbar;
}

double field_from_rabi(double rabi, double dipole) {
    if (dipole <= 0.0) throw std::invalid_argument("field_from_rabi: dipole must be > 0");
    return constants::hbar * rabi / dipole;
}

double noise_equivalent_temperature(double rate_noise, double rate_thermal_ref,
                                    double temperature_ref) {
    if (rate_thermal_ref <= 0.0)
        throw std::invalid_argument("noise_equivalent_temperature: reference rate must be > 0");
    return temperature_ref * rate_noise / rate_thermal_ref;
}

double thermal_photon_rate(double temperature, const ReceptionPattern& pattern,
                           double band, double aperture, double efficiency_chain,
                           double omega) {
    const double density = effective_field_spectral_density(temperature, pattern, omega);
    const double field = band_integrate_field(density, band);
    const double intensity = intensity_from_field(field);
    return intensity * aperture / (constants::hbar * omega) * efficiency_chain;
}

} // namespace rydconv
