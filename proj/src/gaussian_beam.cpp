#include "rydconv/gaussian_beam.hpp"

#include "rydconv/constants.hpp"

#include <cmath>

namespace rydconv {

double GaussianMode::wavevector() const {
    return 2.0 * constants::pi / wavelength;
}

double GaussianMode::rayleigh_range() const {
    return constants::pi * waist * waist / wavelength;
}

double GaussianMode::width(double z) const {
    const double zr = rayleigh_range();
    const double u = (z - focus_z) / zr;
    return waist * std::sqrt(1.0 + u * u);
}

std::complex<double> gaussian_amplitude(const GaussianMode& mode, double rho, double z) {
    const double zr = mode.rayleigh_range();
    const double zz = z - mode.focus_z;
    const double w = mode.width(z);
    const double amp = (mode.waist / w) * std::exp(-rho * rho / (w * w));
    const double k = mode.wavevector();
    const double inv_r = zz / (zz * zz + zr * zr); // 1/R(z), finite at focus
    const double phase = k * zz + 0.5 * k * rho * rho * inv_r - std::atan2(zz, zr);
    const std::complex<double> u = amp * std::exp(std::complex<double>(0.0, phase));
    return mode.direction >= 0 ? u : std::conj(u);
}

} // namespace rydconv
