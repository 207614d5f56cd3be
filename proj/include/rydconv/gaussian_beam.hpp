#pragma once

#include <complex>

namespace rydconv {

// Focused fundamental Gaussian beam. Amplitude convention exp(-rho^2/w^2)
// with unit peak at the focus; phase k z + k rho^2/(2R) - Gouy, conjugated
// for backward propagation.
struct GaussianMode {
    double wavelength;  // m
    double waist;       // m, w0
    double focus_z;     // m, z0
    int direction;      // +1 along +z, -1 along -z

    double wavevector() const;     // magnitude, rad/m
    double rayleigh_range() const; // pi w0^2 / lambda
    double width(double z) const;  // w(z)
};

std::complex<double> gaussian_amplitude(const GaussianMode& mode, double rho, double z);

} // namespace rydconv
