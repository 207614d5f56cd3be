#include "rydconv/phasematch.hpp"

#include "rydconv/constants.hpp"
#include "rydconv/quadrature.hpp"

#include <cmath>

namespace rydconv {

PhaseMatchGeometry PhaseMatchGeometry::from_config(const ConverterConfig& cfg) {
    const double two_pi = 2.0 * constants::pi;
    PhaseMatchGeometry g;
    g.probe = {two_pi / std::abs(cfg.wavevector_probe), cfg.beam_waist, 0.0,
               cfg.wavevector_probe < 0 ? -1 : 1};
    g.coupling = {two_pi / std::abs(cfg.wavevector_coupling), cfg.beam_waist, 0.0, 1};
    g.decoupling = {two_pi / std::abs(cfg.wavevector_decoupling), cfg.beam_waist, 0.0, 1};
    g.detection = {two_pi / cfg.signal_wavevector(), cfg.beam_waist, 0.0, 1};
    g.mw_wavevector = std::abs(cfg.wavevector_mw);
    g.cell_length = cfg.cell_length;
    g.probe_absorption = cfg.probe_absorption;
    g.absorption_both_factors = cfg.probe_absorption_both_factors;
    return g;
}

std::complex<double> susceptibility(const PhaseMatchGeometry& g, double theta,
                                    double rho, double phi, double z) {
    // probe appears twice; its phase cancels exactly, so only |E_p|^2 enters
    const double wp = g.probe.width(z);
    const double w0p = g.probe.waist;
    double probe_sq = (w0p / wp) * (w0p / wp) * std::exp(-2.0 * rho * rho / (wp * wp));
    probe_sq *= std::exp(-(g.absorption_both_factors ? 2.0 : 1.0) * g.probe_absorption * z);

    const std::complex<double> ec = gaussian_amplitude(g.coupling, rho, z);
    const std::complex<double> ed = gaussian_amplitude(g.decoupling, rho, z);
    const double mw_phase = g.mw_wavevector
        * (std::sin(theta) * rho * std::cos(phi) + std::cos(theta) * z);
    const std::complex<double> emw = std::exp(std::complex<double>(0.0, mw_phase));
    return probe_sq * ec * std::conj(ed) * emw;
}

std::complex<double> eta_phm(const PhaseMatchGeometry& g, double theta,
                             const QuadratureSpec& quad) {
    const auto [zn, zw] = gauss_legendre(quad.nz, -0.5 * g.cell_length, 0.5 * g.cell_length);
    const auto [rn, rw] =
        gauss_legendre(quad.nrho, 0.0, quad.rho_cutoff_w0 * g.detection.waist);
    const auto [pn, pw] = gauss_legendre(quad.nphi, 0.0, 2.0 * constants::pi);

    std::complex<double> total(0.0, 0.0);
    for (int iz = 0; iz < quad.nz; ++iz)
        for (int ir = 0; ir < quad.nrho; ++ir) {
            const std::complex<double> us =
                std::conj(gaussian_amplitude(g.detection, rn[ir], zn[iz]));
            std::complex<double> phi_sum(0.0, 0.0);
            for (int ip = 0; ip < quad.nphi; ++ip)
                phi_sum += pw[ip] * susceptibility(g, theta, rn[ir], pn[ip], zn[iz]);
            total += zw[iz] * rw[ir] * rn[ir] * us * phi_sum;
        }
    return total;
}

std::complex<double> eta_phm_checked(const PhaseMatchGeometry& g, double theta,
                                     const QuadratureSpec& quad) {
    const std::complex<double> coarse = eta_phm(g, theta, quad);
    const std::complex<double> fine = eta_phm(g, theta, quad.doubled());
    const double scale = std::max(std::abs(fine), 1e-300);
    if (std::abs(std::abs(coarse) - std::abs(fine)) / scale > 5e-3)
        throw QuadratureNotConverged("eta_phm quadrature not converged at theta="
                                     + std::to_string(theta));
    return coarse;
}

double polarization_sigma_plus(double theta) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    return c * c * c * c + s * s * s * s;
}

double polarization_sigma_minus(double theta) {
    const double cs = std::cos(0.5 * theta) * std::sin(0.5 * theta);
    return 2.0 * cs * cs;
}

ReceptionPattern reception_pattern(const PhaseMatchGeometry& g, int ntheta,
                                   const QuadratureSpec& quad) {
    if (ntheta < 91)
        throw std::invalid_argument("reception_pattern: need at least 91 theta samples");
    ReceptionPattern p;
    p.theta.resize(ntheta);
    p.gain_sigma_plus.resize(ntheta);
    p.gain_sigma_minus.resize(ntheta);

    for (const double theta : {0.0, 0.6, 0.5 * constants::pi})
        (void)eta_phm_checked(g, theta, quad);

    double peak = 0.0;
    for (int i = 0; i < ntheta; ++i) {
        p.theta[i] = constants::pi * i / (ntheta - 1);
        const double e2 = std::norm(eta_phm(g, p.theta[i], quad));
        p.gain_sigma_plus[i] = polarization_sigma_plus(p.theta[i]) * e2;
        p.gain_sigma_minus[i] = polarization_sigma_minus(p.theta[i]) * e2;
        peak = std::max(peak, p.gain_sigma_plus[i]);
    }
    if (peak > 0.0)
        for (int i = 0; i < ntheta; ++i) {
            p.gain_sigma_plus[i] /= peak;
            p.gain_sigma_minus[i] /= peak;
        }
    return p;
}

double coupling_fraction(const ReceptionPattern& p) {
    // (1/4pi) Int gain+ dOmega = (1/2) Int gain+ sin(theta) dtheta; halve
    // again because isotropic radiation fills two polarization modes
    std::vector<double> integrand(p.theta.size());
    for (std::size_t i = 0; i < p.theta.size(); ++i)
        integrand[i] = p.gain_sigma_plus[i] * std::sin(p.theta[i]);
    return 0.25 * trapezoid(p.theta, integrand);
}

} // namespace rydconv
