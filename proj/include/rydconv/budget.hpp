#pragma once

#include <array>
#include <string>
#include <vector>

// Efficiency and noise bookkeeping: the on/off factorial design matrix for
// source decomposition, effective apertures, the loss chain, and the
// efficiency and dynamic-range arithmetic.

namespace rydconv {

struct LossChain {
    struct Item {
        std::string label;
        double loss; // fraction in [0, 1)
    };
    std::vector<Item> items;

    double transmission() const; // product of (1 - loss)

    // the converter output chain: cell window, filters, fiber couplings,
    // detector
    static LossChain output_chain_default();
};

// source combinations in the fixed order (none, p, c, d, pc, pd, cd, pcd)
inline constexpr int design_size = 8;

struct DesignMatrix {
    std::array<std::array<int, design_size>, design_size> forward;
    std::array<std::array<int, design_size>, design_size> inverse;
};

// the 8x8 on/off design matrix and its exact integer inverse
DesignMatrix design_matrix();

// generator for arbitrary k-field on/off designs, rows/columns ordered by
// subset size then position (k=3 reproduces design_matrix().forward)
std::vector<std::vector<int>> factorial_design(int fields);

struct SourceDecomposition {
    std::array<double, design_size> rates;         // measured, 1/s
    std::array<double, design_size> contributions; // extracted, 1/s
    std::array<double, design_size> percent_of_full; // of the all-on rate
    std::vector<int> negative_indices; // measurement-noise flags, not fatal
};

SourceDecomposition decompose_sources(const std::array<double, design_size>& rates);

// area of the Gaussian drive product: Int exp(-2 r^2/w0^2)^power dA
// = pi w0^2 / (2 power); power 1 for one beam, 4 for the conversion product
double effective_aperture(double waist, int power);

// photon-rate efficiency: rate / (intensity * aperture / (hbar omega)),
// optionally referred before the output losses (divide by transmission)
double measured_efficiency(double photon_rate, double mw_intensity, double aperture,
                           double omega_mw, double transmission = 1.0);

// Photon-to-photon conversion efficiency from the linear-response slope
// beta = d rho_s / d Omega_MW [(rad/s)^-1]:
//   eta = |k_s/(2 eps0) n L_eff d_s beta|^2 / (hbar/d_MW)^2 * (w_MW / w_s),
// i.e. the emitted-signal to incident-MW intensity ratio times the photon
// energy ratio.
double theoretical_efficiency(double beta, double dipole_mw, double dipole_signal,
                              double density, double effective_length,
                              double signal_wavevector, double omega_mw,
                              double omega_signal);

double dynamic_range_db(double floor_intensity, double ceiling_intensity);

} // namespace rydconv
