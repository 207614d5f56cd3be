#include "rydconv/budget.hpp"

#include "rydconv/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace rydconv {

double LossChain::transmission() const {
    double t = 1.0;
    for (const Item& item : items) {
        if (item.loss < 0.0 || item.loss >= 1.0)
            throw std::invalid_argument("LossChain: loss fraction must be in [0, 1)");
        t *= 1.0 - item.loss;
    }
    return t;
}

LossChain LossChain::output_chain_default() {
    return {{
        {"cell exit window", 0.10},
        {"optical filtering", 0.19},
        {"fiber coupling", 0.16},
        {"fiber-fiber connector", 0.20},
        {"photon detector", 0.15},
    }};
}

DesignMatrix design_matrix() {
    DesignMatrix d;
    d.forward = {{{1, 0, 0, 0, 0, 0, 0, 0},
                  {1, 1, 0, 0, 0, 0, 0, 0},
                  {1, 0, 1, 0, 0, 0, 0, 0},
                  {1, 0, 0, 1, 0, 0, 0, 0},
                  {1, 1, 1, 0, 1, 0, 0, 0},
                  {1, 1, 0, 1, 0, 1, 0, 0},
                  {1, 0, 1, 1, 0, 0, 1, 0},
                  {1, 1, 1, 1, 1, 1, 1, 1}}};
    d.inverse = {{{1, 0, 0, 0, 0, 0, 0, 0},
                  {-1, 1, 0, 0, 0, 0, 0, 0},
                  {-1, 0, 1, 0, 0, 0, 0, 0},
                  {-1, 0, 0, 1, 0, 0, 0, 0},
                  {1, -1, -1, 0, 1, 0, 0, 0},
                  {1, -1, 0, -1, 0, 1, 0, 0},
                  {1, 0, -1, -1, 0, 0, 1, 0},
                  {-1, 1, 1, 1, -1, -1, -1, 1}}};
    return d;
}

namespace {

// subsets of {0..fields-1} ordered by size then by bit pattern; matches the
// (none, p, c, d, pc, pd, cd, pcd) ordering for fields = 3
std::vector<unsigned> subset_order(int fields) {
    std::vector<unsigned> subsets;
    for (int size = 0; size <= fields; ++size)
        for (unsigned m = 0; m < (1u << fields); ++m)
            if (__builtin_popcount(m) == size) subsets.push_back(m);
    return subsets;
}

} // namespace

std::vector<std::vector<int>> factorial_design(int fields) {
    if (fields < 1 || fields > 16)
        throw std::invalid_argument("factorial_design: fields must be in [1, 16]");
    const auto subsets = subset_order(fields);
    const std::size_t n = subsets.size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = 0; col < n; ++col)
            m[row][col] = (subsets[col] & ~subsets[row]) == 0 ? 1 : 0; // col subset of row
    return m;
}

SourceDecomposition decompose_sources(const std::array<double, design_size>& rates) {
    const DesignMatrix d = design_matrix();
    SourceDecomposition out;
    out.rates = rates;
    for (int i = 0; i < design_size; ++i) {
        double c = 0.0;
        for (int j = 0; j < design_size; ++j)
            c += d.inverse[i][j] * rates[j];
        out.contributions[i] = c;
        if (c < 0.0) out.negative_indices.push_back(i);
    }
    const double full = rates[design_size - 1];
    for (int i = 0; i < design_size; ++i)
        out.percent_of_full[i] = full > 0.0 ? 100.0 * out.contributions[i] / full : 0.0;
    return out;
}

double effective_aperture(double waist, int power) {
    if (waist <= 0.0) throw std::invalid_argument("effective_aperture: waist must be > 0");
    if (power < 1) throw std::invalid_argument("effective_aperture: power must be >= 1");
    return constants::pi * waist * waist / (2.0 * power);
}

double measured_efficiency(double photon_rate, double mw_intensity, double aperture,
                           double omega_mw, double transmission) {
    if (mw_intensity <= 0.0 || aperture <= 0.0 || omega_mw <= 0.0 || transmission <= 0.0)
        throw std::invalid_argument("measured_efficiency: inputs must be positive");
    const double incident_rate = mw_intensity * aperture / (constants::hbar * omega_mw);
    return photon_rate / incident_rate / transmission;
}

double theoretical_efficiency(double beta, double dipole_mw, double dipole_signal,
                              double density, double effective_length,
                              double signal_wavevector, double omega_mw,
                              double omega_signal) {
    if (beta <= 0.0 || dipole_mw <= 0.0 || dipole_signal <= 0.0 || density <= 0.0
        || effective_length <= 0.0 || signal_wavevector <= 0.0 || omega_mw <= 0.0
        || omega_signal <= 0.0)
        throw std::invalid_argument("theoretical_efficiency: inputs must be positive");
    // emitted field per unit coherence from the phase-matched polarization
    const double field_per_coherence = signal_wavevector
        / (2.0 * constants::vacuum_permittivity) * density * effective_length * dipole_signal;
    // incident MW field per unit Rabi frequency
    const double field_per_rabi = constants::hbar / dipole_mw;
    const double amplitude_ratio = field_per_coherence * beta / field_per_rabi;
    return amplitude_ratio * amplitude_ratio * omega_mw / omega_signal;
}

double dynamic_range_db(double floor_intensity, double ceiling_intensity) {
    if (!(floor_intensity > 0.0) || !(ceiling_intensity > floor_intensity))
        throw std::invalid_argument("dynamic_range_db: need ceiling > floor > 0");
    return 10.0 * std::log10(ceiling_intensity / floor_intensity);
}

} // namespace rydconv
