#pragma once

#include "rydconv/config.hpp"
#include "rydconv/density_matrix.hpp"
#include "rydconv/level_scheme.hpp"

#include <stdexcept>
#include <vector>

// Steady state of the five-level GKSL equation for one velocity class.
//
// Sign conventions, used everywhere in this project:
//  * detunings are field minus transition frequency, red detuning negative;
//  * the Doppler-shifted detuning of field n is  Dn' = Dn - k_n v  with the
//    signed wavevector k_n (probe propagates along -z, so k_p < 0);
//  * the rotating-frame Hamiltonian carries the cumulative level detunings
//    on its diagonal with a minus sign:  H_kk = -delta_k,
//      delta_e = Dp', delta_r1 = Dp'+Dc', delta_r2 = Dp'+Dc'+Dmw',
//      delta_s = Dp'+Dc'+Dmw'-Dd';
//  * in this frame probe absorption is +Im(rho_ge).
//
// Density matrices are vectorized column-major: vec[j*5+i] = rho(i,j).

namespace rydconv {

struct SingularLiouvillian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// beam_scale multiplies the optical Rabi frequencies (Gaussian transverse
// profile); the MW field is a plane wave and is not scaled.
Matrix5c build_hamiltonian(const ConverterConfig& cfg, double velocity,
                           double beam_scale = 1.0);

// weighted collapse operators: four spontaneous channels, five transit
// channels refilling the ground state, and optional uniform dephasing
std::vector<Matrix5c> build_jump_operators(const ConverterConfig& cfg);

Matrix25c liouvillian_matrix(const Matrix5c& hamiltonian,
                             const std::vector<Matrix5c>& jumps);

// applies the generator directly; used by tests to check residuals
Matrix5c apply_liouvillian(const Matrix5c& hamiltonian,
                           const std::vector<Matrix5c>& jumps,
                           const Matrix5c& rho);

// Solves L[rho]=0 with Tr(rho)=1 by replacing one row of the vectorized
// Liouvillian with the trace constraint. The jump superoperator is cached,
// so one solver instance amortizes over many Hamiltonians (velocity classes,
// beam shells, sweep points). Thread-safe: solve() has no mutable state.
class SteadyStateSolver {
public:
    explicit SteadyStateSolver(std::vector<Matrix5c> jumps);

    struct Result {
        DensityMatrix state;
        double residual; // ||L[rho]||_2 / ||L||_F
    };

    Result solve(const Matrix5c& hamiltonian) const;

    static constexpr double residual_tolerance = 1e-10;
    static constexpr double null_space_tolerance = 1e-8;

private:
    std::vector<Matrix5c> jumps_;
    Matrix25c jump_superop_;
};

// convenience wrapper for single solves
DensityMatrix steady_state(const Matrix5c& hamiltonian,
                           const std::vector<Matrix5c>& jumps);

// rho_s = Tr(|s><e| rho): the s<->e optical coherence driving the signal
inline Complex signal_coherence(const DensityMatrix& dm) {
    return dm.rho(LvlE, LvlS);
}

// probe absorption, positive on resonance (see sign conventions above)
inline double eit_signal(const DensityMatrix& dm) {
    return std::imag(dm.rho(LvlG, LvlE));
}

} // namespace rydconv
