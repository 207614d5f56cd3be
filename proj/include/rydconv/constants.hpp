#pragma once

// Physical constants (CODATA 2018) and the angular-frequency unit helpers
// used throughout. All internal quantities are SI: rad/s, m, kg, K.

namespace rydconv::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 2.99792458e8;        // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double boltzmann = 1.380649e-23;             // J/K
inline constexpr double bohr_radius = 5.29177210903e-11;      // m
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

// dipole moments in this domain are quoted in units of a0*e
inline constexpr double a0e = bohr_radius * elementary_charge; // C m

inline constexpr double mass_rb85 = 84.911789738 * atomic_mass_unit;

} // namespace rydconv::constants

namespace rydconv::units {

inline constexpr double MHz_2pi = 2.0 * constants::pi * 1e6; // rad/s
inline constexpr double kHz_2pi = 2.0 * constants::pi * 1e3;
inline constexpr double GHz_2pi = 2.0 * constants::pi * 1e9;

} // namespace rydconv::units
