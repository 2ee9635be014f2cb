#ifndef NFTRAP_CONSTANTS_HPP
#define NFTRAP_CONSTANTS_HPP

namespace nftrap {

// CODATA 2018 values, SI units.
namespace constants {

inline constexpr double c0      = 2.99792458e8;        // speed of light [m/s]
inline constexpr double hbar    = 1.054571817e-34;     // reduced Planck [J s]
inline constexpr double h_planck= 6.62607015e-34;      // Planck [J s]
inline constexpr double eps0    = 8.8541878128e-12;    // vacuum permittivity [F/m]
inline constexpr double mu0     = 1.25663706212e-6;    // vacuum permeability [N/A^2]
inline constexpr double qe      = 1.602176634e-19;     // elementary charge [C]
inline constexpr double a0      = 5.29177210903e-11;   // Bohr radius [m]
inline constexpr double amu     = 1.66053906660e-27;   // atomic mass unit [kg]
inline constexpr double kB      = 1.380649e-23;        // Boltzmann [J/K]
inline constexpr double pi      = 3.14159265358979323846;
inline constexpr double two_pi  = 2.0 * pi;

// dipole moment unit e*a0 in C m
inline constexpr double e_a0    = qe * a0;
// photon energy <-> angular frequency: omega [rad/s] = eV_to_rad_s * E [eV]
inline constexpr double eV_to_rad_s = qe / hbar;

} // namespace constants

} // namespace nftrap

#endif
