#ifndef NFTRAP_ATOMIC_DATA_HPP
#define NFTRAP_ATOMIC_DATA_HPP

#include <string>
#include <vector>

namespace nftrap {

// One electric-dipole transition between fine-structure states.
// Reduced dipole moments use the convention in which the line strength
// S = |<Jn||d||Jm>|^2 enters the decay rate as
//   Gamma = omega^3 S / (3 pi eps0 hbar c^3 (2J_upper+1)).
struct Transition {
    std::string lower;      // e.g. "5S1/2"
    std::string upper;      // e.g. "5P3/2"
    double j_lower = 0.0;
    double j_upper = 0.0;
    double omega = 0.0;     // transition angular frequency [rad/s], > 0
    double dipole = 0.0;    // reduced dipole |<Jn||d||Jm>| [C m]
};

struct AtomConstants {
    double mass = 0.0;      // [kg]
    double gamma0 = 0.0;    // D2 natural linewidth [rad/s]
    double omega0_vac = 0.0;// D2 angular frequency [rad/s]
    double k0 = 0.0;        // D2 wavevector [1/m]
    double omega_recoil = 0.0; // hbar k0^2 / 2m [rad/s]
    double d0 = 0.0;        // D2 reduced dipole [C m]
};

class TransitionTable {
public:
    // Parse the plain-text table format:
    //   lower_state upper_state wavelength_nm reduced_dipole_ea0
    // '#' starts a comment, '@key value' lines set atom constants.
    static TransitionTable parse(const std::string& text);
    static TransitionTable load(const std::string& path);
    // Table bundled with the library (87Rb).
    static const TransitionTable& rb87();

    const std::vector<Transition>& entries() const { return entries_; }
    const AtomConstants& atom() const { return atom_; }

    // Isotropic dynamic polarizability of `state` at imaginary frequency
    // xi >= 0 [rad/s]; result in SI [C^2 m^2 / J].
    //   alpha(i xi) = 2/(3 hbar (2J_n+1)) sum_m omega_mn |d_mn|^2/(omega_mn^2+xi^2)
    // Downward channels enter with omega_mn < 0.
    double dynamic_polarizability(const std::string& state, double xi) const;

    // closed form of integral_0^inf alpha(i xi) d xi (each term integrates
    // to pi/2 sgn(omega) |d|^2); used by the short-distance mirror formulas
    double polarizability_integral(const std::string& state) const;

    // Lattice recoil energy for period ell: E_R = hbar^2 (pi/ell)^2 / 2m
    double lattice_recoil_energy(double ell) const;

    // Distinguished lines.
    const Transition& d2_line() const;        // 5S1/2 -> 5P3/2
    const Transition& line_5p_4d() const;     // 5P3/2 -> 4D5/2

    bool has_state(const std::string& state) const;
    double state_j(const std::string& state) const;

private:
    std::vector<Transition> entries_;
    AtomConstants atom_;
    void finalize();
};

} // namespace nftrap

#endif
