#ifndef NFTRAP_DRESSING_HPP
#define NFTRAP_DRESSING_HPP

#include "nftrap/atomic_data.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nftrap {

// Laser parameters of the doubly-dressed scheme.
struct DressingConfig {
    // 1529 nm dressing laser(s)
    double lambda_1529 = 1529.34e-9; // [m]
    double p1529_back = 0.0;         // [W]
    double alpha_1529 = 0.0;         // P_front / P_back
    double waist_1529 = 200e-6;      // [m]
    double xi_detuning = 0.0;        // blue detuning from the 5P-4D line [rad/s]
    // 780 nm coupling laser
    double delta0 = 0.0;             // omega_L - omega0_vac [rad/s]
    double omega_rabi = 0.0;         // [rad/s], spatially homogeneous
    // the full 5P-5S potential difference shifts the local transition
    // frequency; toggled off, only the optical 5P shift enters Delta(z)
    bool fold_cp_into_detuning = true;
};

// Spatially homogeneous Rabi frequency from beam power via a calibration
// anchor (P_ref, w_ref) -> OmegaR_ref; scales as sqrt(P)/w.
struct RabiCalibration {
    double p_ref = 200e-3;
    double w_ref = 200e-6;
    double omega_ref = 0.0; // [rad/s]
    double rabi(double power, double waist) const;
};

// Effective 5P-4D coupling dipole entering the 1529 nm Rabi frequency:
// d_eff^2 = S (2J_m+1) / (3 (2J_n+1)) with S the line strength of the
// 5P3/2 -> 4D5/2 transition (strong-field coupling in the fine-structure
// basis; reproduces the reference AC-Stark shift amplitude).
double effective_dipole_5p4d(const TransitionTable& table);

// Two-level light shift of the 5P state dressed by the 1529 nm field:
// U = (hbar/2) (sqrt(Xi^2 + Omega^2) - Xi), Omega^2 = 2 d^2 I/(eps0 c hbar^2).
// Blue detuning (Xi > 0) gives a positive, repulsive shift.
double ac_stark_5p(double intensity, double xi_detuning, double dipole);

struct DetuningProfile {
    std::vector<double> delta;  // Delta(z) [rad/s]
    std::optional<double> z_b;  // resonance position (Delta = 0), if any
};

// Delta(z) = Delta0 - U_shift(z)/hbar; z_b from the outermost sign change,
// refined by linear interpolation. U_shift is the 5P optical shift (or the
// full 5P-5S difference when folding CP in).
DetuningProfile detuning_profile(const std::vector<double>& z,
                                 const std::vector<double>& u_shift,
                                 double delta0);

// Two-level optical Bloch steady state.
// rho_ee = (Omega^2/4) / (Delta^2 + Omega^2/2 + Gamma0^2/4)
double bloch_steady_state_ee(double omega_rabi, double delta, double gamma0);

// Population-weighted total potential, integrated from the far boundary:
// U(z) = -int_inf^z [rho_ee U_5P' + rho_gg U_5S'] dz'  (trapezoid).
// Inputs are sampled on a common ascending z grid with U -> 0 at z.back().
struct TotalPotential {
    std::vector<double> U;        // [J]
    std::vector<double> dU5S;     // derivative grids [J/m]
    std::vector<double> dU5P;
    bool far_boundary_flagged = false;
};
TotalPotential total_potential(const std::vector<double>& z,
                               const std::vector<double>& u5s,
                               const std::vector<double>& u5p,
                               const std::vector<double>& rho_ee,
                               double far_tolerance = 1e-30);

// numerical derivative on a non-uniform grid (3-point stencil)
std::vector<double> gradient(const std::vector<double>& z,
                             const std::vector<double>& f);

enum class TrapStatus { Ok, NonTrapped, NonPeriodicallyModulated };

struct TrapReport {
    TrapStatus status = TrapStatus::NonTrapped;
    double z_b = 0.0;        // resonance position [m]
    double z_t = 0.0;        // trap position [m]
    double z_barrier = 0.0;  // barrier peak position [m]
    double U_min = 0.0;      // potential at the trap minimum [J]
    double U0 = 0.0;         // trap depth: min escape barrier [J]
    double Ub = 0.0;         // barrier height above the minimum [J]
    double Ul = 0.0;         // lattice depth (grating maps only) [J]
    double omega_z = 0.0;    // [rad/s]
    double omega_x = 0.0;    // [rad/s], grating maps only
    double rho_ee_at_trap = 0.0;
};

// Trap metrics of a sampled potential curve. The trap is the deepest
// interior minimum beyond z_b (when supplied); quadratic fit over +-2 grid
// points gives the frequency.
TrapReport trap_geometry(const std::vector<double>& z,
                         const std::vector<double>& U, double mass,
                         std::optional<double> z_b = std::nullopt,
                         const std::vector<double>* rho_ee = nullptr);

} // namespace nftrap

#endif
