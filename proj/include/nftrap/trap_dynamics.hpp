#ifndef NFTRAP_TRAP_DYNAMICS_HPP
#define NFTRAP_TRAP_DYNAMICS_HPP

#include <vector>

namespace nftrap {

struct BoundState {
    bool converged = false;
    double E = 0.0;       // ground-state energy, same reference as U [J]
    double dz = 0.0;      // position standard deviation [m]
    double dp = 0.0;      // momentum standard deviation [kg m/s]
    std::vector<double> z;
    std::vector<double> psi; // normalized, int |psi|^2 dz = 1
    std::vector<double> energy_trace; // E per accepted iteration
};

struct ItpOptions {
    int n_grid = 2048;
    int max_iter = 40000;
    double rel_tol = 1e-11;    // energy change per step
};

// Lowest eigenstate of -(hbar^2/2m) d2/dz2 + U(z) on [z.front(), z.back()]
// by imaginary-time split-step relaxation (Dirichlet box). U is linearly
// interpolated onto the uniform internal grid.
BoundState ground_state_itp(const std::vector<double>& z,
                            const std::vector<double>& U, double mass,
                            const ItpOptions& opts = {});

// WKB barrier transmission at energy E: the classically forbidden interval
// on the surface side of z_t. Returns the exponent
//   W = 2/hbar int sqrt(2m(U-E)) dz  (transmission T = e^-W),
// 0 when there is no forbidden region.
double wkb_exponent(const std::vector<double>& z, const std::vector<double>& U,
                    double E, double mass, double z_t);

// tunneling time: attempt rate = trap oscillation frequency omega_z/2pi
double tau_tunnel(double wkb_exp, double omega_z);

// exit time from recoil heating: tau = |E_g| / (hbar^2 k_eff^2/(2m) Gamma_sc)
double tau_out(double gamma_sc, double E_g, double k_eff, double mass);

// anti-damping rate on the blue side and the associated heating time
//   beta = -4 w_r Delta Gamma_sc /(k0^2 |Delta_c|^4) (dU5P/dz/hbar)(dDelta/dz)
//   tau_ad = log[(|E_g| + dp^2/2m)/(dp^2/2m)] / (2 beta)
struct AntiDamping {
    double beta = 0.0;   // [1/s]
    double beta_printed = 0.0; // literal-units variant, for logging only
    double tau = 0.0;    // [s]; infinity when beta <= 0
};
AntiDamping tau_antidamping(double delta_at_trap, double gamma_sc,
                            double dU5P_dz, double dDelta_dz, double E_g,
                            double dp, double mass, double k0,
                            double omega_recoil, double gamma0);

// characteristic adiabatic (oscillation) time m dz/dp
double tau_adiabatic(double dz, double dp, double mass);

struct LifetimeBudget {
    double gamma_sc = 0.0; // [1/s]
    double tau_out = 0.0;
    double tau_tunnel = 0.0;
    double log10_tau_tunnel = 0.0;
    double tau_ad = 0.0;
    double beta = 0.0;
    double tau_adiabatic = 0.0;
    double tau_combined = 0.0; // (1/out + 1/ad + 1/tunnel)^-1
};

} // namespace nftrap

#endif
