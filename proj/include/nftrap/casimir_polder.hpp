#ifndef NFTRAP_CASIMIR_POLDER_HPP
#define NFTRAP_CASIMIR_POLDER_HPP

#include "nftrap/atomic_data.hpp"
#include "nftrap/materials.hpp"
#include "nftrap/stratified.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace nftrap {

// Fixed-grid quadrature parameters for the CP integrals. Cutoffs are
// chosen so the discarded tails are negligible for z in [2 nm, 2 um];
// the decay of the integrand at the cutoffs is checked and flagged.
struct QuadratureSpec {
    // imaginary-frequency grid (log-spaced Gauss-Legendre)
    int n_xi = 56;
    double xi_min = 1e11;   // [rad/s]
    double xi_max = 3e17;
    // transverse (kappa) integral: Gauss panels in u = 2 kappa z
    int n_per_panel = 8;
    // resonant-term tolerances
    double res_rel_tol = 1e-7;
    // grating Green tensor grids
    int n_kx = 8;           // Brillouin-zone samples on [0, pi/ell]
    int n_ky = 40;          // transverse wavevector samples
    double ky_max = 8e8;    // [1/m]
    int n_orders = 13;      // RCWA truncation N (orders -N..N)
    double target_rel_tol = 1e-3;
};

struct CPResult {
    double U = 0.0;          // [J]
    bool flagged = false;    // tail decay below 6 orders at a cutoff
    double tail_xi = 0.0;    // edge-to-peak integrand ratios
    double tail_k = 0.0;
};

// Non-resonant CP potential of `state` at height z above the stack:
// imaginary-axis double integral over xi and the transverse wavevector.
CPResult cp_nonresonant_planar(const TransitionTable& table,
                               const std::string& state, double z,
                               const LayerStack& stack,
                               const MaterialLibrary& lib,
                               const QuadratureSpec& quad = {});

// Resonant (real-photon) part for the 5P state: propagating-window
// integral plus the evanescent kappa integral at the D2 frequency.
CPResult cp_resonant_planar(const TransitionTable& table, double z,
                            const LayerStack& stack,
                            const MaterialLibrary& lib,
                            const QuadratureSpec& quad = {});

// Full state-resolved planar CP potential (5S: non-resonant;
// 5P: non-resonant + resonant).
CPResult cp_planar(const TransitionTable& table, const std::string& state,
                   double z, const LayerStack& stack,
                   const MaterialLibrary& lib, const QuadratureSpec& quad = {});

// Curve over a z grid (parallelized by the caller if desired).
std::vector<CPResult> cp_planar_curve(const TransitionTable& table,
                                      const std::string& state,
                                      const std::vector<double>& z,
                                      const LayerStack& stack,
                                      const MaterialLibrary& lib,
                                      const QuadratureSpec& quad = {},
                                      int threads = 1);

// Diagonal of the planar scattering Green tensor at imaginary frequency,
// (Gxx, Gyy, Gzz) at coincident points a height z above the stack.
// Used to cross-validate the grating Green tensor in the planar limit.
std::array<double, 3> planar_green_diag_imag(double xi, double z,
                                             const LayerStack& stack,
                                             const MaterialLibrary& lib,
                                             const QuadratureSpec& quad = {});

// Same on the real axis (complex, radiative + evanescent parts).
std::array<std::complex<double>, 3> planar_green_diag_real(
    double omega, double z, const LayerStack& stack,
    const MaterialLibrary& lib, const QuadratureSpec& quad = {});

} // namespace nftrap

#endif
