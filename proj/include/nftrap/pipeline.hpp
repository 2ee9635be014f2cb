#ifndef NFTRAP_PIPELINE_HPP
#define NFTRAP_PIPELINE_HPP

#include "nftrap/casimir_polder.hpp"
#include "nftrap/dressing.hpp"
#include "nftrap/stratified.hpp"
#include "nftrap/trap_dynamics.hpp"

#include <optional>
#include <vector>

namespace nftrap {

struct GridSpec {
    double z_min = 2e-9;
    double z_max = 2e-6;
    int z_points = 600;   // log-spaced
    int x_columns = 33;   // grating maps
    std::vector<double> make_z() const;
};

struct PlanarTrapSolution {
    std::vector<double> z;
    std::vector<double> u5s_cp;     // [J]
    std::vector<double> u5p_cp;
    std::vector<double> u5p_opt;    // AC-Stark part
    std::vector<double> intensity;  // 1529 nm intensity [W/m^2]
    std::vector<double> delta;      // [rad/s]
    std::vector<double> rho_ee;
    std::vector<double> U;          // total potential [J]
    std::optional<double> z_b;
    TrapReport report;
    IntensityProfile profile;       // 1529 field metadata
    double theta_spr = 0.0;
    bool cp_flagged = false;
};

struct PlanarPipelineInput {
    LayerStack stack;
    DressingConfig dressing;
    GridSpec grid;
    QuadratureSpec quad;
    std::optional<double> theta_back; // radians; unset = per-stack SPR angle
    int threads = 1;
};

// CP curves may be supplied to avoid recomputation across laser scans.
struct PlanarCpCache {
    std::vector<double> z;
    std::vector<double> u5s;
    std::vector<double> u5p;
    bool flagged = false;
};

PlanarCpCache compute_planar_cp(const TransitionTable& table,
                                const MaterialLibrary& lib,
                                const LayerStack& stack,
                                const std::vector<double>& z,
                                const QuadratureSpec& quad, int threads);

PlanarTrapSolution solve_planar_trap(const TransitionTable& table,
                                     const MaterialLibrary& lib,
                                     const PlanarPipelineInput& in,
                                     const PlanarCpCache* cp = nullptr);

// Ground state and the four characteristic times at the trap of `sol`.
struct TrapLifetimes {
    BoundState bound;
    LifetimeBudget budget;
    bool trapped = false;
};

TrapLifetimes compute_lifetimes(const TransitionTable& table,
                                const PlanarTrapSolution& sol,
                                double k_eff_factor = 1.0,
                                bool energy_ref_trap_minimum = true);

// Shared lifetime assembly used by planar and grating pipelines.
TrapLifetimes compute_lifetimes_from_curves(
    const TransitionTable& table, const std::vector<double>& z,
    const std::vector<double>& U, const std::vector<double>& delta,
    const std::vector<double>& rho_ee, const std::vector<double>& du5p,
    const TrapReport& report, double k_eff_factor,
    bool energy_ref_trap_minimum);

} // namespace nftrap

#endif
