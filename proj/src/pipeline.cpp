#include "nftrap/pipeline.hpp"
#include "nftrap/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nftrap {

using namespace constants;

std::vector<double> GridSpec::make_z() const
{
    if (z_min <= 0.0 || z_max <= z_min || z_points < 2)
        throw std::invalid_argument("GridSpec: bad z grid");
    std::vector<double> z(z_points);
    const double la = std::log(z_min), lb = std::log(z_max);
    for (int i = 0; i < z_points; ++i)
        z[i] = std::exp(la + (lb - la) * i / (z_points - 1));
    return z;
}

PlanarCpCache compute_planar_cp(const TransitionTable& table,
                                const MaterialLibrary& lib,
                                const LayerStack& stack,
                                const std::vector<double>& z,
                                const QuadratureSpec& quad, int threads)
{
    PlanarCpCache cp;
    cp.z = z;
    auto r5s = cp_planar_curve(table, "5S1/2", z, stack, lib, quad, threads);
    auto r5p = cp_planar_curve(table, "5P3/2", z, stack, lib, quad, threads);
    cp.u5s.resize(z.size());
    cp.u5p.resize(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        cp.u5s[i] = r5s[i].U;
        cp.u5p[i] = r5p[i].U;
        cp.flagged = cp.flagged || r5s[i].flagged || r5p[i].flagged;
    }
    return cp;
}

PlanarTrapSolution solve_planar_trap(const TransitionTable& table,
                                     const MaterialLibrary& lib,
                                     const PlanarPipelineInput& in,
                                     const PlanarCpCache* cp)
{
    PlanarTrapSolution sol;
    sol.z = in.grid.make_z();
    const size_t n = sol.z.size();

    PlanarCpCache local;
    if (!cp) {
        local = compute_planar_cp(table, lib, in.stack, sol.z, in.quad,
                                  in.threads);
        cp = &local;
    }
    if (cp->z.size() != n)
        throw std::invalid_argument("solve_planar_trap: CP cache grid mismatch");
    sol.u5s_cp = cp->u5s;
    sol.u5p_cp = cp->u5p;
    sol.cp_flagged = cp->flagged;

    // 1529 nm illumination through the substrate at the plasmonic angle
    double theta;
    if (in.theta_back) {
        theta = *in.theta_back;
    } else {
        SprResult spr =
            spr_angle(in.stack, lib, in.dressing.lambda_1529, in.stack.back);
        theta = spr.theta;
    }
    sol.theta_spr = theta;
    sol.profile = field_intensity_profile(
        in.stack, lib, in.dressing.lambda_1529, theta, in.dressing.p1529_back,
        in.dressing.waist_1529, Side::Back, sol.z, Polarization::P);
    sol.intensity = sol.profile.I;

    const double d_eff = effective_dipole_5p4d(table);
    sol.u5p_opt.resize(n);
    for (size_t i = 0; i < n; ++i)
        sol.u5p_opt[i] =
            ac_stark_5p(sol.intensity[i], in.dressing.xi_detuning, d_eff);

    std::vector<double> u5p_tot(n), shift(n);
    for (size_t i = 0; i < n; ++i) {
        u5p_tot[i] = sol.u5p_cp[i] + sol.u5p_opt[i];
        shift[i] = in.dressing.fold_cp_into_detuning
                       ? u5p_tot[i] - sol.u5s_cp[i]
                       : sol.u5p_opt[i];
    }

    DetuningProfile det = detuning_profile(sol.z, shift, in.dressing.delta0);
    sol.delta = det.delta;
    sol.z_b = det.z_b;

    sol.rho_ee.resize(n);
    for (size_t i = 0; i < n; ++i)
        sol.rho_ee[i] = bloch_steady_state_ee(in.dressing.omega_rabi,
                                              sol.delta[i],
                                              table.atom().gamma0);

    TotalPotential tot =
        total_potential(sol.z, sol.u5s_cp, u5p_tot, sol.rho_ee,
                        h_planck * 1e3 /* 1 kHz far-boundary tolerance */);
    sol.U = tot.U;

    sol.report = trap_geometry(sol.z, sol.U, table.atom().mass, sol.z_b,
                               &sol.rho_ee);
    return sol;
}

TrapLifetimes compute_lifetimes_from_curves(
    const TransitionTable& table, const std::vector<double>& z,
    const std::vector<double>& U, const std::vector<double>& delta,
    const std::vector<double>& rho_ee, const std::vector<double>& du5p,
    const TrapReport& report, double k_eff_factor,
    bool energy_ref_trap_minimum)
{
    TrapLifetimes out;
    if (report.status != TrapStatus::Ok) return out;
    const double m = table.atom().mass;

    // ITP domain: from the barrier peak outward; the potential below the
    // barrier is excluded (tunneling is tau_t's job)
    size_t ibar = 0, itrap = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        if (z[i] <= report.z_barrier) ibar = i;
        if (z[i] <= report.z_t) itrap = i;
    }
    const double span = std::max(report.z_t - report.z_barrier, 2e-9);
    const double z_hi = std::min(z.back(), report.z_t + 25.0 * span);
    std::vector<double> zi, Ui;
    for (size_t i = ibar; i < z.size() && z[i] <= z_hi; ++i) {
        zi.push_back(z[i]);
        Ui.push_back(U[i]);
    }
    if (zi.size() < 8) return out;
    out.bound = ground_state_itp(zi, Ui, m);
    const double E_abs = out.bound.E; // referenced to U(inf) = 0
    if (!out.bound.converged || E_abs >= 0.0) return out;
    out.trapped = true;

    // interpolate local quantities at z_t
    auto at_trap = [&](const std::vector<double>& f) { return f[itrap]; };
    const double delta_t = at_trap(delta);
    const double rho_t = at_trap(rho_ee);
    const double du5p_t = at_trap(du5p);
    auto ddelta = gradient(z, delta);
    const double ddelta_t = at_trap(ddelta);

    LifetimeBudget b;
    b.gamma_sc = table.atom().gamma0 * rho_t;
    const double k_eff = k_eff_factor * table.atom().k0;
    b.tau_out = tau_out(b.gamma_sc, E_abs, k_eff, m);

    // WKB at the bound-state level; reference choice per config
    const double E_level = energy_ref_trap_minimum
                               ? report.U_min + (E_abs - report.U_min)
                               : E_abs;
    const double W = wkb_exponent(z, U, E_level, m, report.z_t);
    b.tau_tunnel = tau_tunnel(W, report.omega_z);
    b.log10_tau_tunnel =
        W > 0.0 ? (W - std::log(report.omega_z / two_pi)) / std::log(10.0)
                : -300.0;

    AntiDamping ad = tau_antidamping(delta_t, b.gamma_sc, du5p_t, ddelta_t,
                                     E_abs, out.bound.dp, m, table.atom().k0,
                                     table.atom().omega_recoil,
                                     table.atom().gamma0);
    b.beta = ad.beta;
    b.tau_ad = ad.tau;
    b.tau_adiabatic = tau_adiabatic(out.bound.dz, out.bound.dp, m);
    b.tau_combined =
        1.0 / (1.0 / b.tau_out + 1.0 / b.tau_ad + 1.0 / b.tau_tunnel);
    out.budget = b;
    return out;
}

TrapLifetimes compute_lifetimes(const TransitionTable& table,
                                const PlanarTrapSolution& sol,
                                double k_eff_factor,
                                bool energy_ref_trap_minimum)
{
    std::vector<double> u5p_tot(sol.z.size());
    for (size_t i = 0; i < sol.z.size(); ++i)
        u5p_tot[i] = sol.u5p_cp[i] + sol.u5p_opt[i];
    auto du5p = gradient(sol.z, u5p_tot);
    return compute_lifetimes_from_curves(table, sol.z, sol.U, sol.delta,
                                         sol.rho_ee, du5p, sol.report,
                                         k_eff_factor, energy_ref_trap_minimum);
}

} // namespace nftrap
