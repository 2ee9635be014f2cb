#include "nftrap/trap_dynamics.hpp"
#include "nftrap/constants.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nftrap {

using namespace constants;

namespace {

std::mutex g_fftw_mutex; // fftw plan creation is not thread-safe

double interp_linear(const std::vector<double>& x, const std::vector<double>& y,
                     double xi)
{
    if (xi <= x.front()) return y.front();
    if (xi >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), xi);
    size_t i = it - x.begin();
    const double f = (xi - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + f * (y[i] - y[i - 1]);
}

} // namespace

BoundState ground_state_itp(const std::vector<double>& z,
                            const std::vector<double>& U, double mass,
                            const ItpOptions& opts)
{
    if (z.size() != U.size() || z.size() < 4)
        throw std::invalid_argument("ground_state_itp: bad input grids");
    const int n = opts.n_grid;
    const double za = z.front(), zb = z.back();
    const double L = zb - za;
    const double dx = L / (n - 1);

    std::vector<double> V(n);
    for (int i = 0; i < n; ++i) V[i] = interp_linear(z, U, za + i * dx);
    const double Vmin = *std::min_element(V.begin(), V.end());

    // k grid for the periodic FFT box (Dirichlet handled by wide margins;
    // the state decays exponentially before the edges)
    std::vector<double> k2(n);
    for (int i = 0; i < n; ++i) {
        double k = two_pi * ((i <= n / 2) ? i : i - n) / L;
        k2[i] = k * k;
    }

    fftw_complex* buf;
    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    // initial guess: Gaussian at the global minimum
    int imin = (int)(std::min_element(V.begin(), V.end()) - V.begin());
    std::vector<double> psi(n);
    const double w0 = 0.05 * L;
    for (int i = 0; i < n; ++i) {
        double d = (i - imin) * dx;
        psi[i] = std::exp(-d * d / (2.0 * w0 * w0));
    }

    auto normalize = [&](std::vector<double>& p) {
        double s = 0.0;
        for (double v : p) s += v * v;
        s = std::sqrt(s * dx);
        for (double& v : p) v /= s;
    };
    normalize(psi);

    auto energy = [&](const std::vector<double>& p) {
        for (int i = 0; i < n; ++i) { buf[i][0] = p[i]; buf[i][1] = 0.0; }
        fftw_execute(fwd);
        double ekin = 0.0, norm = 0.0;
        for (int i = 0; i < n; ++i) {
            double m2 = buf[i][0] * buf[i][0] + buf[i][1] * buf[i][1];
            ekin += k2[i] * m2;
            norm += m2;
        }
        ekin *= hbar * hbar / (2.0 * mass) / norm;
        double epot = 0.0;
        for (int i = 0; i < n; ++i) epot += V[i] * p[i] * p[i];
        epot *= dx;
        return ekin + epot;
    };

    BoundState bs;
    double E = energy(psi);
    bs.energy_trace.push_back(E);

    // imaginary-time step: start coarse, refine as the energy settles
    const double Escale = std::max(std::abs(E - Vmin), 1e-32);
    double dt = 0.05 * hbar / Escale;
    int iter = 0;
    for (int stage = 0; stage < 6; ++stage, dt *= 0.25) {
        for (; iter < opts.max_iter; ++iter) {
            // e^{-V dt/2} e^{-T dt} e^{-V dt/2}
            for (int i = 0; i < n; ++i) {
                double f = std::exp(-0.5 * (V[i] - Vmin) * dt / hbar);
                buf[i][0] = psi[i] * f;
                buf[i][1] = 0.0;
            }
            fftw_execute(fwd);
            for (int i = 0; i < n; ++i) {
                double f = std::exp(-hbar * k2[i] * dt / (2.0 * mass));
                buf[i][0] *= f;
                buf[i][1] *= f;
            }
            fftw_execute(bwd);
            for (int i = 0; i < n; ++i) {
                double f = std::exp(-0.5 * (V[i] - Vmin) * dt / hbar);
                psi[i] = buf[i][0] / n * f;
            }
            normalize(psi);
            double Enew = energy(psi);
            double dE = std::abs(Enew - E);
            E = Enew;
            bs.energy_trace.push_back(E);
            if (dE < opts.rel_tol * std::max(std::abs(E), Escale)) break;
        }
    }
    bs.E = E;
    bs.converged = iter < opts.max_iter;

    // moments
    double zm = 0.0;
    for (int i = 0; i < n; ++i) zm += (za + i * dx) * psi[i] * psi[i];
    zm *= dx;
    double z2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = za + i * dx - zm;
        z2 += d * d * psi[i] * psi[i];
    }
    z2 *= dx;
    bs.dz = std::sqrt(z2);

    for (int i = 0; i < n; ++i) { buf[i][0] = psi[i]; buf[i][1] = 0.0; }
    fftw_execute(fwd);
    double p2 = 0.0, norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double m2 = buf[i][0] * buf[i][0] + buf[i][1] * buf[i][1];
        p2 += k2[i] * m2;
        norm += m2;
    }
    bs.dp = hbar * std::sqrt(p2 / norm); // <p> = 0 for the real ground state

    bs.z.resize(n);
    bs.psi = psi;
    for (int i = 0; i < n; ++i) bs.z[i] = za + i * dx;

    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    return bs;
}

double wkb_exponent(const std::vector<double>& z, const std::vector<double>& U,
                    double E, double mass, double z_t)
{
    const size_t n = z.size();
    if (U.size() != n || n < 3)
        throw std::invalid_argument("wkb_exponent: bad grids");
    // inner turning point: first crossing U = E moving from z_t toward the
    // surface; integrate sqrt(2m(U-E)) through the forbidden region
    size_t it = 0;
    for (size_t i = 0; i + 1 < n; ++i)
        if (z[i] <= z_t && z[i + 1] > z_t) { it = i; break; }
    // walk inward to the barrier entry
    size_t b = it;
    while (b > 0 && U[b] <= E) --b;
    if (b == 0 && U[0] <= E) return 0.0; // no forbidden region
    double W = 0.0;
    auto f = [&](size_t i) {
        return std::sqrt(std::max(0.0, 2.0 * mass * (U[i] - E)));
    };
    // b is inside the barrier; integrate inward until U drops below E
    size_t a = b;
    while (a > 0 && U[a - 1] > E) --a;
    for (size_t i = a; i < b; ++i)
        W += 0.5 * (f(i) + f(i + 1)) * (z[i + 1] - z[i]);
    // partial cells at both ends (linear interpolation of the crossing)
    if (a > 0 && U[a - 1] <= E) {
        double frac = (U[a] - E) / (U[a] - U[a - 1]);
        W += 0.5 * f(a) * frac * (z[a] - z[a - 1]);
    }
    if (b + 1 < n && U[b + 1] <= E) {
        double frac = (U[b] - E) / (U[b] - U[b + 1]);
        W += 0.5 * f(b) * frac * (z[b + 1] - z[b]);
    }
    return 2.0 * W / hbar;
}

double tau_tunnel(double wkb_exp, double omega_z)
{
    if (wkb_exp <= 0.0) return 0.0; // untrapped flag
    if (omega_z <= 0.0)
        throw std::domain_error("tau_tunnel: attempt frequency must be > 0");
    const double attempt = omega_z / two_pi;
    const double logT = -wkb_exp;
    // work in logs; e^W easily overflows
    double l10 = (-logT - std::log(attempt)) / std::log(10.0);
    if (l10 > 290.0) return std::numeric_limits<double>::infinity();
    return std::pow(10.0, l10);
}

double tau_out(double gamma_sc, double E_g, double k_eff, double mass)
{
    if (E_g >= 0.0)
        throw std::domain_error("tau_out: E_g must be negative (bound)");
    if (gamma_sc <= 0.0) return std::numeric_limits<double>::infinity();
    const double dEdt = hbar * hbar * k_eff * k_eff / (2.0 * mass) * gamma_sc;
    return std::abs(E_g) / dEdt;
}

AntiDamping tau_antidamping(double delta_at_trap, double gamma_sc,
                            double dU5P_dz, double dDelta_dz, double E_g,
                            double dp, double mass, double k0,
                            double omega_recoil, double gamma0)
{
    AntiDamping ad;
    const double dc2 = delta_at_trap * delta_at_trap + 0.25 * gamma0 * gamma0;
    const double dc4 = dc2 * dc2;
    // printed form keeps dU5P/dz in energy units; the corrected form
    // divides by hbar so beta carries 1/s
    ad.beta_printed = -4.0 * omega_recoil * delta_at_trap * gamma_sc /
                      (hbar * k0 * k0 * dc4) * dU5P_dz * dDelta_dz;
    ad.beta = -4.0 * omega_recoil * delta_at_trap * gamma_sc /
              (k0 * k0 * dc4) * (dU5P_dz / hbar) * dDelta_dz;
    if (ad.beta <= 0.0) {
        ad.tau = std::numeric_limits<double>::infinity();
        return ad;
    }
    const double ezp = dp * dp / (2.0 * mass);
    if (ezp <= 0.0)
        throw std::domain_error("tau_antidamping: dp must be > 0");
    ad.tau = std::log((std::abs(E_g) + ezp) / ezp) / (2.0 * ad.beta);
    return ad;
}

double tau_adiabatic(double dz, double dp, double mass)
{
    if (dp <= 0.0)
        throw std::domain_error("tau_adiabatic: dp must be > 0");
    return mass * dz / dp;
}

} // namespace nftrap
