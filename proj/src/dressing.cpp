#include "nftrap/dressing.hpp"
#include "nftrap/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nftrap {

using namespace constants;

double RabiCalibration::rabi(double power, double waist) const
{
    if (power < 0.0 || waist <= 0.0)
        throw std::domain_error("rabi: power must be >= 0 and waist > 0");
    return omega_ref * std::sqrt(power / p_ref) * (w_ref / waist);
}

double effective_dipole_5p4d(const TransitionTable& table)
{
    const Transition& t = table.line_5p_4d();
    const double s = t.dipole * t.dipole;
    const double d2 =
        s * (2.0 * t.j_upper + 1.0) / (3.0 * (2.0 * t.j_lower + 1.0));
    return std::sqrt(d2);
}

double ac_stark_5p(double intensity, double xi_detuning, double dipole)
{
    if (xi_detuning == 0.0)
        throw std::domain_error("ac_stark_5p: detuning must be nonzero");
    if (intensity < 0.0)
        throw std::domain_error("ac_stark_5p: negative intensity");
    const double omega2 =
        2.0 * dipole * dipole * intensity / (eps0 * c0 * hbar * hbar);
    const double axi = std::abs(xi_detuning);
    const double sgn = xi_detuning > 0.0 ? 1.0 : -1.0;
    // adiabatic dressed-state branch; repulsive on the blue side
    return 0.5 * hbar * sgn * (std::sqrt(axi * axi + omega2) - axi);
}

DetuningProfile detuning_profile(const std::vector<double>& z,
                                 const std::vector<double>& u_shift,
                                 double delta0)
{
    if (z.size() != u_shift.size() || z.size() < 2)
        throw std::invalid_argument("detuning_profile: grid size mismatch");
    DetuningProfile out;
    out.delta.resize(z.size());
    for (size_t i = 0; i < z.size(); ++i)
        out.delta[i] = delta0 - u_shift[i] / hbar;
    // outermost crossing from negative (near surface) to positive
    for (size_t i = z.size() - 1; i > 0; --i) {
        if (out.delta[i - 1] < 0.0 && out.delta[i] >= 0.0) {
            const double f = out.delta[i - 1] /
                             (out.delta[i - 1] - out.delta[i]);
            out.z_b = z[i - 1] + f * (z[i] - z[i - 1]);
            break;
        }
    }
    return out;
}

double bloch_steady_state_ee(double omega_rabi, double delta, double gamma0)
{
    if (gamma0 <= 0.0)
        throw std::domain_error("bloch_steady_state_ee: gamma0 must be > 0");
    const double o2 = omega_rabi * omega_rabi;
    return 0.25 * o2 /
           (delta * delta + 0.5 * o2 + 0.25 * gamma0 * gamma0);
}

std::vector<double> gradient(const std::vector<double>& z,
                             const std::vector<double>& f)
{
    const size_t n = z.size();
    if (f.size() != n || n < 3)
        throw std::invalid_argument("gradient: need >= 3 samples");
    std::vector<double> g(n);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h1 = z[i] - z[i - 1];
        const double h2 = z[i + 1] - z[i];
        // 3-point nonuniform central difference
        g[i] = (f[i + 1] * h1 * h1 - f[i - 1] * h2 * h2 +
                f[i] * (h2 * h2 - h1 * h1)) /
               (h1 * h2 * (h1 + h2));
    }
    g[0] = (f[1] - f[0]) / (z[1] - z[0]);
    g[n - 1] = (f[n - 1] - f[n - 2]) / (z[n - 1] - z[n - 2]);
    return g;
}

TotalPotential total_potential(const std::vector<double>& z,
                               const std::vector<double>& u5s,
                               const std::vector<double>& u5p,
                               const std::vector<double>& rho_ee,
                               double far_tolerance)
{
    const size_t n = z.size();
    if (u5s.size() != n || u5p.size() != n || rho_ee.size() != n || n < 3)
        throw std::invalid_argument("total_potential: grid size mismatch");
    TotalPotential out;
    out.dU5S = gradient(z, u5s);
    out.dU5P = gradient(z, u5p);
    out.U.assign(n, 0.0);
    out.far_boundary_flagged = std::abs(u5s[n - 1]) > far_tolerance;

    // U(z) = int_inf^z f dz' with f the population-weighted gradient; the
    // orientation is fixed by the rho_ee -> 0 limit, where U = U_5S
    auto f = [&](size_t i) {
        return rho_ee[i] * out.dU5P[i] + (1.0 - rho_ee[i]) * out.dU5S[i];
    };
    for (size_t i = n - 1; i > 0; --i)
        out.U[i - 1] = out.U[i] - 0.5 * (f(i - 1) + f(i)) * (z[i] - z[i - 1]);
    return out;
}

namespace {

// least-squares parabola through up to 5 points around index i0
double curvature_fit(const std::vector<double>& z, const std::vector<double>& U,
                     size_t i0)
{
    const size_t lo = i0 >= 2 ? i0 - 2 : 0;
    const size_t hi = std::min(z.size() - 1, i0 + 2);
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (size_t i = lo; i <= hi; ++i) {
        const double x = z[i] - z[i0];
        const double y = U[i];
        double x2 = x * x;
        s0 += 1; s1 += x; s2 += x2; s3 += x2 * x; s4 += x2 * x2;
        b0 += y; b1 += x * y; b2 += x2 * y;
    }
    // solve [s4 s3 s2; s3 s2 s1; s2 s1 s0] [a;b;c] = [b2;b1;b0]
    const double m[3][3] = {{s4, s3, s2}, {s3, s2, s1}, {s2, s1, s0}};
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det == 0.0) return 0.0;
    const double a =
        (b2 * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (b1 * m[2][2] - m[1][2] * b0) +
         m[0][2] * (b1 * m[2][1] - m[1][1] * b0)) / det;
    return 2.0 * a; // d2U/dz2 at the minimum
}

} // namespace

TrapReport trap_geometry(const std::vector<double>& z,
                         const std::vector<double>& U, double mass,
                         std::optional<double> z_b,
                         const std::vector<double>* rho_ee)
{
    const size_t n = z.size();
    if (U.size() != n || n < 5)
        throw std::invalid_argument("trap_geometry: need >= 5 samples");
    TrapReport rep;
    if (z_b) rep.z_b = *z_b;

    // deepest interior local minimum beyond z_b
    size_t imin = 0;
    bool found = false;
    for (size_t i = 1; i + 1 < n; ++i) {
        if (z_b && z[i] <= *z_b) continue;
        if (U[i] <= U[i - 1] && U[i] <= U[i + 1]) {
            if (!found || U[i] < U[imin]) { imin = i; found = true; }
        }
    }
    if (!found) {
        rep.status = TrapStatus::NonTrapped;
        return rep;
    }
    rep.z_t = z[imin];
    rep.U_min = U[imin];

    // barrier: maximum between the surface side and the trap
    size_t ibar = 0;
    double Umax = -1e300;
    for (size_t i = 0; i <= imin; ++i)
        if (U[i] > Umax) { Umax = U[i]; ibar = i; }
    rep.z_barrier = z[ibar];
    rep.Ub = Umax - U[imin];

    // escape over the barrier or over the outer asymptote
    const double U_far = U[n - 1];
    double Uout = U_far;
    for (size_t i = imin; i < n; ++i) Uout = std::max(Uout, U[i]);
    rep.U0 = std::min(Umax, Uout) - U[imin];
    if (rep.U0 <= 0.0) {
        rep.status = TrapStatus::NonTrapped;
        return rep;
    }

    const double k = curvature_fit(z, U, imin);
    rep.omega_z = k > 0.0 ? std::sqrt(k / mass) : 0.0;
    if (rho_ee) rep.rho_ee_at_trap = (*rho_ee)[imin];
    rep.status = TrapStatus::Ok;
    return rep;
}

} // namespace nftrap
