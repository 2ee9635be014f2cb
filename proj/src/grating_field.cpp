#include "nftrap/grating_field.hpp"
#include "nftrap/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace nftrap {

using namespace constants;
using cplx = std::complex<double>;

bool IntensityMap::monotonic_decay(size_t ix) const
{
    for (size_t iz = 1; iz < z.size(); ++iz)
        if (at(ix, iz) > at(ix, iz - 1)) return false;
    return true;
}

namespace {

// fold an incidence transverse wavevector into the first Brillouin zone;
// returns the carrying order
int fold_to_bz(double kx_inc, double period, double& kx_bloch)
{
    const double g = two_pi / period;
    int m0 = (int)std::lround(kx_inc / g);
    kx_bloch = kx_inc - m0 * g;
    return m0;
}

} // namespace

IntensityMap grating_field_map(const GratingGeometry& g,
                               const MaterialLibrary& lib, double lambda,
                               const GratingBeam& beam,
                               const std::vector<double>& x,
                               const std::vector<double>& z, int N)
{
    if (beam.power <= 0.0 || beam.waist <= 0.0)
        throw std::domain_error("grating_field_map: power and waist must be > 0");
    const double omega = two_pi * c0 / lambda;
    const double I_peak = 2.0 * beam.power / (pi * beam.waist * beam.waist);

    const std::string inc_mat =
        (beam.side == Side::Back) ? g.substrate : g.front;
    const double n_inc =
        std::sqrt(lib.get(inc_mat).permittivity(omega)).real();
    const double kx_inc = n_inc * (omega / c0) * std::sin(beam.theta);
    double kx_bloch;
    const int m0 = fold_to_bz(kx_inc, g.period, kx_bloch);
    if (std::abs(m0) > N)
        throw std::invalid_argument("grating_field_map: incidence order outside truncation");

    RcwaSolution sol =
        rcwa_solve(g, lib, FrequencyAxis::Real, omega, kx_bloch, 0.0, N);
    const int M = sol.top.size();
    const int j0 = m0 + N;
    const double amp = std::sqrt(2.0 * I_peak / (n_inc * c0 * eps0));

    Eigen::VectorXcd in = Eigen::VectorXcd::Zero(2 * M);
    const int chan = (beam.pol == Polarization::S) ? j0 : M + j0;
    in(chan) = amp;

    Eigen::VectorXcd up;      // up-going amplitudes in the top medium
    Eigen::VectorXcd down = Eigen::VectorXcd::Zero(2 * M);
    if (beam.side == Side::Back) {
        up = sol.T_up * in;
    } else {
        up = sol.R_top * in;
        down = in;
    }

    IntensityMap map;
    map.x = x;
    map.z = z;
    map.I.assign(x.size() * z.size(), 0.0);
    for (size_t ix = 0; ix < x.size(); ++ix) {
        for (size_t iz = 0; iz < z.size(); ++iz) {
            Eigen::Vector3cd E = Eigen::Vector3cd::Zero();
            for (int j = 0; j < M; ++j) {
                const cplx ph = std::exp(
                    cplx(0.0, 1.0) *
                    (sol.top.kx[j] * x[ix] + sol.top.kz[j] * z[iz]));
                if (up(j) != 0.0)
                    E += up(j) * ph * pol_vector_s(sol.top, j - N);
                if (up(M + j) != 0.0)
                    E += up(M + j) * ph * pol_vector_p(sol.top, j - N, +1);
            }
            if (beam.side == Side::Front) {
                const cplx ph = std::exp(
                    cplx(0.0, 1.0) *
                    (sol.top.kx[j0] * x[ix] - sol.top.kz[j0] * z[iz]));
                if (beam.pol == Polarization::S)
                    E += down(j0) * ph * pol_vector_s(sol.top, m0);
                else
                    E += down(M + j0) * ph * pol_vector_p(sol.top, m0, -1);
            }
            map.I[ix * z.size() + iz] = 0.5 * c0 * eps0 * E.squaredNorm();
        }
    }
    return map;
}

IntensityMap averaged_two_beam_intensity(const GratingGeometry& g,
                                         const MaterialLibrary& lib,
                                         double lambda, double p_back,
                                         double alpha_1529, double waist,
                                         double theta_back, double theta_front,
                                         const std::vector<double>& x,
                                         const std::vector<double>& z, int N)
{
    if (alpha_1529 < 0.0)
        throw std::domain_error("averaged_two_beam_intensity: alpha must be >= 0");
    GratingBeam back{Side::Back, p_back, waist, theta_back, Polarization::P};
    IntensityMap map = grating_field_map(g, lib, lambda, back, x, z, N);
    if (alpha_1529 > 0.0) {
        GratingBeam front{Side::Front, alpha_1529 * p_back, waist, theta_front,
                          Polarization::P};
        IntensityMap mf = grating_field_map(g, lib, lambda, front, x, z, N);
        for (size_t i = 0; i < map.I.size(); ++i) map.I[i] += mf.I[i];
    }
    return map;
}

SprResult grating_spr_angle(const GratingGeometry& g,
                            const MaterialLibrary& lib, double lambda, int N,
                            double dip_threshold)
{
    const double omega = two_pi * c0 / lambda;
    const double n_i = std::sqrt(lib.get(g.substrate).permittivity(omega)).real();
    const double n_exit = std::sqrt(lib.get(g.front).permittivity(omega)).real();
    if (n_i <= n_exit)
        throw std::runtime_error("no SPR found: no total-internal-reflection window");
    const double theta_c = std::asin(n_exit / n_i);

    auto Rp = [&](double theta) {
        const double kx_inc = n_i * (omega / c0) * std::sin(theta);
        double kx_bloch;
        int m0 = fold_to_bz(kx_inc, g.period, kx_bloch);
        if (std::abs(m0) > N) return 1.0;
        RcwaSolution sol =
            rcwa_solve(g, lib, FrequencyAxis::Real, omega, kx_bloch, 0.0, N);
        const int M = sol.top.size();
        const int j0 = m0 + N;
        return std::norm(sol.R_bottom(M + j0, M + j0));
    };

    const int ngrid = 240;
    const double lo = theta_c + 2e-3, hi = pi / 2.0 - 2e-3;
    double best_t = lo, best_R = Rp(lo);
    for (int i = 1; i <= ngrid; ++i) {
        double t = lo + (hi - lo) * i / ngrid;
        double R = Rp(t);
        if (R < best_R) { best_R = R; best_t = t; }
    }
    double a = std::max(lo, best_t - (hi - lo) / ngrid);
    double b = std::min(hi, best_t + (hi - lo) / ngrid);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = Rp(x1), f2 = Rp(x2);
    for (int it = 0; it < 40 && (b - a) > 1e-8; ++it) {
        if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = Rp(x1); }
        else { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = Rp(x2); }
    }
    SprResult res;
    res.theta = 0.5 * (a + b);
    res.r_min = Rp(res.theta);
    res.n_eff = n_i * std::sin(res.theta);
    const bool interior = res.theta > lo + 2.0 * (hi - lo) / ngrid &&
                          res.theta < hi - 2.0 * (hi - lo) / ngrid;
    if (!interior || res.r_min > dip_threshold)
        throw std::runtime_error("no SPR found: no reflectance dip below threshold");
    return res;
}

} // namespace nftrap
