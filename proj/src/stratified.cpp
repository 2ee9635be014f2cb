#include "nftrap/stratified.hpp"
#include "nftrap/constants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nftrap {

using namespace constants;
using cplx = std::complex<double>;

namespace {

cplx kz_branch(cplx kz2)
{
    cplx kz = std::sqrt(kz2);
    if (kz.imag() < 0.0) kz = -kz;
    if (kz.imag() == 0.0 && kz.real() < 0.0) kz = -kz;
    return kz;
}

struct MediumChain {
    std::vector<cplx> eps;      // per medium; mirror entries unused
    std::vector<cplx> kz;
    std::vector<cplx> q;        // s: kz, p: kz/eps
    std::vector<double> d;      // thickness; semi-infinite ends have d = 0
    std::vector<bool> mirror;
    int n() const { return (int)eps.size(); }
};

MediumChain build_chain(const LayerStack& stack, const MaterialLibrary& lib,
                        const PlaneWaveQuery& qr, Side side)
{
    std::vector<std::pair<std::string, double>> media;
    if (side == Side::Front) {
        media.emplace_back(stack.front, 0.0);
        for (const auto& l : stack.layers) media.emplace_back(l.material, l.thickness);
        media.emplace_back(stack.back, 0.0);
    } else {
        media.emplace_back(stack.back, 0.0);
        for (auto it = stack.layers.rbegin(); it != stack.layers.rend(); ++it)
            media.emplace_back(it->material, it->thickness);
        media.emplace_back(stack.front, 0.0);
    }

    MediumChain ch;
    for (const auto& [name, d] : media) {
        const MaterialModel& m = lib.get(name);
        ch.mirror.push_back(m.is_mirror());
        ch.d.push_back(d);
        cplx eps(1.0, 0.0);
        cplx kz2;
        if (m.is_mirror()) {
            kz2 = 0.0;
        } else if (qr.axis == FrequencyAxis::Real) {
            eps = m.permittivity(qr.freq);
            const double k0 = qr.freq / c0;
            kz2 = eps * k0 * k0 - qr.kpar * qr.kpar;
        } else {
            eps = m.permittivity_imag_axis(qr.freq);
            const double xc = qr.freq / c0;
            kz2 = -(eps * xc * xc + qr.kpar * qr.kpar);
        }
        cplx kz = kz_branch(kz2);
        ch.eps.push_back(eps);
        ch.kz.push_back(kz);
        ch.q.push_back(qr.pol == Polarization::S ? kz : kz / eps);
    }
    return ch;
}

// composite reflection coefficient at each interface, looking toward the
// exit side; Parratt recursion, stable for evanescent layers
std::vector<cplx> interface_reflectivities(const MediumChain& ch,
                                           Polarization pol)
{
    const int n = ch.n();
    std::vector<cplx> rif(std::max(0, n - 1));
    for (int j = n - 2; j >= 0; --j) {
        if (ch.mirror[j + 1]) {
            rif[j] = (pol == Polarization::S) ? cplx(-1.0) : cplx(1.0);
            continue;
        }
        cplx r = (ch.q[j] - ch.q[j + 1]) / (ch.q[j] + ch.q[j + 1]);
        if (j == n - 2) {
            rif[j] = r;
        } else {
            cplx ph = std::exp(cplx(0.0, 2.0) * ch.kz[j + 1] * ch.d[j + 1]);
            cplx rr = rif[j + 1] * ph;
            rif[j] = (r + rr) / (1.0 + r * rr);
        }
    }
    return rif;
}

// forward amplitude transmitted into the exit medium, referenced at the
// last interface, for unit forward amplitude in the entry medium
cplx transmitted_amplitude(const MediumChain& ch, const std::vector<cplx>& rif)
{
    const int n = ch.n();
    cplx a(1.0, 0.0);
    for (int j = 0; j + 1 < n; ++j) {
        if (ch.mirror[j + 1])
            throw std::runtime_error("transmitted_amplitude: opaque mirror in stack");
        cplx denom(1.0, 0.0);
        if (j + 1 <= n - 2) {
            cplx ph = std::exp(cplx(0.0, 2.0) * ch.kz[j + 1] * ch.d[j + 1]);
            denom = 1.0 + rif[j + 1] * ph;
        }
        cplx rj = (j <= n - 2) ? rif[j] : cplx(0.0);
        a = a * (1.0 + rj) / denom;
        if (j + 1 <= n - 2)
            a *= std::exp(cplx(0.0, 1.0) * ch.kz[j + 1] * ch.d[j + 1]);
    }
    return a;
}

} // namespace

std::string LayerStack::id() const
{
    std::ostringstream os;
    os << front;
    for (const auto& l : layers) os << "|" << l.material << ":" << l.thickness;
    os << "|" << back;
    return os.str();
}

std::complex<double> reflection_coefficient(const LayerStack& stack,
                                            const MaterialLibrary& lib,
                                            const PlaneWaveQuery& q, Side side)
{
    if (q.kpar < 0.0)
        throw std::domain_error("reflection_coefficient: kpar must be >= 0");
    MediumChain ch = build_chain(stack, lib, q, side);
    if (ch.mirror[0])
        throw std::runtime_error("reflection_coefficient: incidence medium is a mirror");
    auto rif = interface_reflectivities(ch, q.pol);
    if (rif.empty()) return 0.0; // single medium, no interface
    return rif[0];
}

RTResult reflectance_transmittance(const LayerStack& stack,
                                   const MaterialLibrary& lib,
                                   const PlaneWaveQuery& q, Side side)
{
    if (q.axis != FrequencyAxis::Real)
        throw std::domain_error("reflectance_transmittance: real axis only");
    MediumChain ch = build_chain(stack, lib, q, side);
    auto rif = interface_reflectivities(ch, q.pol);
    RTResult rt;
    if (rif.empty()) { rt.T = 1.0; return rt; }
    cplx r = rif[0];
    rt.R = std::norm(r);
    if (!ch.mirror.back()) {
        cplx t = transmitted_amplitude(ch, rif);
        double flux_in = ch.q.front().real();
        double flux_out = ch.q.back().real();
        if (flux_in > 0.0)
            rt.T = std::norm(t) * flux_out / flux_in;
    }
    return rt;
}

SprResult spr_angle(const LayerStack& stack, const MaterialLibrary& lib,
                    double lambda, const std::string& incidence_material,
                    double dip_threshold)
{
    Side side;
    std::string exit_material;
    if (incidence_material == stack.back) {
        side = Side::Back;
        exit_material = stack.front;
    } else if (incidence_material == stack.front) {
        side = Side::Front;
        exit_material = stack.back;
    } else {
        throw std::runtime_error("spr_angle: incidence material '" +
                                 incidence_material +
                                 "' is not a semi-infinite medium of the stack");
    }
    const double omega = two_pi * c0 / lambda;
    const double n_i = std::sqrt(lib.get(incidence_material).permittivity(omega)).real();
    const double n_exit =
        lib.get(exit_material).is_mirror()
            ? n_i // no TIR window against a mirror
            : std::sqrt(lib.get(exit_material).permittivity(omega)).real();
    if (n_i <= n_exit)
        throw std::runtime_error("no SPR found: no total-internal-reflection window");
    const double theta_c = std::asin(n_exit / n_i);

    auto Rp = [&](double theta) {
        PlaneWaveQuery q;
        q.axis = FrequencyAxis::Real;
        q.freq = omega;
        q.kpar = n_i * (omega / c0) * std::sin(theta);
        q.pol = Polarization::P;
        return std::norm(reflection_coefficient(stack, lib, q, side));
    };

    // grid search beyond the critical angle, then golden-section refinement
    const int ngrid = 2000;
    const double lo = theta_c + 1e-4, hi = pi / 2.0 - 1e-4;
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
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
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

IntensityProfile field_intensity_profile(const LayerStack& stack,
                                         const MaterialLibrary& lib,
                                         double lambda, double theta_inc,
                                         double power, double waist, Side side,
                                         const std::vector<double>& z_grid,
                                         Polarization pol)
{
    if (power <= 0.0 || waist <= 0.0)
        throw std::domain_error("field_intensity_profile: power and waist must be > 0");
    const double omega = two_pi * c0 / lambda;
    const double k0 = omega / c0;

    PlaneWaveQuery q;
    q.axis = FrequencyAxis::Real;
    q.freq = omega;
    q.pol = pol;
    const std::string inc_mat = (side == Side::Back) ? stack.back : stack.front;
    const cplx eps_i = lib.get(inc_mat).permittivity(omega);
    const double n_i = std::sqrt(eps_i).real();
    q.kpar = n_i * k0 * std::sin(theta_inc);

    const double I_inc = 2.0 * power / (pi * waist * waist);

    IntensityProfile prof;
    prof.z = z_grid;
    prof.I.resize(z_grid.size());
    prof.I_incident = I_inc;

    MediumChain ch = build_chain(stack, lib, q, side);
    auto rif = interface_reflectivities(ch, q.pol);

    const cplx eps_f = lib.get(stack.front).permittivity(omega);
    const cplx kz_f = kz_branch(eps_f * k0 * k0 - q.kpar * q.kpar);

    // |E|^2 per unit basis amplitude: s basis is E_y itself, p basis is the
    // normalized H_y, with |E|^2 = (|kz|^2 + kpar^2) c^2/(omega |eps|)^2 |H|^2
    auto Esq_forward = [&](cplx amp, double z) {
        cplx ph = std::exp(cplx(0.0, 1.0) * kz_f * z);
        double a2 = std::norm(amp * ph);
        if (pol == Polarization::S) return a2;
        double fac = (std::norm(kz_f) + q.kpar * q.kpar) /
                     std::norm(eps_f * k0);
        return a2 * fac;
    };

    if (side == Side::Back) {
        // transmitted wave only on the vacuum side
        // basis amplitude of the incident beam from its peak intensity
        double amp_in2 = (pol == Polarization::S)
                             ? 2.0 * I_inc / (n_i * c0 * eps0)
                             : 2.0 * n_i * I_inc / (c0 * eps0);
        cplx t = transmitted_amplitude(ch, rif);
        cplx amp_t = t * std::sqrt(amp_in2);
        for (size_t i = 0; i < z_grid.size(); ++i)
            prof.I[i] = 0.5 * c0 * eps0 * Esq_forward(amp_t, z_grid[i]);
        prof.I0 = 0.5 * c0 * eps0 * Esq_forward(amp_t, 0.0);
    } else {
        // front side: incident (toward the surface) plus reflected field
        double amp_in2 = (pol == Polarization::S)
                             ? 2.0 * I_inc / (n_i * c0 * eps0)
                             : 2.0 * n_i * I_inc / (c0 * eps0);
        double a0 = std::sqrt(amp_in2);
        cplx r = rif.empty() ? cplx(0.0) : rif[0];
        for (size_t i = 0; i <= z_grid.size(); ++i) {
            double z = (i == z_grid.size()) ? 0.0 : z_grid[i];
            cplx down = a0 * std::exp(cplx(0.0, -1.0) * kz_f * z);
            cplx up = a0 * r * std::exp(cplx(0.0, 1.0) * kz_f * z);
            double Esq;
            if (pol == Polarization::S) {
                Esq = std::norm(down + up);
            } else {
                // E from H_y: E_x = (c kz/(omega eps)) (up - down),
                // E_z = -(c kpar/(omega eps)) (up + down)
                cplx ex = kz_f / (eps_f * k0) * (up - down);
                cplx ez = -q.kpar / (eps_f * k0) * (up + down);
                Esq = std::norm(ex) + std::norm(ez);
            }
            if (i == z_grid.size()) prof.I0 = 0.5 * c0 * eps0 * Esq;
            else prof.I[i] = 0.5 * c0 * eps0 * Esq;
        }
    }
    prof.enhancement = prof.I0 / I_inc;
    prof.decay_rate = 2.0 * kz_f.imag();
    return prof;
}

} // namespace nftrap
