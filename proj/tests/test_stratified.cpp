#include <doctest.h>

#include "nftrap/constants.hpp"
#include "nftrap/stratified.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

using namespace nftrap;
using namespace nftrap::constants;
using cplx = std::complex<double>;

namespace {

LayerStack optimized_stack()
{
    LayerStack s;
    s.front = "vacuum";
    s.layers = {{"SiO2", 158e-9}, {"Au", 41e-9}};
    s.back = "Si";
    return s;
}

// independent 2x2 transfer-matrix oracle: product of interface and
// propagation matrices in forward/backward amplitudes
cplx tmatrix_reflection(const std::vector<cplx>& eps,
                        const std::vector<double>& d, double omega,
                        double kpar, Polarization pol)
{
    const size_t n = eps.size();
    std::vector<cplx> kz(n), q(n);
    for (size_t i = 0; i < n; ++i) {
        cplx k2 = eps[i] * omega * omega / (c0 * c0) - kpar * kpar;
        kz[i] = std::sqrt(k2);
        if (kz[i].imag() < 0.0) kz[i] = -kz[i];
        if (kz[i].imag() == 0.0 && kz[i].real() < 0.0) kz[i] = -kz[i];
        q[i] = (pol == Polarization::S) ? kz[i] : kz[i] / eps[i];
    }
    cplx M[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    auto mul = [&](cplx A[2][2]) {
        cplx R[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                R[i][j] = M[i][0] * A[0][j] + M[i][1] * A[1][j];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M[i][j] = R[i][j];
    };
    for (size_t i = 0; i + 1 < n; ++i) {
        cplx r = (q[i] - q[i + 1]) / (q[i] + q[i + 1]);
        cplx t = 1.0 + r;
        cplx T[2][2] = {{1.0 / t, r / t}, {r / t, 1.0 / t}};
        mul(T);
        if (i + 1 < n - 1) {
            cplx ph = std::exp(cplx(0.0, 1.0) * kz[i + 1] * d[i + 1]);
            cplx P[2][2] = {{1.0 / ph, 0.0}, {0.0, ph}};
            mul(P);
        }
    }
    return M[1][0] / M[0][0];
}

} // namespace

TEST_CASE("vacuum-vacuum stack reflects nothing")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.back = "vacuum";
    for (double kpar : {0.0, 3e6, 2e7}) {
        PlaneWaveQuery q{FrequencyAxis::Real, two_pi * c0 / 780e-9, kpar,
                         Polarization::P};
        CHECK(std::abs(reflection_coefficient(s, lib, q)) < 1e-15);
        q.axis = FrequencyAxis::Imaginary;
        q.freq = 1e15;
        CHECK(std::abs(reflection_coefficient(s, lib, q)) < 1e-15);
    }
}

TEST_CASE("single interface at normal incidence")
{
    auto lib = MaterialLibrary::parse(
        "[glass]\nosc = 1.25 3.0 0.0 3.0\nvalid_eV = 0.01 2.0\n");
    // eps(w << w0) ~ 1 + 1.25 = 2.25, n = 1.5
    LayerStack s;
    s.front = "vacuum";
    s.back = "glass";
    double w = 0.1 * eV_to_rad_s;
    double n2 = 1.0 + 1.25 * 9.0 / (9.0 - 0.01);
    double nn = std::sqrt(n2);
    PlaneWaveQuery q{FrequencyAxis::Real, w, 0.0, Polarization::S};
    CHECK(reflection_coefficient(s, lib, q).real() ==
          doctest::Approx((1.0 - nn) / (1.0 + nn)).epsilon(1e-12));
    q.pol = Polarization::P;
    // H-amplitude convention: opposite sign at normal incidence
    CHECK(reflection_coefficient(s, lib, q).real() ==
          doctest::Approx((nn - 1.0) / (nn + 1.0)).epsilon(1e-12));
}

TEST_CASE("multilayer equals the hand-composed transfer-matrix oracle")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    double omega = two_pi * c0 / 1529.34e-9;
    std::vector<cplx> eps = {cplx(1.0, 0.0), lib.get("SiO2").permittivity(omega),
                             lib.get("Au").permittivity(omega),
                             lib.get("Si").permittivity(omega)};
    std::vector<double> d = {0.0, 158e-9, 41e-9, 0.0};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.8);
    for (int i = 0; i < 12; ++i) {
        double kpar = u(rng) * omega / c0;
        for (auto pol : {Polarization::S, Polarization::P}) {
            PlaneWaveQuery q{FrequencyAxis::Real, omega, kpar, pol};
            cplx got = reflection_coefficient(s, lib, q);
            cplx want = tmatrix_reflection(eps, d, omega, kpar, pol);
            CHECK(std::abs(got - want) < 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("energy conservation for lossless stacks")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.layers = {{"SiO2", 200e-9}, {"Si", 150e-9}};
    s.back = "SiO2";
    double omega = two_pi * c0 / 1529.34e-9;
    for (double sth : {0.0, 0.3, 0.7, 0.95}) {
        for (auto pol : {Polarization::S, Polarization::P}) {
            PlaneWaveQuery q{FrequencyAxis::Real, omega, sth * omega / c0, pol};
            auto rt = reflectance_transmittance(s, lib, q, Side::Front);
            CHECK(rt.R + rt.T == doctest::Approx(1.0).epsilon(1e-10));
            auto rt2 = reflectance_transmittance(s, lib, q, Side::Back);
            CHECK(rt2.R + rt2.T == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("reflectance is side-independent for lossless stacks")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.layers = {{"SiO2", 120e-9}, {"Si", 90e-9}, {"SiO2", 40e-9}};
    s.back = "vacuum";
    double omega = two_pi * c0 / 1529.34e-9;
    for (double sth : {0.1, 0.5, 0.8}) {
        for (auto pol : {Polarization::S, Polarization::P}) {
            PlaneWaveQuery q{FrequencyAxis::Real, omega, sth * omega / c0, pol};
            double Rf = std::norm(reflection_coefficient(s, lib, q, Side::Front));
            double Rb = std::norm(reflection_coefficient(s, lib, q, Side::Back));
            CHECK(Rf == doctest::Approx(Rb).epsilon(1e-10));
        }
    }
}

TEST_CASE("imaginary-axis coefficients are real")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    for (double xi : {1e13, 1e14, 1e15, 1e16}) {
        for (double kpar : {1e5, 1e6, 1e7, 2e8}) {
            for (auto pol : {Polarization::S, Polarization::P}) {
                PlaneWaveQuery q{FrequencyAxis::Imaginary, xi, kpar, pol};
                cplx r = reflection_coefficient(s, lib, q);
                CHECK(std::abs(r.imag()) < 1e-12);
                CHECK(std::abs(r) < 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("perfect mirror limits")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.back = "mirror";
    PlaneWaveQuery q{FrequencyAxis::Imaginary, 1e15, 3e6, Polarization::S};
    CHECK(reflection_coefficient(s, lib, q).real() == doctest::Approx(-1.0));
    q.pol = Polarization::P;
    CHECK(reflection_coefficient(s, lib, q).real() == doctest::Approx(1.0));
}

TEST_CASE("surface plasmon resonance of the optimized stack")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    SprResult spr = spr_angle(s, lib, 1529.34e-9, "Si");
    CHECK(spr.theta * 180.0 / pi == doctest::Approx(18.6).epsilon(0.5 / 18.6));
    double n_si =
        std::sqrt(lib.get("Si").permittivity(two_pi * c0 / 1529.34e-9)).real();
    CHECK(spr.n_eff ==
          doctest::Approx(n_si * std::sin(spr.theta)).epsilon(1e-12));

    // thickness perturbation moves the dip depth, not the angle
    for (double dAu : {-5e-9, 5e-9}) {
        LayerStack p = s;
        p.layers[1].thickness += dAu;
        SprResult sp = spr_angle(p, lib, 1529.34e-9, "Si");
        CHECK(std::abs(sp.theta - spr.theta) * 180.0 / pi < 1.0);
    }
}

TEST_CASE("no SPR for a bare lossless dielectric")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.layers = {{"SiO2", 158e-9}};
    s.back = "Si";
    CHECK_THROWS_WITH_AS(spr_angle(s, lib, 1529.34e-9, "Si"),
                         doctest::Contains("no SPR"), std::runtime_error);
}

TEST_CASE("plasmonic field enhancement at the reference operating point")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    SprResult spr = spr_angle(s, lib, 1529.34e-9, "Si");
    std::vector<double> z;
    for (int i = 0; i <= 400; ++i) z.push_back(i * 1e-9);
    auto prof = field_intensity_profile(s, lib, 1529.34e-9, spr.theta, 0.4,
                                        200e-6, Side::Back, z);
    // 610 uW/um^2 = 6.1e8 W/m^2 and ~100x enhancement
    CHECK(prof.I_incident == doctest::Approx(2.0 * 0.4 / (pi * 4e-8)));
    CHECK(prof.I0 / 6.1e8 == doctest::Approx(1.0).epsilon(0.25));
    CHECK(prof.enhancement == doctest::Approx(100.0).epsilon(0.25));

    // monotonic decay away from the interface
    for (size_t i = 1; i < z.size(); ++i) CHECK(prof.I[i] < prof.I[i - 1]);
}

TEST_CASE("evanescent decay rate matches the closed form")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    double lambda = 1529.34e-9;
    double omega = two_pi * c0 / lambda;
    SprResult spr = spr_angle(s, lib, lambda, "Si");
    std::vector<double> z;
    for (int i = 0; i <= 100; ++i) z.push_back(20e-9 + i * 2e-9); // one decade
    auto prof = field_intensity_profile(s, lib, lambda, spr.theta, 0.4, 200e-6,
                                        Side::Back, z);
    double kpar = spr.n_eff * omega / c0;
    double kappa = std::sqrt(kpar * kpar - omega * omega / (c0 * c0));
    // log-slope fit of I(z)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = z.size();
    for (size_t i = 0; i < n; ++i) {
        sx += z[i];
        sy += std::log(prof.I[i]);
        sxx += z[i] * z[i];
        sxy += z[i] * std::log(prof.I[i]);
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(-slope == doctest::Approx(2.0 * kappa).epsilon(0.01));
    CHECK(prof.decay_rate == doctest::Approx(2.0 * kappa).epsilon(1e-9));
}

TEST_CASE("vacuum stack gives unit enhancement and a flat profile")
{
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.back = "vacuum";
    std::vector<double> z = {0.0, 1e-7, 5e-7};
    auto prof = field_intensity_profile(s, lib, 1529.34e-9, 0.2, 0.4, 200e-6,
                                        Side::Back, z);
    CHECK(prof.enhancement == doctest::Approx(1.0).epsilon(1e-12));
    for (double I : prof.I)
        CHECK(I == doctest::Approx(prof.I_incident).epsilon(1e-12));
}
