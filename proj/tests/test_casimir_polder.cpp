#include <doctest.h>

#include "nftrap/casimir_polder.hpp"
#include "nftrap/constants.hpp"

#include <cmath>
#include <vector>

using namespace nftrap;
using namespace nftrap::constants;

namespace {

LayerStack mirror_stack()
{
    LayerStack s;
    s.front = "vacuum";
    s.back = "mirror";
    return s;
}

LayerStack optimized_stack()
{
    LayerStack s;
    s.front = "vacuum";
    s.layers = {{"SiO2", 158e-9}, {"Au", 41e-9}};
    s.back = "Si";
    return s;
}

double log_slope(const std::vector<double>& z, const std::vector<double>& U)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = z.size();
    for (size_t i = 0; i < n; ++i) {
        double x = std::log(z[i]), y = std::log(std::abs(U[i]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("perfect mirror, 5S: non-retarded limit")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = mirror_stack();
    // closed-form oracle: C3 = hbar Int alpha(i xi) d xi / (16 pi^2 eps0)
    const double C3 =
        hbar * t.polarizability_integral("5S1/2") / (16.0 * pi * pi * eps0);
    // the pure z^-3 window: retardation tilts the slope beyond ~10 nm
    std::vector<double> z, U;
    for (double zz = 2e-9; zz <= 6.001e-9; zz += 0.5e-9) {
        z.push_back(zz);
        U.push_back(cp_nonresonant_planar(t, "5S1/2", zz, s, lib).U);
    }
    CHECK(log_slope(z, U) == doctest::Approx(-3.0).epsilon(0.02 / 3.0));
    CHECK(U.front() < 0.0);
    CHECK(U.front() == doctest::Approx(-C3 / std::pow(z.front(), 3)).epsilon(0.01));
}

TEST_CASE("perfect mirror, 5S: retarded limit")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = mirror_stack();
    const double a0v = t.dynamic_polarizability("5S1/2", 0.0);
    std::vector<double> z, U;
    for (double zz = 3e-6; zz <= 10.001e-6; zz += 1e-6) {
        z.push_back(zz);
        U.push_back(cp_nonresonant_planar(t, "5S1/2", zz, s, lib).U);
    }
    CHECK(log_slope(z, U) == doctest::Approx(-4.0).epsilon(0.02 / 4.0));
    const double C4 = 3.0 * hbar * c0 * a0v / (32.0 * pi * pi * eps0);
    CHECK(U.back() == doctest::Approx(-C4 / std::pow(z.back(), 4)).epsilon(0.02));
}

TEST_CASE("perfect mirror, 5P: near-field coefficient")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = mirror_stack();
    const auto& d2 = t.d2_line();
    const double C3 =
        hbar * t.polarizability_integral("5P3/2") / (16.0 * pi * pi * eps0) +
        d2.dipole * d2.dipole / (2.0 * d2.j_upper + 1.0) / (24.0 * pi * eps0);
    std::vector<double> z, U;
    for (double zz = 2e-9; zz <= 6.001e-9; zz += 0.5e-9) {
        z.push_back(zz);
        U.push_back(cp_planar(t, "5P3/2", zz, s, lib).U);
    }
    CHECK(log_slope(z, U) == doctest::Approx(-3.0).epsilon(0.02 / 3.0));
    CHECK(U.front() == doctest::Approx(-C3 / std::pow(z.front(), 3)).epsilon(0.01));
}

TEST_CASE("vacuum surface gives zero")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s;
    s.front = "vacuum";
    s.back = "vacuum";
    CHECK(std::abs(cp_planar(t, "5S1/2", 30e-9, s, lib).U) < 1e-40);
    CHECK(std::abs(cp_planar(t, "5P3/2", 30e-9, s, lib).U) < 1e-40);
}

TEST_CASE("optimized stack: both states attractive below 300 nm")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    for (double z : {10e-9, 30e-9, 100e-9, 250e-9}) {
        CHECK(cp_planar(t, "5S1/2", z, s, lib).U < 0.0);
        CHECK(cp_planar(t, "5P3/2", z, s, lib).U < 0.0);
    }
}

TEST_CASE("5S potential is monotone increasing over 10-500 nm")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    double prev = cp_planar(t, "5S1/2", 10e-9, s, lib).U;
    for (int i = 1; i <= 25; ++i) {
        double z = 10e-9 * std::pow(50.0, i / 25.0);
        double u = cp_planar(t, "5S1/2", z, s, lib).U;
        CHECK(u > prev);
        prev = u;
    }
}

TEST_CASE("5P planar potential oscillates beyond 100 nm")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    std::vector<double> z, U;
    for (double zz = 120e-9; zz <= 1200e-9; zz += 20e-9) {
        z.push_back(zz);
        U.push_back(cp_planar(t, "5P3/2", zz, s, lib).U);
    }
    int sign_changes = 0;
    for (size_t i = 2; i < U.size(); ++i) {
        double d1 = U[i - 1] - U[i - 2];
        double d2 = U[i] - U[i - 1];
        if (d1 * d2 < 0.0) ++sign_changes;
    }
    CHECK(sign_changes >= 1);
}

TEST_CASE("5S curve matches an independent coarse double integral at 50 nm")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    const double z = 50e-9;
    // independent midpoint evaluation of the xi/kappa double integral
    const int nxi = 400, nk = 600;
    const double la = std::log(5e10), lb = std::log(2e17);
    double sum = 0.0;
    for (int i = 0; i < nxi; ++i) {
        double xi = std::exp(la + (lb - la) * (i + 0.5) / nxi);
        double dxi = xi * (lb - la) / nxi;
        double alpha = t.dynamic_polarizability("5S1/2", xi);
        double kmin = xi / c0;
        double inner = 0.0;
        double umax = 30.0;
        for (int j = 0; j < nk; ++j) {
            double u = umax * (j + 0.5) / nk;
            double du = umax / nk;
            double kappa = kmin + u / (2.0 * z);
            double kpar = std::sqrt(std::max(0.0, kappa * kappa - kmin * kmin));
            PlaneWaveQuery q{FrequencyAxis::Imaginary, xi, kpar, Polarization::S};
            double rs = reflection_coefficient(s, lib, q).real();
            q.pol = Polarization::P;
            double rp = reflection_coefficient(s, lib, q).real();
            double wgt = 1.0 - 2.0 * kappa * kappa * c0 * c0 / (xi * xi);
            inner += du / (2.0 * z) * std::exp(-u - 2.0 * kmin * z) *
                     (rs + wgt * rp);
        }
        sum += dxi * xi * xi * alpha * inner;
    }
    double oracle = hbar * mu0 / (8.0 * pi * pi) * sum;
    double got = cp_nonresonant_planar(t, "5S1/2", z, s, lib).U;
    CHECK(got == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("quadrature tails are resolved at trap distances")
{
    const auto& t = TransitionTable::rb87();
    const auto& lib = MaterialLibrary::bundled();
    LayerStack s = optimized_stack();
    auto r = cp_nonresonant_planar(t, "5S1/2", 30e-9, s, lib);
    CHECK_FALSE(r.flagged);
}
