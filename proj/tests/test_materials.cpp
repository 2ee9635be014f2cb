#include <doctest.h>

#include "nftrap/constants.hpp"
#include "nftrap/materials.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace nftrap;
using namespace nftrap::constants;

TEST_CASE("vacuum is trivial on both axes")
{
    const auto& lib = MaterialLibrary::bundled();
    const auto& v = lib.get("vacuum");
    CHECK(v.permittivity(1e15) == std::complex<double>(1.0, 0.0));
    CHECK(v.permittivity_imag_axis(0.0) == 1.0);
    CHECK(v.permittivity_imag_axis(1e16) == 1.0);
}

TEST_CASE("Si refractive index at 1529 nm is 3.48")
{
    const auto& lib = MaterialLibrary::bundled();
    double w = two_pi * c0 / 1529.34e-9;
    auto eps = lib.get("Si").permittivity(w);
    CHECK(std::sqrt(eps.real()) == doctest::Approx(3.48).epsilon(1e-3));
    CHECK(eps.imag() == 0.0);
}

TEST_CASE("Au is metallic at 1529 nm")
{
    const auto& lib = MaterialLibrary::bundled();
    double w = two_pi * c0 / 1529.34e-9;
    auto eps = lib.get("Au").permittivity(w);
    CHECK(eps.real() < 0.0);
    CHECK(eps.imag() > 0.0); // passive
}

TEST_CASE("SiO2 static limit matches the closed-form oscillator sum")
{
    const auto& lib = MaterialLibrary::bundled();
    // independent evaluation from the published Sellmeier strengths
    double expect = 1.0 + 0.6961663 + 0.4079426 + 0.8974794;
    CHECK(lib.get("SiO2").permittivity_imag_axis(1e7) ==
          doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("imaginary-axis permittivity is real, >= 1, non-increasing")
{
    const auto& lib = MaterialLibrary::bundled();
    for (const char* name : {"Au", "Si", "SiO2"}) {
        const auto& m = lib.get(name);
        double prev = m.permittivity_imag_axis(1e11);
        for (int i = 1; i < 200; ++i) {
            double xi = 1e11 * std::pow(10.0, i * (7.0 / 200.0));
            double eps = m.permittivity_imag_axis(xi);
            CHECK(eps >= 1.0);
            CHECK(eps <= prev + 1e-15);
            prev = eps;
        }
        CHECK(m.permittivity_imag_axis(1e19) == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("oscillator evaluation matches direct formula substitution")
{
    // parse a single-oscillator material and compare against the formula
    // evaluated independently here
    auto lib = MaterialLibrary::parse(
        "[test]\nosc = 2.5 3.0 0.1 1.5\nvalid_eV = 0.1 10\n");
    const auto& m = lib.get("test");
    const double f = 2.5, wp = 3.0 * eV_to_rad_s, g = 0.1 * eV_to_rad_s,
                 w0 = 1.5 * eV_to_rad_s;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.2, 8.0);
    for (int i = 0; i < 50; ++i) {
        double w = u(rng) * eV_to_rad_s;
        std::complex<double> want =
            1.0 + f * wp * wp /
                      std::complex<double>(w0 * w0 - w * w, -g * w);
        auto got = m.permittivity(w);
        CHECK(std::abs(got - want) / std::abs(want) < 1e-12);
        double xi = u(rng) * eV_to_rad_s;
        double want_i = 1.0 + f * wp * wp / (w0 * w0 + xi * xi + g * xi);
        CHECK(m.permittivity_imag_axis(xi) ==
              doctest::Approx(want_i).epsilon(1e-12));
    }
}

TEST_CASE("range errors name the material")
{
    const auto& lib = MaterialLibrary::bundled();
    double w_uv = 8.0 * eV_to_rad_s;
    CHECK_THROWS_WITH_AS((void)lib.get("Si").permittivity(w_uv),
                         doctest::Contains("Si"), std::out_of_range);
    CHECK_THROWS_AS((void)lib.get("unobtainium"), std::runtime_error);
}
