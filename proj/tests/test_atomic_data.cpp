#include <doctest.h>

#include "nftrap/atomic_data.hpp"
#include "nftrap/constants.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace nftrap;
using namespace nftrap::constants;

namespace {

// independent term-by-term oracle in extended precision
long double alpha_oracle(const TransitionTable& t, const std::string& state,
                         long double xi)
{
    long double jn = -1.0L;
    for (const auto& e : t.entries()) {
        if (e.lower == state) jn = e.j_lower;
        if (e.upper == state) jn = e.j_upper;
    }
    long double sum = 0.0L;
    for (const auto& e : t.entries()) {
        long double w = 0.0L;
        if (e.lower == state) w = e.omega;
        else if (e.upper == state) w = -(long double)e.omega;
        else continue;
        long double d = e.dipole;
        sum += w * d * d / (w * w + xi * xi);
    }
    return 2.0L / (3.0L * (long double)hbar * (2.0L * jn + 1.0L)) * sum;
}

} // namespace

TEST_CASE("bundled table carries the distinguished lines")
{
    const auto& t = TransitionTable::rb87();
    const auto& d2 = t.d2_line();
    CHECK(two_pi * c0 / d2.omega == doctest::Approx(780.241e-9).epsilon(1e-9));
    CHECK(d2.dipole / e_a0 == doctest::Approx(5.977).epsilon(1e-9));
    const auto& pd = t.line_5p_4d();
    CHECK(two_pi * c0 / pd.omega == doctest::Approx(1529.366e-9).epsilon(1e-9));
    for (const auto& e : t.entries()) {
        CHECK(e.omega > 0.0);
        CHECK(e.dipole >= 0.0);
    }
}

TEST_CASE("atom constants")
{
    const auto& a = TransitionTable::rb87().atom();
    CHECK(a.mass == doctest::Approx(1.44316e-25).epsilon(1e-4));
    CHECK(a.gamma0 == doctest::Approx(two_pi * 6.0666e6).epsilon(1e-9));
    CHECK(a.omega_recoil / two_pi == doctest::Approx(3771.0).epsilon(2e-3));
    CHECK(a.k0 == doctest::Approx(two_pi / 780.241e-9).epsilon(1e-12));
}

TEST_CASE("static polarizability equals the direct-summation oracle")
{
    const auto& t = TransitionTable::rb87();
    double a0v = t.dynamic_polarizability("5S1/2", 0.0);
    CHECK(a0v == doctest::Approx((double)alpha_oracle(t, "5S1/2", 0.0L))
                     .epsilon(1e-13));
    CHECK(a0v > 0.0);
    // 100 random xi values, relative 1e-12 against the oracle
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> logxi(9.0, 17.5);
    for (int i = 0; i < 100; ++i) {
        double xi = std::pow(10.0, logxi(rng));
        double got = t.dynamic_polarizability("5S1/2", xi);
        double want = (double)alpha_oracle(t, "5S1/2", (long double)xi);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("polarizability decay and limits")
{
    const auto& t = TransitionTable::rb87();
    // strictly decreasing on a log grid, for both states
    for (const char* state : {"5S1/2", "5P3/2"}) {
        double prev = t.dynamic_polarizability(state, 1e10);
        CHECK(prev > 0.0);
        for (int i = 1; i <= 60; ++i) {
            double xi = 1e10 * std::pow(10.0, i * 0.125);
            double a = t.dynamic_polarizability(state, xi);
            CHECK(a < prev);
            CHECK(a > 0.0);
            prev = a;
        }
    }
    // 1/xi^2 tail: alpha * xi^2 -> 2/(3 hbar (2J+1)) sum w |d|^2
    double jn = 0.5;
    double limit = 0.0;
    for (const auto& e : t.entries())
        if (e.lower == "5S1/2") limit += e.omega * e.dipole * e.dipole;
    limit *= 2.0 / (3.0 * hbar * (2.0 * jn + 1.0));
    double xi = 1e19;
    CHECK(t.dynamic_polarizability("5S1/2", xi) * xi * xi ==
          doctest::Approx(limit).epsilon(1e-3));
}

TEST_CASE("at xi = omega_D2 the D2 term is half its static value")
{
    const auto& t = TransitionTable::rb87();
    const auto& d2 = t.d2_line();
    const double pref = 2.0 / (3.0 * hbar * 2.0);
    double d2_static = pref * d2.dipole * d2.dipole / d2.omega;
    double full0 = t.dynamic_polarizability("5S1/2", 0.0);
    double fullw = t.dynamic_polarizability("5S1/2", d2.omega);
    // remove the other terms via the oracle at both points
    double others0 = full0 - d2_static;
    double othersw = 0.0;
    for (const auto& e : t.entries()) {
        if (e.lower != "5S1/2" || e.upper == "5P3/2") continue;
        othersw += pref * e.omega * e.dipole * e.dipole /
                   (e.omega * e.omega + d2.omega * d2.omega);
    }
    CHECK(fullw - othersw == doctest::Approx(0.5 * d2_static).epsilon(1e-12));
    CHECK(others0 > 0.0);
}

TEST_CASE("lattice recoil energy")
{
    const auto& t = TransitionTable::rb87();
    double er = t.lattice_recoil_energy(100e-9);
    CHECK(er / h_planck == doctest::Approx(57.4e3).epsilon(2e-3));
    // reference depths in units of E_R
    CHECK(h_planck * 6.8e6 / er == doctest::Approx(118.0).epsilon(0.01));
    CHECK(h_planck * 35e6 / er == doctest::Approx(610.0).epsilon(0.01));
    // quadratic scaling
    CHECK(t.lattice_recoil_energy(200e-9) == doctest::Approx(er / 4.0));
    CHECK_THROWS_AS((void)t.lattice_recoil_energy(0.0), std::domain_error);
}

TEST_CASE("unknown state raises a configuration error")
{
    const auto& t = TransitionTable::rb87();
    CHECK_THROWS_AS((void)t.dynamic_polarizability("3D5/2", 0.0),
                    std::runtime_error);
}

TEST_CASE("table parse errors")
{
    CHECK_THROWS(TransitionTable::parse("5S1/2 5P3/2 780.241\n"));
    CHECK_THROWS(TransitionTable::parse(
        "@mass_amu 87\n5S1/2 5P3/2 780.241 5.977\n")); // missing gamma0
}
