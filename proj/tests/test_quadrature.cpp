#include <doctest.h>

#include "nftrap/quadrature.hpp"

#include <cmath>

using namespace nftrap;

TEST_CASE("gauss-legendre integrates polynomials exactly")
{
    auto r = gauss_legendre(8, 0.0, 1.0);
    double s = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * r.x[i] * r.x[i];
    CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto r2 = gauss_legendre(16, -2.0, 3.0);
    double s15 = 0.0;
    for (size_t i = 0; i < r2.x.size(); ++i)
        s15 += r2.w[i] * std::pow(r2.x[i], 15);
    // int_{-2}^{3} x^15 dx = (3^16 - 2^16)/16
    CHECK(s15 == doctest::Approx((std::pow(3.0, 16) - std::pow(2.0, 16)) / 16.0)
                     .epsilon(1e-13));
}

TEST_CASE("log-spaced rule handles wide dynamic range")
{
    auto r = gauss_legendre_log(64, 1e-3, 1e9);
    double s = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] / r.x[i];
    CHECK(s == doctest::Approx(std::log(1e9 / 1e-3)).epsilon(1e-12));
}

TEST_CASE("adaptive gauss-kronrod")
{
    double err = 0.0;
    double v = adaptive_gk([](double x) { return std::exp(-x * x); }, -8.0,
                           8.0, 0.0, 1e-12, 14, &err);
    CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

    // a narrow Lorentzian peak, the shape near a plasmon pole
    double g = 1e-3;
    double vl = adaptive_gk([&](double x) { return g / (x * x + g * g); },
                            -1.0, 1.0, 0.0, 1e-10, 20);
    CHECK(vl == doctest::Approx(2.0 * std::atan(1.0 / g)).epsilon(1e-9));
}

TEST_CASE("exponential tail integration")
{
    double v = integrate_exp_tail([](double x) { return std::exp(-x); }, 0.0,
                                  1.0, 0.0, 1e-12);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}
