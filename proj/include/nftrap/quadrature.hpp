#ifndef NFTRAP_QUADRATURE_HPP
#define NFTRAP_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace nftrap {

// Nodes and weights of an n-point Gauss-Legendre rule on [a, b].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Computed once per order by Newton iteration on Legendre polynomials,
// then cached; thread-safe.
const GaussRule& gauss_legendre(int n);

// Rule mapped onto [a,b].
GaussRule gauss_legendre(int n, double a, double b);

// Rule with log-spaced panels: n points per decade-ish panel between a and b
// (a > 0). Used for imaginary-frequency integrals that span many decades.
GaussRule gauss_legendre_log(int n, double a, double b);

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Deterministic given inputs.
// Returns the integral; est_error (if non-null) receives the accumulated
// error estimate. Subdivision stops at max_depth.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int max_depth = 14,
                   double* est_error = nullptr);

// Integrate f over [a, inf) with exponential decay scale `scale`
// (substitution u = (x-a)/scale, then adaptive on mapped panels).
double integrate_exp_tail(const std::function<double(double)>& f, double a,
                          double scale, double abs_tol, double rel_tol);

} // namespace nftrap

#endif
