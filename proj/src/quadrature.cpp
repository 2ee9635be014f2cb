#include "nftrap/quadrature.hpp"
#include "nftrap/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nftrap {

namespace {

GaussRule compute_gauss_legendre(int n)
{
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double eps = 1e-15;
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-like initial guess
        double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < eps) break;
        }
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

std::mutex g_rule_mutex;
std::map<int, GaussRule> g_rules;

// Gauss-Kronrod 7-15 nodes/weights (positive half; symmetric).
const double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
const double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
const double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

void gk15(const std::function<double(double)>& f, double a, double b,
          double& result, double& err)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fv;
        if (i == 7) {
            fv = f(c);
            resk += gk_wk[7] * fv;
            resg += gk_wg[3] * fv;
        } else {
            double f1 = f(c - h * gk_nodes[i]);
            double f2 = f(c + h * gk_nodes[i]);
            resk += gk_wk[i] * (f1 + f2);
            if (i % 2 == 1) resg += gk_wg[i / 2] * (f1 + f2);
        }
    }
    result = resk * h;
    err = std::abs(resk - resg) * h;
}

double adaptive_impl(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int depth, int max_depth,
                     double whole, double whole_err, double& err_acc)
{
    if (depth >= max_depth ||
        whole_err <= abs_tol + rel_tol * std::abs(whole)) {
        err_acc += whole_err;
        return whole;
    }
    double c = 0.5 * (a + b);
    double left, lerr, right, rerr;
    gk15(f, a, c, left, lerr);
    gk15(f, c, b, right, rerr);
    double l = adaptive_impl(f, a, c, 0.5 * abs_tol, rel_tol, depth + 1,
                             max_depth, left, lerr, err_acc);
    double r = adaptive_impl(f, c, b, 0.5 * abs_tol, rel_tol, depth + 1,
                             max_depth, right, rerr, err_acc);
    return l + r;
}

} // namespace

const GaussRule& gauss_legendre(int n)
{
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end())
        it = g_rules.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

GaussRule gauss_legendre(int n, double a, double b)
{
    const GaussRule& base = gauss_legendre(n);
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * base.x[i];
        r.w[i] = half * base.w[i];
    }
    return r;
}

GaussRule gauss_legendre_log(int n, double a, double b)
{
    if (a <= 0.0 || b <= a)
        throw std::invalid_argument("gauss_legendre_log: need 0 < a < b");
    GaussRule u = gauss_legendre(n, std::log(a), std::log(b));
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = std::exp(u.x[i]);
        r.w[i] = u.w[i] * r.x[i]; // du = dx/x
    }
    return r;
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int max_depth,
                   double* est_error)
{
    double whole, werr, err_acc = 0.0;
    gk15(f, a, b, whole, werr);
    double res = adaptive_impl(f, a, b, abs_tol, rel_tol, 0, max_depth, whole,
                               werr, err_acc);
    if (est_error) *est_error = err_acc;
    return res;
}

double integrate_exp_tail(const std::function<double(double)>& f, double a,
                          double scale, double abs_tol, double rel_tol)
{
    // panels in units of the decay scale; e^-36 ~ 2e-16 ends the tail
    static const double edges[] = {0, 1, 2, 4, 8, 16, 36};
    double total = 0.0;
    for (int p = 0; p + 1 < (int)(sizeof(edges) / sizeof(edges[0])); ++p) {
        double lo = a + edges[p] * scale;
        double hi = a + edges[p + 1] * scale;
        total += adaptive_gk(f, lo, hi, abs_tol, rel_tol, 10);
    }
    return total;
}

} // namespace nftrap
