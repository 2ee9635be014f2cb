#include "nftrap/rcwa.hpp"
#include "nftrap/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nftrap {

using namespace constants;
using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

namespace {

cplx branch_up(cplx v2)
{
    cplx v = std::sqrt(v2);
    if (v.imag() < 0.0) v = -v;
    if (v.imag() == 0.0 && v.real() < 0.0) v = -v;
    return v;
}

cplx layer_eps(const MaterialModel& m, FrequencyAxis axis, double freq)
{
    if (m.is_mirror())
        throw std::runtime_error("rcwa: perfect mirror not supported in gratings");
    if (axis == FrequencyAxis::Real) return m.permittivity(freq);
    return cplx(m.permittivity_imag_axis(freq), 0.0);
}

// squared complex frequency over c, (omega/c)^2; negative real on the
// imaginary axis
cplx omega_tilde(FrequencyAxis axis, double freq)
{
    if (axis == FrequencyAxis::Real) return cplx(freq / c0, 0.0);
    return cplx(0.0, freq / c0);
}

struct SBlock {
    CMat Tdd, Rud, Rdu, Tuu;
    static SBlock identity(int n)
    {
        SBlock s;
        s.Tdd = CMat::Identity(n, n);
        s.Tuu = CMat::Identity(n, n);
        s.Rud = CMat::Zero(n, n);
        s.Rdu = CMat::Zero(n, n);
        return s;
    }
};

// Redheffer star product, `a` above `b`
SBlock star(const SBlock& a, const SBlock& b)
{
    const int n = a.Tdd.rows();
    CMat I = CMat::Identity(n, n);
    Eigen::PartialPivLU<CMat> lu1((I - a.Rdu * b.Rud).eval());
    Eigen::PartialPivLU<CMat> lu2((I - b.Rud * a.Rdu).eval());
    SBlock s;
    CMat d1Tdd = lu1.solve(a.Tdd);
    s.Tdd = b.Tdd * d1Tdd;
    s.Rud = a.Rud + a.Tuu * b.Rud * d1Tdd;
    CMat d2Tuu = lu2.solve(b.Tuu);
    s.Tuu = a.Tuu * d2Tuu;
    s.Rdu = b.Rdu + b.Tdd * a.Rdu * d2Tuu;
    return s;
}

struct ModeBasis {
    CMat Wd, Wu, Vd, Vu; // transverse e and h of down/up modes (columns)
    CVec q;              // propagation constants, Im >= 0
};

OrderBasis make_orders(int N, double kx_bloch, double ky, cplx eps, cplx wt)
{
    OrderBasis b;
    b.N = N;
    b.kx_bloch = kx_bloch;
    b.ky = ky;
    b.k_medium = branch_up(eps * wt * wt);
    const int M = 2 * N + 1;
    b.kx.resize(M);
    b.kz.resize(M);
    return b;
}

void fill_orders(OrderBasis& b, double period, cplx eps, cplx wt)
{
    const int M = b.size();
    const double g = two_pi / period;
    for (int j = 0; j < M; ++j) {
        int m = j - b.N;
        b.kx[j] = b.kx_bloch + m * g;
        cplx kz2 = eps * wt * wt - b.kx[j] * b.kx[j] - b.ky * b.ky;
        b.kz[j] = branch_up(kz2);
    }
}

// analytic s/p modes of a uniform layer; the exterior convention of the
// scattering matrices
ModeBasis uniform_modes(const OrderBasis& ord, cplx eps, cplx wt)
{
    const int M = ord.size();
    ModeBasis mb;
    mb.Wd = CMat::Zero(2 * M, 2 * M);
    mb.Wu = CMat::Zero(2 * M, 2 * M);
    mb.Vd = CMat::Zero(2 * M, 2 * M);
    mb.Vu = CMat::Zero(2 * M, 2 * M);
    mb.q = CVec::Zero(2 * M);
    const cplx kmed = ord.k_medium;
    for (int j = 0; j < M; ++j) {
        const double kx = ord.kx[j], ky = ord.ky;
        const double kpar = std::hypot(kx, ky);
        double cx = 1.0, cy = 0.0; // khat_par
        if (kpar > 1e-12 * std::abs(kmed) + 1e-30) {
            cx = kx / kpar;
            cy = ky / kpar;
        }
        const cplx kz = ord.kz[j];
        // s: e = (-cy, cx); h(up) = -(kz/wt)(cx, cy), h(down) = +...
        mb.Wd(j, j) = -cy;
        mb.Wd(M + j, j) = cx;
        mb.Wu(j, j) = -cy;
        mb.Wu(M + j, j) = cx;
        mb.Vu(j, j) = -(kz / wt) * cx;
        mb.Vu(M + j, j) = -(kz / wt) * cy;
        mb.Vd(j, j) = (kz / wt) * cx;
        mb.Vd(M + j, j) = (kz / wt) * cy;
        // p: e(up) = +(kz/kmed)(cx, cy), e(down) = -...;
        //    h(both) = (kmed/wt)(-cy, cx)
        const int jp = M + j;
        mb.Wu(j, jp) = (kz / kmed) * cx;
        mb.Wu(M + j, jp) = (kz / kmed) * cy;
        mb.Wd(j, jp) = -(kz / kmed) * cx;
        mb.Wd(M + j, jp) = -(kz / kmed) * cy;
        mb.Vu(j, jp) = (kmed / wt) * (-cy);
        mb.Vu(M + j, jp) = (kmed / wt) * cx;
        mb.Vd(j, jp) = (kmed / wt) * (-cy);
        mb.Vd(M + j, jp) = (kmed / wt) * cx;
        mb.q(j) = kz;
        mb.q(jp) = kz;
    }
    return mb;
}

// Toeplitz matrix of Fourier coefficients of a lamellar profile with
// values (vr on the ridge of width a centered at x = 0, vg elsewhere)
CMat lamellar_toeplitz(int M, double period, double a, cplx vr, cplx vg)
{
    const double f = a / period;
    std::vector<cplx> coef(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d) {
        cplx c;
        if (d == 0) c = vr * f + vg * (1.0 - f);
        else c = (vr - vg) * std::sin(pi * d * f) / (pi * d);
        coef[d + M - 1] = c;
    }
    CMat T(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) T(i, j) = coef[(i - j) + M - 1];
    return T;
}

// modal eigenproblem of the patterned layer (transverse-field form,
// inverse-rule factorization for the x component)
ModeBasis grating_modes(const OrderBasis& ord, double period, double a,
                        cplx eps_r, cplx eps_g, cplx wt)
{
    const int M = ord.size();
    CMat Eps = lamellar_toeplitz(M, period, a, eps_r, eps_g);
    CMat EtaInv =
        lamellar_toeplitz(M, period, a, 1.0 / eps_r, 1.0 / eps_g);
    Eigen::PartialPivLU<CMat> eps_lu(Eps);
    Eigen::PartialPivLU<CMat> eta_lu(EtaInv);
    CMat Ex = eta_lu.inverse(); // inverse rule for E_x

    CMat Kx = CMat::Zero(M, M);
    for (int j = 0; j < M; ++j) Kx(j, j) = ord.kx[j];
    const double ky = ord.ky;
    const cplx wt2 = wt * wt;
    CMat I = CMat::Identity(M, M);

    CMat EpsInvKx = eps_lu.solve(Kx);
    CMat EpsInv = eps_lu.inverse();

    CMat F(2 * M, 2 * M), G(2 * M, 2 * M);
    // de/dz = i F h, dh/dz = i G e with e = (e_x; e_y), h = (h_x; h_y)
    F.topLeftCorner(M, M) = (ky / wt) * Kx * EpsInv;
    F.topRightCorner(M, M) = wt * I - (Kx * EpsInvKx) / wt;
    F.bottomLeftCorner(M, M) = (ky * ky / wt) * EpsInv - wt * I;
    F.bottomRightCorner(M, M) = -(ky / wt) * EpsInvKx;
    G.topLeftCorner(M, M) = -(ky / wt) * Kx;
    G.topRightCorner(M, M) = (Kx * Kx) / wt - wt * Eps;
    G.bottomLeftCorner(M, M) = wt * Ex - (ky * ky / wt) * I;
    G.bottomRightCorner(M, M) = (ky / wt) * Kx;

    CMat FG = F * G;
    Eigen::ComplexEigenSolver<CMat> es(FG);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("rcwa: modal eigenproblem failed");
    CVec lam = es.eigenvalues();
    CMat W = es.eigenvectors();

    const int n2 = 2 * M;
    std::vector<int> idx(n2);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<cplx> q(n2);
    for (int j = 0; j < n2; ++j) {
        cplx qq = branch_up(lam(j));
        double floor_q = 1e-12 * std::abs(wt);
        if (std::abs(qq) < floor_q) qq = cplx(0.0, floor_q);
        q[j] = qq;
    }
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (q[i].imag() != q[j].imag()) return q[i].imag() < q[j].imag();
        return q[i].real() < q[j].real();
    });

    ModeBasis mb;
    mb.Wu = CMat(n2, n2);
    mb.q = CVec(n2);
    for (int j = 0; j < n2; ++j) {
        mb.Wu.col(j) = W.col(idx[j]);
        mb.q(j) = q[idx[j]];
    }
    mb.Wd = mb.Wu;
    CMat GW = G * mb.Wu;
    mb.Vu = CMat(n2, n2);
    for (int j = 0; j < n2; ++j) mb.Vu.col(j) = GW.col(j) / mb.q(j);
    mb.Vd = -mb.Vu;
    return mb;
}

SBlock interface_s(const ModeBasis& A, const ModeBasis& B)
{
    const int n = A.Wd.rows();
    CMat L(2 * n, 2 * n), R(2 * n, 2 * n);
    L.topLeftCorner(n, n) = B.Wd;
    L.topRightCorner(n, n) = -A.Wu;
    L.bottomLeftCorner(n, n) = B.Vd;
    L.bottomRightCorner(n, n) = -A.Vu;
    R.topLeftCorner(n, n) = A.Wd;
    R.topRightCorner(n, n) = -B.Wu;
    R.bottomLeftCorner(n, n) = A.Vd;
    R.bottomRightCorner(n, n) = -B.Vu;
    CMat S = L.partialPivLu().solve(R);
    SBlock out;
    out.Tdd = S.topLeftCorner(n, n);
    out.Rdu = S.topRightCorner(n, n);
    out.Rud = S.bottomLeftCorner(n, n);
    out.Tuu = S.bottomRightCorner(n, n);
    return out;
}

SBlock propagation_s(const ModeBasis& mb, double thickness)
{
    const int n = mb.q.size();
    SBlock s = SBlock::identity(n);
    s.Tdd = CMat::Zero(n, n);
    s.Tuu = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        cplx ph = std::exp(cplx(0.0, 1.0) * mb.q(j) * thickness);
        s.Tdd(j, j) = ph;
        s.Tuu(j, j) = ph;
    }
    return s;
}

} // namespace

std::string GratingGeometry::id() const
{
    std::ostringstream os;
    os << "grating|" << period << "|" << ridge_width << "|" << ridge_height
       << "|" << ridge_material << "|" << groove_material << "|" << front;
    for (const auto& l : under_layers) os << "|" << l.material << ":" << l.thickness;
    os << "|" << substrate;
    return os.str();
}

LayerStack GratingGeometry::as_planar_ridge() const
{
    LayerStack s;
    s.front = front;
    s.layers.push_back({ridge_material, ridge_height});
    for (const auto& l : under_layers) s.layers.push_back(l);
    s.back = substrate;
    return s;
}

Eigen::Vector3cd pol_vector_s(const OrderBasis& b, int m)
{
    const int j = m + b.N;
    const double kx = b.kx[j], ky = b.ky;
    const double kpar = std::hypot(kx, ky);
    if (kpar < 1e-12 * std::abs(b.k_medium) + 1e-30)
        return Eigen::Vector3cd(0.0, 1.0, 0.0);
    return Eigen::Vector3cd(-ky / kpar, kx / kpar, 0.0);
}

Eigen::Vector3cd pol_vector_p(const OrderBasis& b, int m, int sign)
{
    const int j = m + b.N;
    const double kx = b.kx[j], ky = b.ky;
    const double kpar = std::hypot(kx, ky);
    const cplx kz = b.kz[j];
    const cplx k = b.k_medium;
    if (kpar < 1e-12 * std::abs(k) + 1e-30)
        return Eigen::Vector3cd((double)sign * kz / k, 0.0, 0.0);
    return Eigen::Vector3cd((double)sign * kx * kz / (kpar * k),
                            (double)sign * ky * kz / (kpar * k), -kpar / k);
}

RcwaSolution rcwa_solve(const GratingGeometry& g, const MaterialLibrary& lib,
                        FrequencyAxis axis, double freq, double kx_bloch,
                        double ky, int N)
{
    if (N < 1) throw std::invalid_argument("rcwa_solve: N must be >= 1");
    if (g.period <= 0.0 || g.ridge_width <= 0.0 || g.ridge_width >= g.period)
        throw std::invalid_argument("rcwa_solve: need 0 < ridge width < period");
    if (std::abs(kx_bloch) > pi / g.period * (1.0 + 1e-12))
        throw std::invalid_argument("rcwa_solve: kx outside the Brillouin zone");

    const cplx wt = omega_tilde(axis, freq);
    const cplx eps_top = layer_eps(lib.get(g.front), axis, freq);
    const cplx eps_sub = layer_eps(lib.get(g.substrate), axis, freq);
    const cplx eps_r = layer_eps(lib.get(g.ridge_material), axis, freq);
    const cplx eps_g = layer_eps(lib.get(g.groove_material), axis, freq);

    RcwaSolution sol;
    sol.top = make_orders(N, kx_bloch, ky, eps_top, wt);
    fill_orders(sol.top, g.period, eps_top, wt);
    sol.bottom = make_orders(N, kx_bloch, ky, eps_sub, wt);
    fill_orders(sol.bottom, g.period, eps_sub, wt);

    ModeBasis top = uniform_modes(sol.top, eps_top, wt);
    ModeBasis grat =
        grating_modes(sol.top, g.period, g.ridge_width, eps_r, eps_g, wt);

    SBlock S = interface_s(top, grat);
    S = star(S, propagation_s(grat, g.ridge_height));
    const ModeBasis* prev = &grat;

    std::vector<ModeBasis> kept;
    kept.reserve(g.under_layers.size() + 1);
    for (const auto& l : g.under_layers) {
        cplx eps_l = layer_eps(lib.get(l.material), axis, freq);
        OrderBasis ob = make_orders(N, kx_bloch, ky, eps_l, wt);
        fill_orders(ob, g.period, eps_l, wt);
        kept.push_back(uniform_modes(ob, eps_l, wt));
        S = star(S, interface_s(*prev, kept.back()));
        S = star(S, propagation_s(kept.back(), l.thickness));
        prev = &kept.back();
    }
    ModeBasis sub = uniform_modes(sol.bottom, eps_sub, wt);
    S = star(S, interface_s(*prev, sub));

    sol.R_top = S.Rud;
    sol.T_up = S.Tuu;
    sol.R_bottom = S.Rdu;
    sol.T_down = S.Tdd;
    return sol;
}

} // namespace nftrap
