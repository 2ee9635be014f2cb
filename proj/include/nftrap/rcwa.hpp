#ifndef NFTRAP_RCWA_HPP
#define NFTRAP_RCWA_HPP

#include "nftrap/materials.hpp"
#include "nftrap/stratified.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace nftrap {

// 1D lamellar grating: a patterned layer (ridges of ridge_material in
// groove_material, ridge centered at x = 0) on top of planar under-layers
// and a semi-infinite substrate. z = 0 at the top of the ridges, vacuum
// above.
struct GratingGeometry {
    double period = 0.0;        // [m]
    double ridge_width = 0.0;   // [m]
    double ridge_height = 0.0;  // thickness of the patterned layer [m]
    std::string ridge_material = "SiO2";
    std::string groove_material = "vacuum";
    std::string front = "vacuum";
    std::vector<Layer> under_layers; // below the patterned layer
    std::string substrate = "Si";

    std::string id() const;
    // zero structural contrast (degenerates to a planar stack)
    LayerStack as_planar_ridge() const;   // ridge material everywhere
};

// Diffraction-order bookkeeping in a uniform medium.
struct OrderBasis {
    int N = 0;                       // orders -N..N
    double kx_bloch = 0.0;           // [1/m]
    double ky = 0.0;
    std::complex<double> k_medium;   // sqrt(eps) omega/c, Im >= 0
    std::vector<double> kx;          // per order
    std::vector<std::complex<double>> kz; // per order, Im >= 0
    int size() const { return 2 * N + 1; }
};

// Scattering matrices of the full structure in the order/polarization
// basis [s(-N..N), p(-N..N)]; amplitudes are E-field amplitudes along the
// unit polarization vectors e_{m+-}^sigma.
struct RcwaSolution {
    OrderBasis top;     // front medium (vacuum side)
    OrderBasis bottom;  // substrate
    Eigen::MatrixXcd R_top;   // reflection for incidence from the top
    Eigen::MatrixXcd T_up;    // substrate -> top transmission
    Eigen::MatrixXcd R_bottom;// reflection for incidence from the bottom
    Eigen::MatrixXcd T_down;  // top -> substrate transmission
};

// Solve the grating scattering problem at real frequency (axis Real) or
// imaginary frequency (axis Imaginary, freq = xi). kx_bloch in
// [-pi/ell, pi/ell]. N >= 1 is the truncation order.
RcwaSolution rcwa_solve(const GratingGeometry& g, const MaterialLibrary& lib,
                        FrequencyAxis axis, double freq, double kx_bloch,
                        double ky, int N);

// unit polarization vectors of order m in the top medium;
// sign = +1 (up-going, +z) or -1 (down-going)
Eigen::Vector3cd pol_vector_s(const OrderBasis& b, int m);
Eigen::Vector3cd pol_vector_p(const OrderBasis& b, int m, int sign);

} // namespace nftrap

#endif
