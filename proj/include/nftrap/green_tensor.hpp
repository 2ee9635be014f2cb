#ifndef NFTRAP_GREEN_TENSOR_HPP
#define NFTRAP_GREEN_TENSOR_HPP

#include "nftrap/atomic_data.hpp"
#include "nftrap/cache.hpp"
#include "nftrap/casimir_polder.hpp"
#include "nftrap/rcwa.hpp"

#include <array>
#include <complex>
#include <vector>

namespace nftrap {

// Diagonal components of the scattering Green tensor of a 1D grating at
// coincident points (x, 0, z), from the order-resolved reflection
// matrices: a Brillouin-zone integral over k_x, a transverse integral
// over k_y, and the double order sum with phase factors.
struct GreenDiagMap {
    std::vector<double> x;  // one period; symmetric grid
    std::vector<double> z;
    // x-major storage, [comp][ix*z.size()+iz], comp 0..2 = xx, yy, zz
    std::array<std::vector<std::complex<double>>, 3> G;
    bool flagged = false;   // k_y tail or imaginary-part residue too large
    double tail_ky = 0.0;
    double residual_imag = 0.0; // imaginary-axis maps only
};

GreenDiagMap grating_green_diag(const GratingGeometry& g,
                                const MaterialLibrary& lib,
                                FrequencyAxis axis, double freq,
                                const std::vector<double>& x,
                                const std::vector<double>& z,
                                const QuadratureSpec& quad, int threads,
                                MatrixCache* cache = nullptr);

// State-resolved CP maps over one grating period. The 5S potential uses
// the imaginary-axis Green tensor; 5P adds the resonant real-frequency
// part at the D2 line.
struct CpGratingMap {
    std::vector<double> x;
    std::vector<double> z;
    std::vector<double> u5s; // [J], x-major
    std::vector<double> u5p;
    bool flagged = false;
};

CpGratingMap cp_grating_map(const TransitionTable& table,
                            const MaterialLibrary& lib,
                            const GratingGeometry& g,
                            const std::vector<double>& x,
                            const std::vector<double>& z,
                            const QuadratureSpec& quad, int threads,
                            MatrixCache* cache = nullptr);

// Single-state evaluation at one point (helper for tests and the CLI).
double cp_grating(const TransitionTable& table, const MaterialLibrary& lib,
                  const GratingGeometry& g, const std::string& state,
                  double x, double z, const QuadratureSpec& quad,
                  MatrixCache* cache = nullptr);

} // namespace nftrap

#endif
