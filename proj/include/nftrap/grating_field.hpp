#ifndef NFTRAP_GRATING_FIELD_HPP
#define NFTRAP_GRATING_FIELD_HPP

#include "nftrap/rcwa.hpp"

#include <optional>
#include <vector>

namespace nftrap {

struct GratingBeam {
    Side side = Side::Back;   // Back: through the substrate; Front: vacuum
    double power = 0.0;       // [W]
    double waist = 200e-6;    // [m]
    double theta = 0.0;       // incidence angle in its medium [rad]
    Polarization pol = Polarization::P;
};

// Periodic intensity map on the vacuum side, z measured from the ridge top.
struct IntensityMap {
    std::vector<double> x;  // [m], one period
    std::vector<double> z;  // [m]
    std::vector<double> I;  // [W/m^2], x-major: I[ix*z.size()+iz]
    double at(size_t ix, size_t iz) const { return I[ix * z.size() + iz]; }
    // true when I(z) decreases monotonically along column ix
    bool monotonic_decay(size_t ix) const;
};

IntensityMap grating_field_map(const GratingGeometry& g,
                               const MaterialLibrary& lib, double lambda,
                               const GratingBeam& beam,
                               const std::vector<double>& x,
                               const std::vector<double>& z, int N);

// Time-averaged two-beam illumination: I_back + I_front with
// P_front = alpha_1529 * P_back (the beat at the frequency mismatch
// averages out; only the intensity sum enters the potential).
IntensityMap averaged_two_beam_intensity(const GratingGeometry& g,
                                         const MaterialLibrary& lib,
                                         double lambda, double p_back,
                                         double alpha_1529, double waist,
                                         double theta_back, double theta_front,
                                         const std::vector<double>& x,
                                         const std::vector<double>& z, int N);

// Specular p-reflectance dip beyond the TIR angle, incidence through the
// substrate (same semantics as the planar spr_angle).
SprResult grating_spr_angle(const GratingGeometry& g,
                            const MaterialLibrary& lib, double lambda, int N,
                            double dip_threshold = 0.9);

} // namespace nftrap

#endif
