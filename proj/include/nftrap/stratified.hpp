#ifndef NFTRAP_STRATIFIED_HPP
#define NFTRAP_STRATIFIED_HPP

#include "nftrap/materials.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace nftrap {

struct Layer {
    std::string material;
    double thickness = 0.0; // [m]
};

// Planar multilayer. `front` is the semi-infinite medium on the z > 0 side
// (where the atom sits; usually vacuum), layers are ordered from the front
// surface toward the substrate, `back` is the semi-infinite substrate.
struct LayerStack {
    std::string front = "vacuum";
    std::vector<Layer> layers;
    std::string back = "vacuum";

    std::string id() const; // canonical string, used in cache keys
};

enum class Polarization { S, P };
enum class FrequencyAxis { Real, Imaginary };
enum class Side { Front, Back };

struct PlaneWaveQuery {
    FrequencyAxis axis = FrequencyAxis::Real;
    double freq = 0.0;  // omega or xi [rad/s]
    double kpar = 0.0;  // transverse wavevector [1/m], >= 0
    Polarization pol = Polarization::S;
};

// Amplitude reflection coefficient of the full stack seen from `side`.
// Conventions: s is the E_y amplitude ratio, p the H_y amplitude ratio,
// i.e. r_p(perfect mirror) = +1 and r_s(perfect mirror) = -1. These are
// the coefficients entering the scattering Green tensor.
std::complex<double> reflection_coefficient(const LayerStack& stack,
                                            const MaterialLibrary& lib,
                                            const PlaneWaveQuery& q,
                                            Side side = Side::Front);

// Power reflectance/transmittance for propagating real-axis queries.
struct RTResult {
    double R = 0.0;
    double T = 0.0;
};
RTResult reflectance_transmittance(const LayerStack& stack,
                                   const MaterialLibrary& lib,
                                   const PlaneWaveQuery& q, Side side);

struct SprResult {
    double theta = 0.0;   // [rad]
    double n_eff = 0.0;   // n_i sin(theta)
    double r_min = 0.0;   // p reflectance at the dip
};

// Angle of minimum p reflectance beyond the critical angle for incidence
// from `incidence_material` (back side). Throws std::runtime_error
// ("no SPR found") when there is no total-internal-reflection window or
// no dip below `dip_threshold`.
SprResult spr_angle(const LayerStack& stack, const MaterialLibrary& lib,
                    double lambda, const std::string& incidence_material,
                    double dip_threshold = 0.5);

struct IntensityProfile {
    std::vector<double> z;  // [m], >= 0, on the front (vacuum) side
    std::vector<double> I;  // [W/m^2]
    double I0 = 0.0;            // value at z = 0
    double I_incident = 0.0;    // beam peak intensity 2P/(pi w^2)
    double enhancement = 0.0;   // I0 / I_incident
    double decay_rate = 0.0;    // 2 Im kz_front [1/m]; 0 when propagating
};

// Intensity profile of the laser field on the front (vacuum) side for a
// Gaussian beam treated as a plane wave at its peak intensity 2P/(pi w^2).
// side = Back: illumination through the substrate at angle theta_inc
// (measured in the incidence medium); side = Front: from the front medium.
IntensityProfile field_intensity_profile(const LayerStack& stack,
                                         const MaterialLibrary& lib,
                                         double lambda, double theta_inc,
                                         double power, double waist, Side side,
                                         const std::vector<double>& z_grid,
                                         Polarization pol = Polarization::P);

} // namespace nftrap

#endif
