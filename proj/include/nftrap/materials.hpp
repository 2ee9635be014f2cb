#ifndef NFTRAP_MATERIALS_HPP
#define NFTRAP_MATERIALS_HPP

#include <complex>
#include <string>
#include <vector>

namespace nftrap {

// Drude/Lorentz oscillator: eps contribution f wp^2/(w0^2 - w^2 - i g w)
struct Oscillator {
    double f = 0.0;
    double wp = 0.0;    // [rad/s]
    double gamma = 0.0; // [rad/s]
    double w0 = 0.0;    // [rad/s]; 0 means Drude
};

class MaterialModel {
public:
    enum class Kind { Vacuum, OscillatorSum, PerfectMirror };

    MaterialModel() = default;
    MaterialModel(std::string name, Kind kind) : name_(std::move(name)), kind_(kind) {}

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    bool is_mirror() const { return kind_ == Kind::PerfectMirror; }

    // complex permittivity on the real axis; throws std::out_of_range when
    // omega is outside the model's validity window
    std::complex<double> permittivity(double omega) const;

    // real permittivity on the imaginary axis, >= 1, non-increasing in xi
    double permittivity_imag_axis(double xi) const;

    std::vector<Oscillator> oscillators;
    double valid_lo = 0.0; // [rad/s]
    double valid_hi = 0.0;

private:
    std::string name_;
    Kind kind_ = Kind::Vacuum;
};

class MaterialLibrary {
public:
    // Parse the section-based oscillator parameter file.
    static MaterialLibrary parse(const std::string& text);
    static MaterialLibrary load(const std::string& path);
    // Library bundled with the code (Au, Si, SiO2 + built-in vacuum/mirror).
    static const MaterialLibrary& bundled();

    const MaterialModel& get(const std::string& name) const;
    bool has(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::vector<MaterialModel> models_;
};

} // namespace nftrap

#endif
