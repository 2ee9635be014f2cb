#include "nftrap/materials.hpp"
#include "nftrap/constants.hpp"
#include "nftrap/embedded_data.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nftrap {

using namespace constants;

std::complex<double> MaterialModel::permittivity(double omega) const
{
    if (kind_ == Kind::Vacuum) return {1.0, 0.0};
    if (kind_ == Kind::PerfectMirror)
        throw std::runtime_error("permittivity: perfect mirror has no "
                                 "permittivity; handled at the reflection level");
    if (omega <= 0.0)
        throw std::domain_error("permittivity: omega must be > 0");
    if (omega < valid_lo || omega > valid_hi)
        throw std::out_of_range("permittivity: omega outside validity range of "
                                + name());
    std::complex<double> eps(1.0, 0.0);
    for (const auto& o : oscillators)
        eps += o.f * o.wp * o.wp /
               (o.w0 * o.w0 - omega * omega - std::complex<double>(0.0, o.gamma * omega));
    return eps;
}

double MaterialModel::permittivity_imag_axis(double xi) const
{
    if (xi < 0.0)
        throw std::domain_error("permittivity_imag_axis: xi must be >= 0");
    if (kind_ == Kind::Vacuum) return 1.0;
    if (kind_ == Kind::PerfectMirror)
        throw std::runtime_error("permittivity_imag_axis: perfect mirror has no "
                                 "permittivity");
    double eps = 1.0;
    for (const auto& o : oscillators) {
        double den = o.w0 * o.w0 + xi * xi + o.gamma * xi;
        if (den <= 0.0) {
            // Drude at xi = 0: formally infinite; callers keep xi > 0
            return std::numeric_limits<double>::infinity();
        }
        eps += o.f * o.wp * o.wp / den;
    }
    return eps;
}

MaterialLibrary MaterialLibrary::parse(const std::string& text)
{
    MaterialLibrary lib;
    lib.models_.emplace_back("vacuum", MaterialModel::Kind::Vacuum);
    lib.models_.emplace_back("mirror", MaterialModel::Kind::PerfectMirror);

    std::istringstream in(text);
    std::string line;
    MaterialModel* cur = nullptr;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '[') {
            auto close = line.find(']');
            if (close == std::string::npos)
                throw std::runtime_error("materials line " + std::to_string(lineno) +
                                         ": unterminated section header");
            std::string name = line.substr(1, close - 1);
            lib.models_.emplace_back(name, MaterialModel::Kind::OscillatorSum);
            cur = &lib.models_.back();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || !cur)
            throw std::runtime_error("materials line " + std::to_string(lineno) +
                                     ": expected 'key = values' inside a section");
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::istringstream vs(line.substr(eq + 1));
        if (key == "osc") {
            Oscillator o;
            double wp_eV, g_eV, w0_eV;
            if (!(vs >> o.f >> wp_eV >> g_eV >> w0_eV))
                throw std::runtime_error("materials line " + std::to_string(lineno) +
                                         ": osc needs 4 numbers");
            o.wp = wp_eV * eV_to_rad_s;
            o.gamma = g_eV * eV_to_rad_s;
            o.w0 = w0_eV * eV_to_rad_s;
            cur->oscillators.push_back(o);
        } else if (key == "valid_eV") {
            double lo, hi;
            if (!(vs >> lo >> hi))
                throw std::runtime_error("materials line " + std::to_string(lineno) +
                                         ": valid_eV needs 2 numbers");
            cur->valid_lo = lo * eV_to_rad_s;
            cur->valid_hi = hi * eV_to_rad_s;
        } else {
            throw std::runtime_error("materials line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        }
    }
    return lib;
}

MaterialLibrary MaterialLibrary::load(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("materials: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const MaterialLibrary& MaterialLibrary::bundled()
{
    static MaterialLibrary lib = parse(embedded::materials);
    return lib;
}

const MaterialModel& MaterialLibrary::get(const std::string& name) const
{
    for (const auto& m : models_)
        if (m.name() == name) return m;
    throw std::runtime_error("materials: unknown material '" + name + "'");
}

bool MaterialLibrary::has(const std::string& name) const
{
    for (const auto& m : models_)
        if (m.name() == name) return true;
    return false;
}

std::vector<std::string> MaterialLibrary::names() const
{
    std::vector<std::string> out;
    for (const auto& m : models_) out.push_back(m.name());
    return out;
}

} // namespace nftrap
