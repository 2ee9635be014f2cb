#include "nftrap/atomic_data.hpp"
#include "nftrap/constants.hpp"
#include "nftrap/embedded_data.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace nftrap {

using namespace constants;

namespace {

// total electronic angular momentum from a label like "5P3/2"
double j_from_label(const std::string& s)
{
    auto pos = s.find_first_of("SPDF");
    if (pos == std::string::npos || pos + 1 >= s.size())
        throw std::runtime_error("atomic data: bad state label '" + s + "'");
    std::string jpart = s.substr(pos + 1);
    auto slash = jpart.find('/');
    if (slash == std::string::npos)
        return std::stod(jpart);
    return std::stod(jpart.substr(0, slash)) / std::stod(jpart.substr(slash + 1));
}

} // namespace

TransitionTable TransitionTable::parse(const std::string& text)
{
    TransitionTable t;
    double mass_amu = 0.0, gamma0_2pi_MHz = 0.0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first[0] == '@') {
            double v;
            if (!(ls >> v))
                throw std::runtime_error("atomic data line " +
                                         std::to_string(lineno) +
                                         ": missing value for " + first);
            if (first == "@mass_amu") mass_amu = v;
            else if (first == "@gamma0_2pi_MHz") gamma0_2pi_MHz = v;
            else
                throw std::runtime_error("atomic data line " +
                                         std::to_string(lineno) +
                                         ": unknown constant " + first);
            continue;
        }
        Transition tr;
        tr.lower = first;
        double lambda_nm, d_ea0;
        if (!(ls >> tr.upper >> lambda_nm >> d_ea0))
            throw std::runtime_error("atomic data line " +
                                     std::to_string(lineno) +
                                     ": expected 4 columns");
        if (lambda_nm <= 0.0 || d_ea0 < 0.0)
            throw std::runtime_error("atomic data line " +
                                     std::to_string(lineno) +
                                     ": nonpositive wavelength or negative dipole");
        tr.j_lower = j_from_label(tr.lower);
        tr.j_upper = j_from_label(tr.upper);
        tr.omega = two_pi * c0 / (lambda_nm * 1e-9);
        tr.dipole = d_ea0 * e_a0;
        t.entries_.push_back(tr);
    }
    if (mass_amu <= 0.0)
        throw std::runtime_error("atomic data: missing @mass_amu");
    if (gamma0_2pi_MHz <= 0.0)
        throw std::runtime_error("atomic data: missing @gamma0_2pi_MHz");
    t.atom_.mass = mass_amu * amu;
    t.atom_.gamma0 = two_pi * gamma0_2pi_MHz * 1e6;
    t.finalize();
    return t;
}

TransitionTable TransitionTable::load(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("atomic data: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const TransitionTable& TransitionTable::rb87()
{
    static TransitionTable table = parse(embedded::rb87_transitions);
    return table;
}

void TransitionTable::finalize()
{
    const Transition& d2 = d2_line();
    atom_.omega0_vac = d2.omega;
    atom_.k0 = d2.omega / c0;
    atom_.d0 = d2.dipole;
    atom_.omega_recoil = hbar * atom_.k0 * atom_.k0 / (2.0 * atom_.mass);
}

const Transition& TransitionTable::d2_line() const
{
    for (const auto& t : entries_)
        if (t.lower == "5S1/2" && t.upper == "5P3/2") return t;
    throw std::runtime_error("atomic data: table lacks the D2 line");
}

const Transition& TransitionTable::line_5p_4d() const
{
    for (const auto& t : entries_)
        if (t.lower == "5P3/2" && t.upper == "4D5/2") return t;
    throw std::runtime_error("atomic data: table lacks the 5P3/2->4D5/2 line");
}

bool TransitionTable::has_state(const std::string& state) const
{
    for (const auto& t : entries_)
        if (t.lower == state || t.upper == state) return true;
    return false;
}

double TransitionTable::state_j(const std::string& state) const
{
    for (const auto& t : entries_) {
        if (t.lower == state) return t.j_lower;
        if (t.upper == state) return t.j_upper;
    }
    throw std::runtime_error("atomic data: unknown state " + state);
}

double TransitionTable::dynamic_polarizability(const std::string& state,
                                               double xi) const
{
    if (xi < 0.0)
        throw std::domain_error("dynamic_polarizability: xi must be >= 0");
    if (!has_state(state))
        throw std::runtime_error("dynamic_polarizability: unknown state " +
                                 state);
    const double jn = state_j(state);
    double sum = 0.0;
    for (const auto& t : entries_) {
        double w;
        if (t.lower == state) w = t.omega;          // upward channel
        else if (t.upper == state) w = -t.omega;    // downward channel
        else continue;
        sum += w * t.dipole * t.dipole / (w * w + xi * xi);
    }
    return 2.0 / (3.0 * hbar * (2.0 * jn + 1.0)) * sum;
}

double TransitionTable::polarizability_integral(const std::string& state) const
{
    if (!has_state(state))
        throw std::runtime_error("polarizability_integral: unknown state " +
                                 state);
    const double jn = state_j(state);
    double sum = 0.0;
    for (const auto& t : entries_) {
        double sgn;
        if (t.lower == state) sgn = 1.0;
        else if (t.upper == state) sgn = -1.0;
        else continue;
        sum += sgn * t.dipole * t.dipole;
    }
    return 2.0 / (3.0 * hbar * (2.0 * jn + 1.0)) * (pi / 2.0) * sum;
}

double TransitionTable::lattice_recoil_energy(double ell) const
{
    if (ell <= 0.0)
        throw std::domain_error("lattice_recoil_energy: period must be > 0");
    const double k = pi / ell;
    return hbar * hbar * k * k / (2.0 * atom_.mass);
}

} // namespace nftrap
