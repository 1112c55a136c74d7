#include "chiralnet/network_params.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace chiralnet {

std::string to_string(Variant v) {
    return v == Variant::WithCavity ? "with_cavity" : "no_cavity";
}

Variant variant_from_string(const std::string& s) {
    if (s == "with_cavity") return Variant::WithCavity;
    if (s == "no_cavity") return Variant::NoCavity;
    throw std::invalid_argument("unknown variant '" + s +
                                "' (expected with_cavity or no_cavity)");
}

double reduce_phase_2pi(double phase) {
    const double two_pi = 2.0 * M_PI;
    double r = std::fmod(phase, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

void NetworkParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    for (double x : {omega_c1, omega_c2, omega_a1, omega_a2, g1, g2, alpha,
                     gamma_R1, gamma_R2, gamma_L1, gamma_L2, Gamma1, Gamma2,
                     kD}) {
        if (!finite(x))
            throw std::invalid_argument("NetworkParams: non-finite value");
    }
    for (double r : {g1, g2, gamma_R1, gamma_R2, gamma_L1, gamma_L2, Gamma1,
                     Gamma2}) {
        if (r < 0.0)
            throw std::invalid_argument("NetworkParams: negative rate");
    }
}

NetworkParams& NetworkParams::finalize() {
    kD = reduce_phase_2pi(kD);
    validate();
    return *this;
}

double NetworkParams::chirality() const {
    if (gamma_R1 != gamma_R2 || gamma_L1 != gamma_L2)
        throw std::logic_error(
            "chirality() requires symmetric couplings (gamma_R1 == gamma_R2, "
            "gamma_L1 == gamma_L2)");
    const double total = gamma_R1 + gamma_L1;
    if (total == 0.0)
        throw std::logic_error("chirality() undefined for a decoupled waveguide");
    return (gamma_R1 - gamma_L1) / total;
}

double NetworkParams::mean_frequency() const {
    return 0.25 * (omega_c1 + omega_c2 + omega_a1 + omega_a2);
}

NetworkParams NetworkParams::rotating_frame() const {
    NetworkParams p = *this;
    const double w0 = mean_frequency();
    p.omega_c1 -= w0;
    p.omega_c2 -= w0;
    p.omega_a1 -= w0;
    p.omega_a2 -= w0;
    return p;
}

std::string to_config_string(const NetworkParams& p) {
    std::ostringstream out;
    auto emit = [&out](const char* key, double value) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        out << key << " = " << buf << "\n";
    };
    out << "variant = " << to_string(p.variant) << "\n";
    emit("omega_c1", p.omega_c1);
    emit("omega_c2", p.omega_c2);
    emit("omega_a1", p.omega_a1);
    emit("omega_a2", p.omega_a2);
    emit("g1", p.g1);
    emit("g2", p.g2);
    emit("alpha", p.alpha);
    emit("gamma_R1", p.gamma_R1);
    emit("gamma_R2", p.gamma_R2);
    emit("gamma_L1", p.gamma_L1);
    emit("gamma_L2", p.gamma_L2);
    emit("Gamma1", p.Gamma1);
    emit("Gamma2", p.Gamma2);
    emit("kD", p.kD);
    return out.str();
}

NetworkParams NetworkParams::normalized() const {
    if (gamma_R1 <= 0.0)
        throw std::invalid_argument(
            "normalized(): gamma_R1 must be positive to serve as gamma_ref");
    NetworkParams p = *this;
    const double s = 1.0 / gamma_R1;
    p.omega_c1 *= s;
    p.omega_c2 *= s;
    p.omega_a1 *= s;
    p.omega_a2 *= s;
    p.g1 *= s;
    p.g2 *= s;
    p.gamma_R1 = 1.0;
    p.gamma_R2 *= s;
    p.gamma_L1 *= s;
    p.gamma_L2 *= s;
    p.Gamma1 *= s;
    p.Gamma2 *= s;
    return p;
}

} // namespace chiralnet
