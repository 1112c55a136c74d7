#pragma once

#include <string>

namespace chiralnet {

enum class Variant { WithCavity, NoCavity };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// All physical rates, frequencies, phases and geometry of the two-node
/// network. Rates and frequencies are expressed in units of a reference
/// decay rate gamma_ref (by convention gamma_R1 = 1, or gamma_R1 =
/// gamma_R2 = 1 for symmetric studies); times are in 1/gamma_ref.
///
/// Node positions enter the dynamics only through the accumulated
/// propagation phase kD, which is reduced modulo 2*pi by finalize().
struct NetworkParams {
    double omega_c1 = 0.0;   ///< cavity frequency, node 1
    double omega_c2 = 0.0;   ///< cavity frequency, node 2
    double omega_a1 = 0.0;   ///< atomic transition frequency, node 1
    double omega_a2 = 0.0;   ///< atomic transition frequency, node 2
    double g1 = 0.0;         ///< cavity-atom coupling in node 1 (real)
    double g2 = 0.0;         ///< cavity-atom coupling in node 2 (real)
    double alpha = 0.0;      ///< relative phase of the node-2 coupling [rad]
    double gamma_R1 = 1.0;   ///< rightward cavity decay into the waveguide, node 1
    double gamma_R2 = 1.0;   ///< rightward cavity decay into the waveguide, node 2
    double gamma_L1 = 0.0;   ///< leftward cavity decay into the waveguide, node 1
    double gamma_L2 = 0.0;   ///< leftward cavity decay into the waveguide, node 2
    double Gamma1 = 0.0;     ///< atomic decay into non-guided modes, node 1
    double Gamma2 = 0.0;     ///< atomic decay into non-guided modes, node 2
    double kD = 0.0;         ///< propagation phase k*D [rad], stored mod 2*pi
    Variant variant = Variant::WithCavity;

    /// Hilbert-space dimension: 16 with cavities, 4 without.
    int dim() const { return variant == Variant::WithCavity ? 16 : 4; }

    /// Throws std::invalid_argument if any rate is negative or a value is
    /// non-finite.
    void validate() const;

    /// Reduces kD modulo 2*pi and validates. Call after mutating fields.
    NetworkParams& finalize();

    /// Chirality (gamma_R - gamma_L)/(gamma_R + gamma_L); requires
    /// symmetric couplings between the nodes.
    double chirality() const;

    /// Mean of the four transition frequencies.
    double mean_frequency() const;

    /// Same network in the frame rotating at the mean frequency. All
    /// observables produced by this artifact (populations, concurrence,
    /// fidelities) are invariant under this shift, and it keeps the
    /// integration non-stiff when the lab frequencies are large.
    NetworkParams rotating_frame() const;

    /// Rescales every rate and frequency so that gamma_R1 == 1, fixing the
    /// gamma_ref convention. Phases (alpha, kD) are untouched.
    NetworkParams normalized() const;

    bool operator==(const NetworkParams&) const = default;
};

double reduce_phase_2pi(double phase);

/// Flat `key = value` rendering with the documented key names, suitable
/// for feeding back through the config loader.
std::string to_config_string(const NetworkParams& p);

} // namespace chiralnet
