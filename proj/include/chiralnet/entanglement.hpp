#pragma once

#include "chiralnet/state.hpp"

namespace chiralnet {

/// Two-qubit reduced state over {|gg>, |ge>, |eg>, |ee>} (qubit 1 is the
/// most significant factor, matching the global basis convention).
struct TwoQubitState {
    Eigen::Matrix4cd rho;

    /// Hermiticity to 1e-12, unit trace to 1e-10, smallest eigenvalue
    /// above -1e-8. Throws std::invalid_argument on violation.
    void validate() const;
};

/// Partial trace over both cavity factors of a 16-dim density matrix.
/// A 4-dim input (NoCavity) is passed through unchanged.
TwoQubitState reduce_to_qubits(const Matrix& rho);

/// Reduction of a sector pure state. The lost norm 1 - |psi|^2 is assigned
/// to |gg><gg|: every decay channel (waveguide emission from either
/// direction and non-guided atomic decay) removes the single excitation
/// and leaves both atoms in the ground state, so the discarded population
/// sits entirely in the joint ground state and the reduction stays
/// trace one.
TwoQubitState reduce_to_qubits(const PureState& psi);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) from the square-rooted
/// eigenvalues of rho * (sy x sy) rho* (sy x sy) in decreasing order,
/// computed through the Hermitian form sqrt(rho) rho_tilde sqrt(rho).
/// Eigenvalues in [-1e-8, 0) are clipped to zero; anything lower is a
/// positivity violation and throws.
double concurrence(const TwoQubitState& state);

/// 2 |<eg| rho |ge>|, valid in the single-excitation sector where it
/// coincides with the Wootters formula.
double concurrence_coherence(const TwoQubitState& state);

enum class FidelityTarget {
    PsiPlus,   ///< (|eg> + |ge>)/sqrt(2)
    PsiMinus,  ///< (|eg> - |ge>)/sqrt(2)
    EG,        ///< |eg>, the initial excitation on node 1
    GE,        ///< |ge>, the transfer target on node 2
};

Eigen::Vector4cd target_state(FidelityTarget target);

/// <psi| rho |psi> against a named target.
double fidelity(const TwoQubitState& state, FidelityTarget target);

/// <psi| rho |psi> against a custom pure state; psi must be normalized
/// to 1e-10.
double fidelity(const TwoQubitState& state, const Eigen::Vector4cd& psi);

} // namespace chiralnet
