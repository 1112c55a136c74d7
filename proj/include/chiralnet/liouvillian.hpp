#pragma once

#include <vector>

#include "chiralnet/operators.hpp"

namespace chiralnet {

/// Lindblad channel: rate * (O rho O' - 1/2 {O'O, rho}).
struct Dissipator {
    double rate;
    Matrix op;
};

/// Waveguide-mediated cross term between the nodes,
///   coeff * [A, rho B'] + conj(coeff) * [B rho, A'].
/// Equal to a collective-jump rewriting only when paired with the local
/// dissipators, so it is kept in this literal form.
struct CrossTerm {
    Complex coeff;
    Matrix a;
    Matrix b;
};

/// Full generator of the network master equation,
///   rho' = -i[H, rho] + sum_k D_k(rho) + sum_m cross_m(rho).
/// The action on any Hermitian rho is Hermitian and traceless.
struct Liouvillian {
    Matrix hamiltonian;
    std::vector<Dissipator> dissipators;
    std::vector<CrossTerm> cross_terms;

    int dim() const { return static_cast<int>(hamiltonian.rows()); }
    Matrix apply(const Matrix& rho) const;
};

/// Generator with the Jaynes-Cummings Hamiltonian, local decay channels
/// gamma_ij D[a_j] and Gamma_j D[sigma_j], and the directional cross terms
/// sqrt(gamma_i1 gamma_i2) e^{-+ikD}. For NoCavity networks the waveguide
/// couples sigma_j in place of a_j and the non-guided channels are dropped.
Liouvillian build_liouvillian(const NetworkParams& p);

} // namespace chiralnet
