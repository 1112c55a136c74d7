#pragma once

#include <array>
#include <complex>
#include <Eigen/Dense>

#include "chiralnet/network_params.hpp"

namespace chiralnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Basis convention
// ----------------
// Tensor factor order: (qubit 1, qubit 2, cavity 1, cavity 2), each factor
// two-dimensional with local ordering {ground/vacuum, excited/one-photon}.
// States are flattened row-major over the factors, so the first factor is
// the most significant bit:
//
//   index(|i j n1 n2>) = 8*i + 4*j + 2*n1 + n2     (WithCavity, dim 16)
//   index(|i j>)       = 2*i + j                   (NoCavity,   dim 4)
//
// The cavity Fock spaces are truncated at one photon. The initial states
// used throughout live in the total-excitation <= 1 sector and every term
// of the dynamics is excitation-non-increasing, so the truncation is exact.

/// Flattened basis index of |i j n1 n2> (WithCavity) or |i j> (NoCavity).
int basis_index(Variant v, int q1, int q2, int n1 = 0, int n2 = 0);

/// Single-excitation sector indices ordered {gg00, eg00, ge00, gg10, gg01}.
/// For NoCavity only the first three entries exist: {gg, eg, ge}.
std::array<int, 5> single_excitation_indices(Variant v);
int single_excitation_count(Variant v);

/// Cavity annihilation operator a_j in the full space (node = 1 or 2).
/// NoCavity networks have none; requesting one throws.
Matrix cavity_annihilation(Variant v, int node);

/// Atomic lowering operator sigma_j in the full space (node = 1 or 2).
Matrix atom_lowering(Variant v, int node);

/// Total excitation number N = sum_j sigma_j^+ sigma_j + a_j^+ a_j.
/// Commutes with the Jaynes-Cummings Hamiltonian, which is what makes the
/// single-excitation restriction exact.
Matrix excitation_number(Variant v);

/// Jaynes-Cummings Hamiltonian of the two decoupled nodes:
///   H = w_c1 a1'a1 + w_c2 a2'a2 + w_a1 s1's1 + w_a2 s2's2
///       + g1 (a1' s1 + h.c.) + g2 (e^{i alpha} a2' s2 + h.c.)
/// For NoCavity only the atomic frequency terms survive.
Matrix build_jc_hamiltonian(const NetworkParams& p);

/// Non-Hermitian Hamiltonian generating the no-jump dynamics:
///   H_eff = H_JC - i sqrt(gL1 gL2) e^{ikD} a1'a2 - i sqrt(gR1 gR2) e^{ikD} a2'a1
///           - (i/2) sum_j (gLj + gRj) aj'aj - (i/2) sum_j Gamma_j sj'sj
/// For symmetric couplings the hopping prefactors reduce to gamma_L and
/// gamma_R. The sqrt(gamma_j1 gamma_j2) form is the cascaded-network
/// generalization to unequal rates; it reproduces the cross terms of the
/// full generator. For NoCavity, a_j is replaced by sigma_j and the
/// non-guided Gamma_j terms are dropped.
Matrix build_effective_hamiltonian(const NetworkParams& p);

/// Restriction of a full-space operator to the single-excitation sector,
/// ordered {gg00, eg00, ge00, gg10, gg01} (first three for NoCavity).
Matrix restrict_to_single_excitation(const Matrix& op, Variant v);

/// max_ij |A_ij - conj(A_ji)|, a Hermiticity defect measure.
double hermiticity_defect(const Matrix& a);

} // namespace chiralnet
