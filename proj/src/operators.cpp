#include "chiralnet/operators.hpp"

#include <stdexcept>

namespace chiralnet {

namespace {

// Kronecker product, first factor most significant.
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

Matrix lowering2() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;  // |g><e|
    return s;
}

// Lowering operator acting on tensor factor `slot` out of `nfactors`.
Matrix lowering_at(int slot, int nfactors) {
    Matrix op = Matrix::Identity(1, 1);
    for (int f = 0; f < nfactors; ++f)
        op = kron(op, f == slot ? lowering2() : Matrix::Identity(2, 2));
    return op;
}

} // namespace

int basis_index(Variant v, int q1, int q2, int n1, int n2) {
    if (v == Variant::WithCavity)
        return 8 * q1 + 4 * q2 + 2 * n1 + n2;
    if (n1 != 0 || n2 != 0)
        throw std::invalid_argument("basis_index: NoCavity has no photon slots");
    return 2 * q1 + q2;
}

std::array<int, 5> single_excitation_indices(Variant v) {
    if (v == Variant::WithCavity)
        return {basis_index(v, 0, 0), basis_index(v, 1, 0), basis_index(v, 0, 1),
                basis_index(v, 0, 0, 1, 0), basis_index(v, 0, 0, 0, 1)};
    return {basis_index(v, 0, 0), basis_index(v, 1, 0), basis_index(v, 0, 1),
            -1, -1};
}

int single_excitation_count(Variant v) {
    return v == Variant::WithCavity ? 5 : 3;
}

Matrix cavity_annihilation(Variant v, int node) {
    if (v != Variant::WithCavity)
        throw std::invalid_argument("cavity_annihilation: network has no cavities");
    if (node != 1 && node != 2)
        throw std::invalid_argument("cavity_annihilation: node must be 1 or 2");
    return lowering_at(node == 1 ? 2 : 3, 4);
}

Matrix atom_lowering(Variant v, int node) {
    if (node != 1 && node != 2)
        throw std::invalid_argument("atom_lowering: node must be 1 or 2");
    const int nfactors = v == Variant::WithCavity ? 4 : 2;
    return lowering_at(node - 1, nfactors);
}

Matrix excitation_number(Variant v) {
    const int d = v == Variant::WithCavity ? 16 : 4;
    Matrix n = Matrix::Zero(d, d);
    for (int node : {1, 2}) {
        Matrix s = atom_lowering(v, node);
        n += s.adjoint() * s;
        if (v == Variant::WithCavity) {
            Matrix a = cavity_annihilation(v, node);
            n += a.adjoint() * a;
        }
    }
    return n;
}

Matrix build_jc_hamiltonian(const NetworkParams& p) {
    p.validate();
    const Complex i(0.0, 1.0);
    Matrix s1 = atom_lowering(p.variant, 1);
    Matrix s2 = atom_lowering(p.variant, 2);
    Matrix h = p.omega_a1 * s1.adjoint() * s1 + p.omega_a2 * s2.adjoint() * s2;
    if (p.variant == Variant::WithCavity) {
        Matrix a1 = cavity_annihilation(p.variant, 1);
        Matrix a2 = cavity_annihilation(p.variant, 2);
        h += p.omega_c1 * a1.adjoint() * a1 + p.omega_c2 * a2.adjoint() * a2;
        h += p.g1 * (a1.adjoint() * s1 + s1.adjoint() * a1);
        h += p.g2 * (std::exp(i * p.alpha) * a2.adjoint() * s2 +
                     std::exp(-i * p.alpha) * s2.adjoint() * a2);
    }
    return h;
}

Matrix build_effective_hamiltonian(const NetworkParams& p) {
    p.validate();
    const Complex i(0.0, 1.0);
    const Complex phase = std::exp(i * p.kD);
    const double hop_R = std::sqrt(p.gamma_R1 * p.gamma_R2);
    const double hop_L = std::sqrt(p.gamma_L1 * p.gamma_L2);

    Matrix h = build_jc_hamiltonian(p);
    // With cavities the waveguide couples to the cavity modes; without, the
    // atoms couple directly and the non-guided Gamma terms are dropped.
    Matrix b1 = p.variant == Variant::WithCavity
                    ? cavity_annihilation(p.variant, 1)
                    : atom_lowering(p.variant, 1);
    Matrix b2 = p.variant == Variant::WithCavity
                    ? cavity_annihilation(p.variant, 2)
                    : atom_lowering(p.variant, 2);

    h += -i * hop_L * phase * (b1.adjoint() * b2);
    h += -i * hop_R * phase * (b2.adjoint() * b1);
    h += -i * 0.5 * (p.gamma_L1 + p.gamma_R1) * (b1.adjoint() * b1);
    h += -i * 0.5 * (p.gamma_L2 + p.gamma_R2) * (b2.adjoint() * b2);
    if (p.variant == Variant::WithCavity) {
        Matrix s1 = atom_lowering(p.variant, 1);
        Matrix s2 = atom_lowering(p.variant, 2);
        h += -i * 0.5 * p.Gamma1 * (s1.adjoint() * s1);
        h += -i * 0.5 * p.Gamma2 * (s2.adjoint() * s2);
    }
    return h;
}

Matrix restrict_to_single_excitation(const Matrix& op, Variant v) {
    const int n = single_excitation_count(v);
    const auto idx = single_excitation_indices(v);
    Matrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = op(idx[r], idx[c]);
    return out;
}

double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace chiralnet
