#include "chiralnet/liouvillian.hpp"

namespace chiralnet {

Matrix Liouvillian::apply(const Matrix& rho) const {
    const Complex i(0.0, 1.0);
    Matrix out = -i * (hamiltonian * rho - rho * hamiltonian);
    for (const Dissipator& d : dissipators) {
        if (d.rate == 0.0) continue;
        Matrix orho = d.op * rho;
        Matrix oo = d.op.adjoint() * d.op;
        out += d.rate * (orho * d.op.adjoint() -
                         0.5 * (oo * rho + rho * oo));
    }
    for (const CrossTerm& c : cross_terms) {
        if (c.coeff == Complex(0.0)) continue;
        Matrix rho_bdag = rho * c.b.adjoint();
        Matrix a_rho = c.a * rho;
        // coeff [A, rho B'] + conj(coeff) [B rho, A']
        out += c.coeff * (c.a * rho_bdag - rho_bdag * c.a);
        Matrix b_rho = c.b * rho;
        out += std::conj(c.coeff) *
               (b_rho * c.a.adjoint() - c.a.adjoint() * b_rho);
    }
    return out;
}

Liouvillian build_liouvillian(const NetworkParams& p) {
    p.validate();
    const Complex i(0.0, 1.0);

    Liouvillian L;
    L.hamiltonian = build_jc_hamiltonian(p);

    Matrix b1 = p.variant == Variant::WithCavity
                    ? cavity_annihilation(p.variant, 1)
                    : atom_lowering(p.variant, 1);
    Matrix b2 = p.variant == Variant::WithCavity
                    ? cavity_annihilation(p.variant, 2)
                    : atom_lowering(p.variant, 2);

    L.dissipators.push_back({p.gamma_R1 + p.gamma_L1, b1});
    L.dissipators.push_back({p.gamma_R2 + p.gamma_L2, b2});
    if (p.variant == Variant::WithCavity) {
        L.dissipators.push_back({p.Gamma1, atom_lowering(p.variant, 1)});
        L.dissipators.push_back({p.Gamma2, atom_lowering(p.variant, 2)});
    }

    const Complex phase_m = std::exp(-i * p.kD);
    // Rightward channel carries node 1 -> node 2, leftward the mirror.
    L.cross_terms.push_back(
        {std::sqrt(p.gamma_R1 * p.gamma_R2) * phase_m, b2, b1});
    L.cross_terms.push_back(
        {std::sqrt(p.gamma_L1 * p.gamma_L2) * phase_m, b1, b2});
    return L;
}

} // namespace chiralnet
