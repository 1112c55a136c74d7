#include "chiralnet/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chiralnet {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-8;

Eigen::Matrix4cd spin_flip_matrix() {
    // sigma_y x sigma_y, basis {gg, ge, eg, ee}
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

// Eigensolver noise on exact zero modes turns into sqrt(noise) ~ 1e-8 in
// the concurrence, so anything below a few machine epsilons of the leading
// eigenvalue is treated as zero.
Eigen::Vector4d clipped_eigenvalues(const Eigen::Matrix4cd& hermitian,
                                    double psd_floor) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(hermitian);
    Eigen::Vector4d ev = es.eigenvalues();
    const double noise_floor =
        64.0 * std::numeric_limits<double>::epsilon() *
        std::max(1e-30, ev.cwiseAbs().maxCoeff());
    for (int i = 0; i < 4; ++i) {
        if (ev[i] < -psd_floor)
            throw std::invalid_argument(
                "concurrence: matrix eigenvalue below the positivity floor");
        if (ev[i] < noise_floor) ev[i] = 0.0;
    }
    return ev;
}

} // namespace

void TwoQubitState::validate() const {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::invalid_argument("TwoQubitState: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > kTraceTol ||
        std::abs(rho.trace().imag()) > kTraceTol)
        throw std::invalid_argument("TwoQubitState: trace is not one");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw std::invalid_argument("TwoQubitState: not positive semidefinite");
}

TwoQubitState reduce_to_qubits(const Matrix& rho) {
    TwoQubitState out;
    if (rho.rows() == 4 && rho.cols() == 4) {
        out.rho = rho;
        return out;
    }
    if (rho.rows() != 16 || rho.cols() != 16)
        throw std::invalid_argument("reduce_to_qubits: expected dim 16 or 4");
    out.rho.setZero();
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int p1 = 0; p1 < 2; ++p1)
                for (int p2 = 0; p2 < 2; ++p2) {
                    Complex sum = 0.0;
                    for (int n1 = 0; n1 < 2; ++n1)
                        for (int n2 = 0; n2 < 2; ++n2)
                            sum += rho(8 * q1 + 4 * q2 + 2 * n1 + n2,
                                       8 * p1 + 4 * p2 + 2 * n1 + n2);
                    out.rho(2 * q1 + q2, 2 * p1 + p2) = sum;
                }
    return out;
}

TwoQubitState reduce_to_qubits(const PureState& psi) {
    const double loss = std::max(0.0, 1.0 - psi.norm2());
    TwoQubitState out;
    out.rho.setZero();
    // Basis {gg, ge, eg, ee}: photon amplitudes and the lost norm both land
    // in |gg><gg| (the photon states have both atoms in the ground state).
    out.rho(0, 0) = std::norm(psi.c_gg) + std::norm(psi.c_10) +
                    std::norm(psi.c_01) + loss;
    out.rho(1, 1) = std::norm(psi.c_ge);
    out.rho(2, 2) = std::norm(psi.c_eg);
    out.rho(0, 1) = psi.c_gg * std::conj(psi.c_ge);
    out.rho(0, 2) = psi.c_gg * std::conj(psi.c_eg);
    out.rho(1, 2) = psi.c_ge * std::conj(psi.c_eg);
    out.rho(1, 0) = std::conj(out.rho(0, 1));
    out.rho(2, 0) = std::conj(out.rho(0, 2));
    out.rho(2, 1) = std::conj(out.rho(1, 2));
    return out;
}

double concurrence(const TwoQubitState& state) {
    const Eigen::Matrix4cd& rho = state.rho;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::invalid_argument("concurrence: input not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    Eigen::Vector4d ev = es.eigenvalues();
    const double rho_floor = 64.0 * std::numeric_limits<double>::epsilon();
    for (int i = 0; i < 4; ++i) {
        if (ev[i] < -kPsdTol)
            throw std::invalid_argument("concurrence: input not positive semidefinite");
        if (ev[i] < rho_floor) ev[i] = 0.0;
    }
    Eigen::Matrix4cd sqrt_rho = es.eigenvectors() *
                                ev.cwiseSqrt().asDiagonal() *
                                es.eigenvectors().adjoint();

    const Eigen::Matrix4cd yy = spin_flip_matrix();
    Eigen::Matrix4cd rho_tilde = yy * rho.conjugate() * yy;
    Eigen::Matrix4cd m = sqrt_rho * rho_tilde * sqrt_rho;
    m = 0.5 * (m + m.adjoint().eval());

    Eigen::Vector4d lam = clipped_eigenvalues(m, kPsdTol).cwiseSqrt();
    std::sort(lam.data(), lam.data() + 4, std::greater<double>());
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_coherence(const TwoQubitState& state) {
    return 2.0 * std::abs(state.rho(2, 1));
}

Eigen::Vector4cd target_state(FidelityTarget target) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (target) {
        case FidelityTarget::PsiPlus:
            psi[2] = inv_sqrt2;
            psi[1] = inv_sqrt2;
            break;
        case FidelityTarget::PsiMinus:
            psi[2] = inv_sqrt2;
            psi[1] = -inv_sqrt2;
            break;
        case FidelityTarget::EG:
            psi[2] = 1.0;
            break;
        case FidelityTarget::GE:
            psi[1] = 1.0;
            break;
    }
    return psi;
}

double fidelity(const TwoQubitState& state, FidelityTarget target) {
    return fidelity(state, target_state(target));
}

double fidelity(const TwoQubitState& state, const Eigen::Vector4cd& psi) {
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("fidelity: target state not normalized");
    const double f = std::real(Complex(psi.adjoint() * state.rho * psi));
    return std::clamp(f, 0.0, 1.0);
}

} // namespace chiralnet
