#include "chiralnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace chiralnet {

namespace {

Observables finish_observables(Observables o, const TwoQubitState& reduced) {
    o.C = concurrence(reduced);
    o.F1 = fidelity(reduced, FidelityTarget::PsiPlus);
    o.F2 = fidelity(reduced, FidelityTarget::PsiMinus);
    o.F3 = fidelity(reduced, FidelityTarget::GE);
    return o;
}

} // namespace

Observables observables_from(const PureState& psi) {
    Observables o;
    o.P_eg = std::norm(psi.c_eg);
    o.P_ge = std::norm(psi.c_ge);
    o.P_10 = std::norm(psi.c_10);
    o.P_01 = std::norm(psi.c_01);
    return finish_observables(o, reduce_to_qubits(psi));
}

Observables observables_from(const Matrix& rho, Variant v) {
    const auto idx = single_excitation_indices(v);
    Observables o;
    o.P_eg = rho(idx[1], idx[1]).real();
    o.P_ge = rho(idx[2], idx[2]).real();
    if (v == Variant::WithCavity) {
        o.P_10 = rho(idx[3], idx[3]).real();
        o.P_01 = rho(idx[4], idx[4]).real();
    }
    return finish_observables(o, reduce_to_qubits(rho));
}

std::vector<double> uniform_grid(double t_max, int points) {
    if (points < 2 || t_max <= 0.0)
        throw std::invalid_argument("uniform_grid: need t_max > 0 and >= 2 points");
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i)
        t[i] = t_max * static_cast<double>(i) / (points - 1);
    return t;
}

CsvTable trajectory_csv(const Trajectory& traj) {
    CsvTable table;
    table.columns = {"t",  "P_eg", "P_ge", "P_10", "P_01",
                     "C",  "F1",   "F2",   "F3"};
    table.rows.reserve(traj.t.size());
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const Observables& o = traj.obs[i];
        table.rows.push_back({traj.t[i], o.P_eg, o.P_ge, o.P_10, o.P_01, o.C,
                              o.F1, o.F2, o.F3});
    }
    return table;
}

OdeOptions default_dynamics_options() {
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-12;
    return opt;
}

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty time grid");
    if (grid.front() < 0.0)
        throw std::invalid_argument("time grid starts before zero");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("time grid not strictly increasing");
}

} // namespace

Trajectory evolve_master_equation(const Liouvillian& L, const Matrix& rho0,
                                  const std::vector<double>& grid,
                                  const OdeOptions& opt) {
    check_grid(grid);
    const int d = L.dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("evolve_master_equation: dimension mismatch");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("evolve_master_equation: rho0 not Hermitian");
    if (std::abs(rho0.trace() - Complex(1.0)) > 1e-10)
        throw std::invalid_argument("evolve_master_equation: rho0 trace is not one");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho0);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument(
            "evolve_master_equation: rho0 not positive semidefinite");

    const Variant v = d == 16 ? Variant::WithCavity : Variant::NoCavity;
    auto rhs = [&L, d](double, const Vector& y, Vector& dydt) {
        Eigen::Map<const Matrix> rho(y.data(), d, d);
        Matrix out = L.apply(rho);
        dydt = Eigen::Map<const Vector>(out.data(), d * d);
    };

    Vector y0 = Eigen::Map<const Vector>(rho0.data(), d * d);
    DenseSolution sol = integrate_dense(rhs, y0, 0.0, grid.back(), opt);

    Trajectory traj;
    traj.t = grid;
    traj.obs.reserve(grid.size());
    traj.densities.reserve(grid.size());
    for (double t : grid) {
        Vector y = sol.at(t);
        Matrix rho = Eigen::Map<const Matrix>(y.data(), d, d);
        // Integration noise can leave a ~1e-13 anti-Hermitian residue;
        // project back so downstream eigen-solves see a Hermitian input.
        rho = 0.5 * (rho + rho.adjoint().eval());
        traj.obs.push_back(observables_from(rho, v));
        traj.densities.push_back(std::move(rho));
    }
    return traj;
}

Trajectory evolve_schrodinger(const Matrix& h_eff, const PureState& psi0,
                              const std::vector<double>& grid,
                              const OdeOptions& opt) {
    check_grid(grid);
    const int d = static_cast<int>(h_eff.rows());
    if (d != 16 && d != 4)
        throw std::invalid_argument("evolve_schrodinger: expected dim 16 or 4");
    if (std::abs(psi0.norm2() - 1.0) > 1e-9)
        throw std::invalid_argument("evolve_schrodinger: psi0 not normalized");
    const Variant v = d == 16 ? Variant::WithCavity : Variant::NoCavity;

    const Complex i(0.0, 1.0);
    Matrix gen = -i * h_eff;
    auto rhs = [&gen](double, const Vector& y, Vector& dydt) { dydt = gen * y; };

    DenseSolution sol = integrate_dense(rhs, psi0.embed(v), 0.0, grid.back(), opt);

    Trajectory traj;
    traj.t = grid;
    traj.obs.reserve(grid.size());
    traj.states.reserve(grid.size());
    for (double t : grid) {
        PureState s = PureState::extract(sol.at(t), v);
        traj.obs.push_back(observables_from(s));
        traj.states.push_back(s);
    }
    return traj;
}

SectorEvolution::SectorEvolution(const NetworkParams& p, double t_max,
                                 const OdeOptions& opt)
    : variant_(p.variant),
      solution_([&p, t_max, &opt] {
          const Matrix h =
              restrict_to_single_excitation(build_effective_hamiltonian(p),
                                            p.variant);
          const Complex i(0.0, 1.0);
          const Matrix gen = -i * h;
          auto rhs = [&gen](double, const Vector& y, Vector& dydt) {
              dydt = gen * y;
          };
          Vector y0 = Vector::Zero(h.rows());
          y0[1] = 1.0;  // |eg00>
          return integrate_dense(rhs, y0, 0.0, t_max, opt);
      }()) {}

PureState SectorEvolution::at(double t) const {
    return PureState::from_sector_vector(solution_.at(t), variant_);
}

// --- Closed-form amplitudes ------------------------------------------------

namespace {

// Entire even kernels of kappa, as functions of x = kappa^2 with tau = t/4:
//   k0 = cosh(kappa tau)
//   k1 = sinh(kappa tau) / kappa                    -> tau      at x = 0
//   k2 = (kappa tau cosh - sinh) / kappa^3          -> tau^3/3  at x = 0
// Series fallback keeps full precision through kappa = 0.
double kernel_k0(double x, double tau) {
    if (x >= 0.0) return std::cosh(std::sqrt(x) * tau);
    return std::cos(std::sqrt(-x) * tau);
}

double kernel_k1(double x, double tau) {
    const double w = x * tau * tau;
    if (std::abs(w) < 1e-2) {
        double term = tau, sum = tau;
        for (int n = 1; n <= 8; ++n) {
            term *= w / ((2.0 * n) * (2.0 * n + 1.0));
            sum += term;
        }
        return sum;
    }
    if (x > 0.0) {
        const double kappa = std::sqrt(x);
        return std::sinh(kappa * tau) / kappa;
    }
    const double q = std::sqrt(-x);
    return std::sin(q * tau) / q;
}

double kernel_k2(double x, double tau) {
    const double w = x * tau * tau;
    if (std::abs(w) < 1e-2) {
        // tau^3 sum_{n>=0} (2n+2) w^n / (2n+3)!
        double pw = 1.0, sum = 0.0, fact = 6.0;  // (2n+3)! starting at 3! = 6
        for (int n = 0; n <= 8; ++n) {
            sum += (2.0 * n + 2.0) * pw / fact;
            pw *= w;
            fact *= (2.0 * n + 4.0) * (2.0 * n + 5.0);
        }
        return tau * tau * tau * sum;
    }
    if (x > 0.0) {
        const double kappa = std::sqrt(x);
        const double z = kappa * tau;
        return (z * std::cosh(z) - std::sinh(z)) / (x * kappa);
    }
    const double q = std::sqrt(-x);
    const double z = q * tau;
    return (std::sin(z) - z * std::cos(z)) / (q * q * q);
}

} // namespace

void require_analytic_preconditions(const NetworkParams& p) {
    p.validate();
    if (p.variant != Variant::WithCavity)
        throw std::domain_error("analytic amplitudes: cavities required");
    if (p.gamma_L1 != 0.0 || p.gamma_L2 != 0.0)
        throw std::domain_error("analytic amplitudes: perfect chirality required");
    if (p.gamma_R1 != p.gamma_R2 || p.gamma_R1 <= 0.0)
        throw std::domain_error(
            "analytic amplitudes: equal positive rightward rates required");
    if (p.Gamma1 != 0.0 || p.Gamma2 != 0.0)
        throw std::domain_error("analytic amplitudes: atomic decay must vanish");
    if (p.omega_c1 != p.omega_c2 || p.omega_c1 != p.omega_a1 ||
        p.omega_c1 != p.omega_a2)
        throw std::domain_error("analytic amplitudes: resonance required");
}

PureState analytic_amplitudes(const NetworkParams& p, double t) {
    require_analytic_preconditions(p);
    if (t < 0.0) throw std::domain_error("analytic amplitudes: t < 0");

    const double gr = p.gamma_R1;
    const double w0 = p.omega_a1;
    const double tau = 0.25 * t;
    const Complex i(0.0, 1.0);
    const Complex envelope = std::exp(-gr * tau) * std::exp(-i * w0 * t);
    const Complex phase_ge = std::exp(i * (p.kD - p.alpha));
    const Complex phase_01 = std::exp(i * p.kD);

    const double x1 = gr * gr - 16.0 * p.g1 * p.g1;
    const double k0_1 = kernel_k0(x1, tau), k1_1 = kernel_k1(x1, tau);

    PureState s;
    s.c_eg = envelope * (gr * k1_1 + k0_1);
    s.c_10 = -4.0 * i * p.g1 * envelope * k1_1;

    // Only the node-2 amplitudes hold the removable 1/(g1^2 - g2^2)
    // singularity. Near the degeneracy, the divided differences of the
    // kernels are replaced by their derivatives at the midpoint; the
    // prefactors keep the exact couplings either way, so the branch switch
    // itself is smooth.
    double q_ge, q_01;
    if (std::abs(p.g1 - p.g2) < 1e-6 * gr) {
        const double g = 0.5 * (p.g1 + p.g2);
        const double x = gr * gr - 16.0 * g * g;
        const double k1m = kernel_k1(x, tau);
        const double k2m = kernel_k2(x, tau);
        // d k1 / d g^2-slot: (k1(x2) - k1(x1)) / (g1^2 - g2^2) -> 8 k2,
        // and likewise (k0(x1) - k0(x2)) / (g1^2 - g2^2) -> -8 tau k1.
        q_ge = 8.0 * k2m;
        q_01 = 8.0 * (gr * k2m - tau * k1m);
    } else {
        const double x2 = gr * gr - 16.0 * p.g2 * p.g2;
        const double k0_2 = kernel_k0(x2, tau), k1_2 = kernel_k1(x2, tau);
        const double dg2 = p.g1 * p.g1 - p.g2 * p.g2;
        q_ge = (k1_2 - k1_1) / dg2;
        q_01 = (gr * (k1_2 - k1_1) + k0_1 - k0_2) / dg2;
    }
    s.c_ge = 4.0 * p.g1 * p.g2 * gr * phase_ge * envelope * q_ge;
    s.c_01 = -i * p.g1 * gr * phase_01 * envelope * q_01;
    return s;
}

SectorProbabilities analytic_probabilities_equal_g(const NetworkParams& p,
                                                   double t) {
    require_analytic_preconditions(p);
    if (p.g1 != p.g2)
        throw std::domain_error("analytic probabilities: g1 == g2 required");
    if (t < 0.0) throw std::domain_error("analytic probabilities: t < 0");

    const double gr = p.gamma_R1;
    const double g = p.g1;
    const double decay = std::exp(-0.5 * gr * t);
    const double x = gr * gr - 16.0 * g * g;
    const double tau = 0.25 * t;

    SectorProbabilities out;
    if (std::abs(x) * tau * tau < 1e-2) {
        // Near the exceptional point kappa = 0 the literal expressions
        // cancel catastrophically; use the even-kernel forms.
        const double k0 = kernel_k0(x, tau);
        const double k1 = kernel_k1(x, tau);
        const double k2 = kernel_k2(x, tau);
        out.P_eg = decay * std::pow(gr * k1 + k0, 2);
        out.P_ge = decay * std::pow(32.0 * g * g * gr * k2, 2);
        out.P_10 = decay * std::pow(4.0 * g * k1, 2);
        out.P_01 = decay * std::pow(8.0 * g * gr * (gr * k2 - tau * k1), 2);
        return out;
    }

    // Literal complex continuation; kappa imaginary for g > gamma_R / 4.
    const Complex kappa = std::sqrt(Complex(x, 0.0));
    const Complex z = 0.25 * kappa * t;
    const Complex sh = std::sinh(z), ch = std::cosh(z);
    const Complex k3 = kappa * kappa * kappa;
    out.P_eg = decay * std::norm(gr * sh / kappa + ch);
    out.P_ge = decay *
               std::norm(8.0 * g * g * gr * (kappa * t * ch - 4.0 * sh) / k3);
    out.P_10 = decay * std::norm(4.0 * g * sh / kappa);
    out.P_01 =
        decay * std::norm(2.0 * g * gr *
                          (gr * kappa * t * ch -
                           (4.0 * gr + kappa * kappa * t) * sh) /
                          k3);
    return out;
}

} // namespace chiralnet
