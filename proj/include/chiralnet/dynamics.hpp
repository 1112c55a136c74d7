#pragma once

#include <optional>
#include <vector>

#include "chiralnet/entanglement.hpp"
#include "chiralnet/io.hpp"
#include "chiralnet/liouvillian.hpp"
#include "chiralnet/ode.hpp"
#include "chiralnet/state.hpp"

namespace chiralnet {

/// Per-time observables carried by every trajectory. P_* are the
/// single-excitation populations, C the concurrence of the reduced
/// two-qubit state, F1/F2/F3 the fidelities against (|eg>+|ge>)/sqrt(2),
/// (|eg>-|ge>)/sqrt(2) and the transfer target |ge>.
struct Observables {
    double P_eg = 0.0;
    double P_ge = 0.0;
    double P_10 = 0.0;
    double P_01 = 0.0;
    double C = 0.0;
    double F1 = 0.0;
    double F2 = 0.0;
    double F3 = 0.0;
};

Observables observables_from(const PureState& psi);
Observables observables_from(const Matrix& rho, Variant v);

struct Trajectory {
    std::vector<double> t;
    std::vector<Observables> obs;
    /// Sector amplitudes per grid point (pure-state solvers).
    std::vector<PureState> states;
    /// Density matrices per grid point (master-equation solver).
    std::vector<Matrix> densities;
};

std::vector<double> uniform_grid(double t_max, int points);

/// CSV rendering with the fixed column set
/// t, P_eg, P_ge, P_10, P_01, C, F1, F2, F3.
CsvTable trajectory_csv(const Trajectory& traj);

OdeOptions default_dynamics_options();

/// Integrates rho' = L(rho) over the grid. rho0 must be Hermitian
/// (1e-10), unit trace (1e-10) and positive semidefinite (-1e-10).
/// Integration failures raise OdeError with the offending time.
Trajectory evolve_master_equation(const Liouvillian& L, const Matrix& rho0,
                                  const std::vector<double>& grid,
                                  const OdeOptions& opt = default_dynamics_options());

/// Integrates i psi' = H_eff psi in the full space; psi0 must be
/// normalized (1e-9). The norm decays monotonically when all rates are
/// nonnegative; the deficit is the leaked population.
Trajectory evolve_schrodinger(const Matrix& h_eff, const PureState& psi0,
                              const std::vector<double>& grid,
                              const OdeOptions& opt = default_dynamics_options());

/// Dense no-jump evolution of the single-excitation sector from |eg00>,
/// the workhorse behind peak searches and sweeps.
class SectorEvolution {
public:
    SectorEvolution(const NetworkParams& p, double t_max,
                    const OdeOptions& opt = default_dynamics_options());
    PureState at(double t) const;
    Variant variant() const { return variant_; }
    double t_max() const { return solution_.t_end(); }

private:
    Variant variant_;
    DenseSolution solution_;
};

// --- Closed-form single-excitation amplitudes -----------------------------

/// Validity domain of the closed-form solution: WithCavity, perfect
/// chirality (gamma_L = 0), common resonance frequency, no atomic decay,
/// equal rightward rates. Throws std::domain_error otherwise.
void require_analytic_preconditions(const NetworkParams& p);

/// Closed-form amplitudes for the initial state |eg00>. The degeneracy at
/// g1 = g2 is removable; within 1e-6 gamma_R of it the explicit limit
/// expressions are used, and the hyperbolic kernels switch to their series
/// near kappa = 0, so every branch is smooth through the crossover.
/// kappa_i = sqrt(gamma_R^2 - 16 g_i^2) may be imaginary (Rabi regime);
/// all kernels are even in kappa, which makes the square-root branch
/// immaterial.
PureState analytic_amplitudes(const NetworkParams& p, double t);

struct SectorProbabilities {
    double P_eg = 0.0;
    double P_ge = 0.0;
    double P_10 = 0.0;
    double P_01 = 0.0;
};

/// Closed-form probabilities for g1 = g2, evaluated through the complex
/// continuation of the hyperbolic expressions (oscillatory for
/// g > gamma_R / 4).
SectorProbabilities analytic_probabilities_equal_g(const NetworkParams& p,
                                                   double t);

} // namespace chiralnet
