#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chiralnet/dynamics.hpp"

namespace chiralnet {

enum class StudyObservable { Concurrence, F1, F2, F3 };

std::string to_string(StudyObservable obs);
StudyObservable study_observable_from_string(const std::string& s);

struct StudyOptions {
    double t_max = 40.0;     ///< peak-search horizon [1/gamma_ref]
    int grid_points = 1000;  ///< dense time-scan resolution
    int workers = 0;         ///< 0: all hardware threads, 1: serial
    OdeOptions ode = default_dynamics_options();
    int coarse_points = 21;        ///< grid points per free axis
    int multistarts = 3;           ///< Nelder-Mead starts from best cells
    long max_evaluations = 2000;   ///< per Nelder-Mead start
    double simplex_tolerance = 1e-4;  ///< diameter in scaled units
};

struct PeakResult {
    double value = 0.0;
    double t_peak = 0.0;
};

/// Global maximum of the observable over [0, t_max]: dense grid scan plus
/// golden-section refinement around the best grid point. The earliest time
/// wins ties. Runs in the mean-frequency rotating frame (the observables
/// are invariant under it).
PeakResult peak_over_time(const NetworkParams& p, StudyObservable obs,
                          const StudyOptions& opt = {});

struct BoundedParameter {
    std::string name;  ///< one of g1, g2, gamma_R2
    double lo = 0.0;
    double hi = 1.0;
};

struct StudyResult {
    std::string objective;
    std::vector<std::pair<std::string, double>> best_params;
    double best_value = 0.0;
    double t_peak = 0.0;
    long evaluations = 0;
    bool converged = true;
    // Monte-Carlo statistics, used by the detuning sweep.
    double sample_mean = 0.0;
    double sample_std = 0.0;
    long sample_count = 0;
    std::uint64_t seed = 0;
};

/// One row of the optimizer trace: the coarse-grid evaluations in flat
/// index order, then one summary row per Nelder-Mead start.
struct OptimizeTraceRow {
    std::string phase;  ///< "grid" or "refine"
    long index = 0;
    std::vector<double> params;
    double value = 0.0;
    double t_peak = 0.0;
    bool converged = true;
};

/// Maximizes peak concurrence over the free parameters: coarse grid scan
/// (coarse_points per axis), then multi-start Nelder-Mead from the best
/// cells. Deterministic given the options. If no start converges within
/// the evaluation budget, the best value seen is returned with
/// converged = false.
StudyResult optimize_couplings(const NetworkParams& base,
                               const std::vector<BoundedParameter>& free,
                               const StudyOptions& opt = {},
                               std::vector<OptimizeTraceRow>* trace = nullptr);

struct DistancePoint {
    double d_over_lambda = 0.0;
    double c_max = 0.0;
    double t_peak = 0.0;
};

/// Peak concurrence per propagation phase; reported as D/lambda = kD/2pi.
std::vector<DistancePoint> sweep_distance(const NetworkParams& p,
                                          const std::vector<double>& kD_values,
                                          const StudyOptions& opt = {});

enum class ChiralityNormalization {
    FixGammaR,  ///< hold gamma_R, derive gamma_L (keeps the forward rate)
    FixTotal,   ///< hold gamma_R + gamma_L
};

struct ChiralityPoint {
    double chi = 0.0;
    double c_max = 0.0;
    double t_peak = 0.0;
};

std::vector<ChiralityPoint> sweep_chirality(
    const NetworkParams& p, const std::vector<double>& chi_values,
    const StudyOptions& opt = {},
    ChiralityNormalization norm = ChiralityNormalization::FixGammaR);

struct DistanceChiralityPoint {
    double d_over_lambda = 0.0;
    double chi = 0.0;
    double c_max = 0.0;
};

/// Joint map of peak concurrence over distance and chirality, row-major
/// over (kD index, chi index); the one-dimensional sweeps are its edges.
std::vector<DistanceChiralityPoint> sweep_distance_chirality(
    const NetworkParams& p, const std::vector<double>& kD_values,
    const std::vector<double>& chi_values, const StudyOptions& opt = {},
    ChiralityNormalization norm = ChiralityNormalization::FixGammaR);

enum class DetuningTarget { OmegaA1, OmegaA2, OmegaC1, OmegaC2 };

std::string to_string(DetuningTarget t);
DetuningTarget detuning_target_from_string(const std::string& s);

struct DetuningPoint {
    double delta = 0.0;
    double mean_c_max = 0.0;
    double std_c_max = 0.0;
};

/// Monte-Carlo robustness against a uniformly distributed shift
/// in [-delta/2, delta/2] of one frequency. Counter-based RNG keyed by
/// (seed, delta index, sample index): per-point results are independent of
/// evaluation order and worker count.
std::vector<DetuningPoint> sweep_detuning(const NetworkParams& p,
                                          DetuningTarget target,
                                          const std::vector<double>& deltas,
                                          int samples, std::uint64_t seed,
                                          const StudyOptions& opt = {});

struct DecayPoint {
    double Gamma = 0.0;
    double c_max = 0.0;
};

/// Peak concurrence against the atomic decay rate Gamma1 = Gamma2 = Gamma.
/// With reoptimize, the couplings are re-optimized per point; otherwise
/// the base couplings are held fixed.
std::vector<DecayPoint> sweep_atomic_decay(
    const NetworkParams& p, const std::vector<double>& Gammas, bool reoptimize,
    const std::vector<BoundedParameter>& free, const StudyOptions& opt = {});

struct BellPhaseResult {
    double f_psi_plus = 0.0;   ///< fidelity to (|eg>+|ge>)/sqrt(2) at the peak
    double f_psi_minus = 0.0;  ///< fidelity to (|eg>-|ge>)/sqrt(2) at the peak
    double c_peak = 0.0;
    double t_peak = 0.0;
    /// max entrywise defect of the generator against the pure-dissipative
    /// form -i[H_JC, .] + 2 gamma D[b1 + (-1)^n b2] on random Hermitian
    /// inputs.
    double generator_defect = 0.0;
    /// max entrywise norm of the coherent inter-node coupling, which must
    /// vanish at kD = n pi.
    double coherent_term_defect = 0.0;
};

/// Non-chiral protocol check at kD = n pi: verifies the generator reduces
/// to a single collective dissipator and returns both Bell fidelities at
/// the concurrence peak. The generated Bell state alternates with n.
BellPhaseResult nonchiral_bell_phase_check(int n, const NetworkParams& p,
                                           const StudyOptions& opt = {});

struct Table1Result {
    StudyResult no_cavity_equal;
    StudyResult no_cavity_unequal;
    StudyResult cavity_equal;
    StudyResult cavity_unequal;
};

/// The four optimized peak-concurrence studies (with/without cavities,
/// equal/free gamma_R2) on the perfectly chiral network.
Table1Result run_table1(const StudyOptions& opt = {});

/// Baseline parameter sets used by the shipped studies.
NetworkParams chiral_cavity_baseline();    ///< symmetric chiral, resonant
NetworkParams chiral_no_cavity_baseline();
NetworkParams chiral_optimum_params();              ///< g1 = 0.126, g2 = 0.277
NetworkParams nonchiral_optimum_params();  ///< kD = pi, tiny couplings

} // namespace chiralnet
