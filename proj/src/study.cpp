#include "chiralnet/study.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chiralnet/parallel.hpp"
#include "chiralnet/rng.hpp"

namespace chiralnet {

std::string to_string(StudyObservable obs) {
    switch (obs) {
        case StudyObservable::Concurrence: return "concurrence";
        case StudyObservable::F1: return "F1";
        case StudyObservable::F2: return "F2";
        case StudyObservable::F3: return "F3";
    }
    return "?";
}

StudyObservable study_observable_from_string(const std::string& s) {
    if (s == "concurrence") return StudyObservable::Concurrence;
    if (s == "F1") return StudyObservable::F1;
    if (s == "F2") return StudyObservable::F2;
    if (s == "F3") return StudyObservable::F3;
    throw std::invalid_argument("unknown observable '" + s + "'");
}

std::string to_string(DetuningTarget t) {
    switch (t) {
        case DetuningTarget::OmegaA1: return "omega_a1";
        case DetuningTarget::OmegaA2: return "omega_a2";
        case DetuningTarget::OmegaC1: return "omega_c1";
        case DetuningTarget::OmegaC2: return "omega_c2";
    }
    return "?";
}

DetuningTarget detuning_target_from_string(const std::string& s) {
    if (s == "omega_a1") return DetuningTarget::OmegaA1;
    if (s == "omega_a2") return DetuningTarget::OmegaA2;
    if (s == "omega_c1") return DetuningTarget::OmegaC1;
    if (s == "omega_c2") return DetuningTarget::OmegaC2;
    throw std::invalid_argument("unknown detuning target '" + s + "'");
}

namespace {

// Sector shortcuts for the reduced two-qubit state with loss reassignment;
// they agree with the entanglement-module formulas (asserted in tests).
double sector_observable(const PureState& s, StudyObservable obs) {
    switch (obs) {
        case StudyObservable::Concurrence:
            return 2.0 * std::abs(s.c_eg) * std::abs(s.c_ge);
        case StudyObservable::F1:
            return 0.5 * std::norm(s.c_eg + s.c_ge);
        case StudyObservable::F2:
            return 0.5 * std::norm(s.c_eg - s.c_ge);
        case StudyObservable::F3:
            return std::norm(s.c_ge);
    }
    return 0.0;
}

// Golden-section maximization; returns the best evaluated point, ties
// resolved toward the earlier time.
PeakResult golden_max(const std::function<double(double)>& f, double a,
                      double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    PeakResult best{-1.0, a};
    auto consider = [&best](double t, double v) {
        if (v > best.value || (v == best.value && t < best.t_peak)) {
            best.value = v;
            best.t_peak = t;
        }
    };
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    consider(c, fc);
    consider(d, fd);
    int guard = 200;
    while (b - a > tol && guard-- > 0) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
            consider(d, fd);
        }
    }
    return best;
}

} // namespace

PeakResult peak_over_time(const NetworkParams& p, StudyObservable obs,
                          const StudyOptions& opt) {
    p.validate();
    if (opt.t_max <= 0.0 || opt.grid_points < 2)
        throw std::invalid_argument("peak_over_time: bad scan options");

    SectorEvolution evo(p.rotating_frame(), opt.t_max, opt.ode);
    auto value_at = [&](double t) { return sector_observable(evo.at(t), obs); };

    const auto grid = uniform_grid(opt.t_max, opt.grid_points);
    std::size_t best_i = 0;
    double best_v = value_at(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = value_at(grid[i]);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }

    const double a = grid[best_i > 0 ? best_i - 1 : 0];
    const double b = grid[std::min(best_i + 1, grid.size() - 1)];
    PeakResult refined =
        golden_max(value_at, a, b, std::max(1e-12, 1e-9 * opt.t_max));
    if (refined.value > best_v) return refined;
    return {best_v, grid[best_i]};
}

// --- Optimizer ---------------------------------------------------------------

namespace {

void set_named_param(NetworkParams& p, const std::string& name, double value) {
    if (name == "g1")
        p.g1 = value;
    else if (name == "g2")
        p.g2 = value;
    else if (name == "gamma_R2")
        p.gamma_R2 = value;
    else
        throw std::invalid_argument("optimize_couplings: unsupported parameter '" +
                                    name + "' (use g1, g2, gamma_R2)");
}

struct Evaluation {
    double value = -1.0;
    double t_peak = 0.0;
};

class CouplingObjective {
public:
    CouplingObjective(const NetworkParams& base,
                      const std::vector<BoundedParameter>& free,
                      const StudyOptions& opt)
        : base_(base), free_(free), opt_(opt) {}

    std::size_t dim() const { return free_.size(); }

    // x in unit-box coordinates; out-of-box points are evaluated at the
    // clamped location with a quadratic penalty, keeping the landscape
    // continuous for the simplex.
    Evaluation operator()(const std::vector<double>& x) const {
        double penalty = 0.0;
        NetworkParams q = base_;
        for (std::size_t i = 0; i < free_.size(); ++i) {
            const double xc = std::clamp(x[i], 0.0, 1.0);
            penalty += 1e3 * (x[i] - xc) * (x[i] - xc);
            set_named_param(q, free_[i].name,
                            free_[i].lo + xc * (free_[i].hi - free_[i].lo));
        }
        q.finalize();
        PeakResult peak = peak_over_time(q, StudyObservable::Concurrence, opt_);
        return {peak.value - penalty, peak.t_peak};
    }

    std::vector<double> unscale(const std::vector<double>& x) const {
        std::vector<double> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = free_[i].lo +
                     std::clamp(x[i], 0.0, 1.0) * (free_[i].hi - free_[i].lo);
        return out;
    }

private:
    NetworkParams base_;
    std::vector<BoundedParameter> free_;
    StudyOptions opt_;
};

struct BestPoint {
    double value = -1.0;
    double t_peak = 0.0;
    std::vector<double> x;

    void consider(double v, double t, const std::vector<double>& xx) {
        if (v > value) {
            value = v;
            t_peak = t;
            x = xx;
        }
    }
};

struct NmOutcome {
    BestPoint best;
    long evaluations = 0;
    bool converged = false;
};

// Nelder-Mead with reflection 1, expansion 2, contraction 0.5, shrink 0.5.
NmOutcome nelder_mead(const CouplingObjective& objective,
                      const std::vector<double>& x0, double step,
                      double diameter_tol, long max_evaluations) {
    const std::size_t d = x0.size();
    NmOutcome out;

    auto eval = [&](const std::vector<double>& x) -> double {
        Evaluation e = objective(x);
        ++out.evaluations;
        out.best.consider(e.value, e.t_peak, x);
        return e.value;
    };

    std::vector<std::vector<double>> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        // Step inward when the start sits at the upper boundary.
        xs[i + 1][i] += (x0[i] + step <= 1.0) ? step : -step;
    }
    for (std::size_t i = 0; i <= d; ++i) fs[i] = eval(xs[i]);

    std::vector<std::size_t> order(d + 1);
    while (out.evaluations < max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&fs](std::size_t a, std::size_t b) {
                             return fs[a] > fs[b];
                         });

        double diameter = 0.0;
        for (std::size_t i = 0; i <= d; ++i)
            for (std::size_t j = i + 1; j <= d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    diameter = std::max(diameter,
                                        std::abs(xs[i][k] - xs[j][k]));
        if (diameter < diameter_tol) {
            out.converged = true;
            return out;
        }

        const std::size_t worst = order[d];
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += xs[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto blend = [&](double coeff) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k)
                x[k] = centroid[k] + coeff * (centroid[k] - xs[worst][k]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (fr > fs[order[0]]) {
            std::vector<double> xe = blend(2.0);
            const double fe = eval(xe);
            xs[worst] = fe > fr ? xe : xr;
            fs[worst] = std::max(fe, fr);
            continue;
        }
        if (fr > fs[order[d - 1]]) {
            xs[worst] = xr;
            fs[worst] = fr;
            continue;
        }
        // Contraction, outside or inside of the reflection.
        std::vector<double> xc = blend(fr > fs[worst] ? 0.5 : -0.5);
        const double fc = eval(xc);
        if (fc > std::max(fr, fs[worst])) {
            xs[worst] = xc;
            fs[worst] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == order[0]) continue;
            for (std::size_t k = 0; k < d; ++k)
                xs[i][k] = xs[order[0]][k] + 0.5 * (xs[i][k] - xs[order[0]][k]);
            fs[i] = eval(xs[i]);
            if (out.evaluations >= max_evaluations) break;
        }
    }
    return out;
}

} // namespace

StudyResult optimize_couplings(const NetworkParams& base,
                               const std::vector<BoundedParameter>& free,
                               const StudyOptions& opt,
                               std::vector<OptimizeTraceRow>* trace) {
    base.validate();
    if (free.empty())
        throw std::invalid_argument("optimize_couplings: no free parameters");
    if (opt.coarse_points < 2)
        throw std::invalid_argument("optimize_couplings: coarse_points < 2");
    for (const BoundedParameter& b : free) {
        if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
            throw std::invalid_argument("optimize_couplings: bad bounds for " +
                                        b.name);
        NetworkParams probe = base;
        set_named_param(probe, b.name, b.lo);  // validates the name
    }

    const CouplingObjective objective(base, free, opt);
    const std::size_t d = free.size();
    const int cp = opt.coarse_points;

    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::size_t>(cp);

    auto cell_coords = [&](std::size_t flat) {
        std::vector<double> x(d);
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = static_cast<double>(flat % cp) / (cp - 1);
            flat /= cp;
        }
        return x;
    };

    std::vector<Evaluation> grid_vals(total);
    parallel_for(total, opt.workers, [&](std::size_t i) {
        grid_vals[i] = objective(cell_coords(i));
    });

    // The base point is always a candidate when it lies inside the box, so
    // re-optimization can never fall below the unoptimized value.
    BestPoint base_candidate;
    {
        std::vector<double> xb(d);
        bool inside = true;
        for (std::size_t i = 0; i < d; ++i) {
            double current = 0.0;
            if (free[i].name == "g1") current = base.g1;
            else if (free[i].name == "g2") current = base.g2;
            else current = base.gamma_R2;
            xb[i] = (current - free[i].lo) / (free[i].hi - free[i].lo);
            inside = inside && xb[i] >= 0.0 && xb[i] <= 1.0;
        }
        if (inside) {
            Evaluation e = objective(xb);
            base_candidate.consider(e.value, e.t_peak, xb);
        }
    }

    std::vector<std::size_t> ranked(total);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&grid_vals](std::size_t a, std::size_t b) {
                         return grid_vals[a].value > grid_vals[b].value;
                     });

    BestPoint best;
    for (std::size_t i = 0; i < total; ++i)
        best.consider(grid_vals[i].value, grid_vals[i].t_peak, cell_coords(i));
    if (!base_candidate.x.empty())
        best.consider(base_candidate.value, base_candidate.t_peak,
                      base_candidate.x);

    const int starts =
        std::min<int>(opt.multistarts, static_cast<int>(total));
    const double step = 0.5 / (cp - 1);
    std::vector<NmOutcome> outcomes(starts);
    parallel_for(static_cast<std::size_t>(starts), opt.workers,
                 [&](std::size_t s) {
                     outcomes[s] = nelder_mead(
                         objective, cell_coords(ranked[s]), step,
                         opt.simplex_tolerance, opt.max_evaluations);
                 });

    long evaluations =
        static_cast<long>(total) + (base_candidate.x.empty() ? 0 : 1);
    bool winner_converged = true;
    for (const NmOutcome& o : outcomes) {
        evaluations += o.evaluations;
        if (o.best.value > best.value) winner_converged = o.converged;
        best.consider(o.best.value, o.best.t_peak, o.best.x);
    }

    if (trace) {
        trace->clear();
        for (std::size_t i = 0; i < total; ++i)
            trace->push_back({"grid", static_cast<long>(i),
                              objective.unscale(cell_coords(i)),
                              grid_vals[i].value, grid_vals[i].t_peak, true});
        for (int s = 0; s < starts; ++s)
            trace->push_back({"refine", s,
                              objective.unscale(outcomes[s].best.x),
                              outcomes[s].best.value, outcomes[s].best.t_peak,
                              outcomes[s].converged});
    }

    StudyResult result;
    result.objective = "max_concurrence";
    const std::vector<double> actual = objective.unscale(best.x);
    for (std::size_t i = 0; i < d; ++i)
        result.best_params.emplace_back(free[i].name, actual[i]);
    result.best_value = best.value;
    result.t_peak = best.t_peak;
    result.evaluations = evaluations;
    result.converged = winner_converged;
    return result;
}

// --- Sweeps ------------------------------------------------------------------

std::vector<DistancePoint> sweep_distance(const NetworkParams& p,
                                          const std::vector<double>& kD_values,
                                          const StudyOptions& opt) {
    p.validate();
    std::vector<DistancePoint> out(kD_values.size());
    parallel_for(kD_values.size(), opt.workers, [&](std::size_t i) {
        NetworkParams q = p;
        q.kD = kD_values[i];
        q.finalize();
        PeakResult peak = peak_over_time(q, StudyObservable::Concurrence, opt);
        out[i] = {kD_values[i] / (2.0 * M_PI), peak.value, peak.t_peak};
    });
    return out;
}

std::vector<ChiralityPoint> sweep_chirality(const NetworkParams& p,
                                            const std::vector<double>& chi_values,
                                            const StudyOptions& opt,
                                            ChiralityNormalization norm) {
    p.validate();
    if (p.gamma_R1 != p.gamma_R2)
        throw std::invalid_argument("sweep_chirality: symmetric base required");
    for (double chi : chi_values)
        if (chi < 0.0 || chi > 1.0)
            throw std::invalid_argument("sweep_chirality: chi outside [0, 1]");

    std::vector<ChiralityPoint> out(chi_values.size());
    parallel_for(chi_values.size(), opt.workers, [&](std::size_t i) {
        const double chi = chi_values[i];
        NetworkParams q = p;
        q.kD = M_PI;  // the sweet-spot separation D = lambda/2
        if (norm == ChiralityNormalization::FixGammaR) {
            q.gamma_L1 = q.gamma_L2 = p.gamma_R1 * (1.0 - chi) / (1.0 + chi);
        } else {
            const double total = p.gamma_R1 + p.gamma_L1;
            q.gamma_R1 = q.gamma_R2 = 0.5 * total * (1.0 + chi);
            q.gamma_L1 = q.gamma_L2 = 0.5 * total * (1.0 - chi);
        }
        q.finalize();
        PeakResult peak = peak_over_time(q, StudyObservable::Concurrence, opt);
        out[i] = {chi, peak.value, peak.t_peak};
    });
    return out;
}

std::vector<DistanceChiralityPoint> sweep_distance_chirality(
    const NetworkParams& p, const std::vector<double>& kD_values,
    const std::vector<double>& chi_values, const StudyOptions& opt,
    ChiralityNormalization norm) {
    p.validate();
    if (p.gamma_R1 != p.gamma_R2)
        throw std::invalid_argument(
            "sweep_distance_chirality: symmetric base required");
    for (double chi : chi_values)
        if (chi < 0.0 || chi > 1.0)
            throw std::invalid_argument(
                "sweep_distance_chirality: chi outside [0, 1]");

    const std::size_t nd = kD_values.size(), nc = chi_values.size();
    std::vector<DistanceChiralityPoint> out(nd * nc);
    parallel_for(nd * nc, opt.workers, [&](std::size_t w) {
        const std::size_t di = w / nc, ci = w % nc;
        const double chi = chi_values[ci];
        NetworkParams q = p;
        q.kD = kD_values[di];
        if (norm == ChiralityNormalization::FixGammaR) {
            q.gamma_L1 = q.gamma_L2 = p.gamma_R1 * (1.0 - chi) / (1.0 + chi);
        } else {
            const double total = p.gamma_R1 + p.gamma_L1;
            q.gamma_R1 = q.gamma_R2 = 0.5 * total * (1.0 + chi);
            q.gamma_L1 = q.gamma_L2 = 0.5 * total * (1.0 - chi);
        }
        q.finalize();
        out[w] = {kD_values[di] / (2.0 * M_PI), chi,
                  peak_over_time(q, StudyObservable::Concurrence, opt).value};
    });
    return out;
}

std::vector<DetuningPoint> sweep_detuning(const NetworkParams& p,
                                          DetuningTarget target,
                                          const std::vector<double>& deltas,
                                          int samples, std::uint64_t seed,
                                          const StudyOptions& opt) {
    p.validate();
    if (samples < 1)
        throw std::invalid_argument("sweep_detuning: samples < 1");

    auto shifted = [&p, target](double shift) {
        NetworkParams q = p;
        switch (target) {
            case DetuningTarget::OmegaA1: q.omega_a1 += shift; break;
            case DetuningTarget::OmegaA2: q.omega_a2 += shift; break;
            case DetuningTarget::OmegaC1: q.omega_c1 += shift; break;
            case DetuningTarget::OmegaC2: q.omega_c2 += shift; break;
        }
        return q;
    };

    const std::size_t n_deltas = deltas.size();
    const std::size_t n_samples = static_cast<std::size_t>(samples);
    std::vector<double> values(n_deltas * n_samples, 0.0);
    std::vector<std::size_t> work;
    for (std::size_t di = 0; di < n_deltas; ++di) {
        if (deltas[di] == 0.0) {
            work.push_back(di * n_samples);  // one deterministic sample
        } else {
            for (std::size_t si = 0; si < n_samples; ++si)
                work.push_back(di * n_samples + si);
        }
    }

    parallel_for(work.size(), opt.workers, [&](std::size_t w) {
        const std::size_t flat = work[w];
        const std::size_t di = flat / n_samples;
        const std::size_t si = flat % n_samples;
        const double delta = deltas[di];
        const double shift =
            delta == 0.0
                ? 0.0
                : uniform_symmetric(seed, di, si, 0.5 * delta);
        PeakResult peak = peak_over_time(shifted(shift),
                                         StudyObservable::Concurrence, opt);
        values[flat] = peak.value;
    });

    std::vector<DetuningPoint> out(n_deltas);
    for (std::size_t di = 0; di < n_deltas; ++di) {
        DetuningPoint& pt = out[di];
        pt.delta = deltas[di];
        if (deltas[di] == 0.0) {
            pt.mean_c_max = values[di * n_samples];
            pt.std_c_max = 0.0;
            continue;
        }
        double sum = 0.0;
        for (std::size_t si = 0; si < n_samples; ++si)
            sum += values[di * n_samples + si];
        pt.mean_c_max = sum / static_cast<double>(n_samples);
        double ss = 0.0;
        for (std::size_t si = 0; si < n_samples; ++si) {
            const double d = values[di * n_samples + si] - pt.mean_c_max;
            ss += d * d;
        }
        pt.std_c_max = n_samples > 1
                           ? std::sqrt(ss / static_cast<double>(n_samples - 1))
                           : 0.0;
    }
    return out;
}

std::vector<DecayPoint> sweep_atomic_decay(const NetworkParams& p,
                                           const std::vector<double>& Gammas,
                                           bool reoptimize,
                                           const std::vector<BoundedParameter>& free,
                                           const StudyOptions& opt) {
    p.validate();
    for (double g : Gammas)
        if (g < 0.0)
            throw std::invalid_argument("sweep_atomic_decay: Gamma < 0");
    if (reoptimize && free.empty())
        throw std::invalid_argument(
            "sweep_atomic_decay: reoptimization needs free parameters");

    std::vector<DecayPoint> out(Gammas.size());
    parallel_for(Gammas.size(), opt.workers, [&](std::size_t i) {
        NetworkParams q = p;
        q.Gamma1 = q.Gamma2 = Gammas[i];
        q.finalize();
        double value;
        if (reoptimize) {
            StudyOptions inner = opt;
            inner.workers = 1;  // the sweep level already owns the threads
            value = optimize_couplings(q, free, inner).best_value;
        } else {
            value = peak_over_time(q, StudyObservable::Concurrence, opt).value;
        }
        out[i] = {Gammas[i], value};
    });
    return out;
}

BellPhaseResult nonchiral_bell_phase_check(int n, const NetworkParams& p,
                                           const StudyOptions& opt) {
    p.validate();
    if (n < 1)
        throw std::invalid_argument("nonchiral_bell_phase_check: n must be >= 1");
    const double gamma = p.gamma_R1;
    if (p.gamma_R2 != gamma || p.gamma_L1 != gamma || p.gamma_L2 != gamma)
        throw std::invalid_argument(
            "nonchiral_bell_phase_check: requires gamma_L = gamma_R on both nodes");
    const double expected_kD = reduce_phase_2pi(n * M_PI);
    if (std::abs(reduce_phase_2pi(p.kD) - expected_kD) > 1e-9)
        throw std::invalid_argument("nonchiral_bell_phase_check: kD != n pi");

    BellPhaseResult result;

    const Variant v = p.variant;
    const Matrix b1 = v == Variant::WithCavity ? cavity_annihilation(v, 1)
                                               : atom_lowering(v, 1);
    const Matrix b2 = v == Variant::WithCavity ? cavity_annihilation(v, 2)
                                               : atom_lowering(v, 2);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;

    // Coherent inter-node piece of the symmetric-coupling generator; it
    // cancels identically at kD = n pi.
    const Complex i(0.0, 1.0);
    const Complex phase = std::exp(i * p.kD);
    Matrix coherent =
        -i * 0.5 * gamma * (phase * b1.adjoint() * b2 -
                            std::conj(phase) * b2.adjoint() * b1) -
        i * 0.5 * gamma * (phase * b2.adjoint() * b1 -
                           std::conj(phase) * b1.adjoint() * b2);
    result.coherent_term_defect = coherent.cwiseAbs().maxCoeff();

    // Full generator against the single collective dissipator.
    const Liouvillian L = build_liouvillian(p);
    Liouvillian ref;
    ref.hamiltonian = build_jc_hamiltonian(p);
    ref.dissipators.push_back({2.0 * gamma, b1 + sign * b2});
    if (v == Variant::WithCavity) {
        ref.dissipators.push_back({p.Gamma1, atom_lowering(v, 1)});
        ref.dissipators.push_back({p.Gamma2, atom_lowering(v, 2)});
    }
    const int d = L.dim();
    double defect = 0.0;
    for (int draw = 0; draw < 16; ++draw) {
        Matrix r(d, d);
        for (int row = 0; row < d; ++row)
            for (int col = 0; col < d; ++col)
                r(row, col) = Complex(
                    uniform01(2025, draw, row * d + col) - 0.5,
                    uniform01(2025, draw + 1000, row * d + col) - 0.5);
        Matrix h = r + r.adjoint().eval();
        h /= h.cwiseAbs().maxCoeff();
        defect = std::max(defect,
                          (L.apply(h) - ref.apply(h)).cwiseAbs().maxCoeff());
    }
    result.generator_defect = defect;

    PeakResult peak = peak_over_time(p, StudyObservable::Concurrence, opt);
    result.c_peak = peak.value;
    result.t_peak = peak.t_peak;

    SectorEvolution evo(p.rotating_frame(), opt.t_max, opt.ode);
    const PureState at_peak = evo.at(peak.t_peak);
    result.f_psi_plus = sector_observable(at_peak, StudyObservable::F1);
    result.f_psi_minus = sector_observable(at_peak, StudyObservable::F2);
    return result;
}

// --- Baselines and Table I ---------------------------------------------------

NetworkParams chiral_cavity_baseline() {
    NetworkParams p;
    p.variant = Variant::WithCavity;
    p.gamma_R1 = p.gamma_R2 = 1.0;
    p.gamma_L1 = p.gamma_L2 = 0.0;
    return p.finalize();
}

NetworkParams chiral_no_cavity_baseline() {
    NetworkParams p = chiral_cavity_baseline();
    p.variant = Variant::NoCavity;
    return p.finalize();
}

NetworkParams chiral_optimum_params() {
    NetworkParams p = chiral_cavity_baseline();
    p.g1 = 0.126;
    p.g2 = 0.277;
    // Half-wavelength spacing. With perfect chirality the concurrence is
    // distance independent, but the sign of the generated Bell state is
    // not: kD = pi makes it the odd combination (|eg> - |ge>)/sqrt(2).
    p.kD = M_PI;
    return p.finalize();
}

NetworkParams nonchiral_optimum_params() {
    NetworkParams p;
    p.variant = Variant::WithCavity;
    p.gamma_R1 = p.gamma_R2 = p.gamma_L1 = p.gamma_L2 = 1.0;
    p.g1 = 0.00410;
    p.g2 = 0.00170;
    p.kD = M_PI;
    return p.finalize();
}

Table1Result run_table1(const StudyOptions& opt) {
    Table1Result table;

    const NetworkParams no_cavity = chiral_no_cavity_baseline();
    {
        PeakResult peak =
            peak_over_time(no_cavity, StudyObservable::Concurrence, opt);
        table.no_cavity_equal.objective = "max_concurrence";
        table.no_cavity_equal.best_value = peak.value;
        table.no_cavity_equal.t_peak = peak.t_peak;
        table.no_cavity_equal.evaluations = 1;
    }
    table.no_cavity_unequal =
        optimize_couplings(no_cavity, {{"gamma_R2", 1.0, 8.0}}, opt);

    const NetworkParams cavity = chiral_cavity_baseline();
    table.cavity_equal =
        optimize_couplings(cavity, {{"g1", 0.0, 1.0}, {"g2", 0.0, 1.0}}, opt);
    table.cavity_unequal = optimize_couplings(
        cavity, {{"g1", 0.0, 4.0}, {"g2", 0.0, 4.0}, {"gamma_R2", 1.0, 8.0}},
        opt);
    return table;
}

} // namespace chiralnet
