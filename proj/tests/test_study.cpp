#include <doctest.h>

#include "chiralnet/parallel.hpp"
#include "chiralnet/rng.hpp"
#include "chiralnet/study.hpp"

using namespace chiralnet;

TEST_SUITE("peak_over_time") {
    TEST_CASE("flat observable resolves ties toward t = 0") {
        NetworkParams p = chiral_cavity_baseline();  // g1 = g2 = 0
        StudyOptions opt;
        opt.t_max = 10.0;
        opt.grid_points = 100;
        PeakResult r = peak_over_time(p, StudyObservable::Concurrence, opt);
        CHECK(r.value == 0.0);
        CHECK(r.t_peak == 0.0);
    }

    TEST_CASE("bare chiral network peaks at 2/e") {
        StudyOptions opt;
        opt.t_max = 20.0;
        PeakResult r = peak_over_time(chiral_no_cavity_baseline(),
                                      StudyObservable::Concurrence, opt);
        CHECK(std::abs(r.value - 2.0 / M_E) <= 1e-8);
        CHECK(std::abs(r.t_peak - 1.0) <= 1e-4);
    }

    TEST_CASE("partial transfer at the entanglement optimum") {
        StudyOptions opt;
        opt.t_max = 30.0;
        const NetworkParams p = chiral_optimum_params();
        // At the moment the concurrence peaks, just under half of the
        // excitation has moved to node 2 (the rest leaked or stayed).
        PeakResult c = peak_over_time(p, StudyObservable::Concurrence, opt);
        SectorEvolution evo(p.rotating_frame(), opt.t_max);
        const double f3_at_peak = std::norm(evo.at(c.t_peak).c_ge);
        CHECK(f3_at_peak == doctest::Approx(0.43).epsilon(0.03));

        // Matched couplings maximize the transfer fidelity itself; the
        // asymmetric entanglement optimum transfers far less.
        NetworkParams matched = p;
        matched.g1 = matched.g2 = 0.43;
        matched.finalize();
        PeakResult best_transfer =
            peak_over_time(matched, StudyObservable::F3, opt);
        CHECK(best_transfer.value > 0.85);
        CHECK(best_transfer.value >
              peak_over_time(p, StudyObservable::F3, opt).value);
    }
}

TEST_SUITE("optimizer") {
    TEST_CASE("recovers the unequal-rate optimum of the bare network") {
        StudyOptions opt;
        opt.t_max = 20.0;
        opt.grid_points = 600;
        opt.coarse_points = 11;
        StudyResult r = optimize_couplings(chiral_no_cavity_baseline(),
                                           {{"gamma_R2", 1.0, 8.0}}, opt);
        CHECK(r.converged);
        CHECK(r.best_value == doctest::Approx(0.8694).epsilon(0.002));
        CHECK(r.best_params.size() == 1);
        // The ridge is flat between the exact argmax 3.6447 and the
        // reference 3.88 (the values differ in the fourth digit).
        CHECK(r.best_params[0].second > 3.3);
        CHECK(r.best_params[0].second < 4.2);
    }

    TEST_CASE("the reference non-chiral operating point is in the search box") {
        // With a bounded horizon the optimizer legitimately prefers even
        // smaller couplings (the boundless-time optimum runs to g -> 0 at
        // the magic ratio), so it must at least match the value at the
        // reference point, which its base-candidate evaluation guarantees.
        StudyOptions opt;
        opt.t_max = 4000.0;
        opt.grid_points = 1200;
        opt.coarse_points = 7;
        opt.max_evaluations = 150;
        NetworkParams base = nonchiral_optimum_params();
        const double at_reference =
            peak_over_time(base, StudyObservable::Concurrence, opt).value;
        CHECK(at_reference == doctest::Approx(0.997).epsilon(0.002));
        StudyResult r = optimize_couplings(
            base, {{"g1", 0.0, 0.02}, {"g2", 0.0, 0.02}}, opt);
        CHECK(r.best_value >= at_reference - 1e-9);
    }

    TEST_CASE("deterministic across runs and worker counts") {
        StudyOptions opt;
        opt.t_max = 15.0;
        opt.grid_points = 300;
        opt.coarse_points = 7;
        opt.max_evaluations = 200;
        auto run = [&opt](int workers) {
            StudyOptions o = opt;
            o.workers = workers;
            return optimize_couplings(chiral_cavity_baseline(),
                                      {{"g1", 0.0, 0.6}, {"g2", 0.0, 0.6}}, o);
        };
        StudyResult a = run(1);
        StudyResult b = run(2);
        StudyResult c = run(2);
        CHECK(a.best_value == b.best_value);
        CHECK(b.best_value == c.best_value);
        CHECK(a.t_peak == b.t_peak);
        CHECK(a.best_params[0].second == b.best_params[0].second);
        CHECK(a.best_params[1].second == b.best_params[1].second);
        CHECK(a.evaluations == b.evaluations);
    }

    TEST_CASE("input validation") {
        CHECK_THROWS_AS(optimize_couplings(chiral_cavity_baseline(), {}),
                        std::invalid_argument);
        CHECK_THROWS_AS(optimize_couplings(chiral_cavity_baseline(),
                                           {{"alpha", 0.0, 1.0}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(optimize_couplings(chiral_cavity_baseline(),
                                           {{"g1", 1.0, 1.0}}),
                        std::invalid_argument);
    }
}

TEST_SUITE("sweeps") {
    TEST_CASE("perfect chirality is distance independent") {
        StudyOptions opt;
        opt.t_max = 20.0;
        opt.grid_points = 500;
        std::vector<double> kd;
        for (int k = 0; k < 5; ++k) kd.push_back(2.0 * M_PI * 0.4 * k);
        auto points = sweep_distance(chiral_optimum_params(), kd, opt);
        double lo = 2.0, hi = -1.0;
        for (const auto& pt : points) {
            lo = std::min(lo, pt.c_max);
            hi = std::max(hi, pt.c_max);
        }
        CHECK(hi - lo <= 1e-8);
    }

    TEST_CASE("chirality endpoints are consistent") {
        StudyOptions opt;
        opt.t_max = 25.0;
        opt.grid_points = 500;
        auto points = sweep_chirality(chiral_optimum_params(), {0.0, 0.5, 1.0}, opt);
        // chi = 1 must reproduce the perfectly chiral network at the same
        // couplings, and chi = 0 must be strictly worse.
        PeakResult chiral = peak_over_time(
            chiral_optimum_params(), StudyObservable::Concurrence, opt);
        CHECK(std::abs(points[2].c_max - chiral.value) <= 1e-8);
        CHECK(points[0].c_max < points[2].c_max);
    }

    TEST_CASE("2-D distance-chirality map matches the edge sweeps") {
        StudyOptions opt;
        opt.t_max = 20.0;
        opt.grid_points = 400;
        const std::vector<double> kd{0.0, 0.5 * M_PI, M_PI};
        const std::vector<double> chis{0.4, 1.0};
        auto map = sweep_distance_chirality(chiral_optimum_params(), kd, chis, opt);
        REQUIRE(map.size() == 6);
        // chi = 1 column is distance independent.
        CHECK(std::abs(map[1].c_max - map[3].c_max) <= 1e-8);
        CHECK(std::abs(map[3].c_max - map[5].c_max) <= 1e-8);
        // chi = 0.4 at kD = pi matches the one-dimensional chirality sweep.
        auto edge = sweep_chirality(chiral_optimum_params(), {0.4}, opt);
        CHECK(map[4].c_max == edge[0].c_max);
        // Imperfect chirality prefers the half-wave spacings (the
        // dependence is pi-periodic in kD, so D = 0 ties with lambda/2)
        // over the quarter-wave point.
        CHECK(std::abs(map[4].c_max - map[0].c_max) <= 1e-8);
        CHECK(map[4].c_max > map[2].c_max);
    }

    TEST_CASE("transfer fidelity is best at matched couplings, grid check") {
        StudyOptions opt;
        opt.t_max = 30.0;
        opt.grid_points = 500;
        NetworkParams matched = chiral_cavity_baseline();
        matched.g1 = matched.g2 = 0.43;
        matched.finalize();
        const double best =
            peak_over_time(matched, StudyObservable::F3, opt).value;
        for (double g1 : {0.1, 0.28, 0.46, 0.64, 0.82})
            for (double g2 : {0.1, 0.28, 0.46, 0.64, 0.82}) {
                NetworkParams p = chiral_cavity_baseline();
                p.g1 = g1;
                p.g2 = g2;
                p.finalize();
                CHECK(peak_over_time(p, StudyObservable::F3, opt).value <=
                      best + 1e-9);
            }
    }

    TEST_CASE("chirality sweep validates inputs") {
        CHECK_THROWS_AS(sweep_chirality(chiral_optimum_params(), {1.5}),
                        std::invalid_argument);
        NetworkParams asym = chiral_optimum_params();
        asym.gamma_R2 = 2.0;
        CHECK_THROWS_AS(sweep_chirality(asym, {0.5}), std::invalid_argument);
    }

    TEST_CASE("detuning sweep: zero width is exact, seeds reproduce") {
        NetworkParams p = chiral_optimum_params();
        StudyOptions opt;
        opt.t_max = 20.0;
        opt.grid_points = 400;
        const auto base =
            peak_over_time(p, StudyObservable::Concurrence, opt).value;

        auto points = sweep_detuning(p, DetuningTarget::OmegaA1, {0.0, 0.8}, 16,
                                     777, opt);
        CHECK(points[0].mean_c_max == base);
        CHECK(points[0].std_c_max == 0.0);
        CHECK(points[1].std_c_max > 0.0);
        CHECK(points[1].mean_c_max < base);

        auto again = sweep_detuning(p, DetuningTarget::OmegaA1, {0.0, 0.8}, 16,
                                    777, opt);
        CHECK(points[1].mean_c_max == again[1].mean_c_max);
        CHECK(points[1].std_c_max == again[1].std_c_max);

        StudyOptions serial = opt;
        serial.workers = 1;
        auto serial_points = sweep_detuning(p, DetuningTarget::OmegaA1,
                                            {0.0, 0.8}, 16, 777, serial);
        CHECK(points[1].mean_c_max == serial_points[1].mean_c_max);

        auto other_seed = sweep_detuning(p, DetuningTarget::OmegaA1, {0.8}, 16,
                                         778, opt);
        CHECK(other_seed[0].mean_c_max != points[1].mean_c_max);
    }

    TEST_CASE("reoptimized decay sweep dominates the fixed couplings") {
        NetworkParams p = chiral_optimum_params();
        StudyOptions opt;
        opt.t_max = 20.0;
        opt.grid_points = 300;
        opt.coarse_points = 5;
        opt.max_evaluations = 120;
        const std::vector<double> gammas{0.0, 0.05, 0.1};
        auto fixed = sweep_atomic_decay(p, gammas, false, {}, opt);
        auto reopt = sweep_atomic_decay(p, gammas, true,
                                        {{"g1", 0.0, 1.0}, {"g2", 0.0, 1.0}},
                                        opt);
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            CHECK(reopt[i].c_max >= fixed[i].c_max - 1e-9);
            if (i > 0) CHECK(fixed[i].c_max < fixed[0].c_max);
        }
    }

    TEST_CASE("reoptimized value at Gamma = 0.1, pinned") {
        // Regression value from the first converged run of this harness:
        // with symmetric rates and both couplings free the optimum moves to
        // (1.677, 1.379) and the concurrence drops to 0.7122. Freeing
        // gamma_R2 as well lifts it above 0.9.
        NetworkParams p = chiral_optimum_params();
        p.Gamma1 = p.Gamma2 = 0.1;
        p.finalize();
        StudyOptions opt;
        opt.t_max = 40.0;
        opt.grid_points = 600;
        opt.coarse_points = 11;
        StudyResult r =
            optimize_couplings(p, {{"g1", 0.0, 2.0}, {"g2", 0.0, 2.0}}, opt);
        CHECK(r.best_value == doctest::Approx(0.712168).epsilon(0.005));
    }
}

TEST_SUITE("bell_phase") {
    TEST_CASE("generator collapses to a single collective dissipator") {
        StudyOptions opt;
        opt.t_max = 3000.0;
        opt.grid_points = 1500;
        NetworkParams p = nonchiral_optimum_params();

        BellPhaseResult odd = nonchiral_bell_phase_check(1, p, opt);
        CHECK(odd.generator_defect <= 1e-12);
        CHECK(odd.coherent_term_defect <= 1e-12);
        CHECK(odd.f_psi_plus > odd.f_psi_minus);
        CHECK(odd.c_peak > 0.9);

        NetworkParams p2 = p;
        p2.kD = 2.0 * M_PI;
        p2.finalize();
        BellPhaseResult even = nonchiral_bell_phase_check(2, p2, opt);
        CHECK(even.generator_defect <= 1e-12);
        CHECK(even.f_psi_minus > even.f_psi_plus);
    }

    TEST_CASE("preconditions") {
        NetworkParams p = nonchiral_optimum_params();
        CHECK_THROWS_AS(nonchiral_bell_phase_check(0, p), std::invalid_argument);
        NetworkParams chiral = chiral_optimum_params();
        CHECK_THROWS_AS(nonchiral_bell_phase_check(1, chiral),
                        std::invalid_argument);
        NetworkParams wrong_kd = nonchiral_optimum_params();
        wrong_kd.kD = 1.0;
        CHECK_THROWS_AS(nonchiral_bell_phase_check(1, wrong_kd),
                        std::invalid_argument);
    }
}

TEST_SUITE("exchange_symmetry") {
    TEST_CASE("non-chiral peak concurrence is near-symmetric under g1 <-> g2") {
        // The generator at kD = n pi is node-exchange symmetric, but the
        // initial excitation sits on node 1, so the symmetry of max_t C is
        // only approximate. Measured deviations on this grid reach 3e-2
        // (cross-checked against an independent eigendecomposition
        // propagator), which is what the flat appearance of the reference
        // landscape corresponds to.
        StudyOptions opt;
        opt.t_max = 20000.0;
        opt.grid_points = 4000;
        NetworkParams base = nonchiral_optimum_params();
        const double gs[3] = {0.0015, 0.003, 0.0045};
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                NetworkParams p = base, q = base;
                p.g1 = gs[a];
                p.g2 = gs[b];
                q.g1 = gs[b];
                q.g2 = gs[a];
                p.finalize();
                q.finalize();
                const double cp =
                    peak_over_time(p, StudyObservable::Concurrence, opt).value;
                const double cq =
                    peak_over_time(q, StudyObservable::Concurrence, opt).value;
                CHECK(std::abs(cp - cq) <= 0.05);
                CHECK(cp > 0.5);
            }
    }
}

TEST_SUITE("parallel_utils") {
    TEST_CASE("parallel and serial loops fill identically") {
        std::vector<double> a(257), b(257);
        serial_for(a.size(), [&](std::size_t i) {
            a[i] = uniform01(5, 0, i);
        });
        parallel_for(b.size(), 0, [&](std::size_t i) {
            b[i] = uniform01(5, 0, i);
        });
        CHECK(a == b);
    }

    TEST_CASE("exceptions cross the parallel region") {
        CHECK_THROWS_AS(
            parallel_for(8, 0,
                         [](std::size_t i) {
                             if (i == 5) throw std::runtime_error("boom");
                         }),
            std::runtime_error);
    }

    TEST_CASE("counter RNG is pure and uniform-ish") {
        CHECK(uniform01(1, 2, 3) == uniform01(1, 2, 3));
        CHECK(uniform01(1, 2, 3) != uniform01(1, 2, 4));
        CHECK(uniform01(1, 2, 3) != uniform01(2, 2, 3));
        double sum = 0.0;
        for (int i = 0; i < 4000; ++i) {
            const double u = uniform01(99, 0, i);
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
            sum += u;
        }
        CHECK(sum / 4000.0 == doctest::Approx(0.5).epsilon(0.03));
    }
}
