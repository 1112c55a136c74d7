// Compares the serial reference path against the OpenMP path on a sweep
// workload and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "chiralnet/io.hpp"
#include "chiralnet/parallel.hpp"
#include "chiralnet/study.hpp"

using namespace chiralnet;

namespace {

std::vector<DistancePoint> run_sweep(int workers, int points,
                                     const StudyOptions& base) {
    StudyOptions opt = base;
    opt.workers = workers;
    std::vector<double> kd(points);
    for (int i = 0; i < points; ++i)
        kd[i] = 2.0 * M_PI * 2.0 * i / (points - 1);
    NetworkParams p = chiral_optimum_params();
    p.gamma_L1 = p.gamma_L2 = 0.1;  // breaks distance invariance, keeps work honest
    p.finalize();
    return sweep_distance(p, kd, opt);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

} // namespace

int main(int argc, char** argv) {
    int points = 64;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--points") == 0 && i + 1 < argc)
            points = std::atoi(argv[++i]);
    }

    StudyOptions opt;
    opt.t_max = 40.0;
    opt.grid_points = 800;

    std::printf("sweep workload: %d distance points, t_max %.0f\n", points,
                opt.t_max);
    std::printf("openmp enabled: %s, hardware threads: %d\n",
                openmp_enabled() ? "yes" : "no", hardware_workers());

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_sweep(1, points, opt);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_sweep(0, points, opt);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
        identical = serial[i].c_max == parallel[i].c_max &&
                    serial[i].t_peak == parallel[i].t_peak;
    }

    std::printf("serial reference: %8.3f s\n", t_serial);
    std::printf("openmp parallel:  %8.3f s\n", t_parallel);
    std::printf("speedup:          %8.2fx\n",
                t_parallel > 0.0 ? t_serial / t_parallel : 0.0);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    if (!identical) return 1;
    return 0;
}
