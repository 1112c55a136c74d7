#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace chiralnet {

using OdeRhs =
    std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.0;  // 0: no cap beyond the interval length
    long max_steps = 2'000'000;
};

/// Raised on step-size underflow or step-budget exhaustion; carries the
/// time at which the integration gave up.
class OdeError : public std::runtime_error {
public:
    OdeError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
    double time;
};

/// One accepted step with the coefficients of the order-4 continuous
/// extension of the Dormand-Prince pair, so dense evaluation carries the
/// same accuracy as the integration itself.
struct OdeSegment {
    double t0;
    double h;
    Eigen::VectorXcd c1, c2, c3, c4, c5;
};

/// Piecewise-polynomial solution from an adaptive Dormand-Prince 4(5) run.
class DenseSolution {
public:
    DenseSolution(std::vector<OdeSegment> segments, Eigen::VectorXcd y_end);

    double t_begin() const { return segments_.front().t0; }
    double t_end() const;
    long accepted_steps() const { return static_cast<long>(segments_.size()); }

    Eigen::VectorXcd at(double t) const;

private:
    std::vector<OdeSegment> segments_;
    Eigen::VectorXcd y_end_;
};

/// Integrates y' = f(t, y) from t0 to t1 (t1 >= t0), recording every
/// accepted step for dense evaluation.
DenseSolution integrate_dense(const OdeRhs& f, Eigen::VectorXcd y0, double t0,
                              double t1, const OdeOptions& opt = {});

} // namespace chiralnet
