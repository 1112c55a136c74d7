#include "chiralnet/ode.hpp"

#include <algorithm>
#include <cmath>

namespace chiralnet {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b_hat, for the embedded 4th-order error estimate.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                 e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous-extension weights.
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

double error_norm(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                  const Eigen::VectorXcd& y1, double rtol, double atol) {
    double sum = 0.0;
    const Eigen::Index n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale =
            atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / scale;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(n));
}

double initial_step(const OdeRhs& f, double t0, const Eigen::VectorXcd& y0,
                    const Eigen::VectorXcd& f0, double span, double rtol,
                    double atol) {
    const double d0 = y0.norm();
    const double d1n = f0.norm();
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, span);
    if (h0 <= 0.0) return span;

    Eigen::VectorXcd y1 = y0 + h0 * f0;
    Eigen::VectorXcd f1(y0.size());
    f(t0 + h0, y1, f1);
    const double d2 = (f1 - f0).norm() / h0;
    const double dm = std::max(d1n, d2);
    double h1 = dm > 1e-15 ? std::pow(0.01 * std::max(rtol, atol) / dm, 0.2)
                           : std::max(1e-6, h0 * 1e-3);
    return std::min({100.0 * h0, h1, span});
}

} // namespace

DenseSolution::DenseSolution(std::vector<OdeSegment> segments,
                             Eigen::VectorXcd y_end)
    : segments_(std::move(segments)), y_end_(std::move(y_end)) {
    if (segments_.empty())
        throw std::logic_error("DenseSolution: no segments");
}

double DenseSolution::t_end() const {
    return segments_.back().t0 + segments_.back().h;
}

Eigen::VectorXcd DenseSolution::at(double t) const {
    if (t <= t_begin()) return segments_.front().c1;
    if (t >= t_end()) return y_end_;

    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double value, const OdeSegment& s) { return value < s.t0; });
    const OdeSegment& seg = it == segments_.begin() ? *it : *(it - 1);
    if (seg.h <= 0.0) return seg.c1;
    const double s = (t - seg.t0) / seg.h;
    const double s1 = 1.0 - s;
    return seg.c1 + s * (seg.c2 + s1 * (seg.c3 + s * (seg.c4 + s1 * seg.c5)));
}

DenseSolution integrate_dense(const OdeRhs& f, Eigen::VectorXcd y0, double t0,
                              double t1, const OdeOptions& opt) {
    if (t1 < t0) throw std::invalid_argument("integrate_dense: t1 < t0");
    const Eigen::Index n = y0.size();

    std::vector<OdeSegment> segments;
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    Eigen::VectorXcd ytmp(n), ynew(n), err(n);

    double t = t0;
    f(t, y0, k1);
    if (t1 == t0) {
        OdeSegment seg{t0, 0.0, y0, Eigen::VectorXcd::Zero(n),
                       Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n),
                       Eigen::VectorXcd::Zero(n)};
        return DenseSolution({std::move(seg)}, std::move(y0));
    }

    const double span = t1 - t0;
    const double hmax = opt.max_step > 0.0 ? std::min(opt.max_step, span) : span;
    double h = std::min(initial_step(f, t0, y0, k1, span, opt.rtol, opt.atol),
                        hmax);
    const double hmin_floor = 1e-14 * std::max(1.0, std::abs(t1));

    Eigen::VectorXcd y = std::move(y0);
    long steps = 0;
    bool rejected = false;

    while (t < t1) {
        if (++steps > opt.max_steps)
            throw OdeError("integrate_dense: step budget exhausted", t);
        if (h < hmin_floor)
            throw OdeError("integrate_dense: step size underflow", t);
        if (t + h >= t1) h = t1 - t;

        ytmp = y + h * (a21 * k1);
        f(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);  // FSAL
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double enorm = error_norm(err, y, ynew, opt.rtol, opt.atol);
        if (enorm <= 1.0) {
            OdeSegment seg;
            seg.t0 = t;
            seg.h = h;
            seg.c1 = y;
            seg.c2 = ynew - y;
            seg.c3 = h * k1 - seg.c2;
            seg.c4 = seg.c2 - h * k7 - seg.c3;
            seg.c5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 +
                          d7 * k7);
            segments.push_back(std::move(seg));

            t += h;
            y.swap(ynew);
            k1.swap(k7);
            double fac = enorm > 0.0 ? 0.9 * std::pow(enorm, -0.2) : 5.0;
            fac = std::min(rejected ? 1.0 : 5.0, std::max(0.2, fac));
            h = std::min(h * fac, hmax);
            rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(enorm, -0.2));
            rejected = true;
        }
    }
    return DenseSolution(std::move(segments), std::move(y));
}

} // namespace chiralnet
