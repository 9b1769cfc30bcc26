#include "negmass/core/ode.hpp"

#include <algorithm>
#include <cmath>

namespace negmass {

void IntegratorConfig::validate() const
{
    auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
    if (!in_unit(rel_tol) || !in_unit(abs_tol))
        throw std::invalid_argument("integrator tolerances must lie in (0, 1)");
    if (!(max_step > 0.0))
        throw std::invalid_argument("integrator max_step must be > 0");
    if (max_steps < 1)
        throw std::invalid_argument("integrator max_steps must be >= 1");
    if (initial_step < 0.0)
        throw std::invalid_argument("integrator initial_step must be >= 0");
}

void Trajectory::push(double t, std::span<const double> y)
{
    times_.push_back(t);
    values_.insert(values_.end(), y.begin(), y.end());
}

std::vector<double> uniform_times(TimeSpan span, std::size_t n_samples)
{
    if (n_samples < 2)
        throw std::invalid_argument("uniform_times: need at least two samples");
    std::vector<double> out(n_samples);
    const double dt = span.length() / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i)
        out[i] = span.begin + dt * static_cast<double>(i);
    out.back() = span.end;
    return out;
}

namespace {

// Dormand & Prince (1980) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output (Hairer, Norsett & Wanner, dopri5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool all_finite(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class Stepper
{
  public:
    Stepper(const OdeRhs& f, std::size_t n)
        : f_(f), n_(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n),
          ynew(n), err(n), r1(n), r2(n), r3(n), r4(n), r5(n)
    {
    }

    void eval(double t, std::span<const double> y, std::vector<double>& out)
    {
        f_(t, y, out);
        ++evaluations;
    }

    /// One trial step from (t, y) with derivative k1 already set. Returns the
    /// scaled error norm, or NaN when a stage produced non-finite values.
    double trial(double t, std::span<const double> y, double h, const IntegratorConfig& cfg)
    {
        auto stage = [&](auto&& combine, double tc, std::vector<double>& k) {
            for (std::size_t i = 0; i < n_; ++i)
                tmp[i] = y[i] + h * combine(i);
            eval(tc, tmp, k);
        };
        stage([&](std::size_t i) { return a21 * k1[i]; }, t + c2 * h, k2);
        stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }, t + c3 * h, k3);
        stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; },
              t + c4 * h, k4);
        stage([&](std::size_t i) {
            return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
        }, t + c5 * h, k5);
        stage([&](std::size_t i) {
            return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
        }, t + h, k6);
        for (std::size_t i = 0; i < n_; ++i)
            ynew[i] = y[i]
                      + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i]
                             + a76 * k6[i]);
        eval(t + h, ynew, k7);
        if (!all_finite(ynew) || !all_finite(k7))
            return std::numeric_limits<double>::quiet_NaN();

        double sum = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
        {
            err[i] = h
                     * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]
                        + e7 * k7[i]);
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[i]),
                                                                  std::fabs(ynew[i]));
            sum += (err[i] / sc) * (err[i] / sc);
        }
        return std::sqrt(sum / static_cast<double>(n_));
    }

    /// Prepares the continuous extension for the step just accepted.
    void prepare_dense(std::span<const double> y, double h)
    {
        for (std::size_t i = 0; i < n_; ++i)
        {
            r1[i] = y[i];
            const double dy = ynew[i] - y[i];
            r2[i] = dy;
            const double bspl = h * k1[i] - dy;
            r3[i] = bspl;
            r4[i] = dy - h * k7[i] - bspl;
            r5[i] = h
                    * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]
                       + d7 * k7[i]);
        }
    }

    void dense(double theta, std::vector<double>& out) const
    {
        const double theta1 = 1.0 - theta;
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = r1[i]
                     + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
    }

    const OdeRhs& f_;
    std::size_t n_;
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, tmp, ynew, err;
    std::vector<double> r1, r2, r3, r4, r5;
    std::size_t evaluations = 0;
};

// Starting step after Hairer, Norsett & Wanner (II.4).
double initial_step(Stepper& s, double t0, std::span<const double> y0, double direction,
                    const IntegratorConfig& cfg, double hmax)
{
    const std::size_t n = y0.size();
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double sk = cfg.abs_tol + cfg.rel_tol * std::fabs(y0[i]);
        dnf += (s.k1[i] / sk) * (s.k1[i] / sk);
        dny += (y0[i] / sk) * (y0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax);
    std::vector<double> y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i)
        y1[i] = y0[i] + direction * h * s.k1[i];
    s.eval(t0 + direction * h, y1, f1);
    double der2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double sk = cfg.abs_tol + cfg.rel_tol * std::fabs(y0[i]);
        der2 += ((f1[i] - s.k1[i]) / sk) * ((f1[i] - s.k1[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::fabs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::fabs(h) * 1e-3)
                                     : std::pow(0.01 / der12, 1.0 / 5.0);
    double out = std::min({100.0 * std::fabs(h), h1, hmax});
    if (!std::isfinite(out) || out <= 0.0)
        out = std::min(1e-6, hmax);
    return out;
}

}  // namespace

Trajectory integrate_ode(const OdeRhs& f, std::span<const double> y0, TimeSpan span,
                         const IntegratorConfig& cfg, const OdeOptions& options)
{
    cfg.validate();
    const double length = span.length();
    if (!(std::fabs(length) > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("integrate_ode: degenerate time span");
    if (!all_finite(y0))
        throw std::invalid_argument("integrate_ode: non-finite initial state");

    const auto& samples = options.sample_times;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double rel = (samples[i] - span.begin) / length;
        if (!(rel >= 0.0 && rel <= 1.0) || (i > 0 && (samples[i] - samples[i - 1]) / length < 0.0))
            throw std::invalid_argument("integrate_ode: sample times must be ordered and inside the span");
    }

    const std::size_t n = y0.size();
    const double direction = length > 0.0 ? 1.0 : -1.0;
    const double hmax = std::min(cfg.max_step, std::fabs(length));

    Trajectory traj(n);
    Stepper s(f, n);
    std::vector<double> y(y0.begin(), y0.end());
    double t = span.begin;

    std::size_t next_sample = 0;
    const bool every_step = samples.empty();

    auto fail = [&](IntegrationError::Kind kind, const std::string& what) {
        traj.rhs_evaluations = s.evaluations;
        throw IntegrationError(kind, what, t, y, traj);
    };

    auto emit_up_to = [&](double t_end, bool inclusive) {
        // Emits every pending sample time inside the step just taken.
        while (next_sample < samples.size())
        {
            const double ts = samples[next_sample];
            const double rel = (ts - t) * direction;
            const double span_step = (t_end - t) * direction;
            if (rel > span_step || (!inclusive && rel == span_step))
                break;
            std::vector<double> out(n);
            if (span_step == 0.0)
                out = y;
            else
                s.dense(rel / span_step, out);
            traj.push(ts, out);
            ++next_sample;
        }
    };

    s.eval(t, y, s.k1);
    if (!all_finite(s.k1))
        fail(IntegrationError::Kind::blow_up, "blow-up detected: non-finite derivative");

    if (every_step)
        traj.push(t, y);
    else
    {
        while (next_sample < samples.size() && samples[next_sample] == t)
        {
            traj.push(t, y);
            ++next_sample;
        }
    }
    if (options.observer && options.observer(t, y))
    {
        traj.status = OdeStatus::stopped;
        return traj;
    }

    double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, hmax)
                                      : initial_step(s, t, y, direction, cfg, hmax);
    constexpr double safe = 0.9, facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0, beta = 0.04;
    const double expo1 = 0.2 - beta * 0.75;
    double facold = 1e-4;
    bool last_rejected = false;
    std::size_t steps = 0;

    while ((span.end - t) * direction > 0.0)
    {
        if (++steps > cfg.max_steps)
            fail(IntegrationError::Kind::stalled, "integration stalled: max_steps exceeded");

        const double remaining = (span.end - t) * direction;
        bool final_step = false;
        if (h >= remaining * (1.0 - 1e-12))
        {
            h = remaining;
            final_step = true;
        }
        const double min_step = 16.0 * std::numeric_limits<double>::epsilon()
                                * std::max(std::fabs(t), std::fabs(length));
        if (h < min_step)
            fail(IntegrationError::Kind::stalled, "integration stalled: step size underflow");

        const double err = s.trial(t, y, direction * h, cfg);
        if (std::isnan(err))
        {
            // Non-finite stage values: retry with a much smaller step.
            ++traj.rejected_steps;
            h *= 0.1;
            last_rejected = true;
            if (h < min_step)
                fail(IntegrationError::Kind::blow_up, "blow-up detected: non-finite derivative");
            continue;
        }

        const double fac11 = std::pow(std::max(err, 1e-300), expo1);
        if (err <= 1.0)
        {
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(facc2, std::min(facc1, fac / safe));
            double hnew = h / fac;
            facold = std::max(err, 1e-4);

            const double t_new = final_step ? span.end : t + direction * h;
            s.prepare_dense(y, direction * h);
            if (every_step)
                traj.push(t_new, s.ynew);
            else
                emit_up_to(t_new, true);

            t = t_new;
            y = s.ynew;
            s.k1 = s.k7;  // first-same-as-last
            ++traj.accepted_steps;

            if (options.observer && options.observer(t, y))
            {
                traj.status = OdeStatus::stopped;
                break;
            }
            if (last_rejected)
                hnew = std::min(hnew, h);
            last_rejected = false;
            h = std::min(hnew, hmax);
        }
        else
        {
            ++traj.rejected_steps;
            h /= std::min(facc1, fac11 / safe);
            last_rejected = true;
        }
    }
    traj.rhs_evaluations = s.evaluations;
    return traj;
}

}  // namespace negmass
