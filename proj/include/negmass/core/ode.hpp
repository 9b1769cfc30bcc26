#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "negmass/core/types.hpp"

namespace negmass {

struct IntegratorConfig
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 1'000'000;
    /// Zero selects the step automatically.
    double initial_step = 0.0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// dy/dt = f(t, y); writes into dydt.
using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Called after each accepted step; returning true stops the integration
/// with status `stopped`.
using StepObserver = std::function<bool(double t, std::span<const double> y)>;

enum class OdeStatus
{
    completed,
    stopped
};

/// Samples of y(t) stored row-major: y(i, k) is component k at time t[i].
class Trajectory
{
  public:
    explicit Trajectory(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }

    double time(std::size_t i) const { return times_[i]; }
    const std::vector<double>& times() const noexcept { return times_; }
    std::span<const double> state(std::size_t i) const
    {
        return {values_.data() + i * dim_, dim_};
    }
    double operator()(std::size_t i, std::size_t k) const { return values_[i * dim_ + k]; }
    std::span<const double> back() const { return state(size() - 1); }

    void push(double t, std::span<const double> y);

    OdeStatus status = OdeStatus::completed;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;

  private:
    std::size_t dim_;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Raised when the integrator cannot continue. Carries the last accepted
/// state and everything sampled up to it.
class IntegrationError : public std::runtime_error
{
  public:
    enum class Kind
    {
        stalled,
        blow_up
    };

    IntegrationError(Kind kind, const std::string& what, double last_t,
                     std::vector<double> last_y, Trajectory partial)
        : std::runtime_error(what), kind_(kind), last_t_(last_t),
          last_y_(std::move(last_y)), partial_(std::move(partial))
    {
    }

    Kind kind() const noexcept { return kind_; }
    double last_time() const noexcept { return last_t_; }
    const std::vector<double>& last_state() const noexcept { return last_y_; }
    const Trajectory& partial() const noexcept { return partial_; }

  private:
    Kind kind_;
    double last_t_;
    std::vector<double> last_y_;
    Trajectory partial_;
};

struct OdeOptions
{
    /// Output times inside the span, ascending. Empty: record every accepted
    /// step (including the initial point).
    std::vector<double> sample_times;
    StepObserver observer;
};

/**
 * Adaptive Dormand-Prince 5(4) integration with PI step-size control and
 * the fourth-order continuous extension for output between steps.
 *
 * The scaled RMS error norm uses abs_tol + rel_tol * max(|y_n|, |y_{n+1}|)
 * per component. Throws IntegrationError("integration stalled") once
 * cfg.max_steps accepted+rejected steps are exceeded, and
 * IntegrationError("blow-up detected") on a non-finite derivative.
 */
Trajectory integrate_ode(const OdeRhs& f, std::span<const double> y0, TimeSpan span,
                         const IntegratorConfig& cfg, const OdeOptions& options = {});

/// Uniform grid of n_samples >= 2 points over the span, endpoints included.
std::vector<double> uniform_times(TimeSpan span, std::size_t n_samples);

}  // namespace negmass
