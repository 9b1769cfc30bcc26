#include "negmass/galilean.hpp"

#include <cmath>
#include <sstream>

#include "negmass/core/fft.hpp"

namespace negmass::galilean {

namespace {

double mean_position(const Grid1D& g, std::span<const cplx> psi)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        acc += g.x(i) * std::norm(psi[i]);
    return acc * g.dx;
}

double norm_of(const Grid1D& g, std::span<const cplx> psi)
{
    double acc = 0.0;
    for (const auto& z : psi)
        acc += std::norm(z);
    return acc * g.dx;
}

double edge_probability(const Grid1D& g, std::span<const cplx> psi)
{
    const std::size_t band = std::max<std::size_t>(1, g.n / 20);
    double acc = 0.0;
    for (std::size_t i = 0; i < band; ++i)
        acc += std::norm(psi[i]) + std::norm(psi[g.n - 1 - i]);
    return acc * g.dx;
}

}  // namespace

EhrenfestReport ehrenfest_check(SignedMass M, const GridWavefunction& psi0, TimeSpan span,
                                const EhrenfestConfig& cfg)
{
    const Grid1D& g = psi0.grid();
    if (cfg.n_samples < 3 || cfg.steps_per_sample < 1)
        throw DomainError("ehrenfest_check: need >= 3 samples and >= 1 step per sample");
    if (std::fabs(psi0.norm() - 1.0) > 1e-10)
        throw DomainError("ehrenfest_check: psi0 must be normalised");

    const Fft fft(g.n);
    const auto k = fft_wavenumbers(g.n, g.dx);
    const double hbar = cfg.hbar;
    const double mass = M.value();
    const double dt = span.length()
                      / static_cast<double>((cfg.n_samples - 1) * cfg.steps_per_sample);

    // Free propagator exp(-i E(k) dt / hbar), diagonal in k.
    std::vector<cplx> phase(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
    {
        double energy = 0.0;
        if (cfg.dispersion == Dispersion::spectral)
            energy = hbar * hbar * k[i] * k[i] / (2.0 * mass);
        else
            energy = hbar * hbar * (2.0 - 2.0 * std::cos(k[i] * g.dx)) / (2.0 * mass * g.dx * g.dx);
        phase[i] = std::polar(1.0, -energy * dt / hbar);
    }

    std::vector<cplx> psi(psi0.samples().begin(), psi0.samples().end());
    std::vector<cplx> spec(g.n);

    EhrenfestReport out{};
    auto record = [&](double t) {
        const double nrm = norm_of(g, psi);
        out.max_norm_drift = std::max(out.max_norm_drift, std::fabs(nrm - 1.0));
        if (out.max_norm_drift > 1e-8)
            throw NumericalError("evolution inaccurate: norm drift exceeds 1e-8");
        if (edge_probability(g, psi) > 1e-12)
            throw NumericalError("evolution inaccurate: packet reached the grid boundary");
        spec = psi;
        fft.forward(spec);
        double p_acc = 0.0, w_acc = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
        {
            const double w = std::norm(spec[i]);
            p_acc += hbar * k[i] * w;
            w_acc += w;
        }
        out.t.push_back(t);
        out.mean_x.push_back(mean_position(g, psi) / nrm);
        out.mean_p.push_back(p_acc / w_acc);
    };

    record(span.begin);
    for (std::size_t s = 1; s < cfg.n_samples; ++s)
    {
        fft.forward(psi);
        for (std::size_t step = 0; step < cfg.steps_per_sample; ++step)
            for (std::size_t i = 0; i < g.n; ++i)
                psi[i] *= phase[i];
        fft.inverse(psi);
        record(span.begin + dt * static_cast<double>(s * cfg.steps_per_sample));
    }

    // d<X>/dt: central differences inside, second-order one-sided at the ends.
    const std::size_t n = out.t.size();
    const double h = out.t[1] - out.t[0];
    for (std::size_t i = 0; i < n; ++i)
    {
        double deriv;
        if (i == 0)
            deriv = (-3.0 * out.mean_x[0] + 4.0 * out.mean_x[1] - out.mean_x[2]) / (2.0 * h);
        else if (i + 1 == n)
            deriv = (3.0 * out.mean_x[i] - 4.0 * out.mean_x[i - 1] + out.mean_x[i - 2]) / (2.0 * h);
        else
            deriv = (out.mean_x[i + 1] - out.mean_x[i - 1]) / (2.0 * h);
        out.max_residual = std::max(out.max_residual, std::fabs(deriv - out.mean_p[i] / mass));
    }
    return out;
}

WeylReport weyl_phase(SignedMass M, double Xi, double v, const GridWavefunction& psi0,
                      double hbar)
{
    const Grid1D& g = psi0.grid();
    const Fft fft(g.n);
    const auto k = fft_wavenumbers(g.n, g.dx);
    const double mass = M.value();

    std::vector<cplx> psi(psi0.samples().begin(), psi0.samples().end());

    // exp(i a P / hbar) psi(x) = psi(x + a)
    auto translate = [&](double a) {
        fft.forward(psi);
        for (std::size_t i = 0; i < g.n; ++i)
            psi[i] *= std::polar(1.0, k[i] * a);
        fft.inverse(psi);
    };
    // exp(i b N / hbar) with N = -M X
    auto boost = [&](double b) {
        for (std::size_t i = 0; i < g.n; ++i)
            psi[i] *= std::polar(1.0, -b * mass * g.x(i) / hbar);
    };

    translate(-Xi);
    boost(-v);
    translate(Xi);
    boost(v);

    cplx overlap = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        overlap += std::conj(psi0.samples()[i]) * psi[i];
    overlap *= g.dx;

    WeylReport out{std::arg(overlap), mass * Xi * v / hbar, std::abs(overlap)};
    if (out.fidelity < 1.0 - 1e-10)
    {
        std::ostringstream msg;
        msg << "representation error: fidelity " << out.fidelity << " < 1 - 1e-10";
        throw NumericalError(msg.str());
    }
    return out;
}

}  // namespace negmass::galilean
