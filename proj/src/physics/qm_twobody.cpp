#include "negmass/qm_twobody.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "negmass/core/fft.hpp"

namespace negmass::qm_twobody {

void QuantaPair::validate() const
{
    grid.validate();
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw DomainError("QuantaPair: kappa must be positive");
    if (!(softening > 0.0) || !std::isfinite(softening))
        throw DomainError("QuantaPair: softening must be positive");
    if (grid.n % 2 != 0)
        throw DomainError("QuantaPair: grid size must be even");
}

Separation separate(const QuantaPair& pair)
{
    pair.validate();
    const double a = pair.m_a.magnitude(), b = pair.m_b.magnitude();
    return {a + b, a * b / (a + b), -pair.m_a.lambda() * pair.m_b.lambda()};
}

Grid1D relative_grid(const QuantaPair& pair)
{
    const double L = pair.grid.length();
    return Grid1D{-0.5 * L, pair.grid.dx, pair.grid.n};
}

double relative_potential(const QuantaPair& pair, double r)
{
    const double L = pair.grid.length();
    const double d = r - L * std::round(r / L);
    const double s = pair.softening;
    return -pair.kappa * pair.m_a.lambda() * pair.m_b.lambda() / std::sqrt(d * d + s * s);
}

PlaneWave com_plane_wave(double M, double E_R, const Grid1D& g, double hbar)
{
    g.validate();
    if (!(M > 0.0))
        throw DomainError("com_plane_wave: M must be positive");
    if (g.n < 16)
        throw DomainError("com_plane_wave: need at least 16 points");

    PlaneWave out{};
    out.wavenumber = std::sqrt(2.0 * M * std::fabs(E_R)) / hbar;
    out.evanescent = E_R < 0.0;
    out.xi.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
    {
        const double R = g.x(i);
        out.xi[i] = out.evanescent ? cplx(std::exp(out.wavenumber * R), 0.0)
                                   : std::polar(1.0, out.wavenumber * R);
    }

    static constexpr std::array<double, 5> c8{-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0,
                                              -1.0 / 560.0};
    double res = 0.0, nrm = 0.0;
    const double scale = -hbar * hbar / (2.0 * M * g.dx * g.dx);
    for (std::size_t i = 4; i + 4 < g.n; ++i)
    {
        cplx lap = c8[0] * out.xi[i];
        for (std::size_t k = 1; k < 5; ++k)
            lap += c8[k] * (out.xi[i + k] + out.xi[i - k]);
        res += std::norm(scale * lap - E_R * out.xi[i]);
        nrm += std::norm(out.xi[i]);
    }
    out.residual = std::sqrt(res / nrm);

    std::vector<cplx> spec = out.xi;
    Fft(g.n).forward(spec);
    const auto k = fft_wavenumbers(g.n, g.dx);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < g.n; ++i)
        if (std::abs(spec[i]) > std::abs(spec[peak]))
            peak = i;
    out.fft_peak_wavenumber = k[peak];
    return out;
}

EigensolverNonConvergence::EigensolverNonConvergence(std::size_t mode, std::size_t iterations)
    : NumericalError([&] {
          std::ostringstream msg;
          msg << "eigensolver did not converge: mode " << mode << " after " << iterations
              << " iterations";
          return msg.str();
      }()),
      iterations_(iterations)
{
}

namespace {

struct RelativeProblem
{
    Grid1D grid;
    std::vector<double> V;
    std::vector<double> T;  // hbar^2 k^2 / (2 mu) in FFT order
    Fft fft;

    explicit RelativeProblem(const QuantaPair& pair, double hbar)
        : grid(relative_grid(pair)), V(grid.n), T(grid.n), fft(grid.n)
    {
        const double mu = separate(pair).reduced_mass;
        const auto k = fft_wavenumbers(grid.n, grid.dx);
        for (std::size_t i = 0; i < grid.n; ++i)
        {
            V[i] = relative_potential(pair, grid.x(i));
            T[i] = hbar * hbar * k[i] * k[i] / (2.0 * mu);
        }
    }

    void apply_h(std::span<const cplx> z, std::span<cplx> out) const
    {
        std::copy(z.begin(), z.end(), out.begin());
        fft.forward(out);
        for (std::size_t i = 0; i < grid.n; ++i)
            out[i] *= T[i];
        fft.inverse(out);
        for (std::size_t i = 0; i < grid.n; ++i)
            out[i] += V[i] * z[i];
    }

    cplx dot(std::span<const cplx> a, std::span<const cplx> b) const
    {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i)
            acc += std::conj(a[i]) * b[i];
        return acc * grid.dx;
    }

    void normalize(std::span<cplx> z) const
    {
        const double n = std::sqrt(dot(z, z).real());
        for (auto& v : z)
            v /= n;
    }
};

}  // namespace

std::vector<EigenState> relative_eigenstates(const QuantaPair& pair, const EigenConfig& cfg)
{
    pair.validate();
    if (cfg.n_modes < 1)
        throw DomainError("relative_eigenstates: need at least one mode");
    const RelativeProblem prob(pair, cfg.hbar);
    const std::size_t n = prob.grid.n;
    const double width = 2.0 * pair.softening + 0.05 * prob.grid.length();

    std::vector<EigenState> modes;
    std::vector<cplx> z(n), hz(n), r(n), spec(n);
    for (std::size_t mode = 0; mode < cfg.n_modes; ++mode)
    {
        // Start from x^mode times a Gaussian so successive modes have the
        // right parity content from the first step.
        for (std::size_t i = 0; i < n; ++i)
        {
            const double x = prob.grid.x(i) / width;
            z[i] = std::pow(x, static_cast<double>(mode)) * std::exp(-0.5 * x * x) + 1e-3;
        }
        auto project_out = [&] {
            for (const auto& lower : modes)
            {
                const cplx c = prob.dot(lower.samples, z);
                for (std::size_t i = 0; i < n; ++i)
                    z[i] -= c * lower.samples[i];
            }
            prob.normalize(z);
        };
        project_out();

        double energy = 0.0, residual = 0.0;
        bool done = false;
        std::size_t it = 0;
        for (; it < cfg.max_iterations && !done; ++it)
        {
            prob.apply_h(z, hz);
            const double e_new = prob.dot(z, hz).real();
            for (std::size_t i = 0; i < n; ++i)
                r[i] = hz[i] - e_new * z[i];
            residual = std::sqrt(prob.dot(r, r).real());
            // Inside the space orthogonal to the lower modes; their own small
            // residuals would otherwise set a floor for this one.
            for (const auto& lower : modes)
            {
                const cplx c = prob.dot(lower.samples, r);
                for (std::size_t i = 0; i < n; ++i)
                    r[i] -= c * lower.samples[i];
            }
            const double deflated = std::sqrt(prob.dot(r, r).real());
            done = it > 0 && std::fabs(e_new - energy) < cfg.energy_tol
                   && deflated < cfg.residual_tol;
            energy = e_new;
            if (done)
                break;

            double vmax = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                vmax = std::max(vmax, std::fabs(prob.V[i] - energy));
            const double dtau = std::min(0.5, 1.0 / vmax);
            // z <- (1 + dtau T)^-1 [z - dtau (V - E) z]
            for (std::size_t i = 0; i < n; ++i)
                spec[i] = z[i] - dtau * (prob.V[i] - energy) * z[i];
            prob.fft.forward(spec);
            for (std::size_t i = 0; i < n; ++i)
                spec[i] /= 1.0 + dtau * prob.T[i];
            prob.fft.inverse(spec);
            z = spec;
            project_out();
        }
        if (!done)
            throw EigensolverNonConvergence(mode, it);
        modes.push_back({energy, z, residual, it + 1});
    }
    return modes;
}

bool bound_state_exists(const QuantaPair& pair, const EigenConfig& cfg)
{
    EigenConfig one = cfg;
    one.n_modes = 1;
    return relative_eigenstates(pair, one).front().energy < 0.0;
}

SeparationReport separation_residual(const QuantaPair& pair, const EigenState& zeta, double K,
                                     double hbar)
{
    const Separation sep = separate(pair);
    const Grid1D& g = pair.grid;
    const std::size_t n = g.n;
    if (zeta.samples.size() != n)
        throw DomainError("separation_residual: zeta does not match the pair grid");

    const double a = pair.m_a.magnitude(), b = pair.m_b.magnitude();
    const double L = g.length();
    for (double w : {K * a * L / sep.total_mass, K * b * L / sep.total_mass})
    {
        const double turns = w / (2.0 * std::numbers::pi);
        if (std::fabs(turns - std::round(turns)) > 1e-9)
            throw DomainError("separation_residual: K is not periodic on the grid");
    }

    // Psi(i, j) = exp(i K R) zeta(x_a - x_b); the relative index for
    // x_a - x_b = (i - j) dx is (i - j + n/2) mod n.
    std::vector<cplx> psi(n * n), hpsi(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            const double R = (a * g.x(i) + b * g.x(j)) / sep.total_mass;
            const std::size_t r = (i + n + n / 2 - j) % n;
            psi[i * n + j] = std::polar(1.0, K * R) * zeta.samples[r];
        }

    const Fft fft(n, n);
    const auto k = fft_wavenumbers(n, g.dx);
    hpsi = psi;
    fft.forward(hpsi);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            hpsi[i * n + j] *= hbar * hbar * (k[i] * k[i] / (2.0 * a) + k[j] * k[j] / (2.0 * b));
    fft.inverse(hpsi);

    const Grid1D rg = relative_grid(pair);
    std::vector<double> V(n);
    for (std::size_t r = 0; r < n; ++r)
        V[r] = relative_potential(pair, rg.x(r));

    SeparationReport out{};
    out.E_R = hbar * hbar * K * K / (2.0 * sep.total_mass);
    out.E_r = zeta.energy;
    const double E = out.E_R + out.E_r;
    double res = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            const std::size_t r = (i + n + n / 2 - j) % n;
            const std::size_t idx = i * n + j;
            res += std::norm(hpsi[idx] + V[r] * psi[idx] - E * psi[idx]);
            nrm += std::norm(psi[idx]);
        }
    out.residual = std::sqrt(res / nrm);
    return out;
}

}  // namespace negmass::qm_twobody
