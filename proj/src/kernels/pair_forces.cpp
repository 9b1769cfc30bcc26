#include "negmass/kernels/pair_forces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace negmass::kernels {

namespace {

inline double coupling(const ForceLaw& law, double mi, double mj, double qi, double qj)
{
    double c = 0.0;
    if (law.gravity)
        c -= law.G * mi * mj;
    if (law.coulomb)
        c += law.coulomb_k * qi * qj;
    return c;
}

void check_sizes(std::span<const double> positions, std::span<const double> masses,
                 std::span<const double> charges)
{
    if (positions.size() != 3 * masses.size() || charges.size() != masses.size())
        throw std::invalid_argument("pair kernels: inconsistent body arrays");
}

}  // namespace

void pair_forces(std::span<const double> x, std::span<const double> m,
                 std::span<const double> q, const ForceLaw& law, std::span<double> f,
                 Execution exec)
{
    check_sizes(x, m, q);
    const auto n = static_cast<long>(m.size());
    if (f.size() != x.size())
        throw std::invalid_argument("pair_forces: output size mismatch");

    if (exec == Execution::serial)
    {
        std::fill(f.begin(), f.end(), 0.0);
        for (long i = 0; i < n; ++i)
        {
            for (long j = i + 1; j < n; ++j)
            {
                const double dx = x[3 * i] - x[3 * j];
                const double dy = x[3 * i + 1] - x[3 * j + 1];
                const double dz = x[3 * i + 2] - x[3 * j + 2];
                const double r2 = dx * dx + dy * dy + dz * dz;
                const double r = std::sqrt(r2);
                const double s = coupling(law, m[i], m[j], q[i], q[j]) / (r2 * r);
                f[3 * i] += s * dx;
                f[3 * i + 1] += s * dy;
                f[3 * i + 2] += s * dz;
                f[3 * j] -= s * dx;
                f[3 * j + 1] -= s * dy;
                f[3 * j + 2] -= s * dz;
            }
        }
        return;
    }

#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
    {
        double fx = 0.0, fy = 0.0, fz = 0.0;
        for (long j = 0; j < n; ++j)
        {
            if (j == i)
                continue;
            const double dx = x[3 * i] - x[3 * j];
            const double dy = x[3 * i + 1] - x[3 * j + 1];
            const double dz = x[3 * i + 2] - x[3 * j + 2];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double r = std::sqrt(r2);
            const double s = coupling(law, m[i], m[j], q[i], q[j]) / (r2 * r);
            fx += s * dx;
            fy += s * dy;
            fz += s * dz;
        }
        f[3 * i] = fx;
        f[3 * i + 1] = fy;
        f[3 * i + 2] = fz;
    }
}

double pair_potential_energy(std::span<const double> x, std::span<const double> m,
                             std::span<const double> q, const ForceLaw& law, Execution exec)
{
    check_sizes(x, m, q);
    const auto n = static_cast<long>(m.size());
    auto row = [&](long i) {
        double u = 0.0;
        for (long j = i + 1; j < n; ++j)
        {
            const double dx = x[3 * i] - x[3 * j];
            const double dy = x[3 * i + 1] - x[3 * j + 1];
            const double dz = x[3 * i + 2] - x[3 * j + 2];
            u += coupling(law, m[i], m[j], q[i], q[j]) / std::sqrt(dx * dx + dy * dy + dz * dz);
        }
        return u;
    };
    double total = 0.0;
    if (exec == Execution::serial)
    {
        for (long i = 0; i < n; ++i)
            total += row(i);
        return total;
    }
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
    for (long i = 0; i < n; ++i)
        total += row(i);
    return total;
}

ClosestPair closest_pair(std::span<const double> x)
{
    const auto n = static_cast<int>(x.size() / 3);
    ClosestPair best{std::numeric_limits<double>::infinity(), -1, -1};
    for (int i = 0; i < n; ++i)
    {
        for (int j = i + 1; j < n; ++j)
        {
            const double dx = x[3 * i] - x[3 * j];
            const double dy = x[3 * i + 1] - x[3 * j + 1];
            const double dz = x[3 * i + 2] - x[3 * j + 2];
            const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
            if (r < best.distance)
                best = {r, i, j};
        }
    }
    return best;
}

}  // namespace negmass::kernels
