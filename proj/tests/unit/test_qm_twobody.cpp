#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "gen.hpp"
#include "negmass/core/fft.hpp"
#include "negmass/qm_twobody.hpp"

using namespace negmass;
using namespace negmass::qm_twobody;

namespace {

QuantaPair pair_of(double a, double b, std::size_t n = 512)
{
    QuantaPair p;
    p.m_a = SignedMass::from_value(a);
    p.m_b = SignedMass::from_value(b);
    p.grid = Grid1D::spanning(-30.0, 30.0, n);
    return p;
}

/// Dense spectral Hamiltonian on the relative grid, built from the DFT
/// matrix directly.
Eigen::VectorXd dense_spectrum(const QuantaPair& p)
{
    const Grid1D g = relative_grid(p);
    const std::size_t n = g.n;
    const double mu = separate(p).reduced_mass;
    const auto k = fft_wavenumbers(n, g.dx);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            std::complex<double> acc = 0.0;
            for (std::size_t q = 0; q < n; ++q)
                acc += k[q] * k[q] / (2.0 * mu)
                       * std::polar(1.0, k[q] * g.dx * (double(i) - double(j)));
            H(i, j) = acc / double(n);
        }
    for (std::size_t i = 0; i < n; ++i)
        H(i, i) += relative_potential(p, g.x(i));
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(H).eigenvalues();
}

}  // namespace

TEST(Separation, MassesDependOnlyOnMagnitudes)
{
    test::Gen g(71);
    for (int i = 0; i < 200; ++i)
    {
        const double a = g.log_uniform(0.1, 10), b = g.log_uniform(0.1, 10);
        const auto ref = separate(pair_of(a, b));
        for (int sa : {1, -1})
            for (int sb : {1, -1})
            {
                const auto s = separate(pair_of(sa * a, sb * b));
                EXPECT_EQ(s.total_mass, ref.total_mass);
                EXPECT_EQ(s.reduced_mass, ref.reduced_mass);
                EXPECT_EQ(s.attractive(), sa * sb > 0);
            }
        EXPECT_DOUBLE_EQ(ref.total_mass, a + b);
        EXPECT_DOUBLE_EQ(ref.reduced_mass, a * b / (a + b));
    }
}

TEST(Potential, SoftCoulombWithMinimumImage)
{
    auto p = pair_of(1, 1);
    EXPECT_DOUBLE_EQ(relative_potential(p, 0.0), -1.0);
    EXPECT_DOUBLE_EQ(relative_potential(p, 2.0), relative_potential(p, 2.0 - 60.0));
    EXPECT_DOUBLE_EQ(relative_potential(p, 3.0), -1.0 / std::sqrt(10.0));
    auto q = pair_of(1, -1);
    EXPECT_DOUBLE_EQ(relative_potential(q, 3.0), 1.0 / std::sqrt(10.0));
}

TEST(Eigen, MatchesDenseDiagonalization)
{
    for (double b : {1.0, -2.0})
    {
        auto p = pair_of(1.0, b, 128);
        EigenConfig cfg;
        cfg.n_modes = 2;
        const auto modes = relative_eigenstates(p, cfg);
        const auto ev = dense_spectrum(p);
        EXPECT_NEAR(modes[0].energy, ev[0], 1e-8) << b;
        EXPECT_NEAR(modes[1].energy, ev[1], 1e-8) << b;
        for (const auto& m : modes)
        {
            double nrm = 0.0;
            for (auto z : m.samples)
                nrm += std::norm(z);
            EXPECT_NEAR(nrm * p.grid.dx, 1.0, 1e-12);
        }
    }
}

TEST(Eigen, BoundStateIffAttractive)
{
    for (int sa : {1, -1})
        for (int sb : {1, -1})
        {
            const auto p = pair_of(sa * 1.0, sb * 1.0);
            EXPECT_EQ(bound_state_exists(p), sa * sb > 0) << sa << sb;
        }
}

TEST(Eigen, StatesAreOrthogonal)
{
    auto p = pair_of(1, 1, 256);
    EigenConfig cfg;
    cfg.n_modes = 3;
    const auto m = relative_eigenstates(p, cfg);
    ASSERT_EQ(m.size(), 3u);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
        {
            std::complex<double> o = 0.0;
            for (std::size_t i = 0; i < 256; ++i)
                o += std::conj(m[a].samples[i]) * m[b].samples[i];
            EXPECT_LT(std::abs(o) * p.grid.dx, 1e-8);
            EXPECT_LT(m[a].energy, m[b].energy);
        }
}

TEST(Eigen, NonConvergenceIsReported)
{
    auto p = pair_of(1, 1, 256);
    EigenConfig cfg;
    cfg.max_iterations = 3;
    EXPECT_THROW(relative_eigenstates(p, cfg), EigensolverNonConvergence);
}

TEST(SeparationResidual, SmallOnGroundStateAndConvergesWithGrid)
{
    double prev = INFINITY;
    for (std::size_t n : {64u, 128u, 256u})
    {
        auto p = pair_of(1, 1, n);
        EigenConfig cfg;
        cfg.residual_tol = 1e-11;
        const auto z = relative_eigenstates(p, cfg);
        const double K = 2.0 * 2.0 * std::numbers::pi / 60.0;
        const auto r = separation_residual(p, z[0], K);
        EXPECT_LT(r.residual, prev / 10.0);
        EXPECT_NEAR(r.E_R, K * K / 4.0, 1e-15);
        prev = r.residual;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(SeparationResidual, RejectsNonPeriodicK)
{
    auto p = pair_of(1, 1, 128);
    const auto z = relative_eigenstates(p);
    EXPECT_THROW(separation_residual(p, z[0], 0.123), DomainError);
}

TEST(ComPlaneWave, SolvesFreeEquation)
{
    const Grid1D g = Grid1D::spanning(-30, 30, 512);
    const auto w = com_plane_wave(2.0, 0.455, g);
    EXPECT_NEAR(w.wavenumber, std::sqrt(2.0 * 2.0 * 0.455), 1e-14);
    EXPECT_FALSE(w.evanescent);
    EXPECT_LT(w.residual, 1e-8);
    EXPECT_NEAR(w.fft_peak_wavenumber, w.wavenumber, 2.0 * std::numbers::pi / 60.0);
    const auto e = com_plane_wave(2.0, -0.1, g);
    EXPECT_TRUE(e.evanescent);
    EXPECT_THROW(com_plane_wave(-1.0, 0.1, g), DomainError);
}
