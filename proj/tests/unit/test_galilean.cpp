#include <cmath>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "negmass/galilean.hpp"

using namespace negmass;
using namespace negmass::galilean;

namespace {

GridWavefunction packet(std::size_t n = 1024, double k0 = 1.0, double sigma = 1.0)
{
    return GridWavefunction::gaussian(Grid1D::spanning(-100, 100, n), 0.0, sigma, k0);
}

}  // namespace

TEST(Ehrenfest, DriftMatchesMomentumOverMassForBothSigns)
{
    for (double m : {1.0, -1.0, 2.5, -0.8})
    {
        const auto M = SignedMass::from_value(m);
        const auto rep = ehrenfest_check(M, packet(), {0.0, 10.0});
        EXPECT_LT(rep.max_residual, 1e-6) << m;
        EXPECT_LT(rep.max_norm_drift, 1e-10);
        // Free packet: <X>(t) = <P> t / M.
        EXPECT_NEAR(rep.mean_p.front(), 1.0, 1e-10);
        EXPECT_NEAR(rep.mean_x.back(), 10.0 / m, 1e-8);
    }
}

TEST(Ehrenfest, NegativeMassMovesAgainstMomentum)
{
    const auto rep = ehrenfest_check(SignedMass::from_value(-1.0), packet(), {0.0, 5.0});
    EXPECT_GT(rep.mean_p.back(), 0.0);
    EXPECT_LT(rep.mean_x.back(), 0.0);
}

TEST(Ehrenfest, StencilDispersionIsSecondOrderInDx)
{
    EhrenfestConfig cfg;
    cfg.dispersion = Dispersion::second_order_stencil;
    double prev = 0.0;
    for (std::size_t n : {256u, 512u, 1024u})
    {
        const auto psi = GridWavefunction::gaussian(Grid1D::spanning(-100, 100, n), 0.0, 2.0, 1.0);
        const double r = ehrenfest_check(SignedMass::from_value(-1.0), psi, {0.0, 10.0}, cfg)
                             .max_residual;
        if (prev > 0.0)
        {
            EXPECT_NEAR(prev / r, 4.0, 0.3);
        }
        prev = r;
    }
}

TEST(Ehrenfest, ReportsPacketReachingTheEdge)
{
    EXPECT_THROW(ehrenfest_check(SignedMass::from_value(1.0), packet(1024, 5.0), {0.0, 30.0}),
                 NumericalError);
}

TEST(Weyl, PhaseIsBilinearAndLinearInSignedMass)
{
    test::Gen g(61);
    const auto psi = packet(2048, 0.5, 2.0);
    for (int i = 0; i < 30; ++i)
    {
        const double m = g.sign() * g.uniform(0.2, 2.0);
        const double Xi = g.uniform(-1, 1), v = g.uniform(-0.5, 0.5);
        const auto M = SignedMass::from_value(m);
        const auto w = weyl_phase(M, Xi, v, psi);
        EXPECT_NEAR(w.phase, m * Xi * v, 1e-10);
        EXPECT_NEAR(w.expected, m * Xi * v, 1e-15);
        EXPECT_GT(w.fidelity, 1.0 - 1e-10);
        EXPECT_NEAR(weyl_phase(-M, Xi, v, psi).phase, -w.phase, 1e-10);
        EXPECT_NEAR(weyl_phase(M, 2 * Xi, v, psi).phase, 2 * w.phase, 2e-10);
        EXPECT_NEAR(weyl_phase(M, Xi, -v, psi).phase, -w.phase, 1e-10);
    }
}

TEST(Weyl, ZeroShiftGivesZeroPhase)
{
    const auto w = weyl_phase(SignedMass::from_value(-1.0), 0.0, 0.3, packet());
    EXPECT_NEAR(w.phase, 0.0, 1e-14);
}
