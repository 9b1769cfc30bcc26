#include <cmath>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "negmass/effective_mass.hpp"

using namespace negmass;
using namespace negmass::effective_mass;

TEST(Bubble, AirInWaterOracle)
{
    const auto m = bubble_effective_mass({1.2, 1000.0, 1e-6, 9.80665});
    EXPECT_DOUBLE_EQ(m.effective, -(1000.0 - 1.2) * 1e-6);
    EXPECT_DOUBLE_EQ(m.bare, 1.2e-6);
    // Buoyancy minus weight, pointing down as positive.
    EXPECT_NEAR(m.net_force, -(1000.0 * 1e-6 * 9.80665 - 1.2e-6 * 9.80665), 1e-18);
}

TEST(Bubble, SignFollowsDensityOrderAndIsContinuous)
{
    test::Gen g(21);
    for (int i = 0; i < 500; ++i)
    {
        const double rho_f = g.log_uniform(0.1, 1e4);
        const double rho = g.log_uniform(0.1, 1e4);
        const double V = g.log_uniform(1e-9, 1.0);
        const double m = bubble_effective_mass({rho, rho_f, V}).effective;
        if (rho_f > rho)
        {
            EXPECT_LT(m, 0.0);
        }
        else if (rho_f < rho)
        {
            EXPECT_GT(m, 0.0);
        }
        const double m2 = bubble_effective_mass({rho * (1 + 1e-9), rho_f, V}).effective;
        EXPECT_LE(std::fabs(m2 - m), 2e-9 * rho * V);
    }
}

TEST(Bubble, RejectsNonPositive)
{
    EXPECT_THROW(bubble_effective_mass({0.0, 1000.0, 1e-6}), DomainError);
    EXPECT_THROW(bubble_effective_mass({1.2, 1000.0, -1e-6}), DomainError);
}

TEST(Band, EffectiveMassIsHbarSquaredOverTwoC)
{
    const auto k = Constants::si();
    BandSpec s{0.0, 6.1e-39, 0.0, 1e10, 0.1, 0.0};
    EXPECT_NEAR(s.effective_mass(k) / 9.1e-31, 1.0, 2e-3);
}

TEST(Band, AccelerationOpposesForce)
{
    test::Gen g(22);
    const auto k = Constants::si();
    for (int i = 0; i < 50; ++i)
    {
        BandSpec s{0.0, g.log_uniform(1e-40, 1e-37), g.uniform(-1e9, 1e9), 1e10, 0.1, 0.0};
        s.k_initial = s.k0;
        const double field = g.sign() * g.log_uniform(1.0, 1e4);
        const auto tr = band_dynamics(s, field, {0.0, 1e-13}, 21, {}, k);
        for (const auto& smp : tr.samples)
        {
            EXPECT_LT(smp.acceleration * tr.force, 0.0);
            EXPECT_NEAR(smp.acceleration, -tr.force / s.effective_mass(k),
                        1e-12 * std::fabs(smp.acceleration));
        }
        // a is also the time derivative of the group velocity.
        const auto& a = tr.samples[5];
        const auto& b = tr.samples[6];
        const double dvdt = (b.velocity - a.velocity) / (b.t - a.t);
        EXPECT_NEAR(dvdt, a.acceleration, 1e-6 * std::fabs(a.acceleration));
    }
}

TEST(Band, LeavingNeighborhoodIsReported)
{
    BandSpec s{0.0, 6.1e-39, 0.0, 1e6, 0.1, 0.0};
    EXPECT_THROW(band_dynamics(s, 1e3, {0.0, 1e-9}, 11, {}), DomainError);
    s.k_initial = 2e5;
    EXPECT_THROW(band_dynamics(s, 1e3, {0.0, 1e-15}, 11, {}), DomainError);
    s.k_initial = 0.0;
    s.C = -1.0;
    EXPECT_THROW(band_dynamics(s, 1e3, {0.0, 1e-15}, 11, {}), DomainError);
}
