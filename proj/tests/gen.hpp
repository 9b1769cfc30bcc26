#pragma once

// Small random generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include "negmass/core/signed_mass.hpp"
#include "negmass/core/types.hpp"

namespace negmass::test {

class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double log_uniform(double lo, double hi)
    {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    int sign() { return (rng_() & 1u) ? 1 : -1; }
    SignedMass mass(double lo = 0.1, double hi = 10.0)
    {
        return SignedMass(sign() > 0 ? Sign::positive : Sign::negative, log_uniform(lo, hi));
    }
    Vec3 vec(double scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace negmass::test
