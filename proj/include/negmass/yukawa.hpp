#pragma once

#include <vector>

#include "negmass/core/constants.hpp"
#include "negmass/core/signed_mass.hpp"

namespace negmass::yukawa {

/// Yukawa interaction V = g e^{-m r} / r mediated by a carrier of signed
/// mass m. In natural units m is an inverse length; in SI mode the exponent
/// is (m c / hbar) r with m in kg.
struct YukawaSpec
{
    SignedMass carrier{Sign::negative, 1.0};
    double g = 1.0;
    UnitSystem units = UnitSystem::natural;

    /// Inverse screening length with the carrier's sign.
    double signed_inverse_length(const Constants& k) const;
};

double potential(const YukawaSpec& spec, double r, const Constants& k = Constants::natural());

/// Massless (Coulomb-like) reference g / r.
double coulomb_limit(const YukawaSpec& spec, double r);

/// r_min = 1/|m|: minimiser of e^{|m| r} / r for a negative-mass carrier
/// (argument is the inverse length |m|).
double turning_point(double inverse_length);

/// hbar c / r in eV: the carrier rest energy |m| c^2 below which
/// r_min > r (SI constants).
double mass_bound_for_range(double r, const Constants& k = Constants::si());

struct Curve
{
    std::vector<double> r;
    std::vector<double> V;
};

/// V sampled on n points uniformly spaced in [r_lo, r_hi].
Curve sample_curve(const YukawaSpec& spec, double r_lo, double r_hi, std::size_t n,
                   const Constants& k = Constants::natural());

}  // namespace negmass::yukawa
