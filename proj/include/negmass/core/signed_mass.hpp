#pragma once

#include <cmath>
#include <string>

#include "negmass/core/errors.hpp"

namespace negmass {

enum class Sign : int
{
    negative = -1,
    positive = +1
};

inline constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
inline constexpr Sign flip(Sign s) noexcept
{
    return s == Sign::positive ? Sign::negative : Sign::positive;
}

/// A mass written as lambda * |m| with lambda = +-1 and |m| > 0. A zero mass
/// is not representable; modules that need a massless limit take it
/// explicitly.
class SignedMass
{
  public:
    SignedMass(Sign sign, double magnitude) : sign_(sign), magnitude_(magnitude)
    {
        if (!(magnitude > 0.0) || !std::isfinite(magnitude))
        {
            throw DomainError("SignedMass: magnitude must be finite and > 0, got "
                              + std::to_string(magnitude));
        }
    }

    /// Builds from a signed value; zero and non-finite values are rejected.
    static SignedMass from_value(double value)
    {
        return SignedMass(value < 0.0 ? Sign::negative : Sign::positive,
                          std::fabs(value));
    }

    double value() const noexcept { return to_int(sign_) * magnitude_; }
    double magnitude() const noexcept { return magnitude_; }
    Sign sign() const noexcept { return sign_; }
    int lambda() const noexcept { return to_int(sign_); }
    bool is_negative() const noexcept { return sign_ == Sign::negative; }

    SignedMass operator-() const noexcept { return SignedMass(flip(sign_), magnitude_, 0); }

    friend bool operator==(const SignedMass&, const SignedMass&) = default;

  private:
    // Unchecked; only used where the magnitude is already validated.
    SignedMass(Sign sign, double magnitude, int) noexcept
        : sign_(sign), magnitude_(magnitude)
    {
    }

    Sign sign_;
    double magnitude_;
};

}  // namespace negmass
