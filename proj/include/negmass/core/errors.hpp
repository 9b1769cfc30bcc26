#pragma once

#include <stdexcept>
#include <string>

namespace negmass {

/// Argument outside the domain where a formula is defined (superluminal
/// speed, non-positive radius, sign mismatch, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its contract (eigensolver did not
/// converge, evolution lost unitarity, ...).
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace negmass
