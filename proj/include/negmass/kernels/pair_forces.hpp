#pragma once

#include <span>

#include "negmass/kernels/execution.hpp"

namespace negmass::kernels {

/// Pair interaction U_ij = (-G m_i m_j + k q_i q_j) / r_ij with signed
/// masses; either coupling can be switched off.
struct ForceLaw
{
    double G = 1.0;
    double coulomb_k = 1.0;
    bool gravity = true;
    bool coulomb = false;
};

/// Positions are packed xyz per body. Writes the total force on each body
/// (F_i = -grad_i U) into `forces` (3 per body).
///
/// The serial path walks pairs i < j once and applies Newton's third law;
/// the parallel path lets each thread own a set of bodies i and sums over
/// all j, so no two threads write the same output.
void pair_forces(std::span<const double> positions, std::span<const double> masses,
                 std::span<const double> charges, const ForceLaw& law,
                 std::span<double> forces, Execution exec = Execution::parallel);

/// Total pair potential energy sum_{i<j} U_ij.
double pair_potential_energy(std::span<const double> positions,
                             std::span<const double> masses,
                             std::span<const double> charges, const ForceLaw& law,
                             Execution exec = Execution::parallel);

struct ClosestPair
{
    double distance;
    int i;
    int j;
};

ClosestPair closest_pair(std::span<const double> positions);

}  // namespace negmass::kernels
