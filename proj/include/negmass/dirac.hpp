#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "negmass/core/signed_mass.hpp"
#include "negmass/core/types.hpp"
#include "negmass/kernels/execution.hpp"

// Natural units (hbar = c = 1), metric (+,-,-,-), Dirac representation.
namespace negmass::dirac {

using MatrixC4 = Eigen::Matrix4cd;
using Spinor = Eigen::Vector4cd;

struct DiracMatrices
{
    std::array<MatrixC4, 3> alpha;
    MatrixC4 beta;
};

DiracMatrices dirac_matrices();

/// Largest entry of each identity defect, e.g. |{a^i, a^j} - 2 delta^ij I|.
struct AlgebraResiduals
{
    double alpha_anticommutator;
    double alpha_beta_anticommutator;
    double beta_square;
    double hermiticity;
    double trace;

    double max() const noexcept;
};

AlgebraResiduals algebra_residuals(const DiracMatrices& m);

/// Max-abs entry norm.
double max_abs(const MatrixC4& a) noexcept;

/// Matrix part U = i gamma^2 of charge conjugation psi -> U psi*. Together
/// with complex conjugation it commutes with every alpha^k and
/// anticommutes with beta: U (alpha^k)* = alpha^k U, U beta* = -beta U.
MatrixC4 charge_conjugation();

struct NamedMatrix
{
    /// Basis name with sign, e.g. "+gamma0" or "-sigma12".
    std::string name;
    MatrixC4 matrix;
};

/// The 16 products I, gamma^mu, sigma^{mu nu} (mu < nu), gamma5 gamma^mu,
/// gamma5 built from alpha and beta.
std::vector<NamedMatrix> gamma_basis();

/// Candidates +-B over the gamma basis that anticommute with each alpha^k,
/// commute with beta and square to I.
std::vector<NamedMatrix> mass_inversion_search();

struct KGPlaneWave
{
    Vec3 k = Vec3::Zero();
    double k0 = 1.0;
    int lambda = 1;
    double abs_m = 1.0;
};

struct KGDensities
{
    double rho;
    Vec3 j;
};

/// rho = k0 / (lambda |m|), j = k / (lambda |m|). Throws DomainError for
/// |k0^2 - k^2 - m^2| above 1e-12 relative.
KGDensities kg_densities(const KGPlaneWave& w);

struct Bispinor
{
    Spinor components;
    Vec3 p;
    /// Always +1 here: the constructions are positive-energy solutions.
    int energy_sign = 1;
    SignedMass mass{Sign::positive, 1.0};
    /// +0.5 or -0.5
    double spin = 0.5;
    /// sqrt(p^2 + m^2)
    double omega = 1.0;
};

/**
 * Positive-energy solution of (alpha.p + beta m) u = omega u with signed m:
 * upper spinor (1, 0) or (0, 1) for spin +-1/2, lower spinor
 * sigma.p (upper) / (omega + m). Scaled by sqrt((omega + m) / (2|m|)) so
 * that u^dag u = omega / |m|.
 *
 * m < 0 at p = 0 has omega + m = 0; that case throws DomainError and the
 * state has to come from rest_frame_limit.
 */
Bispinor free_bispinor(const Vec3& p, double spin, SignedMass mass);

/// |(alpha.p + beta m) u - omega u|
double dirac_residual(const Bispinor& u);

/// Negative-mass solution built from the positive-mass one: u~ solves
/// omega u~ = (-alpha.p - beta m) u~, and v = M u~ must solve
/// omega v = (alpha.p - beta m) v. Returns that residual for m > 0.
double inversion_residual(const MatrixC4& M, const Vec3& p, double spin, double m);

struct RestFrameLimit
{
    /// Extrapolated limit of free_bispinor(eps n, spin, m) as eps -> 0.
    Spinor limit;
    std::vector<double> eps;
    /// |psi(eps) - limit| for each eps.
    std::vector<double> errors;
    /// log(e_k / e_{k+1}) / log(eps_k / eps_{k+1}) for the last pair not
    /// pinned by the extrapolation.
    double order;
};

/// Throws DomainError for a non-negative mass, a non-decreasing or
/// oversized eps sequence, and NumericalError when the errors stop
/// shrinking.
RestFrameLimit rest_frame_limit(SignedMass mass, const Vec3& direction, double spin,
                                const std::vector<double>& eps);

struct OrthogonalityReport
{
    /// psi-^dag psi+
    std::complex<double> plain;
    /// psi-^dag beta psi+
    std::complex<double> adjoint;
    /// |p| / |m|, the value the plain product takes at p != 0.
    double plain_expected;
    /// Plain product is non-zero (|plain| > 1e-12).
    bool plain_nonzero;
};

/// Same spin and momentum, masses +|m| and -|m|. At p = 0 the negative-mass
/// state is the rest-frame limit along `rest_direction`.
OrthogonalityReport orthogonality_report(const Vec3& p, double spin, double abs_m = 1.0,
                                         const Vec3& rest_direction = Vec3::UnitX());

/// Momentum-space cube of n^3 points centred on `center` with spacing h,
/// holding four spinor components per point.
struct MomentumGrid
{
    std::size_t n = 64;
    Vec3 center = Vec3::Zero();
    double h = 0.1;
    /// Finite-difference order for d/dp (4 or 6 in practice).
    int order = 6;

    Vec3 p(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept;
    std::size_t values() const noexcept { return n * n * n * 4; }
};

using Field = std::vector<std::complex<double>>;

/// J_i = -i (p x d/dp)_i + S_i with S = diag(sigma, sigma) / 2.
void apply_rotation(int axis, const MomentumGrid& g, const Field& in, Field& out,
                    kernels::Execution exec = kernels::Execution::parallel);

/// K_i = -omega (-i d/dp - p x S / (omega (m + omega)))_i.
void apply_boost(int axis, const MomentumGrid& g, SignedMass mass, const Field& in, Field& out,
                 kernels::Execution exec = kernels::Execution::parallel);

/// Gaussian spinor field exp(-|p - p_c|^2 / (2 w^2)) times fixed complex
/// component weights.
Field gaussian_test_field(const MomentumGrid& g, const Vec3& p_c, double width);

struct GeneratorReport
{
    /// max_ij |[S_i, S_j] - i eps_ijk S_k|
    double spin_algebra;
    /// max_ij |[J_i, J_j] psi - i eps_ijk J_k psi| / max_k |J_k psi| (L2 norms)
    double rotation_algebra;
    /// max_ij |[J_i, K_j] psi - i eps_ijk K_k psi| / max_k |K_k psi|
    double rotation_boost;
};

/// Throws DomainError("generator singularity") when the field is not
/// negligible where omega + m is small or within two cells of p = 0
/// (negative mass).
GeneratorReport generators(const MomentumGrid& g, SignedMass mass, const Field& psi,
                           kernels::Execution exec = kernels::Execution::parallel);

}  // namespace negmass::dirac
