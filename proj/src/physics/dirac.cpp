#include "negmass/dirac.hpp"

#include <algorithm>
#include <cmath>

#include "negmass/core/errors.hpp"
#include "negmass/kernels/stencil.hpp"

namespace negmass::dirac {

using cplx = std::complex<double>;

namespace {

constexpr cplx I{0.0, 1.0};

std::array<Eigen::Matrix2cd, 3> pauli()
{
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -I, I, 0;
    sz << 1, 0, 0, -1;
    return {sx, sy, sz};
}

MatrixC4 blocks(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, const Eigen::Matrix2cd& c,
                const Eigen::Matrix2cd& d)
{
    MatrixC4 m;
    m << a, b, c, d;
    return m;
}

/// sigma . p in the 2x2 spin space.
Eigen::Matrix2cd sigma_dot(const Vec3& p)
{
    const auto s = pauli();
    return p[0] * s[0] + p[1] * s[1] + p[2] * s[2];
}

MatrixC4 hamiltonian(const Vec3& p, double m)
{
    const auto d = dirac_matrices();
    return p[0] * d.alpha[0] + p[1] * d.alpha[1] + p[2] * d.alpha[2] + m * d.beta;
}

void check_spin(double spin)
{
    if (spin != 0.5 && spin != -0.5)
        throw DomainError("spin must be +0.5 or -0.5");
}

}  // namespace

DiracMatrices dirac_matrices()
{
    const auto s = pauli();
    const Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
    DiracMatrices out;
    for (int k = 0; k < 3; ++k)
        out.alpha[k] = blocks(z, s[k], s[k], z);
    out.beta = blocks(one, z, z, -one);
    return out;
}

double max_abs(const MatrixC4& a) noexcept
{
    return a.cwiseAbs().maxCoeff();
}

double AlgebraResiduals::max() const noexcept
{
    return std::max({alpha_anticommutator, alpha_beta_anticommutator, beta_square, hermiticity,
                     trace});
}

AlgebraResiduals algebra_residuals(const DiracMatrices& m)
{
    const MatrixC4 id = MatrixC4::Identity();
    AlgebraResiduals r{};
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            const MatrixC4 anti = m.alpha[i] * m.alpha[j] + m.alpha[j] * m.alpha[i];
            r.alpha_anticommutator = std::max(r.alpha_anticommutator,
                                              max_abs(anti - (i == j ? 2.0 : 0.0) * id));
        }
        r.alpha_beta_anticommutator = std::max(
            r.alpha_beta_anticommutator, max_abs(m.alpha[i] * m.beta + m.beta * m.alpha[i]));
        r.hermiticity = std::max(r.hermiticity, max_abs(m.alpha[i] - m.alpha[i].adjoint()));
        r.trace = std::max(r.trace, std::abs(m.alpha[i].trace()));
    }
    r.beta_square = max_abs(m.beta * m.beta - id);
    r.hermiticity = std::max(r.hermiticity, max_abs(m.beta - m.beta.adjoint()));
    r.trace = std::max(r.trace, std::abs(m.beta.trace()));
    return r;
}

MatrixC4 charge_conjugation()
{
    const auto d = dirac_matrices();
    const MatrixC4 gamma2 = d.beta * d.alpha[1];
    return I * gamma2;
}

std::vector<NamedMatrix> gamma_basis()
{
    const auto d = dirac_matrices();
    std::array<MatrixC4, 4> g;
    g[0] = d.beta;
    for (int k = 0; k < 3; ++k)
        g[k + 1] = d.beta * d.alpha[k];
    const MatrixC4 g5 = I * g[0] * g[1] * g[2] * g[3];

    std::vector<NamedMatrix> out;
    out.push_back({"I", MatrixC4::Identity()});
    for (int mu = 0; mu < 4; ++mu)
        out.push_back({"gamma" + std::to_string(mu), g[mu]});
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            out.push_back({"sigma" + std::to_string(mu) + std::to_string(nu),
                           0.5 * I * (g[mu] * g[nu] - g[nu] * g[mu])});
    for (int mu = 0; mu < 4; ++mu)
        out.push_back({"gamma5gamma" + std::to_string(mu), g5 * g[mu]});
    out.push_back({"gamma5", g5});
    return out;
}

std::vector<NamedMatrix> mass_inversion_search()
{
    const auto d = dirac_matrices();
    const MatrixC4 id = MatrixC4::Identity();
    constexpr double tol = 1e-14;
    std::vector<NamedMatrix> found;
    for (const auto& b : gamma_basis())
    {
        for (const double sign : {1.0, -1.0})
        {
            const MatrixC4 M = sign * b.matrix;
            bool ok = max_abs(M * d.beta - d.beta * M) < tol && max_abs(M * M - id) < tol;
            for (int k = 0; k < 3 && ok; ++k)
                ok = max_abs(M * d.alpha[k] + d.alpha[k] * M) < tol;
            if (ok)
                found.push_back({(sign > 0 ? "+" : "-") + b.name, M});
        }
    }
    return found;
}

KGDensities kg_densities(const KGPlaneWave& w)
{
    if (w.lambda != 1 && w.lambda != -1)
        throw DomainError("kg_densities: lambda must be +1 or -1");
    if (!(w.abs_m > 0.0))
        throw DomainError("kg_densities: |m| must be positive");
    const double shell = w.k.squaredNorm() + w.abs_m * w.abs_m;
    if (std::fabs(w.k0 * w.k0 - shell) > 1e-12 * std::max(1.0, shell))
        throw DomainError("kg_densities: off-shell: k0^2 != k^2 + m^2");
    const double denom = w.lambda * w.abs_m;
    return {w.k0 / denom, w.k / denom};
}

Bispinor free_bispinor(const Vec3& p, double spin, SignedMass mass)
{
    check_spin(spin);
    if (!p.allFinite())
        throw DomainError("free_bispinor: momentum must be finite");
    const double m = mass.value();
    const double am = mass.magnitude();
    const double p2 = p.squaredNorm();
    if (mass.is_negative() && p2 == 0.0)
        throw DomainError(
            "free_bispinor: negative mass at p = 0 has omega + m = 0; use rest_frame_limit");

    const double omega = std::sqrt(p2 + m * m);
    // omega + m loses every digit for m < 0 at small p.
    const double w_plus_m = m > 0.0 ? omega + m : p2 / (omega - m);

    Eigen::Vector2cd upper = spin > 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    // N (1, sigma.p / (omega + m)) with N = sqrt((omega + m) / (2|m|)).
    const double N = std::sqrt(w_plus_m / (2.0 * am));
    const Eigen::Vector2cd lower = sigma_dot(p) * upper / std::sqrt(2.0 * am * w_plus_m);

    Bispinor out;
    out.components << N * upper, lower;
    out.p = p;
    out.mass = mass;
    out.spin = spin;
    out.omega = omega;
    return out;
}

double dirac_residual(const Bispinor& u)
{
    return (hamiltonian(u.p, u.mass.value()) * u.components - u.omega * u.components).norm();
}

double inversion_residual(const MatrixC4& M, const Vec3& p, double spin, double m)
{
    if (!(m > 0.0))
        throw DomainError("inversion_residual: m must be positive");
    const Bispinor ut = free_bispinor(-p, spin, SignedMass(Sign::negative, m));
    const Spinor v = M * ut.components;
    return (hamiltonian(p, -m) * v - ut.omega * v).norm();
}

RestFrameLimit rest_frame_limit(SignedMass mass, const Vec3& direction, double spin,
                                const std::vector<double>& eps)
{
    if (!mass.is_negative())
        throw DomainError("rest_frame_limit: the mass must be negative");
    if (eps.size() < 3)
        throw DomainError("rest_frame_limit: need at least three eps values");
    for (std::size_t i = 0; i < eps.size(); ++i)
    {
        if (!(eps[i] > 0.0) || !(eps[i] < mass.magnitude()))
            throw DomainError("rest_frame_limit: eps values must lie in (0, |m|)");
        if (i > 0 && !(eps[i] < eps[i - 1]))
            throw DomainError("rest_frame_limit: eps must be strictly decreasing");
    }
    if (!(direction.norm() > 0.0))
        throw DomainError("rest_frame_limit: direction must be non-zero");
    const Vec3 n = direction.normalized();

    std::vector<Spinor> psi;
    for (double e : eps)
        psi.push_back(free_bispinor(e * n, spin, mass).components);

    // Quadratic extrapolation to eps = 0 through the last three points.
    const std::size_t a = eps.size() - 3;
    RestFrameLimit out;
    out.limit = Spinor::Zero();
    for (std::size_t i = a; i < eps.size(); ++i)
    {
        double w = 1.0;
        for (std::size_t j = a; j < eps.size(); ++j)
            if (j != i)
                w *= eps[j] / (eps[j] - eps[i]);
        out.limit += w * psi[i];
    }
    out.eps = eps;
    for (const auto& s : psi)
        out.errors.push_back((s - out.limit).norm());
    for (std::size_t i = 1; i < out.errors.size(); ++i)
        if (!(out.errors[i] < out.errors[i - 1]))
            throw NumericalError("rest_frame_limit: sequence does not converge");
    const std::size_t k = eps.size() - 2;
    out.order = std::log(out.errors[k - 1] / out.errors[k]) / std::log(eps[k - 1] / eps[k]);
    return out;
}

OrthogonalityReport orthogonality_report(const Vec3& p, double spin, double abs_m,
                                         const Vec3& rest_direction)
{
    const SignedMass plus(Sign::positive, abs_m), minus(Sign::negative, abs_m);
    const Spinor up = free_bispinor(p, spin, plus).components;
    Spinor um;
    if (p.squaredNorm() == 0.0)
    {
        // Exact limit: the upper spinor vanishes and the lower one is
        // sigma.n (upper) with unit norm.
        const Eigen::Vector2cd upper =
            spin > 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
        um << Eigen::Vector2cd::Zero(), sigma_dot(rest_direction.normalized()) * upper;
    }
    else
        um = free_bispinor(p, spin, minus).components;

    const auto d = dirac_matrices();
    OrthogonalityReport out{};
    out.plain = um.dot(up);
    out.adjoint = um.dot(d.beta * up);
    out.plain_expected = p.norm() / abs_m;
    out.plain_nonzero = std::abs(out.plain) > 1e-12;
    return out;
}

// ---------------------------------------------------------------------------

Vec3 MomentumGrid::p(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept
{
    const double mid = 0.5 * static_cast<double>(n - 1);
    return center + h * Vec3(static_cast<double>(ix) - mid, static_cast<double>(iy) - mid,
                             static_cast<double>(iz) - mid);
}

namespace {

kernels::CubeLayout layout(const MomentumGrid& g)
{
    return {g.n, 4};
}

std::array<MatrixC4, 3> spin_matrices()
{
    const auto s = pauli();
    std::array<MatrixC4, 3> out;
    const Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < 3; ++k)
        out[k] = 0.5 * blocks(s[k], z, z, s[k]);
    return out;
}

// Runs body(ix, iy, iz, base index) over the cube, in parallel over ix
// slabs when requested.
template <class Body>
void for_each_point(const MomentumGrid& g, kernels::Execution exec, Body body)
{
    const long n = static_cast<long>(g.n);
    auto slab = [&](long ix) {
        for (long iy = 0; iy < n; ++iy)
            for (long iz = 0; iz < n; ++iz)
                body(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy),
                     static_cast<std::size_t>(iz), static_cast<std::size_t>(((ix * n + iy) * n + iz) * 4));
    };
    if (exec == kernels::Execution::parallel)
    {
#pragma omp parallel for schedule(static)
        for (long ix = 0; ix < n; ++ix)
            slab(ix);
    }
    else
        for (long ix = 0; ix < n; ++ix)
            slab(ix);
}

void check_field(const MomentumGrid& g, const Field& in)
{
    if (in.size() != g.values())
        throw DomainError("generator field does not match the momentum grid");
    if (g.n < 8 || !(g.h > 0.0))
        throw DomainError("momentum grid needs n >= 8 and h > 0");
}

double l2(const Field& f)
{
    double acc = 0.0;
    for (const auto& v : f)
        acc += std::norm(v);
    return std::sqrt(acc);
}

}  // namespace

void apply_rotation(int axis, const MomentumGrid& g, const Field& in, Field& out,
                    kernels::Execution exec)
{
    check_field(g, in);
    if (axis < 0 || axis > 2)
        throw DomainError("apply_rotation: axis must be 0, 1 or 2");
    const int j = (axis + 1) % 3, k = (axis + 2) % 3;
    Field dj(in.size()), dk(in.size());
    kernels::central_derivative(in, dj, layout(g), j, g.h, g.order, exec);
    kernels::central_derivative(in, dk, layout(g), k, g.h, g.order, exec);
    const MatrixC4 S = spin_matrices()[axis];
    out.resize(in.size());
    for_each_point(g, exec, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t b) {
        const Vec3 p = g.p(ix, iy, iz);
        const Spinor v = Eigen::Map<const Spinor>(&in[b]);
        const Spinor orbital = Eigen::Map<const Spinor>(&dk[b]) * p[j]
                               - Eigen::Map<const Spinor>(&dj[b]) * p[k];
        Eigen::Map<Spinor> dst(&out[b]);
        dst = -I * orbital + S * v;
    });
}

void apply_boost(int axis, const MomentumGrid& g, SignedMass mass, const Field& in, Field& out,
                 kernels::Execution exec)
{
    check_field(g, in);
    if (axis < 0 || axis > 2)
        throw DomainError("apply_boost: axis must be 0, 1 or 2");
    const double m = mass.value();
    const int j = (axis + 1) % 3, k = (axis + 2) % 3;

    double peak = 0.0;
    for (const auto& v : in)
        peak = std::max(peak, std::abs(v));
    if (mass.is_negative())
    {
        bool singular = false;
        for_each_point(g, kernels::Execution::serial,
                       [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t b) {
                           const double p2 = g.p(ix, iy, iz).squaredNorm();
                           const double omega = std::sqrt(p2 + m * m);
                           const bool near = p2 < 4.0 * g.h * g.h
                                             || p2 / (omega - m) < 1e-3 * mass.magnitude();
                           if (near)
                               for (int c = 0; c < 4; ++c)
                                   singular = singular || std::abs(in[b + c]) > 1e-10 * peak;
                       });
        if (singular)
            throw DomainError("generator singularity: field is not negligible where omega + m ~ 0");
    }

    Field di(in.size());
    kernels::central_derivative(in, di, layout(g), axis, g.h, g.order, exec);
    const auto S = spin_matrices();
    out.resize(in.size());
    for_each_point(g, exec, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t b) {
        const Vec3 p = g.p(ix, iy, iz);
        const double p2 = p.squaredNorm();
        const double omega = std::sqrt(p2 + m * m);
        const double w_plus_m = m > 0.0 ? omega + m : p2 / (omega - m);
        const Spinor v = Eigen::Map<const Spinor>(&in[b]);
        // K_i = i omega d_i + (p x S)_i / (m + omega)
        Spinor r = I * omega * Eigen::Map<const Spinor>(&di[b]);
        if (w_plus_m > 0.0)
            r += (p[j] * S[k] - p[k] * S[j]) * v / w_plus_m;
        Eigen::Map<Spinor> dst(&out[b]);
        dst = r;
    });
}

Field gaussian_test_field(const MomentumGrid& g, const Vec3& p_c, double width)
{
    if (!(width > 0.0))
        throw DomainError("gaussian_test_field: width must be positive");
    const std::array<cplx, 4> weights{cplx(1.0, 0.0), cplx(0.0, 0.5), cplx(-0.3, 0.2),
                                      cplx(0.7, 0.0)};
    Field f(g.values());
    for_each_point(g, kernels::Execution::serial,
                   [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t b) {
                       const double r2 = (g.p(ix, iy, iz) - p_c).squaredNorm();
                       const double env = std::exp(-0.5 * r2 / (width * width));
                       for (int c = 0; c < 4; ++c)
                           f[b + c] = weights[c] * env;
                   });
    return f;
}

GeneratorReport generators(const MomentumGrid& g, SignedMass mass, const Field& psi,
                           kernels::Execution exec)
{
    check_field(g, psi);
    GeneratorReport out{};
    const auto S = spin_matrices();
    for (int i = 0; i < 3; ++i)
    {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        out.spin_algebra = std::max(out.spin_algebra,
                                    max_abs(S[i] * S[j] - S[j] * S[i] - I * S[k]));
    }

    std::array<Field, 3> J, K;
    for (int a = 0; a < 3; ++a)
    {
        apply_rotation(a, g, psi, J[a], exec);
        apply_boost(a, g, mass, psi, K[a], exec);
    }
    const double j_scale = std::max({l2(J[0]), l2(J[1]), l2(J[2])});
    const double k_scale = std::max({l2(K[0]), l2(K[1]), l2(K[2])});

    Field t1, t2;
    auto defect = [&](const Field& ab, const Field& ba, const Field* rhs, double sign) {
        double acc = 0.0;
        for (std::size_t n = 0; n < ab.size(); ++n)
        {
            const cplx expected = rhs ? sign * I * (*rhs)[n] : cplx(0.0);
            acc += std::norm(ab[n] - ba[n] - expected);
        }
        return std::sqrt(acc);
    };

    for (int i = 0; i < 3; ++i)
    {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        // [J_i, J_j] = i J_k
        apply_rotation(i, g, J[j], t1, exec);
        apply_rotation(j, g, J[i], t2, exec);
        out.rotation_algebra = std::max(out.rotation_algebra, defect(t1, t2, &J[k], 1.0) / j_scale);
    }
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            // [J_i, K_j] = i eps_ijk K_k
            apply_rotation(i, g, K[j], t1, exec);
            apply_boost(j, g, mass, J[i], t2, exec);
            const Field* rhs = nullptr;
            double sign = 0.0;
            if (j == (i + 1) % 3)
            {
                rhs = &K[(i + 2) % 3];
                sign = 1.0;
            }
            else if (j == (i + 2) % 3)
            {
                rhs = &K[(i + 1) % 3];
                sign = -1.0;
            }
            out.rotation_boost = std::max(out.rotation_boost, defect(t1, t2, rhs, sign) / k_scale);
        }
    }
    return out;
}

}  // namespace negmass::dirac
