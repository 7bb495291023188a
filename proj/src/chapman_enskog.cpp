#include "apfv/chapman_enskog.hpp"

#include <cmath>

namespace apfv {
namespace {

// D_u(Phi(E(u))) as a column n-vector.
Vec equilibrium_entropy_gradient(const Model& m, const Vec& u)
{
    return m.equilibrium_jacobian(u).transpose() * m.entropy_gradient(m.equilibrium(u));
}

// Central-difference Jacobian of u -> D_u(Phi(E(u))).
Mat equilibrium_entropy_hessian_fd(const Model& m, const Vec& u)
{
    const Eigen::Index n = u.size();
    Mat H(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double h = 1e-6 * (1.0 + std::abs(u(j)));
        Vec up = u, um = u;
        up(j) += h;
        um(j) -= h;
        H.col(j) = (equilibrium_entropy_gradient(m, up) -
                    equilibrium_entropy_gradient(m, um)) /
                   (2.0 * h);
    }
    return H;
}

} // namespace

CorrectorResult corrector(const Model& m, const Vec& u, const Vec& du_dx)
{
    if (!m.equilibrium_admissible(u))
        throw OutOfDomain(m.name() + ": corrector point outside omega");

    const Vec Eu = m.equilibrium(u);
    const Mat A = m.flux_jacobian(Eu);
    const Mat& Q = m.constraint();
    const Vec J = -(A * (m.equilibrium_jacobian(u) * du_dx));  // -dx F(E(u))

    CorrectorResult res;
    if (m.relax_exponent() == 1) {
        const Mat B = m.relax_jacobian(Eu);
        res.U1 = solve_constrained(B, Q, J);
        res.solve_residual = (B * res.U1 - J).lpNorm<Eigen::Infinity>();
    } else {
        res.U1 = m.corrector_nonlinear(u, du_dx);
        // Balance check: R(E(u) + M(0) U1) must equal -dx F(E(u)). M(0)
        // zeroes the equilibrium components of U1, which are zero already.
        res.solve_residual =
            (m.relaxation(Eu + res.U1) - J).lpNorm<Eigen::Infinity>();
    }
    res.constraint_residual = (Q * res.U1).lpNorm<Eigen::Infinity>();
    res.effective_flux = -(Q * (A * res.U1));
    return res;
}

Mat effective_matrix_numeric(const Model& m, const Vec& u)
{
    if (m.relax_exponent() != 1)
        throw NotLinearRegime(m.name() +
                              ": gradient-dependent M, use the corrector directly");
    const int n = m.equil_dim();
    Mat M(n, n);
    for (int j = 0; j < n; ++j) {
        Vec ej = Vec::Zero(n);
        ej(j) = 1.0;
        M.col(j) = corrector(m, u, ej).effective_flux;
    }
    return M;
}

EntropyStructure entropy_structure(const Model& m, const Vec& u)
{
    if (!m.has_entropy()) throw EntropyUnavailable(m.name() + ": no entropy pair");
    if (m.relax_exponent() != 1)
        throw NotLinearRegime(m.name() + ": nonlinear relaxation, L is gradient-dependent");
    if (!m.equilibrium_admissible(u)) throw OutOfDomain(m.name() + ": u outside omega");

    const Vec Eu = m.equilibrium(u);
    const Mat& Q = m.constraint();
    const int n = m.equil_dim();

    EntropyStructure es;
    es.S = Q * m.flux_jacobian(Eu);
    es.Lambda = m.entropy_hessian(Eu) * m.relax_jacobian(Eu);

    es.L.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const Vec b = es.S.row(k).transpose();
        if ((Q * b).lpNorm<Eigen::Infinity>() > 1e-10 * (1.0 + b.lpNorm<Eigen::Infinity>()))
            throw ConstraintViolated(m.name() + ": row of S leaves ker Q");
        es.L.col(k) = es.S * generalized_inverse_apply(es.Lambda, Q, b);
    }
    return es;
}

Vec entropy_form_flux(const Model& m, const Vec& u, const Vec& du_dx)
{
    if (!m.has_entropy()) throw EntropyUnavailable(m.name() + ": no entropy pair");
    const Mat Dg = equilibrium_entropy_hessian_fd(m, u);
    if (m.relax_exponent() == 1)
        return entropy_structure(m, u).L * (Dg * du_dx);
    // Nonlinear regime: the gradient-dependent L is M(u, dx u) Dg^{-1}, so the
    // entropy-variable flux collapses back to M dx u.
    const Mat M = m.effective_matrix(u, du_dx);
    return (M * Dg.inverse()) * (Dg * du_dx);
}

double dissipation_check(const Model& m, const Vec& u)
{
    if (!m.has_entropy()) throw EntropyUnavailable(m.name() + ": no entropy pair");
    const Vec Eu = m.equilibrium(u);
    const Mat P = m.entropy_hessian(Eu) * m.relax_jacobian(Eu);
    const Mat sym = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> eig(sym);
    return eig.eigenvalues().minCoeff();
}

double equilibrium_entropy_flux_check(const Model& m, int samples, std::uint64_t seed)
{
    if (!m.has_entropy()) throw EntropyUnavailable(m.name() + ": no entropy pair");
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Vec u = m.sample_equilibrium(rng);
        for (Eigen::Index j = 0; j < u.size(); ++j) {
            const double h = 1e-6 * (1.0 + std::abs(u(j)));
            Vec up = u, um = u;
            up(j) += h;
            um(j) -= h;
            const double d = (m.entropy_flux(m.equilibrium(up)) -
                              m.entropy_flux(m.equilibrium(um))) /
                             (2.0 * h);
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

} // namespace apfv
