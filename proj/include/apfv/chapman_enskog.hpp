#ifndef APFV_CHAPMAN_ENSKOG_HPP
#define APFV_CHAPMAN_ENSKOG_HPP

#include "apfv/model.hpp"

namespace apfv {

/// First-order corrector U1 (B(E(u)) U1 = -A(E(u)) dx E(u), Q U1 = 0) and
/// the effective flux D = -Q A(E(u)) U1 it induces.
struct CorrectorResult {
    Vec U1;
    Vec effective_flux;        // D, n components
    double solve_residual;     // ||B U1 - J||_inf (or nonlinear balance defect)
    double constraint_residual;  // ||Q U1||_inf
};

/// Computes the corrector at (u, dx u). Linear-relaxation models go through
/// the constrained solve; q = 2 models use the model's closed-form nonlinear
/// corrector, and the defining momentum balance is re-checked numerically.
CorrectorResult corrector(const Model& m, const Vec& u, const Vec& du_dx);

/// Assembles M(u) column-by-column from correctors along unit gradients, so
/// that D = M(u) dx u. Only valid for q = 1 (throws NotLinearRegime else).
Mat effective_matrix_numeric(const Model& m, const Vec& u);

struct EntropyStructure {
    Mat L;       // n x n, L = S Lcal^{-1} S^T
    Mat S;       // n x N, S = Q A(E(u))
    Mat Lambda;  // N x N, Lcal = D^2 Phi(E(u)) B(E(u))
};

/// Entropy form of the effective operator for q = 1 models with an entropy.
EntropyStructure entropy_structure(const Model& m, const Vec& u);

/// The flux L(u) dx (D_u Phi(E(u)))^T; for q = 2 the gradient-dependent
/// nonlinear L is used. Must agree with corrector(...).effective_flux.
Vec entropy_form_flux(const Model& m, const Vec& u, const Vec& du_dx);

/// Minimum eigenvalue of the symmetric part of D^2 Phi(E(u)) B(E(u));
/// non-negative (up to roundoff) when the entropy is compatible.
double dissipation_check(const Model& m, const Vec& u);

/// Max over sampled u of |D_u Psi(E(u))| by central differences; the
/// equilibrium entropy flux must be constant (= 0 here).
double equilibrium_entropy_flux_check(const Model& m, int samples = 100,
                                      std::uint64_t seed = 911u);

} // namespace apfv

#endif
