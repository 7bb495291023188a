#ifndef APFV_AP_SCHEME_HPP
#define APFV_AP_SCHEME_HPP

#include <functional>
#include <utility>
#include <vector>

#include "apfv/model.hpp"

namespace apfv {

/// Interface parameter matrix sigma and the n x n diffusion target M it
/// encodes through the commutation condition Q (I+sigma)^{-1} = M Q / b^2.
struct SigmaResult {
    Mat sigma;   // N x N
    Mat M_face;  // n x n
    bool floored = false;  // degenerate M was floored before inversion
};

using SigmaPolicy =
    std::function<SigmaResult(const Model&, const Vec& u_face, const Vec& du_dx_face,
                              double b)>;

/// Builds sigma from the analytic effective matrix at the interface:
/// (I+sigma)^{-1} = T with T = I + E'(u) (M/b^2 - I) Q, which satisfies the
/// commutation condition exactly (Q E'(u) = I). Scalar M is floored at 1e-10;
/// singular matrix-valued M throws SingularM.
SigmaResult build_sigma(const Model& m, const Vec& u_face, const Vec& du_dx_face,
                        double b);

/// alpha = (I + (gamma dx / 2b)(I + sigma))^{-1}.
Mat alpha_matrix(const Mat& sigma, double gamma, double dx, double b);

enum class GammaMode { late_time, fixed };

struct APStepConfig {
    GammaMode mode = GammaMode::late_time;
    double eps = 1e-3;   // relaxation scale (late_time mode), in (0, 1]
    double dt = 0.0;     // slow-time step (late_time) / time step (fixed)
    double b = 1.0;      // wave speed
    double gamma = 0.0;  // relaxation rate (fixed mode)
};

struct APStepStats {
    int floor_events = 0;
    double max_commutation_defect = 0.0;
};

/// One step of the modified finite volume scheme, in conservative flux form:
///     G_{i+1/2} = alpha_{i+1/2} F^HLL_{i+1/2}
///     U_i' = U_i - (dt_f/dx)(G_{i+1/2} - G_{i-1/2})
///            - (dt_f gamma/2)(alpha_{i+1/2} + alpha_{i-1/2}) R(U_i),
/// where dt_f is the fast-time step. In late_time mode dt_f = dt/eps, the
/// source carries gamma = 1/eps^q, and alpha is built with the 1/eps rate.
/// The hyperbolic CFL b dt_f/dx <= 1/2 is enforced.
GridState ap_step(const Model& m, const GridState& state, const APStepConfig& cfg,
                  const SigmaPolicy& policy = {}, APStepStats* stats = nullptr);

/// Interface states of the modified Riemann solver (invariant-domain
/// diagnostic): U*L = alpha Ustar + (I-alpha)(UL - (I+sigma)^{-1} R(UL)),
/// and symmetrically for U*R.
std::pair<Vec, Vec> interface_states(const Model& m, const Vec& UL, const Vec& UR,
                                     const Mat& alpha, const Mat& sigma, double b);

/// The discrete asymptotic stencil
///     u_i' = u_i + (dt/dx^2)(M_{i+1/2}(u_{i+1}-u_i) + M_{i-1/2}(u_{i-1}-u_i)).
/// M_faces has num_cells+1 entries; face j sits between cells j-1 and j.
/// Throws StabilityViolation if dt exceeds dx^2 / (2 max spectral radius M).
std::vector<Vec> discrete_diffusion_limit(const std::vector<Vec>& u, double dt,
                                          double dx, const std::vector<Mat>& M_faces,
                                          Boundary boundary);

/// Explicit stability bound dx^2 / (2 max_j rho(M_j)).
double diffusion_stable_dt(const std::vector<Mat>& M_faces, double dx);

} // namespace apfv

#endif
