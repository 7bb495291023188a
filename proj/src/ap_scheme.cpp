#include "apfv/ap_scheme.hpp"

#include <cmath>
#include <sstream>

#include "apfv/hll.hpp"

namespace apfv {

SigmaResult build_sigma(const Model& m, const Vec& u_face, const Vec& du_dx_face,
                        double b)
{
    if (!m.equilibrium_admissible(u_face))
        throw OutOfDomain(m.name() + ": interface value outside omega");

    SigmaResult res;
    res.M_face = m.effective_matrix(u_face, du_dx_face);
    const int n = m.equil_dim();
    if (n == 1) {
        if (res.M_face(0, 0) < 1e-10) {
            res.M_face(0, 0) = 1e-10;
            res.floored = true;
        }
    } else {
        Eigen::FullPivLU<Mat> lu(res.M_face);
        lu.setThreshold(1e-10);
        if (!lu.isInvertible()) throw SingularM(m.name() + ": singular diffusion target");
    }

    const int N = m.state_dim();
    const Mat& Q = m.constraint();
    const Mat T = Mat::Identity(N, N) +
                  m.equilibrium_jacobian(u_face) *
                      ((res.M_face / (b * b)) - Mat::Identity(n, n)) * Q;
    Eigen::FullPivLU<Mat> lu(T);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) throw SingularT(m.name() + ": singular interface transform");
    res.sigma = lu.inverse() - Mat::Identity(N, N);
    return res;
}

Mat alpha_matrix(const Mat& sigma, double gamma, double dx, double b)
{
    const Eigen::Index N = sigma.rows();
    const double c = gamma * dx / (2.0 * b);
    const Mat inner = Mat::Identity(N, N) + c * (Mat::Identity(N, N) + sigma);
    Eigen::FullPivLU<Mat> lu(inner);
    lu.setThreshold(1e-14);
    if (!lu.isInvertible()) throw SingularAlpha("alpha_matrix: singular");
    return lu.inverse();
}

GridState ap_step(const Model& m, const GridState& state, const APStepConfig& cfg,
                  const SigmaPolicy& policy, APStepStats* stats)
{
    const int nc = state.num_cells();
    const int N = m.state_dim();
    const double dx = state.dx;
    const Mat& Q = m.constraint();
    const SigmaPolicy& pol = policy
                                 ? policy
                                 : SigmaPolicy([](const Model& mm, const Vec& u,
                                                  const Vec& du, double bb) {
                                       return build_sigma(mm, u, du, bb);
                                   });

    double dt_fast, gamma_src, gamma_alpha;
    if (cfg.mode == GammaMode::late_time) {
        if (!(cfg.eps > 0.0 && cfg.eps <= 1.0))
            throw SolverError("ap_step: eps must be in (0, 1]");
        dt_fast = cfg.dt / cfg.eps;
        gamma_src = std::pow(cfg.eps, -m.relax_exponent());
        gamma_alpha = 1.0 / cfg.eps;
    } else {
        dt_fast = cfg.dt;
        gamma_src = cfg.gamma;
        gamma_alpha = cfg.gamma;
    }
    if (cfg.b * dt_fast / dx > 0.5 * (1.0 + 1e-12))
        throw CFLViolation("ap_step: fast-time CFL b dt/dx > 1/2 violated");

    std::vector<Vec> face_flux(static_cast<std::size_t>(nc) + 1);
    std::vector<Mat> face_alpha(static_cast<std::size_t>(nc) + 1);
    for (int j = 0; j <= nc; ++j) {
        const Vec& UL = state.cell(j - 1);
        const Vec& UR = state.cell(j);
        const Vec uface = 0.5 * (Q * UL + Q * UR);
        const Vec duface = (Q * UR - Q * UL) / dx;
        const SigmaResult sig = pol(m, uface, duface, cfg.b);
        const Mat alpha = alpha_matrix(sig.sigma, gamma_alpha, dx, cfg.b);
        if (stats) {
            if (sig.floored) ++stats->floor_events;
            // Commutation Q(I+sigma)^{-1} = M Q / b^2, checked in the
            // inversion-free form Q = (M Q / b^2)(I + sigma).
            const Mat defect =
                Q - (sig.M_face * Q / (cfg.b * cfg.b)) *
                        (Mat::Identity(N, N) + sig.sigma);
            stats->max_commutation_defect = std::max(
                stats->max_commutation_defect, defect.lpNorm<Eigen::Infinity>());
        }
        // Single-valued face flux alpha F^HLL: conservative by telescoping,
        // and the alpha damping keeps the slaved components at their O(eps)
        // corrector values, which is what makes the eps -> 0 limit match the
        // discrete diffusion stencil.
        face_flux[static_cast<std::size_t>(j)] =
            alpha * (0.5 * (m.flux(UL) + m.flux(UR)) - 0.5 * cfg.b * (UR - UL));
        face_alpha[static_cast<std::size_t>(j)] = alpha;
    }

    GridState next = state;
    const double lam = dt_fast / dx;
    const double src = 0.5 * dt_fast * gamma_src;
    for (int i = 0; i < nc; ++i) {
        const std::size_t si = static_cast<std::size_t>(i);
        const Vec& U = state.cells[si];
        Vec Unew = U - lam * (face_flux[si + 1] - face_flux[si]);
        if (gamma_src != 0.0)
            Unew -= src * ((face_alpha[si + 1] + face_alpha[si]) * m.relaxation(U));
        if (!m.admissible(Unew)) {
            std::ostringstream os;
            os << "ap_step: cell " << i << " left the admissible set at t=" << state.time
               << " (state: " << Unew.transpose() << ")";
            throw InadmissibleResult(os.str());
        }
        next.cells[si] = std::move(Unew);
    }
    next.time = state.time + cfg.dt;
    return next;
}

std::pair<Vec, Vec> interface_states(const Model& m, const Vec& UL, const Vec& UR,
                                     const Mat& alpha, const Mat& sigma, double b)
{
    const Eigen::Index N = UL.size();
    Eigen::FullPivLU<Mat> lu(Mat::Identity(N, N) + sigma);
    lu.setThreshold(1e-14);
    if (!lu.isInvertible()) throw SingularSigma("interface_states: I + sigma singular");

    const Vec ustar = intermediate_state(m, UL, UR, b);
    const Mat Ia = Mat::Identity(N, N) - alpha;
    const Vec left = alpha * ustar + Ia * (UL - lu.solve(m.relaxation(UL)));
    const Vec right = alpha * ustar + Ia * (UR - lu.solve(m.relaxation(UR)));
    return {left, right};
}

double diffusion_stable_dt(const std::vector<Mat>& M_faces, double dx)
{
    double rho_max = 0.0;
    for (const Mat& M : M_faces) {
        if (M.rows() == 1) {
            rho_max = std::max(rho_max, std::abs(M(0, 0)));
        } else {
            Eigen::EigenSolver<Mat> eig(M, false);
            rho_max = std::max(rho_max, eig.eigenvalues().cwiseAbs().maxCoeff());
        }
    }
    if (rho_max <= 0.0) return std::numeric_limits<double>::infinity();
    return dx * dx / (2.0 * rho_max);
}

std::vector<Vec> discrete_diffusion_limit(const std::vector<Vec>& u, double dt,
                                          double dx, const std::vector<Mat>& M_faces,
                                          Boundary boundary)
{
    const int nc = static_cast<int>(u.size());
    if (static_cast<int>(M_faces.size()) != nc + 1)
        throw SolverError("discrete_diffusion_limit: need num_cells+1 face matrices");
    if (dt > diffusion_stable_dt(M_faces, dx) * (1.0 + 1e-12))
        throw StabilityViolation("discrete_diffusion_limit: dt exceeds dx^2 bound");

    auto at = [&](int i) -> const Vec& {
        if (i < 0) return boundary == Boundary::periodic ? u[static_cast<std::size_t>(nc - 1)]
                                                         : u[0];
        if (i >= nc) return boundary == Boundary::periodic ? u[0]
                                                           : u[static_cast<std::size_t>(nc - 1)];
        return u[static_cast<std::size_t>(i)];
    };

    std::vector<Vec> next(u.size());
    const double lam = dt / (dx * dx);
    for (int i = 0; i < nc; ++i) {
        const std::size_t si = static_cast<std::size_t>(i);
        next[si] = u[si] + lam * (M_faces[si + 1] * (at(i + 1) - u[si]) +
                                  M_faces[si] * (at(i - 1) - u[si]));
    }
    return next;
}

} // namespace apfv
