#include "apfv/parabolic.hpp"

#include "apfv/ap_scheme.hpp"

namespace apfv {

std::vector<Mat> effective_face_matrices(const Model& m, const std::vector<Vec>& u,
                                         double dx, Boundary boundary)
{
    const int nc = static_cast<int>(u.size());
    auto at = [&](int i) -> const Vec& {
        if (i < 0) return boundary == Boundary::periodic ? u[static_cast<std::size_t>(nc - 1)]
                                                         : u[0];
        if (i >= nc) return boundary == Boundary::periodic ? u[0]
                                                           : u[static_cast<std::size_t>(nc - 1)];
        return u[static_cast<std::size_t>(i)];
    };
    std::vector<Mat> faces(static_cast<std::size_t>(nc) + 1);
    for (int j = 0; j <= nc; ++j) {
        const Vec& uL = at(j - 1);
        const Vec& uR = at(j);
        faces[static_cast<std::size_t>(j)] =
            m.effective_matrix(0.5 * (uL + uR), (uR - uL) / dx);
    }
    return faces;
}

std::vector<Vec> parabolic_step(const Model& m, const std::vector<Vec>& u, double dt,
                                double dx, Boundary boundary)
{
    // Coefficients frozen at the current data; stability is re-checked inside
    // the shared stencil.
    return discrete_diffusion_limit(u, dt, dx, effective_face_matrices(m, u, dx, boundary),
                                    boundary);
}

std::vector<Vec> solve_to_time(const Model& m, std::vector<Vec> u, double T, double dx,
                               Boundary boundary, double safety)
{
    if (T < 0.0) throw SolverError("solve_to_time: T must be >= 0");
    double t = 0.0;
    while (t < T) {
        const auto faces = effective_face_matrices(m, u, dx, boundary);
        double dt = safety * diffusion_stable_dt(faces, dx);
        dt = std::min(dt, T - t);
        u = discrete_diffusion_limit(u, dt, dx, faces, boundary);
        t += dt;
    }
    return u;
}

} // namespace apfv
